//! Simplicial complexes given by facets over a [`VarSet`].

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{maximalize, minimal_transversals, SqfMonomialIdeal};
use crate::vars::{same_vars, SqfMonomial, VarSet};

/// A simplicial complex. No facets at all is the void complex; the facet
/// list `[{}]` is the complex `{{}}` of dimension -1.
#[derive(Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vars: Arc<VarSet>,
    facets: Vec<SqfMonomial>,
}

/// Face counts `f_{-1}, f_0, ..., f_dim`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FVector(pub Vec<u64>);

impl FVector {
    /// `f_k` for `k >= -1`; zero beyond the dimension.
    pub fn get(&self, k: isize) -> u64 {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    /// Reduced Euler characteristic `sum (-1)^k f_k` over `k >= -1`.
    pub fn reduced_euler(&self) -> i64 {
        self.0
            .iter()
            .enumerate()
            .map(|(i, &f)| if i % 2 == 1 { f as i64 } else { -(f as i64) })
            .sum()
    }
}

impl SimplicialComplex {
    pub fn new(vars: Arc<VarSet>, facets: Vec<SqfMonomial>) -> Self {
        debug_assert!(facets.iter().all(|f| f.is_subset(vars.full())));
        SimplicialComplex {
            vars,
            facets: maximalize(facets),
        }
    }

    pub fn void(vars: Arc<VarSet>) -> Self {
        SimplicialComplex {
            vars,
            facets: vec![],
        }
    }

    pub fn simplex(vars: Arc<VarSet>) -> Self {
        let full = vars.full();
        SimplicialComplex {
            vars,
            facets: vec![full],
        }
    }

    /// The complex whose faces are the sets containing no generator of `ideal`.
    pub fn of_ideal(ideal: &SqfMonomialIdeal) -> Result<Self> {
        if ideal.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let vars = ideal.vars().clone();
        if ideal.is_zero() {
            return Ok(Self::simplex(vars));
        }
        let n = vars.len();
        let facets = minimal_transversals(ideal.gens())
            .into_iter()
            .map(|t| t.complement(n))
            .collect();
        Ok(Self::new(vars, facets))
    }

    /// Stanley-Reisner ideal: the minimal nonfaces.
    pub fn sr_ideal(&self) -> SqfMonomialIdeal {
        let n = self.vars.len();
        let comps: Vec<SqfMonomial> = self.facets.iter().map(|f| f.complement(n)).collect();
        SqfMonomialIdeal::new(self.vars.clone(), minimal_transversals(&comps))
    }

    /// The Alexander dual complex: complements of nonfaces.
    pub fn alexander_dual(&self) -> Result<Self> {
        let n = self.vars.len();
        if self.is_simplex() {
            return Ok(Self::void(self.vars.clone()));
        }
        let facets = self
            .sr_ideal()
            .gens()
            .iter()
            .map(|g| g.complement(n))
            .collect();
        Ok(Self::new(self.vars.clone(), facets))
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn facets(&self) -> &[SqfMonomial] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_simplex(&self) -> bool {
        self.facets.len() == 1 && self.facets[0] == self.vars.full()
    }

    /// Dimension, with `-1` for `{{}}` and `-2` for the void complex.
    pub fn dim(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-2)
    }

    pub fn vertex_set(&self) -> SqfMonomial {
        self.facets
            .iter()
            .fold(SqfMonomial::empty(), |acc, f| acc.union(*f))
    }

    pub fn contains(&self, face: SqfMonomial) -> bool {
        self.facets.iter().any(|f| face.is_subset(*f))
    }

    pub fn is_pure(&self) -> bool {
        self.facets.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// Some vertex lying in every facet, if the complex is a cone.
    pub fn cone_apex(&self) -> Option<usize> {
        let common = self
            .facets
            .iter()
            .fold(self.vars.full(), |acc, f| acc.intersection(*f));
        if self.facets.is_empty() {
            None
        } else {
            common.iter().next()
        }
    }

    /// Every face, sorted by size then lexicographically.
    pub fn faces(&self) -> Vec<SqfMonomial> {
        let mut faces: Vec<SqfMonomial> = self.facets.iter().flat_map(|f| f.subsets()).collect();
        faces.sort_unstable();
        faces.dedup();
        faces
    }

    /// Faces grouped by cardinality: entry `k` holds the faces of size `k`.
    pub fn faces_by_size(&self) -> Vec<Vec<SqfMonomial>> {
        group_by_size(self.faces())
    }

    pub fn f_vector(&self) -> FVector {
        FVector(self.faces_by_size().iter().map(|v| v.len() as u64).collect())
    }

    /// `{G : G and F disjoint, G u F a face}`.
    pub fn link(&self, face: SqfMonomial) -> Result<Self> {
        if !self.contains(face) {
            return Err(Error::NotAFace);
        }
        Ok(self.link_unchecked(face))
    }

    pub(crate) fn link_unchecked(&self, face: SqfMonomial) -> Self {
        let facets = self
            .facets
            .iter()
            .filter(|f| face.is_subset(**f))
            .map(|f| f.difference(face))
            .collect();
        SimplicialComplex {
            vars: self.vars.clone(),
            facets,
        }
    }

    /// The induced subcomplex on the vertex set `sigma`.
    pub fn restriction(&self, sigma: SqfMonomial) -> Self {
        let facets = self.facets.iter().map(|f| f.intersection(sigma)).collect();
        Self::new(self.vars.clone(), facets)
    }

    /// The codimension one faces with the number of facets containing each.
    pub fn ridge_degrees(&self) -> Result<BTreeMap<SqfMonomial, usize>> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        let mut counts: BTreeMap<SqfMonomial, usize> = BTreeMap::new();
        for f in &self.facets {
            for v in f.iter() {
                *counts.entry(f.without(v)).or_default() += 1;
            }
        }
        Ok(counts)
    }

    /// The subcomplex generated by ridges lying in exactly one facet.
    pub fn boundary(&self) -> Result<Self> {
        let ridges = self
            .ridge_degrees()?
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        Ok(Self::new(self.vars.clone(), ridges))
    }

    /// True when every ridge lies in at most `max` facets (exactly `max` if `exact`).
    pub fn is_pseudomanifold(&self, max: usize, exact: bool) -> Result<bool> {
        Ok(self
            .ridge_degrees()?
            .values()
            .all(|&c| c <= max && (!exact || c == max)))
    }

    /// Facets as lists of vertex names.
    pub fn facet_names(&self) -> Vec<Vec<String>> {
        self.facets
            .iter()
            .map(|f| f.iter().map(|i| self.vars.var_name(i)).collect())
            .collect()
    }

    /// The same complex read over another variable set containing its vertices.
    pub fn transfer(&self, vars: Arc<VarSet>) -> Result<Self> {
        let facets = self
            .facets
            .iter()
            .map(|f| self.vars.transfer(*f, &vars).ok_or(Error::VarSetMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(vars, facets))
    }

    pub fn same_vars(&self, other: &Self) -> bool {
        same_vars(&self.vars, &other.vars)
    }
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .facet_names()
            .into_iter()
            .map(|names| format!("{{{}}}", names.join(",")))
            .collect();
        write!(f, "<{}>", parts.join(" "))
    }
}

pub(crate) fn group_by_size(faces: Vec<SqfMonomial>) -> Vec<Vec<SqfMonomial>> {
    let mut out: Vec<Vec<SqfMonomial>> = Vec::new();
    for f in faces {
        let k = f.len();
        if out.len() <= k {
            out.resize_with(k + 1, Vec::new);
        }
        out[k].push(f);
    }
    out
}

/// Membership table for every subset of at most [`FaceTable::LIMIT`] vertices.
pub struct FaceTable {
    nvars: usize,
    table: Vec<bool>,
}

impl FaceTable {
    pub const LIMIT: usize = 24;

    pub fn new(complex: &SimplicialComplex) -> Option<Self> {
        let nvars = complex.vars().len();
        if nvars > Self::LIMIT {
            return None;
        }
        let mut table = vec![false; 1 << nvars];
        for f in complex.facets() {
            table[f.bits() as usize] = true;
        }
        for b in 0..nvars {
            let bit = 1usize << b;
            for m in 0..table.len() {
                if m & bit == 0 && table[m | bit] {
                    table[m] = true;
                }
            }
        }
        Some(FaceTable { nvars, table })
    }

    /// Faces are the sets containing no generator.
    pub fn of_ideal(ideal: &SqfMonomialIdeal) -> Option<Self> {
        let nvars = ideal.vars().len();
        if nvars > Self::LIMIT {
            return None;
        }
        let mut nonface = vec![false; 1 << nvars];
        for g in ideal.gens() {
            nonface[g.bits() as usize] = true;
        }
        for b in 0..nvars {
            let bit = 1usize << b;
            for m in 0..nonface.len() {
                if m & bit != 0 && nonface[m ^ bit] {
                    nonface[m] = true;
                }
            }
        }
        Some(FaceTable {
            nvars,
            table: nonface.into_iter().map(|x| !x).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_face(&self, m: SqfMonomial) -> bool {
        self.table[m.bits() as usize]
    }

    /// Faces contained in `sigma`, sorted by size then lex.
    pub fn faces_within(&self, sigma: SqfMonomial) -> Vec<SqfMonomial> {
        let mut out: Vec<SqfMonomial> = sigma.subsets().filter(|s| self.is_face(*s)).collect();
        out.sort();
        out
    }
}
