//! Reduced simplicial homology, homology ball and sphere certificates, and
//! Betti numbers from Hochster's formula.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::SqfMonomialIdeal;
use crate::linalg::{Field, SparseMatrix};
use crate::simplicial::{group_by_size, FaceTable, SimplicialComplex};
use crate::vars::{Multidegree, SqfMonomial};

/// Reduced homology dimensions; entry `k` is `H~_{k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Homology(pub Vec<usize>);

impl Homology {
    /// `H~_k` for `k >= -1`.
    pub fn get(&self, k: isize) -> usize {
        usize::try_from(k + 1)
            .ok()
            .and_then(|i| self.0.get(i).copied())
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&h| h == 0)
    }

    /// One copy of the field in degree `dim` and nothing else.
    pub fn is_sphere_of_dim(&self, dim: isize) -> bool {
        self.get(dim) == 1 && self.0.iter().sum::<usize>() == 1
    }

    fn zeros(len: usize) -> Self {
        Homology(vec![0; len])
    }
}

fn homology_from_ranks(by_size: &[Vec<SqfMonomial>], ranks: &[usize]) -> Homology {
    Homology(
        (0..by_size.len())
            .map(|k| by_size[k].len() - ranks[k] - ranks[k + 1])
            .collect(),
    )
}

/// Reduced homology of a complex given by all of its faces grouped by size.
/// Over `Q`, a result modulo 2 concentrated in at most one degree
/// is returned as is; it agrees with the rational one.
pub fn homology_of_faces(by_size: &[Vec<SqfMonomial>], field: Field) -> Homology {
    if by_size.is_empty() {
        return Homology(vec![]);
    }
    let mats: Vec<SparseMatrix> = (1..by_size.len())
        .map(|k| {
            let mut m = SparseMatrix::new(by_size[k].len(), by_size[k - 1].len());
            for (r, f) in by_size[k].iter().enumerate() {
                for (pos, v) in f.iter().enumerate() {
                    let c = by_size[k - 1]
                        .binary_search(&f.without(v))
                        .expect("faces are closed under subsets");
                    m.add(r, c, if pos % 2 == 0 { 1 } else { -1 });
                }
            }
            m
        })
        .collect();
    let ranks_over = |f: Field| {
        let mut ranks = vec![0usize; by_size.len() + 1];
        match f {
            Field::Prime(p) => {
                let mut cleared: Vec<bool> = Vec::new();
                for (k, m) in mats.iter().enumerate().rev() {
                    let lows = m.pivot_columns(p, &cleared);
                    ranks[k + 1] = lows.len();
                    cleared = vec![false; m.ncols()];
                    for c in lows {
                        cleared[c] = true;
                    }
                }
            }
            Field::Rational => {
                for (k, m) in mats.iter().enumerate() {
                    ranks[k + 1] = m.rank(f);
                }
            }
        }
        ranks
    };
    if field == Field::Rational {
        let h = homology_from_ranks(by_size, &ranks_over(Field::Prime(2)));
        if h.0.iter().filter(|&&x| x > 0).count() <= 1 {
            return h;
        }
    }
    homology_from_ranks(by_size, &ranks_over(field))
}

/// Reduced homology, with shortcuts for cones and simplices.
pub fn reduced_homology(complex: &SimplicialComplex, field: Field) -> Homology {
    let len = (complex.dim() + 2).max(0) as usize;
    if complex.is_void() {
        return Homology(vec![]);
    }
    if complex.facets() == [SqfMonomial::empty()] {
        return Homology(vec![1]);
    }
    if complex.cone_apex().is_some() {
        return Homology::zeros(len);
    }
    homology_of_faces(&complex.faces_by_size(), field)
}

/// Why a certificate failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Defect {
    pub face: SqfMonomial,
    pub reason: String,
}

impl Defect {
    pub fn into_error(self, complex: &SimplicialComplex) -> Error {
        Error::CertificationFailed {
            reason: self.reason,
            face: self.face.iter().map(|i| complex.vars().var_name(i)).collect(),
        }
    }
}

fn link_defect(
    complex: &SimplicialComplex,
    face: SqfMonomial,
    expect_zero: bool,
    field: Field,
) -> Option<Defect> {
    let link = complex.link_unchecked(face);
    let h = reduced_homology(&link, field);
    let ok = if expect_zero {
        h.is_zero()
    } else {
        h.is_sphere_of_dim(link.dim())
    };
    (!ok).then(|| Defect {
        face,
        reason: format!(
            "link has homology {:?}, expected {}",
            h.0,
            if expect_zero { "zero" } else { "that of a sphere" }
        ),
    })
}

fn first_defect<F>(faces: &[SqfMonomial], check: F) -> Option<Defect>
where
    F: Fn(SqfMonomial) -> Option<Defect> + Sync,
{
    faces
        .par_iter()
        .map(|&f| check(f))
        .find_first(|d| d.is_some())
        .flatten()
}

/// The first face (in face order) whose link lacks sphere homology.
pub fn sphere_defect(complex: &SimplicialComplex, field: Field) -> Result<Option<Defect>> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    if complex.is_void() {
        return Ok(Some(Defect {
            face: SqfMonomial::empty(),
            reason: "void complex".into(),
        }));
    }
    let faces = complex.faces();
    Ok(first_defect(&faces, |f| link_defect(complex, f, false, field)))
}

pub fn is_homology_sphere(complex: &SimplicialComplex, field: Field) -> Result<bool> {
    Ok(sphere_defect(complex, field)?.is_none())
}

/// Result of checking the homology ball conditions.
#[derive(Clone, Debug)]
pub struct BallCheck {
    pub boundary: SimplicialComplex,
    pub defect: Option<Defect>,
}

pub fn ball_check(complex: &SimplicialComplex, field: Field) -> Result<BallCheck> {
    let boundary = complex.boundary()?;
    if complex.is_void() {
        return Ok(BallCheck {
            boundary,
            defect: Some(Defect {
                face: SqfMonomial::empty(),
                reason: "void complex".into(),
            }),
        });
    }
    let boundary_dim_ok = boundary.dim() == complex.dim() - 1;
    let mut defect = if boundary_dim_ok {
        sphere_defect(&boundary, field)?.map(|d| Defect {
            face: d.face,
            reason: format!("boundary: {}", d.reason),
        })
    } else {
        Some(Defect {
            face: SqfMonomial::empty(),
            reason: format!(
                "boundary has dimension {}, expected {}",
                boundary.dim(),
                complex.dim() - 1
            ),
        })
    };
    if defect.is_none() {
        let faces = complex.faces();
        defect = first_defect(&faces, |f| {
            link_defect(complex, f, boundary.contains(f), field)
        });
    }
    Ok(BallCheck { boundary, defect })
}

/// Whether the complex is a homology ball, together with its boundary.
pub fn is_homology_ball(
    complex: &SimplicialComplex,
    field: Field,
) -> Result<(bool, SimplicialComplex)> {
    let check = ball_check(complex, field)?;
    Ok((check.defect.is_none(), check.boundary))
}

/// Graded Betti numbers indexed by homological degree and multidegree.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BettiTable {
    fine: BTreeMap<(usize, Multidegree), usize>,
}

impl BettiTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, degree: Multidegree, count: usize) {
        if count > 0 {
            *self.fine.entry((i, degree)).or_default() += count;
        }
    }

    pub fn fine(&self) -> &BTreeMap<(usize, Multidegree), usize> {
        &self.fine
    }

    pub fn get(&self, i: usize, degree: &Multidegree) -> usize {
        self.fine.get(&(i, degree.clone())).copied().unwrap_or(0)
    }

    /// Totals by homological degree and total degree.
    pub fn coarse(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for ((i, d), c) in &self.fine {
            *out.entry((*i, d.total())).or_default() += c;
        }
        out
    }

    /// Totals by homological degree.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for ((i, _), c) in &self.fine {
            if out.len() <= *i {
                out.resize(i + 1, 0);
            }
            out[*i] += c;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.fine.is_empty()
    }
}

impl fmt::Debug for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.coarse()).finish()
    }
}

/// Unions of nonempty sets of generators.
pub fn lcm_lattice(gens: &[SqfMonomial]) -> Vec<SqfMonomial> {
    let mut seen: std::collections::BTreeSet<SqfMonomial> = std::collections::BTreeSet::new();
    for g in gens {
        let mut add = vec![*g];
        for s in &seen {
            add.push(s.union(*g));
        }
        seen.extend(add);
    }
    seen.into_iter().collect()
}

/// Multigraded Betti numbers of a squarefree ideal by Hochster's formula:
/// `beta_{i, sigma} = dim H~_{|sigma| - i - 2}(Delta restricted to sigma)`.
pub fn hochster_betti(ideal: &SqfMonomialIdeal, field: Field) -> Result<BettiTable> {
    if ideal.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let nv = ideal.vars().len();
    let sigmas = lcm_lattice(ideal.gens());
    let table = FaceTable::of_ideal(ideal);
    let complex = if table.is_none() {
        Some(SimplicialComplex::of_ideal(ideal)?)
    } else {
        None
    };
    let rows: Vec<(SqfMonomial, Homology)> = sigmas
        .par_iter()
        .map(|&sigma| {
            let h = match (&table, &complex) {
                (Some(t), _) => restricted_homology(&t.faces_within(sigma), field),
                (None, Some(c)) => reduced_homology(&c.restriction(sigma), field),
                _ => unreachable!(),
            };
            (sigma, h)
        })
        .collect();
    let mut out = BettiTable::new();
    for (sigma, h) in rows {
        let s = sigma.len() as isize;
        for (k, &dim) in h.0.iter().enumerate() {
            let i = s - 2 - (k as isize - 1);
            if dim > 0 && i >= 0 {
                out.add(i as usize, sigma.to_multidegree(nv), dim);
            }
        }
    }
    Ok(out)
}

fn restricted_homology(faces: &[SqfMonomial], field: Field) -> Homology {
    let vertices = faces
        .iter()
        .fold(SqfMonomial::empty(), |acc, f| acc.union(*f));
    let cone = vertices
        .iter()
        .any(|v| faces.iter().all(|f| f.contains(v) || faces.binary_search(&f.with(v)).is_ok()));
    let len = faces.last().map_or(0, |f| f.len() + 1);
    if cone && !vertices.is_empty() {
        return Homology::zeros(len);
    }
    homology_of_faces(&group_by_size(faces.to_vec()), field)
}
