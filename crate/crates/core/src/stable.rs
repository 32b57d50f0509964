//! Strongly stable ideals generated in one degree, their Eliahou-Kervaire and
//! co-letterplace resolutions, and the substitution `x_{i,j} -> x_j`.
//!
//! Signs: index-0 generators augment to `+m_u`. The co-letterplace correction
//! term enters with coefficient `(-1)^{p_t + t - 1}`, the sign produced by the
//! substitution from [`coletterplace_resolution`].

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;
use crate::poset::{HomSpace, IsotoneMap, Poset, PosetIdeal};
use crate::resolution::{coletterplace_resolution, GenLabel, Generator, MultigradedComplex};
use crate::vars::Multidegree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableIdeal {
    d: usize,
    n: usize,
    /// Each generator as its weakly increasing index sequence.
    maps: Vec<IsotoneMap>,
}

/// `(m_phi; j_1, ..., j_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EkGenerator {
    pub phi: IsotoneMap,
    pub js: Vec<u32>,
}

impl EkGenerator {
    pub fn label(&self) -> GenLabel {
        GenLabel::Ek {
            phi: self.phi.0.clone(),
            js: self.js.clone(),
        }
    }

    pub fn degree(&self, n: usize) -> Multidegree {
        let mut deg = exponents(&self.phi, n);
        for &j in &self.js {
            deg.0[j as usize - 1] += 1;
        }
        deg
    }
}

fn exponents(phi: &IsotoneMap, n: usize) -> Multidegree {
    let mut deg = Multidegree::zero(n);
    for &v in phi.values() {
        deg.0[v as usize - 1] += 1;
    }
    deg
}

fn reading(u: &Multidegree) -> IsotoneMap {
    IsotoneMap(
        u.0.iter()
            .enumerate()
            .flat_map(|(k, &e)| std::iter::repeat_n(k as u32 + 1, e as usize))
            .collect(),
    )
}

pub fn variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("x{j}")).collect()
}

impl StableIdeal {
    /// Builds the ideal from monomials of one degree over `x_1..x_n`.
    pub fn new(n: usize, monomials: &[Multidegree]) -> Result<Self> {
        if n == 0 || monomials.is_empty() {
            return Err(Error::Invalid("need n >= 1 and at least one monomial".into()));
        }
        let d = monomials[0].total();
        if d == 0 {
            return Err(Error::UnitIdeal);
        }
        let set: BTreeSet<Multidegree> = monomials.iter().cloned().collect();
        for u in &set {
            if u.nvars() != n {
                return Err(Error::VarSetMismatch);
            }
            if u.total() != d {
                return Err(Error::NotStronglyStable(format!(
                    "{} is not of degree {d}",
                    u.render(&variable_names(n))
                )));
            }
            for j in 0..n {
                if u.0[j] == 0 {
                    continue;
                }
                for i in 0..j {
                    let mut v = u.clone();
                    v.0[j] -= 1;
                    v.0[i] += 1;
                    if !set.contains(&v) {
                        return Err(Error::NotStronglyStable(v.render(&variable_names(n))));
                    }
                }
            }
        }
        let mut maps: Vec<IsotoneMap> = set.iter().map(reading).collect();
        maps.sort();
        Ok(StableIdeal { d, n, maps })
    }

    /// `phi -> prod x_{phi(i)}` on a poset ideal of `Hom([d], [n])`.
    pub fn from_poset_ideal(j: &PosetIdeal) -> Result<Self> {
        if !j.poset().is_declared_chain() {
            return Err(Error::NotAChain);
        }
        if j.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        let n = j.n() as usize;
        let monomials: Vec<Multidegree> = j.iter().map(|phi| exponents(phi, n)).collect();
        Self::new(n, &monomials)
    }

    pub fn space(&self) -> HomSpace {
        HomSpace::new(Poset::chain(self.d), self.n as u32).expect("valid chain space")
    }

    pub fn to_poset_ideal(&self) -> PosetIdeal {
        PosetIdeal::from_members(&self.space(), &self.maps)
            .expect("strongly stable sets are poset ideals")
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maps(&self) -> &[IsotoneMap] {
        &self.maps
    }

    pub fn monomials(&self) -> Vec<Multidegree> {
        self.maps.iter().map(|phi| exponents(phi, self.n)).collect()
    }

    pub fn names(&self) -> Vec<String> {
        variable_names(self.n)
    }

    pub fn gen_strings(&self) -> Vec<String> {
        let names = self.names();
        self.monomials().iter().map(|u| u.render(&names)).collect()
    }

    pub fn contains_map(&self, phi: &IsotoneMap) -> bool {
        self.maps.binary_search(phi).is_ok()
    }

    /// Every `(m_phi; j_1 < ... < j_i)` with `j_i < phi(d)`, grouped by `i`.
    pub fn generators(&self) -> Vec<Vec<EkGenerator>> {
        let top = self.maps.iter().map(|phi| phi.get(self.d - 1) as usize - 1).max().unwrap_or(0);
        let mut out: Vec<Vec<EkGenerator>> = vec![Vec::new(); top + 1];
        for phi in &self.maps {
            let below = phi.get(self.d - 1) - 1;
            for mask in 0u32..1 << below {
                let js: Vec<u32> = (1..=below).filter(|j| mask >> (j - 1) & 1 == 1).collect();
                out[js.len()].push(EkGenerator { phi: phi.clone(), js });
            }
        }
        for m in &mut out {
            m.sort();
        }
        out
    }

    /// `beta_i = sum_u C(max(u) - 1, i)`.
    pub fn ek_betti_numbers(&self) -> Vec<usize> {
        let top = self.maps.iter().map(|phi| phi.get(self.d - 1) as usize - 1).max().unwrap_or(0);
        (0..=top)
            .map(|i| {
                self.maps
                    .iter()
                    .map(|phi| binomial(phi.get(self.d - 1) as usize - 1, i))
                    .sum()
            })
            .collect()
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, t| acc * (n - t) / (t + 1))
}

/// The position `p` in `1..=d` with `phi(p - 1) <= j < phi(p)`, where `phi(0) = 1`.
pub fn pt_of(phi: &IsotoneMap, j: u32) -> Result<usize> {
    let d = phi.values().len();
    if d == 0 || j < 1 || j >= phi.get(d - 1) {
        return Err(Error::OutOfRange(j));
    }
    (1..=d)
        .find(|&p| {
            let prev = if p == 1 { 1 } else { phi.get(p - 2) };
            prev <= j && j < phi.get(p - 1)
        })
        .ok_or(Error::OutOfRange(j))
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

type Terms = Vec<(EkGenerator, i64)>;

fn build(ideal: &StableIdeal, terms: impl Fn(&EkGenerator) -> Terms) -> Result<MultigradedComplex> {
    let gens = ideal.generators();
    let mut index: HashMap<&EkGenerator, usize> = HashMap::new();
    for m in &gens {
        for (k, g) in m.iter().enumerate() {
            index.insert(g, k);
        }
    }
    let mut diffs: Vec<SparseMatrix> = (0..gens.len() - 1)
        .map(|i| SparseMatrix::new(gens[i].len(), gens[i + 1].len()))
        .collect();
    for i in 1..gens.len() {
        for (col, g) in gens[i].iter().enumerate() {
            for (target, c) in terms(g) {
                if let Some(&row) = index.get(&target) {
                    diffs[i - 1].add(row, col, c);
                }
            }
        }
    }
    let modules: Vec<Vec<Generator>> = gens
        .iter()
        .map(|m| {
            m.iter()
                .map(|g| Generator {
                    label: g.label(),
                    degree: g.degree(ideal.n),
                })
                .collect()
        })
        .collect();
    let aug = vec![1; modules[0].len()];
    MultigradedComplex::new(ideal.names(), modules, diffs, Some(aug))
}

fn dropping(js: &[u32], t: usize) -> Vec<u32> {
    js.iter()
        .enumerate()
        .filter(|&(s, _)| s != t)
        .map(|(_, &j)| j)
        .collect()
}

/// The Eliahou-Kervaire resolution, differential `d - mu`.
pub fn ek_resolution(ideal: &StableIdeal) -> Result<MultigradedComplex> {
    let d = ideal.d;
    build(ideal, |g| {
        let mut out = Vec::new();
        for (k, &jt) in g.js.iter().enumerate() {
            let t = k + 1;
            let rest = dropping(&g.js, k);
            out.push((
                EkGenerator {
                    phi: g.phi.clone(),
                    js: rest.clone(),
                },
                sign(t),
            ));
            let mut values: Vec<u32> = g.phi.values()[..d - 1].to_vec();
            values.push(jt);
            values.sort_unstable();
            let phi2 = IsotoneMap(values);
            let well_defined = ideal.contains_map(&phi2)
                && rest.last().is_none_or(|&j| j < phi2.get(d - 1));
            if well_defined {
                out.push((EkGenerator { phi: phi2, js: rest }, -sign(t)));
            }
        }
        out
    })
}

/// The co-letterplace differential `d' + mu'` written in `(m_phi; js)` form.
pub fn colp_resolution(ideal: &StableIdeal) -> Result<MultigradedComplex> {
    build(ideal, |g| {
        let mut out = Vec::new();
        for (k, &jt) in g.js.iter().enumerate() {
            let t = k + 1;
            let p = pt_of(&g.phi, jt).expect("j_t below phi(d)");
            let rest = dropping(&g.js, k);
            out.push((
                EkGenerator {
                    phi: g.phi.clone(),
                    js: rest.clone(),
                },
                sign(p + t),
            ));
            let bound = g.phi.get(p - 1);
            let maximal = g.js.get(k + 1).is_none_or(|&next| bound <= next);
            if maximal {
                let mut phi1 = g.phi.clone();
                phi1.0[p - 1] = jt;
                out.push((EkGenerator { phi: phi1, js: rest }, sign(p + t - 1)));
            }
        }
        out
    })
}

/// Substitutes `x_{i,j} -> x_j` in a resolution over `[d] x [n]` and relabels
/// each `Gamma(phi) u D` as `(m_phi; p_2(D))`.
pub fn dehomogenize(c: &MultigradedComplex, space: &HomSpace) -> Result<MultigradedComplex> {
    if !space.poset().is_declared_chain() {
        return Err(Error::NotAChain);
    }
    let n = space.n() as usize;
    let vars = space.vars();
    if c.nvars() != vars.len() {
        return Err(Error::VarSetMismatch);
    }
    let target: Vec<usize> = (0..vars.len()).map(|k| vars.var(k).level as usize - 1).collect();
    let mapped = c.map_variables(variable_names(n), &target)?;
    let modules: Vec<Vec<Generator>> = mapped
        .modules()
        .iter()
        .map(|m| {
            m.iter()
                .map(|g| Generator {
                    label: relabel(&g.label, space),
                    degree: g.degree.clone(),
                })
                .collect()
        })
        .collect();
    Ok(MultigradedComplex::new(
        mapped.names().to_vec(),
        modules,
        mapped.diffs().to_vec(),
        mapped.augmentation().map(<[i64]>::to_vec),
    )?)
}

fn relabel(label: &GenLabel, space: &HomSpace) -> GenLabel {
    match label {
        GenLabel::Staircase { graph, extra, .. } => {
            let vars = space.vars();
            let mut phi = vec![0u32; space.poset().len()];
            for k in graph.iter() {
                let v = vars.var(k);
                phi[v.elem] = v.level;
            }
            let mut js: Vec<u32> = extra.iter().map(|k| vars.var(k).level).collect();
            js.sort_unstable();
            GenLabel::Ek { phi, js }
        }
        other => other.clone(),
    }
}

/// `dehomogenize(coletterplace_resolution(J))` for the poset ideal of `ideal`.
pub fn dehomogenized_coletterplace(ideal: &StableIdeal) -> Result<MultigradedComplex> {
    let j = ideal.to_poset_ideal();
    dehomogenize(&coletterplace_resolution(&j)?, j.space())
}
