//! Multigraded free complexes, the explicit resolutions, and their verification.
//!
//! A differential entry is a signed monomial whose exponent is always the
//! difference of the column and row degrees, so only the integer coefficient is
//! stored. Composition of differentials then reduces to integer matrix products.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::homology::{is_homology_ball, BettiTable};
use crate::ideal::SqfMonomialIdeal;
use crate::linalg::{Field, SparseMatrix, FAST_PRIME};
use crate::poset::PosetIdeal;
use crate::simplicial::{FVector, SimplicialComplex};
use crate::staircase::admissible_sets;
use crate::vars::{Multidegree, SqfMonomial};

/// Prime used for the fast exactness pass before any rational elimination.

/// What a generator stands for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenLabel {
    /// `A = graph(phi) u D` for an admissible set `A`.
    Staircase {
        set: SqfMonomial,
        graph: SqfMonomial,
        extra: SqfMonomial,
    },
    /// A face of a simplicial complex.
    Face(SqfMonomial),
    /// `(m_phi; j_1, ..., j_i)`.
    Ek { phi: Vec<u32>, js: Vec<u32> },
    /// A nonempty subset of the generators, by position.
    Taylor(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub label: GenLabel,
    pub degree: Multidegree,
}

/// A complex `F_0 <- F_1 <- ...` of free multigraded modules with an
/// augmentation `F_0 -> S` sending each generator to a multiple of its degree
/// monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct MultigradedComplex {
    names: Vec<String>,
    modules: Vec<Vec<Generator>>,
    /// `diffs[i]` maps `F_{i+1}` to `F_i`; rows index `F_i`, columns `F_{i+1}`.
    diffs: Vec<SparseMatrix>,
    augmentation: Option<Vec<i64>>,
    index_offset: usize,
}

/// `#{i in r : i < a}` in the fixed variable order.
pub fn alpha(a: usize, r: SqfMonomial) -> usize {
    r.count_below(a)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

impl MultigradedComplex {
    pub fn new(
        names: Vec<String>,
        modules: Vec<Vec<Generator>>,
        diffs: Vec<SparseMatrix>,
        augmentation: Option<Vec<i64>>,
    ) -> Result<Self> {
        let mut modules = modules;
        while modules.last().is_some_and(Vec::is_empty) && modules.len() > 1 {
            modules.pop();
        }
        let mut diffs = diffs;
        diffs.truncate(modules.len().saturating_sub(1));
        if diffs.len() + 1 != modules.len().max(1) {
            return Err(Error::Internal("differential count mismatch".into()));
        }
        for (i, d) in diffs.iter().enumerate() {
            if d.nrows() != modules[i].len() || d.ncols() != modules[i + 1].len() {
                return Err(Error::Internal(format!("differential {i} has wrong shape")));
            }
        }
        if let Some(aug) = &augmentation {
            if aug.len() != modules.first().map_or(0, Vec::len) {
                return Err(Error::Internal("augmentation has wrong length".into()));
            }
        }
        if modules
            .iter()
            .flatten()
            .any(|g| g.degree.nvars() != names.len())
        {
            return Err(Error::Internal("generator degree has wrong length".into()));
        }
        Ok(MultigradedComplex {
            names,
            modules,
            diffs,
            augmentation,
            index_offset: 0,
        })
    }

    pub fn zero(names: Vec<String>) -> Self {
        MultigradedComplex {
            names,
            modules: vec![vec![]],
            diffs: vec![],
            augmentation: Some(vec![]),
            index_offset: 0,
        }
    }

    pub fn with_index_offset(mut self, offset: usize) -> Self {
        self.index_offset = offset;
        self
    }

    /// Added to a homological index to recover the set-size indexing.
    pub fn index_offset(&self) -> usize {
        self.index_offset
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.iter().all(Vec::is_empty)
    }

    pub fn module(&self, i: usize) -> &[Generator] {
        self.modules.get(i).map_or(&[], Vec::as_slice)
    }

    pub fn modules(&self) -> &[Vec<Generator>] {
        &self.modules
    }

    pub fn diff(&self, i: usize) -> Option<&SparseMatrix> {
        self.diffs.get(i)
    }

    pub fn diffs(&self) -> &[SparseMatrix] {
        &self.diffs
    }

    pub fn augmentation(&self) -> Option<&[i64]> {
        self.augmentation.as_deref()
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    /// Position of the generator with the given label in module `i`.
    pub fn position(&self, i: usize, label: &GenLabel) -> Option<usize> {
        self.module(i).iter().position(|g| &g.label == label)
    }

    /// Replaces the coefficient of one differential entry.
    pub fn set_entry(&mut self, i: usize, row: usize, col: usize, val: i64) {
        let cur = self.diffs[i].get(row, col);
        self.diffs[i].add(row, col, val - cur);
    }

    /// Monomial of entry `(row, col)` of `diffs[i]`, if the degrees are compatible.
    pub fn entry_monomial(&self, i: usize, row: usize, col: usize) -> Option<Multidegree> {
        self.modules[i + 1][col]
            .degree
            .checked_sub(&self.modules[i][row].degree)
    }

    /// Every nonzero entry keyed by `(index, row label, column label)`.
    pub fn labeled_entries(&self) -> BTreeMap<(usize, GenLabel, GenLabel), i64> {
        let mut out = BTreeMap::new();
        for (i, d) in self.diffs.iter().enumerate() {
            for r in 0..d.nrows() {
                for &(c, v) in d.row(r) {
                    out.insert(
                        (
                            i,
                            self.modules[i][r].label.clone(),
                            self.modules[i + 1][c].label.clone(),
                        ),
                        v,
                    );
                }
            }
        }
        out
    }

    /// Generator labels and degrees per module, sorted by label.
    pub fn labeled_generators(&self) -> Vec<BTreeMap<GenLabel, Multidegree>> {
        self.modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|g| (g.label.clone(), g.degree.clone()))
                    .collect()
            })
            .collect()
    }

    /// Substitutes variables: `target[k]` is the new index of variable `k`.
    pub fn map_variables(&self, names: Vec<String>, target: &[usize]) -> Result<Self> {
        if target.len() != self.nvars() || target.iter().any(|&t| t >= names.len()) {
            return Err(Error::Invalid("variable substitution out of range".into()));
        }
        let map = |d: &Multidegree| {
            let mut out = Multidegree::zero(names.len());
            for (k, &e) in d.0.iter().enumerate() {
                out.0[target[k]] += e;
            }
            out
        };
        let modules = self
            .modules
            .iter()
            .map(|m| {
                m.iter()
                    .map(|g| Generator {
                        label: g.label.clone(),
                        degree: map(&g.degree),
                    })
                    .collect()
            })
            .collect();
        Ok(MultigradedComplex {
            names: names.clone(),
            modules,
            diffs: self.diffs.clone(),
            augmentation: self.augmentation.clone(),
            index_offset: self.index_offset,
        })
    }
}

impl fmt::Debug for MultigradedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultigradedComplex(ranks {:?})", self.ranks())
    }
}

fn sqf_degree(nvars: usize, s: SqfMonomial) -> Multidegree {
    s.to_multidegree(nvars)
}

/// The linear resolution of `L(J)`: one generator per admissible set `A`, in
/// homological index `|A| - |P|`, with
/// `e_A -> sum_{a in A_2} (-1)^{alpha(a, A)} x_a e_{A \ a}`.
pub fn coletterplace_resolution(j: &PosetIdeal) -> Result<MultigradedComplex> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let space = j.space();
    let vars = space.vars();
    let nv = vars.len();
    let m = space.poset().len();
    let n = space.n() as usize;
    let mut sets = admissible_sets(j);
    sets.sort_by(|a, b| a.set.cmp(&b.set));
    let top = sets.iter().map(|a| a.set.len() - m).max().unwrap_or(0);
    let mut modules: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<u64, (usize, usize)> = HashMap::new();
    for a in &sets {
        let i = a.set.len() - m;
        index.insert(a.set.bits(), (i, modules[i].len()));
        modules[i].push(Generator {
            label: GenLabel::Staircase {
                set: a.set,
                graph: a.set.difference(a.extra),
                extra: a.extra,
            },
            degree: sqf_degree(nv, a.set),
        });
    }
    let mut diffs: Vec<SparseMatrix> = (0..top)
        .map(|i| SparseMatrix::new(modules[i].len(), modules[i + 1].len()))
        .collect();
    for a in &sets {
        let (i, col) = index[&a.set.bits()];
        if i == 0 {
            continue;
        }
        for p in 0..m {
            let fiber = SqfMonomial::from_bits(((1u64 << n) - 1) << (p * n)).intersection(a.set);
            if fiber.len() < 2 {
                continue;
            }
            for x in fiber.iter() {
                let b = a.set.without(x);
                let &(bi, row) = index
                    .get(&b.bits())
                    .ok_or_else(|| Error::Internal(format!("{b:?} is not admissible")))?;
                debug_assert_eq!(bi, i - 1);
                diffs[i - 1].add(row, col, sign(alpha(x, a.set)));
            }
        }
    }
    let aug = vec![1; modules[0].len()];
    let names = (0..nv).map(|k| vars.var_name(k)).collect();
    Ok(MultigradedComplex::new(names, modules, diffs, Some(aug))?.with_index_offset(m))
}

/// The cochain maps of `L(L(J|B))`: `mu[i]` sends sets of size `|P| + i` to
/// sets of size `|P| + i + 1` by `m_A -> sum (-1)^{alpha(a, A)} x_a m_{A u a}`.
/// Rows and columns follow the generator order of [`coletterplace_resolution`].
pub fn ljb_cochain_maps(j: &PosetIdeal) -> Result<Vec<SparseMatrix>> {
    let res = coletterplace_resolution(j)?;
    let nv = res.nvars();
    let mut index: HashMap<u64, (usize, usize)> = HashMap::new();
    for (i, m) in res.modules().iter().enumerate() {
        for (k, g) in m.iter().enumerate() {
            let s = g.degree.to_sqf().expect("squarefree degree");
            index.insert(s.bits(), (i, k));
        }
    }
    let mut mu: Vec<SparseMatrix> = (0..res.len().saturating_sub(1))
        .map(|i| SparseMatrix::new(res.module(i + 1).len(), res.module(i).len()))
        .collect();
    for (i, m) in res.modules().iter().enumerate() {
        if i + 1 >= res.len() {
            break;
        }
        for (k, g) in m.iter().enumerate() {
            let a = g.degree.to_sqf().expect("squarefree degree");
            for x in a.complement(nv).iter() {
                if let Some(&(_, row)) = index.get(&a.with(x).bits()) {
                    mu[i].add(row, k, sign(alpha(x, a)));
                }
            }
        }
    }
    Ok(mu)
}

/// Checks `(nu(f), g) = (f, mu(g))` on generators: each cochain map is the
/// transpose of the corresponding differential.
pub fn pairing_check(res: &MultigradedComplex, mu: &[SparseMatrix]) -> bool {
    mu.len() == res.diffs().len()
        && mu
            .iter()
            .zip(res.diffs())
            .all(|(m, d)| *m == d.transpose())
}

fn orientation(
    facets: &[SqfMonomial],
    ridges: impl Fn(SqfMonomial) -> bool,
) -> Vec<i64> {
    // Solve sum_v (-1)^{alpha(v, R)} s_{R u v} = 0 over every ridge R with two facets.
    let mut by_ridge: HashMap<u64, Vec<(usize, usize)>> = HashMap::new();
    for (k, f) in facets.iter().enumerate() {
        for v in f.iter() {
            let r = f.without(v);
            if ridges(r) {
                by_ridge.entry(r.bits()).or_default().push((k, v));
            }
        }
    }
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); facets.len()];
    for (rb, inc) in &by_ridge {
        if let [(k1, v1), (k2, v2)] = inc.as_slice() {
            let r = SqfMonomial::from_bits(*rb);
            let rel = -sign(alpha(*v1, r)) * sign(alpha(*v2, r));
            adj[*k1].push((*k2, rel));
            adj[*k2].push((*k1, rel));
        }
    }
    let mut s = vec![0i64; facets.len()];
    for start in 0..facets.len() {
        if s[start] != 0 {
            continue;
        }
        s[start] = 1;
        let mut stack = vec![start];
        while let Some(k) = stack.pop() {
            for &(l, rel) in &adj[k] {
                if s[l] == 0 {
                    s[l] = s[k] * rel;
                    stack.push(l);
                }
            }
        }
    }
    s
}

fn face_complex(
    complex: &SimplicialComplex,
    keep: impl Fn(SqfMonomial) -> bool,
) -> Result<MultigradedComplex> {
    let vars = complex.vars();
    let nv = vars.len();
    let d = complex.dim();
    let names: Vec<String> = (0..nv).map(|k| vars.var_name(k)).collect();
    if d < -1 {
        return Ok(MultigradedComplex::zero(names));
    }
    let top = (d + 1) as usize;
    let faces: Vec<SqfMonomial> = complex.faces().into_iter().filter(|f| keep(*f)).collect();
    // index j holds faces of size top - j
    let mut modules: Vec<Vec<Generator>> = vec![Vec::new(); top + 1];
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut by_index: Vec<Vec<SqfMonomial>> = vec![Vec::new(); top + 1];
    for f in faces {
        let j = top - f.len();
        index.insert(f.bits(), modules[j].len());
        by_index[j].push(f);
        modules[j].push(Generator {
            label: GenLabel::Face(f),
            degree: sqf_degree(nv, f.complement(nv)),
        });
    }
    let mut diffs: Vec<SparseMatrix> = (0..top)
        .map(|j| SparseMatrix::new(modules[j].len(), modules[j + 1].len()))
        .collect();
    for j in 1..=top {
        for (col, r) in by_index[j].iter().enumerate() {
            for v in r.complement(nv).iter() {
                if let Some(&row) = index.get(&r.with(v).bits()) {
                    diffs[j - 1].add(row, col, sign(alpha(v, *r)));
                }
            }
        }
    }
    let ridge_set: BTreeSet<u64> = by_index.get(1).map_or_else(BTreeSet::new, |v| {
        v.iter().map(|f| f.bits()).collect()
    });
    let aug = orientation(&by_index[0], |r| ridge_set.contains(&r.bits()));
    MultigradedComplex::new(names, modules, diffs, Some(aug))
}

/// The enriched cochain complex: faces `F` in index `d + 1 - |F|` with
/// generators in degree `F^c`.
pub fn enriched_cochain(complex: &SimplicialComplex) -> Result<MultigradedComplex> {
    face_complex(complex, |_| true)
}

/// The resolution of the dual of the Stanley-Reisner ideal of a homology ball:
/// the enriched cochain complex restricted to interior faces.
pub fn ball_resolution(complex: &SimplicialComplex, field: Field) -> Result<MultigradedComplex> {
    let (ok, boundary) = is_homology_ball(complex, field)?;
    if !ok {
        return Err(Error::NotABall);
    }
    face_complex(complex, |f| !boundary.contains(f))
}

/// `ranks_j = f_{d-j}(Delta) - f_{d-j}(boundary)`, trailing zeros removed.
pub fn ball_resolution_ranks(ball: &FVector, boundary: &FVector) -> Vec<u64> {
    let d = ball.0.len() as isize - 2;
    let mut out: Vec<u64> = (0..=d + 1)
        .map(|j| ball.get(d - j).saturating_sub(boundary.get(d - j)))
        .collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// The Taylor complex of a squarefree ideal.
pub fn taylor_complex(ideal: &SqfMonomialIdeal) -> Result<MultigradedComplex> {
    let gens = ideal.gens();
    let k = gens.len();
    if k > 20 {
        return Err(Error::TooManyVariables(k, 20));
    }
    let nv = ideal.vars().len();
    let names: Vec<String> = (0..nv).map(|v| ideal.vars().var_name(v)).collect();
    if k == 0 {
        return Ok(MultigradedComplex::zero(names));
    }
    let mut modules: Vec<Vec<Generator>> = vec![Vec::new(); k];
    let mut index: HashMap<u32, usize> = HashMap::new();
    let mut subsets: Vec<u32> = (1u32..1 << k).collect();
    subsets.sort_by_key(|s| (s.count_ones(), s.reverse_bits()));
    for &s in &subsets {
        let members: Vec<usize> = (0..k).filter(|b| s >> b & 1 == 1).collect();
        let lcm = members
            .iter()
            .fold(SqfMonomial::empty(), |acc, &b| acc.union(gens[b]));
        let i = members.len() - 1;
        index.insert(s, modules[i].len());
        modules[i].push(Generator {
            label: GenLabel::Taylor(members),
            degree: sqf_degree(nv, lcm),
        });
    }
    let mut diffs: Vec<SparseMatrix> = (0..k - 1)
        .map(|i| SparseMatrix::new(modules[i].len(), modules[i + 1].len()))
        .collect();
    for &s in &subsets {
        let i = s.count_ones() as usize - 1;
        if i == 0 {
            continue;
        }
        let col = index[&s];
        for (pos, b) in (0..k).filter(|b| s >> b & 1 == 1).enumerate() {
            let row = index[&(s & !(1 << b))];
            diffs[i - 1].add(row, col, sign(pos));
        }
    }
    let aug = vec![1; modules[0].len()];
    MultigradedComplex::new(names, modules, diffs, Some(aug))
}

/// Integer product `a * b`.
fn multiply(a: &SparseMatrix, b: &SparseMatrix) -> SparseMatrix {
    let mut out = SparseMatrix::new(a.nrows(), b.ncols());
    for r in 0..a.nrows() {
        let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
        for &(k, v) in a.row(r) {
            for &(c, w) in b.row(k) {
                *acc.entry(c).or_default() += v * w;
            }
        }
        for (c, v) in acc {
            if v != 0 {
                out.add(r, c, v);
            }
        }
    }
    out
}

/// Every entry is homogeneous, consecutive differentials compose to zero, and
/// the augmentation kills the image of the first differential.
pub fn verify_d_squared(c: &MultigradedComplex) -> bool {
    for (i, d) in c.diffs.iter().enumerate() {
        for r in 0..d.nrows() {
            for &(col, _) in d.row(r) {
                if c.entry_monomial(i, r, col).is_none() {
                    return false;
                }
            }
        }
    }
    if c.diffs.windows(2).any(|w| !multiply(&w[0], &w[1]).is_zero()) {
        return false;
    }
    if let (Some(aug), Some(d0)) = (&c.augmentation, c.diffs.first()) {
        let mut row = SparseMatrix::new(1, aug.len());
        for (k, &v) in aug.iter().enumerate() {
            row.add(0, k, v);
        }
        if !multiply(&row, d0).is_zero() {
            return false;
        }
    }
    true
}

/// No differential entry is a nonzero constant.
pub fn is_minimal(c: &MultigradedComplex) -> bool {
    c.diffs.iter().enumerate().all(|(i, d)| {
        (0..d.nrows()).all(|r| {
            d.row(r)
                .iter()
                .all(|&(col, _)| c.module(i)[r].degree != c.module(i + 1)[col].degree)
        })
    })
}

pub fn betti_table(c: &MultigradedComplex) -> Result<BettiTable> {
    if !is_minimal(c) {
        return Err(Error::NotMinimal);
    }
    let mut t = BettiTable::new();
    for (i, m) in c.modules.iter().enumerate() {
        for g in m {
            t.add(i, g.degree.clone(), 1);
        }
    }
    Ok(t)
}

/// Generators of each module lying below `b`.
fn strand_members(c: &MultigradedComplex, below: impl Fn(&Multidegree) -> bool) -> Vec<Vec<usize>> {
    c.modules
        .iter()
        .map(|m| {
            m.iter()
                .enumerate()
                .filter(|(_, g)| below(&g.degree))
                .map(|(k, _)| k)
                .collect()
        })
        .collect()
}

fn strand_homology_of(c: &MultigradedComplex, members: &[Vec<usize>], field: Field) -> Vec<usize> {
    let ranks: Vec<usize> = (0..c.diffs.len())
        .map(|i| {
            if members[i].is_empty() || members[i + 1].is_empty() {
                0
            } else {
                c.diffs[i]
                    .submatrix(&members[i], &members[i + 1])
                    .rank(field)
            }
        })
        .collect();
    (0..members.len())
        .map(|i| {
            let into = if i > 0 { ranks[i - 1] } else { 0 };
            let out = ranks.get(i).copied().unwrap_or(0);
            members[i].len() - into - out
        })
        .collect()
}

/// Homology of the strand at multidegree `b`.
pub fn strand_homology(c: &MultigradedComplex, b: &Multidegree, field: Field) -> Vec<usize> {
    let members = strand_members(c, |d| d.divides(b));
    strand_homology_of(c, &members, field)
}

/// Degrees at which strands can change: lcms of sets of generator degrees.
fn closed_degrees(c: &MultigradedComplex) -> Vec<Multidegree> {
    let degrees: BTreeSet<Multidegree> = c
        .modules
        .iter()
        .flatten()
        .map(|g| g.degree.clone())
        .collect();
    if c.nvars() <= 64 && degrees.iter().all(Multidegree::is_squarefree) {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        for d in &degrees {
            let bits = d.to_sqf().expect("squarefree").bits();
            let extra: Vec<u64> = seen.iter().map(|s| s | bits).collect();
            seen.insert(bits);
            seen.extend(extra);
        }
        return seen
            .into_iter()
            .map(|b| SqfMonomial::from_bits(b).to_multidegree(c.nvars()))
            .collect();
    }
    let mut seen: BTreeSet<Multidegree> = BTreeSet::new();
    for d in &degrees {
        let extra: Vec<Multidegree> = seen.iter().map(|s| s.lcm(d)).collect();
        seen.insert(d.clone());
        seen.extend(extra);
    }
    seen.into_iter().collect()
}

/// Why a complex fails to resolve an ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolveFailure {
    NotAComplex,
    NoAugmentation,
    /// An index-0 generator maps outside the ideal or a minimal generator is missed.
    Augmentation,
    Strand { degree: Multidegree, homology: Vec<usize> },
}

/// Checks that `c` is a free resolution of the ideal with the given generators.
pub fn check_resolves(
    c: &MultigradedComplex,
    ideal_gens: &[Multidegree],
    field: Field,
) -> std::result::Result<(), ResolveFailure> {
    if !verify_d_squared(c) {
        return Err(ResolveFailure::NotAComplex);
    }
    let aug = c.augmentation.as_ref().ok_or(ResolveFailure::NoAugmentation)?;
    let in_ideal = |b: &Multidegree| ideal_gens.iter().any(|g| g.divides(b));
    let f0 = c.module(0);
    if f0.iter().zip(aug).any(|(g, &a)| a != 0 && !in_ideal(&g.degree)) {
        return Err(ResolveFailure::Augmentation);
    }
    let hit = ideal_gens
        .iter()
        .all(|m| f0.iter().zip(aug).any(|(g, &a)| a != 0 && g.degree == *m));
    if !hit {
        return Err(ResolveFailure::Augmentation);
    }
    let degrees = closed_degrees(c);
    let squarefree = c.nvars() <= 64 && degrees.iter().all(Multidegree::is_squarefree);
    let masks: Vec<Vec<u64>> = if squarefree {
        c.modules
            .iter()
            .map(|m| m.iter().map(|g| g.degree.to_sqf().expect("sqf").bits()).collect())
            .collect()
    } else {
        vec![]
    };
    let failure = degrees.par_iter().find_map_first(|b| {
        let members = if squarefree {
            let bb = b.to_sqf().expect("sqf").bits();
            masks
                .iter()
                .map(|m| {
                    m.iter()
                        .enumerate()
                        .filter(|(_, &d)| d & !bb == 0)
                        .map(|(k, _)| k)
                        .collect()
                })
                .collect()
        } else {
            strand_members(c, |d| d.divides(b))
        };
        let want0 = usize::from(in_ideal(b));
        let good = |h: &[usize]| h[0] == want0 && h[1..].iter().all(|&x| x == 0);
        let fast_field = match field {
            Field::Rational => Field::Prime(FAST_PRIME),
            f => f,
        };
        let h = strand_homology_of(c, &members, fast_field);
        if good(&h) {
            return None;
        }
        let h = if fast_field == field {
            h
        } else {
            strand_homology_of(c, &members, field)
        };
        (!good(&h)).then(|| ResolveFailure::Strand {
            degree: b.clone(),
            homology: h,
        })
    });
    match failure {
        Some(f) => Err(f),
        None => Ok(()),
    }
}

pub fn verify_resolves(c: &MultigradedComplex, ideal: &SqfMonomialIdeal, field: Field) -> bool {
    let nv = ideal.vars().len();
    if nv != c.nvars() {
        return false;
    }
    let gens: Vec<Multidegree> = ideal.gens().iter().map(|g| g.to_multidegree(nv)).collect();
    check_resolves(c, &gens, field).is_ok()
}
