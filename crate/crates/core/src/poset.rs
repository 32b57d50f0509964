//! Finite posets, isotone maps into chains, and poset ideals of `Hom(P, [n])`.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::vars::VarSet;

/// A finite poset. Declaration order of the elements is a fixed total order
/// used for variable indexing and signs.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    names: Vec<String>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds the poset whose order is the reflexive-transitive closure of `covers`,
    /// where `(a, b)` means `a < b`.
    pub fn from_covers<S: AsRef<str>, T: AsRef<str>, U: AsRef<str>>(
        names: &[S],
        covers: &[(T, U)],
    ) -> Result<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateElement(n.clone()));
            }
        }
        let lookup = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let m = names.len();
        let mut leq = vec![vec![false; m]; m];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in covers {
            let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if a == b {
                return Err(Error::CycleDetected(names[a].clone(), names[b].clone()));
            }
            leq[a][b] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if leq[i][k] {
                    for j in 0..m {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..m {
            for j in (i + 1)..m {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::CycleDetected(names[i].clone(), names[j].clone()));
                }
            }
        }
        Ok(Poset { names, leq })
    }

    /// Elements `p1 < p2 < ... < pm`.
    pub fn chain(m: usize) -> Self {
        let names: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
        let covers: Vec<(String, String)> = names
            .windows(2)
            .map(|w| (w[0].clone(), w[1].clone()))
            .collect();
        Self::from_covers(&names, &covers).expect("chain is acyclic")
    }

    /// `m` pairwise incomparable elements.
    pub fn antichain(m: usize) -> Self {
        let names: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
        Self::from_covers::<_, &str, &str>(&names, &[]).expect("antichain is acyclic")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn leq(&self, p: usize, q: usize) -> bool {
        self.leq[p][q]
    }

    pub fn lt(&self, p: usize, q: usize) -> bool {
        p != q && self.leq[p][q]
    }

    pub fn is_antichain(&self) -> bool {
        (0..self.len()).all(|p| (0..self.len()).all(|q| p == q || !self.leq[p][q]))
    }

    /// True when the declaration order is itself the order of a chain.
    pub fn is_declared_chain(&self) -> bool {
        (0..self.len()).all(|p| ((p + 1)..self.len()).all(|q| self.leq[p][q]))
    }

    /// Cover pairs `(p, q)`: `p < q` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let m = self.len();
        let mut out = Vec::new();
        for p in 0..m {
            for q in 0..m {
                if self.lt(p, q) && !(0..m).any(|r| self.lt(p, r) && self.lt(r, q)) {
                    out.push((p, q));
                }
            }
        }
        out
    }

    fn relabeled(&self, perm: &[usize]) -> Vec<bool> {
        // perm[new] = old
        let m = self.len();
        let mut code = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                code.push(self.leq[perm[i]][perm[j]]);
            }
        }
        code
    }
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<String> = self
            .covers()
            .into_iter()
            .map(|(p, q)| format!("{}<{}", self.names[p], self.names[q]))
            .collect();
        write!(f, "Poset({} | {})", self.names.join(" "), covers.join(" "))
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(m - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, m - 1);
            out.push(p);
        }
    }
    out
}

/// One representative of every isomorphism class of posets on `m` elements,
/// named `p1..pm` and listed in a deterministic order.
pub fn all_posets(m: usize) -> Vec<Poset> {
    let perms = permutations(m);
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (0..m).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut classes: BTreeSet<Vec<bool>> = BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let mut leq = vec![vec![false; m]; m];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mask >> b & 1 == 1 {
                leq[i][j] = true;
            }
        }
        let antisym = (0..m).all(|i| (0..m).all(|j| i == j || !(leq[i][j] && leq[j][i])));
        let trans = (0..m).all(|i| {
            (0..m).all(|j| !leq[i][j] || (0..m).all(|k| !leq[j][k] || leq[i][k]))
        });
        if !(antisym && trans) {
            continue;
        }
        let names: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
        let poset = Poset { names, leq };
        let canon = perms
            .iter()
            .map(|perm| poset.relabeled(perm))
            .max()
            .expect("at least one permutation");
        classes.insert(canon);
    }
    classes
        .into_iter()
        .rev()
        .map(|code| {
            let names: Vec<String> = (1..=m).map(|i| format!("p{i}")).collect();
            let leq = (0..m).map(|i| code[i * m..(i + 1) * m].to_vec()).collect();
            Poset { names, leq }
        })
        .collect()
}

/// An isotone map `P -> [n]`, values indexed by declaration order, 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsotoneMap(pub Vec<u32>);

impl IsotoneMap {
    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn get(&self, p: usize) -> u32 {
        self.0[p]
    }

    pub fn constant(len: usize, v: u32) -> Self {
        IsotoneMap(vec![v; len])
    }

    /// Pointwise order.
    pub fn leq(&self, other: &IsotoneMap) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl fmt::Debug for IsotoneMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The poset `Hom(P, [n])` together with its variable grid `P x [n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    poset: Arc<Poset>,
    n: u32,
    vars: Arc<VarSet>,
}

impl HomSpace {
    pub fn new(poset: Poset, n: u32) -> Result<Self> {
        Self::from_arc(Arc::new(poset), n)
    }

    pub fn from_arc(poset: Arc<Poset>, n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidChain);
        }
        let vars = Arc::new(VarSet::grid(poset.names(), n)?);
        Ok(HomSpace { poset, n, vars })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn poset_arc(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    /// Index of `x_{p,i}` in the grid.
    pub fn var(&self, p: usize, i: u32) -> usize {
        p * self.n as usize + (i as usize - 1)
    }

    pub fn check(&self, phi: &IsotoneMap) -> Result<()> {
        let m = self.poset.len();
        if phi.0.len() != m || phi.0.iter().any(|&v| v == 0 || v > self.n) {
            return Err(Error::MalformedMap(phi.0.clone()));
        }
        if !self.is_isotone(phi) {
            return Err(Error::NotIsotone(phi.0.clone()));
        }
        Ok(())
    }

    pub fn is_isotone(&self, phi: &IsotoneMap) -> bool {
        let m = self.poset.len();
        (0..m).all(|p| (0..m).all(|q| !self.poset.leq(p, q) || phi.0[p] <= phi.0[q]))
    }

    /// All isotone maps in lexicographic order of their value vectors.
    pub fn enumerate(&self) -> Vec<IsotoneMap> {
        let m = self.poset.len();
        let mut out = Vec::new();
        let mut vals = vec![0u32; m];
        self.backtrack(0, &mut vals, &mut out);
        out
    }

    fn backtrack(&self, k: usize, vals: &mut Vec<u32>, out: &mut Vec<IsotoneMap>) {
        if k == vals.len() {
            out.push(IsotoneMap(vals.clone()));
            return;
        }
        for v in 1..=self.n {
            let ok = (0..k).all(|q| {
                (!self.poset.lt(q, k) || vals[q] <= v) && (!self.poset.lt(k, q) || v <= vals[q])
            });
            if ok {
                vals[k] = v;
                self.backtrack(k + 1, vals, out);
            }
        }
    }

    pub fn size(&self) -> usize {
        self.enumerate().len()
    }

    pub fn bottom(&self) -> IsotoneMap {
        IsotoneMap::constant(self.poset.len(), 1)
    }

    pub fn top(&self) -> IsotoneMap {
        IsotoneMap::constant(self.poset.len(), self.n)
    }

    /// `phi_-(p) = max { phi(q) : q < p }`, with `max {} = 1`.
    pub fn phi_minus(&self, phi: &IsotoneMap) -> IsotoneMap {
        let m = self.poset.len();
        IsotoneMap(
            (0..m)
                .map(|p| {
                    (0..m)
                        .filter(|&q| self.poset.lt(q, p))
                        .map(|q| phi.0[q])
                        .max()
                        .unwrap_or(1)
                })
                .collect(),
        )
    }

    /// `phi^+(p) = min { phi(q) : p < q }`, with `min {} = n`.
    pub fn phi_plus(&self, phi: &IsotoneMap) -> IsotoneMap {
        let m = self.poset.len();
        IsotoneMap(
            (0..m)
                .map(|p| {
                    (0..m)
                        .filter(|&q| self.poset.lt(p, q))
                        .map(|q| phi.0[q])
                        .min()
                        .unwrap_or(self.n)
                })
                .collect(),
        )
    }

    pub fn upper_normalization(&self, phi: &IsotoneMap) -> IsotoneMap {
        self.phi_plus(&self.phi_minus(phi))
    }

    pub fn lower_normalization(&self, phi: &IsotoneMap) -> IsotoneMap {
        self.phi_minus(&self.phi_plus(phi))
    }

    pub fn is_upper_normal(&self, phi: &IsotoneMap) -> bool {
        &self.upper_normalization(phi) == phi
    }

    pub fn is_lower_normal(&self, phi: &IsotoneMap) -> bool {
        &self.lower_normalization(phi) == phi
    }

    /// Enumerates poset ideals (including the empty one) in a deterministic
    /// order, stopping after `limit` of them.
    pub fn poset_ideals(&self, limit: Option<usize>) -> Vec<PosetIdeal> {
        let elems = self.enumerate();
        let lower = lower_covers(&elems);
        let mut out = Vec::new();
        let mut chosen = vec![false; elems.len()];
        let limit = limit.unwrap_or(usize::MAX);
        self.ideal_rec(0, &elems, &lower, &mut chosen, &mut out, limit);
        out
    }

    fn ideal_rec(
        &self,
        k: usize,
        elems: &[IsotoneMap],
        lower: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<PosetIdeal>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == elems.len() {
            let members: BTreeSet<IsotoneMap> = elems
                .iter()
                .zip(chosen.iter())
                .filter(|(_, &c)| c)
                .map(|(e, _)| e.clone())
                .collect();
            out.push(PosetIdeal::from_members_unchecked(self.clone(), members));
            return;
        }
        chosen[k] = false;
        self.ideal_rec(k + 1, elems, lower, chosen, out, limit);
        if lower[k].iter().all(|&j| chosen[j]) {
            chosen[k] = true;
            self.ideal_rec(k + 1, elems, lower, chosen, out, limit);
            chosen[k] = false;
        }
    }

    /// Nonempty poset ideals: all of them when there are at most `cap`,
    /// otherwise `cap` distinct ones drawn by a seeded generator. The bottom
    /// and the full ideal are always part of a sample.
    pub fn nonempty_ideals_capped(&self, cap: usize, seed: u64) -> Vec<PosetIdeal> {
        let mut all = self.poset_ideals(Some(cap + 2));
        all.retain(|j| !j.is_empty());
        if all.len() <= cap {
            return all;
        }
        let elems = self.enumerate();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen: BTreeSet<Vec<IsotoneMap>> = BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |j: PosetIdeal, out: &mut Vec<PosetIdeal>| {
            if seen.insert(j.maximal().to_vec()) {
                out.push(j);
            }
        };
        push(
            PosetIdeal::generated_by(self, &[self.bottom()]).expect("bottom is isotone"),
            &mut out,
        );
        push(PosetIdeal::full(self), &mut out);
        let max_gens = self.poset.len().max(2) + 2;
        let mut attempts = 0usize;
        while out.len() < cap && attempts < cap * 200 {
            attempts += 1;
            let k = rng.gen_range(1..=max_gens);
            let gens: Vec<IsotoneMap> = (0..k)
                .map(|_| elems[rng.gen_range(0..elems.len())].clone())
                .collect();
            let j = PosetIdeal::generated_by(self, &gens).expect("enumerated maps are isotone");
            push(j, &mut out);
        }
        if out.len() < cap {
            for j in all {
                if out.len() >= cap {
                    break;
                }
                push(j, &mut out);
            }
        }
        out
    }
}

fn lower_covers(elems: &[IsotoneMap]) -> Vec<Vec<usize>> {
    elems
        .iter()
        .map(|psi| {
            elems
                .iter()
                .enumerate()
                .filter(|(_, phi)| {
                    phi.leq(psi) && {
                        let diff: u32 = psi.0.iter().zip(&phi.0).map(|(a, b)| a - b).sum();
                        diff == 1
                    }
                })
                .map(|(j, _)| j)
                .collect()
        })
        .collect()
}

/// A downward closed subset of `Hom(P, [n])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PosetIdeal {
    space: HomSpace,
    members: BTreeSet<IsotoneMap>,
    maximal: Vec<IsotoneMap>,
}

impl PosetIdeal {
    /// Downward closure of `gens` in the pointwise order.
    pub fn generated_by(space: &HomSpace, gens: &[IsotoneMap]) -> Result<Self> {
        for g in gens {
            space.check(g)?;
        }
        let members: BTreeSet<IsotoneMap> = space
            .enumerate()
            .into_iter()
            .filter(|phi| gens.iter().any(|g| phi.leq(g)))
            .collect();
        Ok(Self::from_members_unchecked(space.clone(), members))
    }

    /// Validates that `members` is downward closed.
    pub fn from_members(space: &HomSpace, members: &[IsotoneMap]) -> Result<Self> {
        for g in members {
            space.check(g)?;
        }
        let set: BTreeSet<IsotoneMap> = members.iter().cloned().collect();
        let closed = space
            .enumerate()
            .iter()
            .all(|phi| set.contains(phi) || !set.iter().any(|psi| phi.leq(psi)));
        if !closed {
            return Err(Error::Invalid("member set is not downward closed".into()));
        }
        Ok(Self::from_members_unchecked(space.clone(), set))
    }

    pub fn full(space: &HomSpace) -> Self {
        Self::from_members_unchecked(space.clone(), space.enumerate().into_iter().collect())
    }

    pub fn empty(space: &HomSpace) -> Self {
        Self::from_members_unchecked(space.clone(), BTreeSet::new())
    }

    fn from_members_unchecked(space: HomSpace, members: BTreeSet<IsotoneMap>) -> Self {
        let maximal = members
            .iter()
            .filter(|phi| !members.iter().any(|psi| psi != *phi && phi.leq(psi)))
            .cloned()
            .collect();
        PosetIdeal {
            space,
            members,
            maximal,
        }
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn poset(&self) -> &Poset {
        self.space.poset()
    }

    pub fn n(&self) -> u32 {
        self.space.n()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, phi: &IsotoneMap) -> bool {
        self.members.contains(phi)
    }

    /// Members in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = &IsotoneMap> {
        self.members.iter()
    }

    pub fn maximal(&self) -> &[IsotoneMap] {
        &self.maximal
    }

    /// `Hom(P, [n])` minus the ideal, in lexicographic order.
    pub fn complement(&self) -> Vec<IsotoneMap> {
        self.space
            .enumerate()
            .into_iter()
            .filter(|phi| !self.members.contains(phi))
            .collect()
    }

    pub fn is_full(&self) -> bool {
        self.members.len() == self.space.size()
    }

    /// Pointwise maximum of the members: the join in `Hom(P, [n])`.
    pub fn hull(&self) -> Result<IsotoneMap> {
        let m = self.poset().len();
        if self.members.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Ok(IsotoneMap(
            (0..m)
                .map(|p| self.members.iter().map(|phi| phi.0[p]).max().unwrap_or(1))
                .collect(),
        ))
    }
}
