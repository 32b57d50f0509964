//! Squarefree monomial ideals, Alexander duality, and the letterplace family.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{HomSpace, IsotoneMap, Poset, PosetIdeal};
use crate::vars::{same_vars, Multidegree, SqfMonomial, VarSet};

/// Up to this many variables the dual may also be found by scanning all subsets.
pub const ENUMERATION_DUAL_LIMIT: usize = 20;

/// A squarefree monomial ideal given by its minimal generators.
#[derive(Clone, PartialEq, Eq)]
pub struct SqfMonomialIdeal {
    vars: Arc<VarSet>,
    gens: Vec<SqfMonomial>,
}

/// Keeps the divisibility-minimal elements, sorted by degree then lex.
pub fn minimalize(mut gens: Vec<SqfMonomial>) -> Vec<SqfMonomial> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<SqfMonomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.is_subset(g)) {
            out.push(g);
        }
    }
    out
}

/// Keeps the inclusion-maximal elements, sorted by degree then lex.
pub fn maximalize(mut sets: Vec<SqfMonomial>) -> Vec<SqfMonomial> {
    sets.sort();
    sets.dedup();
    let mut out: Vec<SqfMonomial> = Vec::with_capacity(sets.len());
    for s in sets.into_iter().rev() {
        if !out.iter().any(|h| s.is_subset(*h)) {
            out.push(s);
        }
    }
    out.sort();
    out
}

impl SqfMonomialIdeal {
    pub fn new(vars: Arc<VarSet>, gens: Vec<SqfMonomial>) -> Self {
        let full = vars.full();
        debug_assert!(gens.iter().all(|g| g.is_subset(full)));
        SqfMonomialIdeal {
            vars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(vars: Arc<VarSet>) -> Self {
        SqfMonomialIdeal { vars, gens: vec![] }
    }

    pub fn unit(vars: Arc<VarSet>) -> Self {
        SqfMonomialIdeal {
            vars,
            gens: vec![SqfMonomial::empty()],
        }
    }

    /// The ideal generated by all variables.
    pub fn maximal(vars: Arc<VarSet>) -> Self {
        let gens = (0..vars.len()).map(SqfMonomial::singleton).collect();
        Self::new(vars, gens)
    }

    pub fn vars(&self) -> &Arc<VarSet> {
        &self.vars
    }

    pub fn gens(&self) -> &[SqfMonomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.first().is_some_and(|g| g.is_empty())
    }

    pub fn contains(&self, m: SqfMonomial) -> bool {
        self.gens.iter().any(|g| g.is_subset(m))
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if same_vars(&self.vars, &other.vars) {
            Ok(())
        } else {
            Err(Error::VarSetMismatch)
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let gens = self.gens.iter().chain(&other.gens).copied().collect();
        Ok(Self::new(self.vars.clone(), gens))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let gens = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| a.union(*b)))
            .collect();
        Ok(Self::new(self.vars.clone(), gens))
    }

    /// The Alexander dual: minimal sets meeting every generator.
    pub fn alexander_dual(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        Ok(self.dual_unchecked())
    }

    /// Dual with the conventions `0 -> (1)` and `(1) -> 0`.
    pub(crate) fn dual_unchecked(&self) -> Self {
        SqfMonomialIdeal {
            vars: self.vars.clone(),
            gens: minimal_transversals(&self.gens),
        }
    }

    /// The dual computed by scanning every subset of the variables.
    pub fn alexander_dual_by_enumeration(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let nv = self.vars.len();
        if nv > ENUMERATION_DUAL_LIMIT {
            return Err(Error::TooManyVariables(nv, ENUMERATION_DUAL_LIMIT));
        }
        let hits = |s: u64| self.gens.iter().all(|g| g.bits() & s != 0);
        let gens = (0u64..1 << nv)
            .filter(|&s| hits(s) && (0..nv).all(|i| s >> i & 1 == 0 || !hits(s & !(1 << i))))
            .map(SqfMonomial::from_bits)
            .collect();
        Ok(Self::new(self.vars.clone(), gens))
    }

    /// Reads the same generators over another variable set containing them.
    pub fn transfer(&self, vars: Arc<VarSet>) -> Result<Self> {
        let gens = self
            .gens
            .iter()
            .map(|g| self.vars.transfer(*g, &vars).ok_or(Error::VarSetMismatch))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(vars, gens))
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens
            .iter()
            .map(|g| self.vars.monomial_string(*g))
            .collect()
    }
}

impl fmt::Debug for SqfMonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen_strings().join(", "))
    }
}

/// Berge's algorithm: fold the generators in one at a time.
pub fn minimal_transversals(edges: &[SqfMonomial]) -> Vec<SqfMonomial> {
    let mut current = vec![SqfMonomial::empty()];
    let mut edges = edges.to_vec();
    edges.sort();
    for e in edges {
        let (keep, extend): (Vec<SqfMonomial>, Vec<SqfMonomial>) =
            current.into_iter().partition(|t| !t.is_disjoint(e));
        let mut next = keep.clone();
        for t in extend {
            for v in e.iter() {
                let cand = t.with(v);
                if !keep.iter().any(|k| k.is_subset(cand)) {
                    next.push(cand);
                }
            }
        }
        current = minimalize(next);
    }
    current
}

/// A monomial ideal with arbitrary exponents, minimally generated.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    names: Vec<String>,
    gens: Vec<Multidegree>,
}

impl MonomialIdeal {
    pub fn new(names: Vec<String>, gens: Vec<Multidegree>) -> Result<Self> {
        if gens.iter().any(|g| g.nvars() != names.len()) {
            return Err(Error::Invalid(
                "exponent vector length does not match variable count".into(),
            ));
        }
        let mut gens: Vec<Multidegree> = gens
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        gens.sort_by(|a, b| a.total().cmp(&b.total()).then_with(|| b.0.cmp(&a.0)));
        let mut out: Vec<Multidegree> = Vec::new();
        for g in gens {
            if !out.iter().any(|h| h.divides(&g)) {
                out.push(g);
            }
        }
        Ok(MonomialIdeal { names, gens: out })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn gens(&self) -> &[Multidegree] {
        &self.gens
    }

    pub fn contains(&self, m: &Multidegree) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    pub fn gen_strings(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.render(&self.names)).collect()
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.gen_strings().join(", "))
    }
}

/// `{(p, phi(p))}` as a monomial over the grid of `space`.
pub fn graph_monomial(space: &HomSpace, phi: &IsotoneMap) -> SqfMonomial {
    SqfMonomial::from_indices(
        phi.values()
            .iter()
            .enumerate()
            .map(|(p, &v)| space.var(p, v)),
    )
}

/// `L(J)`: generated by the graphs of the maps in `J`.
pub fn coletterplace_ideal(j: &PosetIdeal) -> SqfMonomialIdeal {
    let space = j.space();
    let gens = j.iter().map(|phi| graph_monomial(space, phi)).collect();
    SqfMonomialIdeal::new(space.vars().clone(), gens)
}

/// `L(Hom(P, [n]))`.
pub fn coletterplace_full(space: &HomSpace) -> SqfMonomialIdeal {
    coletterplace_ideal(&PosetIdeal::full(space))
}

/// `L(n, P)`, read inside `P x [n]` by sending `x_{i,p}` to `x_{p,i}`.
pub fn letterplace_ideal(space: &HomSpace) -> SqfMonomialIdeal {
    let poset = space.poset();
    let n = space.n() as usize;
    let mut gens = Vec::new();
    let mut chain = vec![0usize; n];
    multichains(poset, 0, &mut chain, &mut |c| {
        gens.push(SqfMonomial::from_indices(
            c.iter().enumerate().map(|(i, &p)| space.var(p, i as u32 + 1)),
        ));
    });
    SqfMonomialIdeal::new(space.vars().clone(), gens)
}

fn multichains(poset: &Poset, k: usize, chain: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if k == chain.len() {
        f(chain);
        return;
    }
    for p in 0..poset.len() {
        if k == 0 || poset.leq(chain[k - 1], p) {
            chain[k] = p;
            multichains(poset, k + 1, chain, f);
        }
    }
}

/// `B(P, n)`: the bistrict quadrics `x_{p,i} x_{q,j}` with `p < q`, `i > j`.
pub fn bpn_ideal(space: &HomSpace) -> SqfMonomialIdeal {
    let poset = space.poset();
    let n = space.n();
    let mut gens = Vec::new();
    for p in 0..poset.len() {
        for q in 0..poset.len() {
            if poset.lt(p, q) {
                for i in 1..=n {
                    for j in 1..i {
                        gens.push(
                            SqfMonomial::singleton(space.var(p, i)).with(space.var(q, j)),
                        );
                    }
                }
            }
        }
    }
    SqfMonomialIdeal::new(space.vars().clone(), gens)
}

/// `B(J) = L(J^c) + B(P, n)`.
pub fn b_ideal(j: &PosetIdeal) -> SqfMonomialIdeal {
    let space = j.space();
    let mut gens: Vec<SqfMonomial> = j
        .complement()
        .iter()
        .map(|phi| graph_monomial(space, phi))
        .collect();
    gens.extend_from_slice(bpn_ideal(space).gens());
    SqfMonomialIdeal::new(space.vars().clone(), gens)
}

/// `L(J^c)` on its own.
pub fn complement_coletterplace(j: &PosetIdeal) -> SqfMonomialIdeal {
    let space = j.space();
    let gens = j
        .complement()
        .iter()
        .map(|phi| graph_monomial(space, phi))
        .collect();
    SqfMonomialIdeal::new(space.vars().clone(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;
    use proptest::prelude::*;

    fn e1() -> PosetIdeal {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        PosetIdeal::generated_by(&s, &[IsotoneMap(vec![1, 2])]).unwrap()
    }

    fn strs(i: &SqfMonomialIdeal) -> Vec<String> {
        i.gen_strings()
    }

    #[test]
    fn graph_examples() {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        let g = graph_monomial(&s, &IsotoneMap(vec![1, 2]));
        assert_eq!(s.vars().monomial_string(g), "x_{p1,1}*x_{p2,2}");
        let a = HomSpace::new(Poset::antichain(2), 2).unwrap();
        let g = graph_monomial(&a, &IsotoneMap(vec![2, 1]));
        assert_eq!(a.vars().monomial_string(g), "x_{p1,2}*x_{p2,1}");
    }

    #[test]
    fn coletterplace_examples() {
        assert_eq!(
            strs(&coletterplace_ideal(&e1())),
            vec!["x_{p1,1}*x_{p2,1}", "x_{p1,1}*x_{p2,2}"]
        );
        let s = e1().space().clone();
        assert!(coletterplace_ideal(&PosetIdeal::empty(&s)).is_zero());
        let a = HomSpace::new(Poset::antichain(2), 2).unwrap();
        assert_eq!(coletterplace_full(&a).len(), 4);
    }

    #[test]
    fn letterplace_examples() {
        let a = HomSpace::new(Poset::antichain(2), 2).unwrap();
        assert_eq!(
            strs(&letterplace_ideal(&a)),
            vec!["x_{p1,1}*x_{p1,2}", "x_{p2,1}*x_{p2,2}"]
        );
        let c = HomSpace::new(Poset::chain(2), 2).unwrap();
        assert_eq!(letterplace_ideal(&c).len(), 3);
        let one = HomSpace::new(Poset::chain(3), 1).unwrap();
        assert_eq!(letterplace_ideal(&one).len(), 3);
    }

    #[test]
    fn bpn_examples() {
        let c = HomSpace::new(Poset::chain(2), 2).unwrap();
        assert_eq!(strs(&bpn_ideal(&c)), vec!["x_{p1,2}*x_{p2,1}"]);
        let a = HomSpace::new(Poset::antichain(3), 3).unwrap();
        assert!(bpn_ideal(&a).is_zero());
        let c3 = HomSpace::new(Poset::chain(2), 3).unwrap();
        assert_eq!(bpn_ideal(&c3).len(), 3);
    }

    #[test]
    fn b_ideal_examples() {
        assert_eq!(
            strs(&b_ideal(&e1())),
            vec!["x_{p1,2}*x_{p2,1}", "x_{p1,2}*x_{p2,2}"]
        );
        let c = HomSpace::new(Poset::chain(2), 2).unwrap();
        assert_eq!(b_ideal(&PosetIdeal::full(&c)), bpn_ideal(&c));
        let one = HomSpace::new(Poset::chain(1), 2).unwrap();
        assert_eq!(
            strs(&b_ideal(&PosetIdeal::empty(&one))),
            vec!["x_{p1,1}", "x_{p1,2}"]
        );
    }

    #[test]
    fn dual_examples() {
        let v = Arc::new(VarSet::points(&["a".to_string()]).unwrap());
        let i = SqfMonomialIdeal::new(v.clone(), vec![SqfMonomial::singleton(0)]);
        assert_eq!(i.alexander_dual().unwrap(), i);
        let a = HomSpace::new(Poset::antichain(2), 2).unwrap();
        assert_eq!(
            coletterplace_full(&a).alexander_dual().unwrap(),
            letterplace_ideal(&a)
        );
        assert_eq!(
            strs(&coletterplace_ideal(&e1()).alexander_dual().unwrap()),
            vec!["x_{p1,1}", "x_{p2,1}*x_{p2,2}"]
        );
        assert_eq!(SqfMonomialIdeal::zero(v.clone()).alexander_dual(), Err(Error::ZeroIdeal));
        assert_eq!(SqfMonomialIdeal::unit(v).alexander_dual(), Err(Error::UnitIdeal));
    }

    #[test]
    fn letterplace_duality_exhaustive() {
        for m in 1..=3 {
            for poset in crate::poset::all_posets(m) {
                for n in 1..=3 {
                    let s = HomSpace::new(poset.clone(), n).unwrap();
                    let lp = letterplace_ideal(&s);
                    let colp = coletterplace_full(&s);
                    assert_eq!(lp.alexander_dual().unwrap(), colp);
                    assert_eq!(colp.alexander_dual().unwrap(), lp);
                    assert_eq!(colp.alexander_dual_by_enumeration().unwrap(), lp);
                }
            }
        }
    }

    #[test]
    fn sum_and_intersection() {
        let v = Arc::new(VarSet::numbered_points(2).unwrap());
        let x1 = SqfMonomialIdeal::new(v.clone(), vec![SqfMonomial::singleton(0)]);
        let x2 = SqfMonomialIdeal::new(v.clone(), vec![SqfMonomial::singleton(1)]);
        assert_eq!(
            x1.intersect(&x2).unwrap().gens(),
            &[SqfMonomial::from_indices([0, 1])]
        );
        assert_eq!(x1.sum(&SqfMonomialIdeal::zero(v.clone())).unwrap(), x1);
        let other = Arc::new(VarSet::numbered_points(3).unwrap());
        assert_eq!(
            x1.sum(&SqfMonomialIdeal::zero(other)),
            Err(Error::VarSetMismatch)
        );
    }

    fn arb_ideal(nv: usize) -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(1u64..(1 << nv), 1..6)
    }

    proptest! {
        #[test]
        fn dual_laws(a in arb_ideal(6), b in arb_ideal(6)) {
            let v = Arc::new(VarSet::numbered_points(6).unwrap());
            let i = SqfMonomialIdeal::new(v.clone(), a.into_iter().map(SqfMonomial::from_bits).collect());
            let j = SqfMonomialIdeal::new(v.clone(), b.into_iter().map(SqfMonomial::from_bits).collect());
            let di = i.alexander_dual().unwrap();
            let dj = j.alexander_dual().unwrap();
            prop_assert_eq!(di.alexander_dual().unwrap(), i.clone());
            prop_assert_eq!(i.alexander_dual_by_enumeration().unwrap(), di.clone());
            prop_assert_eq!(i.sum(&j).unwrap().alexander_dual().unwrap(), di.intersect(&dj).unwrap());
            prop_assert_eq!(i.intersect(&j).unwrap().alexander_dual().unwrap(), di.sum(&dj).unwrap());
        }
    }
}
