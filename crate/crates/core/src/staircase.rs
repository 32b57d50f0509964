//! Staircase sets `T_*`, `T^*`, the staircase complex and its interval
//! decomposition.

use crate::ideal::{bpn_ideal, graph_monomial};
use crate::poset::{HomSpace, IsotoneMap, PosetIdeal};
use crate::simplicial::SimplicialComplex;
use crate::vars::SqfMonomial;

/// `T_*(phi) = {(p, i) : phi_-(p) <= i <= phi(p)}`.
pub fn t_star_lower(space: &HomSpace, phi: &IsotoneMap) -> SqfMonomial {
    let lower = space.phi_minus(phi);
    SqfMonomial::from_indices((0..space.poset().len()).flat_map(|p| {
        (lower.get(p)..=phi.get(p)).map(move |i| space.var(p, i))
    }))
}

/// `T^*(psi) = {(p, i) : psi(p) <= i <= psi^+(p)}`.
pub fn t_star_upper(space: &HomSpace, psi: &IsotoneMap) -> SqfMonomial {
    let upper = space.phi_plus(psi);
    SqfMonomial::from_indices((0..space.poset().len()).flat_map(|p| {
        (psi.get(p)..=upper.get(p)).map(move |i| space.var(p, i))
    }))
}

/// The complex of `B(P, n)`.
pub fn staircase_complex(space: &HomSpace) -> SimplicialComplex {
    SimplicialComplex::of_ideal(&bpn_ideal(space)).expect("B(P,n) is a proper ideal")
}

/// The interval `[graph(phi), T_*(phi)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceInterval {
    pub phi: IsotoneMap,
    pub bottom: SqfMonomial,
    pub top: SqfMonomial,
}

impl FaceInterval {
    pub fn new(space: &HomSpace, phi: &IsotoneMap) -> Self {
        FaceInterval {
            phi: phi.clone(),
            bottom: graph_monomial(space, phi),
            top: t_star_lower(space, phi),
        }
    }

    pub fn contains(&self, a: SqfMonomial) -> bool {
        self.bottom.is_subset(a) && a.is_subset(self.top)
    }

    /// `T_*(phi)` minus the graph.
    pub fn free_part(&self) -> SqfMonomial {
        self.top.difference(self.bottom)
    }

    pub fn size(&self) -> usize {
        1 << self.free_part().len()
    }
}

/// One interval per map of `J`, in lexicographic order of the maps.
pub fn interval_decomposition(j: &PosetIdeal) -> Vec<FaceInterval> {
    j.iter().map(|phi| FaceInterval::new(j.space(), phi)).collect()
}

/// A set `A = graph(phi) u D` from the interval decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub set: SqfMonomial,
    /// Position of `phi` in the lexicographic list of `J`.
    pub phi_index: usize,
    /// `D`, a subset of `T_*(phi)` minus the graph.
    pub extra: SqfMonomial,
}

/// Every admissible set, interval by interval.
pub fn admissible_sets(j: &PosetIdeal) -> Vec<AdmissibleSet> {
    interval_decomposition(j)
        .iter()
        .enumerate()
        .flat_map(|(k, iv)| {
            let bottom = iv.bottom;
            iv.free_part().subsets().map(move |d| AdmissibleSet {
                set: bottom.union(d),
                phi_index: k,
                extra: d,
            })
        })
        .collect()
}

/// The map `p -> max {i : (p, i) in A}`, when every fiber of `A` is nonempty.
pub fn top_map(space: &HomSpace, a: SqfMonomial) -> Option<IsotoneMap> {
    let n = space.n();
    (0..space.poset().len())
        .map(|p| (1..=n).rev().find(|&i| a.contains(space.var(p, i))))
        .collect::<Option<Vec<u32>>>()
        .map(IsotoneMap)
}

/// Whether `m_A` is nonzero in `L(J|B)`: the top map exists, is isotone and lies
/// in `J`, and `A` contains no bistrict pair.
pub fn is_in_ljb(a: SqfMonomial, j: &PosetIdeal) -> bool {
    let space = j.space();
    let Some(phi) = top_map(space, a) else {
        return false;
    };
    if !space.is_isotone(&phi) || !j.contains(&phi) {
        return false;
    }
    let poset = space.poset();
    let n = space.n();
    let m = poset.len();
    for p in 0..m {
        for q in 0..m {
            if !poset.lt(p, q) {
                continue;
            }
            let low_q = (1..=n).find(|&k| a.contains(space.var(q, k)));
            if let Some(low_q) = low_q {
                if phi.get(p) > low_q {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::Poset;

    fn set(space: &HomSpace, pairs: &[(usize, u32)]) -> SqfMonomial {
        SqfMonomial::from_indices(pairs.iter().map(|&(p, i)| space.var(p, i)))
    }

    #[test]
    fn t_star_examples() {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        assert_eq!(
            t_star_lower(&s, &IsotoneMap(vec![1, 2])),
            set(&s, &[(0, 1), (1, 1), (1, 2)])
        );
        assert_eq!(
            t_star_lower(&s, &IsotoneMap(vec![1, 1])),
            set(&s, &[(0, 1), (1, 1)])
        );
        let one = HomSpace::new(Poset::chain(1), 3).unwrap();
        assert_eq!(
            t_star_lower(&one, &IsotoneMap(vec![2])),
            set(&one, &[(0, 1), (0, 2)])
        );
        assert_eq!(
            t_star_upper(&s, &IsotoneMap(vec![1, 1])),
            set(&s, &[(0, 1), (1, 1), (1, 2)])
        );
        let a = HomSpace::new(Poset::antichain(2), 3).unwrap();
        assert_eq!(
            t_star_upper(&a, &IsotoneMap(vec![2, 3])),
            set(&a, &[(0, 2), (0, 3), (1, 3)])
        );
    }

    #[test]
    fn staircase_examples() {
        let a = HomSpace::new(Poset::antichain(2), 2).unwrap();
        assert!(staircase_complex(&a).is_simplex());
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        let c = staircase_complex(&s);
        assert_eq!(c.sr_ideal().gens(), &[set(&s, &[(0, 2), (1, 1)])]);
        let upper: Vec<IsotoneMap> = s
            .enumerate()
            .into_iter()
            .filter(|phi| s.is_upper_normal(phi))
            .collect();
        assert_eq!(upper, vec![IsotoneMap(vec![1, 2]), IsotoneMap(vec![2, 2])]);
        assert_eq!(c.facets().len(), 2);
    }

    #[test]
    fn interval_examples() {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        let j = PosetIdeal::generated_by(&s, &[IsotoneMap(vec![1, 2])]).unwrap();
        let ivs = interval_decomposition(&j);
        assert_eq!(ivs.len(), 2);
        assert_eq!(ivs[0].bottom, ivs[0].top);
        assert_eq!(ivs[1].top, ivs[1].bottom.with(s.var(1, 1)));
        assert!(interval_decomposition(&PosetIdeal::empty(&s)).is_empty());
        assert_eq!(admissible_sets(&j).len(), 3);
    }

    #[test]
    fn ljb_examples() {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        let j = PosetIdeal::generated_by(&s, &[IsotoneMap(vec![1, 2])]).unwrap();
        assert!(is_in_ljb(set(&s, &[(0, 1), (1, 1), (1, 2)]), &j));
        assert!(!is_in_ljb(set(&s, &[(0, 2), (1, 1), (1, 2)]), &j));
        assert!(!is_in_ljb(set(&s, &[(0, 1), (0, 2)]), &j));
    }

    #[test]
    fn ljb_matches_intervals_exhaustively() {
        for m in 1..=3 {
            for poset in crate::poset::all_posets(m) {
                for n in 1..=3 {
                    let s = HomSpace::new(poset.clone(), n).unwrap();
                    for j in s.poset_ideals(Some(40)) {
                        let ivs = interval_decomposition(&j);
                        for bits in 0u64..1 << s.vars().len() {
                            let a = SqfMonomial::from_bits(bits);
                            let hits = ivs.iter().filter(|iv| iv.contains(a)).count();
                            assert!(hits <= 1);
                            assert_eq!(is_in_ljb(a, &j), hits == 1, "{a:?} in {j:?}");
                        }
                    }
                }
            }
        }
    }
}
