//! The balls `Delta(J)`, their boundary spheres `Sigma(J)`, Bier spheres,
//! restriction to an upper bound and polarization of artinian ideals.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::homology::{ball_check, sphere_defect};
use crate::ideal::{
    b_ideal, bpn_ideal, coletterplace_ideal, complement_coletterplace, graph_monomial,
    letterplace_ideal, MonomialIdeal, SqfMonomialIdeal,
};
use crate::linalg::Field;
use crate::poset::{HomSpace, IsotoneMap, Poset, PosetIdeal};
use crate::simplicial::SimplicialComplex;
use crate::vars::{Multidegree, SqfMonomial, VarSet};

fn failure(reason: impl Into<String>) -> Error {
    Error::CertificationFailed {
        reason: reason.into(),
        face: vec![],
    }
}

fn facet_set(c: &SimplicialComplex) -> BTreeSet<SqfMonomial> {
    c.facets().iter().copied().collect()
}

fn gen_set(i: &SqfMonomialIdeal) -> BTreeSet<SqfMonomial> {
    i.gens().iter().copied().collect()
}

/// `P` is an antichain and `J = Hom(P, [n])`.
pub fn is_exception(j: &PosetIdeal) -> bool {
    j.poset().is_antichain() && j.is_full()
}

/// Facets are the complements of the graphs of the maps in `J`.
pub fn delta_j(j: &PosetIdeal) -> Result<SimplicialComplex> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let space = j.space();
    let nv = space.vars().len();
    let facets = j
        .iter()
        .map(|phi| graph_monomial(space, phi).complement(nv))
        .collect();
    Ok(SimplicialComplex::new(space.vars().clone(), facets))
}

/// The complex of `L(J)^A`.
pub fn delta_j_via_dual(j: &PosetIdeal) -> Result<SimplicialComplex> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    SimplicialComplex::of_ideal(&coletterplace_ideal(j).alexander_dual()?)
}

/// `(L(J) n B(J))^A`, `L(J)^A + B(J)^A` and `L(J)^A + (L(J^c)^A n B(P,n)^A)`.
pub fn boundary_ideals(j: &PosetIdeal) -> Result<[SqfMonomialIdeal; 3]> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    let l = coletterplace_ideal(j);
    let b = b_ideal(j);
    let la = l.dual_unchecked();
    let first = l.intersect(&b)?.dual_unchecked();
    let second = la.sum(&b.dual_unchecked())?;
    let third = la.sum(
        &complement_coletterplace(j)
            .dual_unchecked()
            .intersect(&bpn_ideal(j.space()).dual_unchecked())?,
    )?;
    Ok([first, second, third])
}

/// The complex of `L(J)^A + B(J)^A`.
pub fn sigma_j(j: &PosetIdeal) -> Result<SimplicialComplex> {
    if j.is_empty() {
        return Err(Error::EmptyIdeal);
    }
    if is_exception(j) {
        return Err(Error::ExceptionCase);
    }
    let [_, ideal, _] = boundary_ideals(j)?;
    SimplicialComplex::of_ideal(&ideal)
}

/// `n|P| - |P| - 2`.
pub fn expected_sigma_dim(space: &HomSpace) -> isize {
    let m = space.poset().len() as isize;
    space.n() as isize * m - m - 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Ball,
    Sphere,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub shape: Shape,
    pub field: Field,
    pub delta: SimplicialComplex,
    /// `Sigma(J)`, absent in the exception case.
    pub sigma: Option<SimplicialComplex>,
    /// `L(J)^A`.
    pub dual: SqfMonomialIdeal,
}

impl Certificate {
    pub fn summary(&self) -> String {
        match (&self.shape, &self.sigma) {
            (Shape::Sphere, _) => "sphere (exception case), complete intersection".to_string(),
            (Shape::Ball, Some(s)) => format!("ball, boundary sphere of dimension {}", s.dim()),
            (Shape::Ball, None) => "ball".to_string(),
        }
    }

    pub fn codimension(&self) -> Option<usize> {
        self.sigma
            .as_ref()
            .map(|s| (s.vars().len() as isize - s.dim() - 1) as usize)
    }
}

/// Whether the generators are pairwise coprime.
pub fn is_complete_intersection(ideal: &SqfMonomialIdeal) -> bool {
    let g = ideal.gens();
    (0..g.len()).all(|a| (a + 1..g.len()).all(|b| g[a].is_disjoint(g[b])))
}

/// Certifies `Delta(J)` as a homology ball with boundary `Sigma(J)` a homology
/// sphere, or in the exception case `Delta(J)` as a homology sphere with a
/// complete intersection dual.
pub fn certify(j: &PosetIdeal, field: Field) -> Result<Certificate> {
    let space = j.space();
    let delta = delta_j(j)?;
    if facet_set(&delta) != facet_set(&delta_j_via_dual(j)?) {
        return Err(failure("facet complements disagree with the dual"));
    }
    let dual = coletterplace_ideal(j).alexander_dual()?;
    if is_exception(j) {
        if let Some(d) = sphere_defect(&delta, field)? {
            return Err(d.into_error(&delta));
        }
        if !delta.is_pseudomanifold(2, true)? {
            return Err(failure("a ridge does not lie in exactly two facets"));
        }
        let m = space.poset().len();
        let n = space.n() as usize;
        let ok = dual.len() == m
            && dual.gens().iter().all(|g| g.len() == n)
            && is_complete_intersection(&dual)
            && gen_set(&dual) == gen_set(&letterplace_ideal(space));
        if !ok {
            return Err(failure(format!("dual {dual:?} is not the expected complete intersection")));
        }
        return Ok(Certificate {
            shape: Shape::Sphere,
            field,
            delta,
            sigma: None,
            dual,
        });
    }
    if !delta.is_pseudomanifold(2, false)? {
        return Err(failure("a ridge lies in more than two facets"));
    }
    let check = ball_check(&delta, field)?;
    if let Some(d) = check.defect {
        return Err(d.into_error(&delta));
    }
    let sigma = sigma_j(j)?;
    if facet_set(&sigma) != facet_set(&check.boundary) {
        return Err(failure("sigma differs from the boundary of delta"));
    }
    let [a, b, c] = boundary_ideals(j)?;
    if gen_set(&a) != gen_set(&b) || gen_set(&b) != gen_set(&c) {
        return Err(failure("the three boundary ideals differ"));
    }
    if sigma.dim() != expected_sigma_dim(space) {
        return Err(failure(format!(
            "sigma has dimension {}, expected {}",
            sigma.dim(),
            expected_sigma_dim(space)
        )));
    }
    if !sigma.is_pseudomanifold(2, true)? {
        return Err(failure("a ridge of sigma does not lie in exactly two facets"));
    }
    if let Some(d) = sphere_defect(&sigma, field)? {
        return Err(d.into_error(&sigma));
    }
    Ok(Certificate {
        shape: Shape::Ball,
        field,
        delta,
        sigma: Some(sigma),
        dual,
    })
}

/// `J_X = {phi : {p : phi(p) = 2} in X}` in `Hom(antichain, [2])`.
pub fn bier_poset_ideal(x: &SimplicialComplex) -> Result<PosetIdeal> {
    if x.is_void() {
        return Err(Error::EmptyIdeal);
    }
    let d = x.vars().len();
    let space = HomSpace::new(Poset::antichain(d), 2)?;
    let members: Vec<IsotoneMap> = SqfMonomial::full(d)
        .subsets()
        .filter(|s| x.contains(*s))
        .map(|s| IsotoneMap((0..d).map(|p| if s.contains(p) { 2 } else { 1 }).collect()))
        .collect();
    PosetIdeal::from_members(&space, &members)
}

/// The complex of `I_X + I_{X^A} + (x_{p,1} x_{p,2})`, with `I_X` in the first
/// level and `I_{X^A}` in the second.
pub fn bier_sphere(x: &SimplicialComplex) -> Result<SimplicialComplex> {
    if x.is_simplex() {
        return Err(Error::FullSimplex);
    }
    if x.is_void() {
        return Err(Error::Invalid("void complex".into()));
    }
    let d = x.vars().len();
    let space = HomSpace::new(Poset::antichain(d), 2)?;
    let lift = |m: SqfMonomial, level: u32| SqfMonomial::from_indices(m.iter().map(|p| space.var(p, level)));
    let mut gens: Vec<SqfMonomial> = x.sr_ideal().gens().iter().map(|&g| lift(g, 1)).collect();
    gens.extend(x.alexander_dual()?.sr_ideal().gens().iter().map(|&g| lift(g, 2)));
    gens.extend((0..d).map(|p| SqfMonomial::singleton(space.var(p, 1)).with(space.var(p, 2))));
    SimplicialComplex::of_ideal(&SqfMonomialIdeal::new(space.vars().clone(), gens))
}

/// Every simplicial complex on `d` vertices other than the void complex and
/// the full simplex, as down-closed families of subsets.
pub fn proper_complexes(d: usize) -> Result<Vec<SimplicialComplex>> {
    let vars = Arc::new(VarSet::numbered_points(d)?);
    let space = HomSpace::new(Poset::antichain(d), 2)?;
    Ok(space
        .poset_ideals(None)
        .into_iter()
        .filter(|j| !j.is_empty() && !j.is_full())
        .map(|j| {
            let faces = j
                .iter()
                .map(|phi| {
                    SqfMonomial::from_indices((0..d).filter(|&p| phi.get(p) == 2))
                })
                .collect();
            SimplicialComplex::new(vars.clone(), faces)
        })
        .collect())
}

/// `L^{<=mu}(J)` and `Delta^{<=mu}(J)` over `{(p, i) : i <= mu(p)}`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub mu: IsotoneMap,
    pub vars: Arc<VarSet>,
    pub ideal: SqfMonomialIdeal,
    pub dual: SqfMonomialIdeal,
    pub complex: SimplicialComplex,
    /// Vertices of the full grid outside the restricted set.
    pub apex: SqfMonomial,
}

pub fn restrict(j: &PosetIdeal, mu: &IsotoneMap) -> Result<Restriction> {
    let space = j.space();
    space.check(mu)?;
    if !j.hull()?.leq(mu) {
        return Err(Error::NotAnUpperBound);
    }
    let vars = Arc::new(VarSet::restricted(space.poset().names(), mu.values())?);
    let ideal = coletterplace_ideal(j).transfer(vars.clone())?;
    let dual = ideal.alexander_dual()?;
    let complex = SimplicialComplex::of_ideal(&dual)?;
    let full = space.vars();
    let apex = SqfMonomial::from_indices(
        (0..full.len()).filter(|&k| full.var(k).level > mu.get(full.var(k).elem)),
    );
    Ok(Restriction {
        mu: mu.clone(),
        vars,
        ideal,
        dual,
        complex,
        apex,
    })
}

impl Restriction {
    /// `Delta(J)` is the cone over `Delta^{<=mu}(J)` with apex set `apex`.
    pub fn cone_identity_holds(&self, j: &PosetIdeal) -> Result<bool> {
        let full = j.space().vars();
        let coned: BTreeSet<SqfMonomial> = self
            .complex
            .facets()
            .iter()
            .map(|f| {
                self.vars
                    .transfer(*f, full)
                    .map(|g| g.union(self.apex))
                    .ok_or(Error::VarSetMismatch)
            })
            .collect::<Result<_>>()?;
        Ok(coned == facet_set(&delta_j(j)?))
    }

    /// Dualizing then restricting agrees with restricting then dualizing.
    pub fn dual_commutes(&self, j: &PosetIdeal) -> Result<bool> {
        let outer = coletterplace_ideal(j).alexander_dual()?.transfer(self.vars.clone())?;
        Ok(gen_set(&outer) == gen_set(&self.dual))
    }

    /// `J` is every map below `mu`.
    pub fn is_full_box(&self, j: &PosetIdeal) -> bool {
        j.space().enumerate().iter().filter(|phi| phi.leq(&self.mu)).count() == j.len()
    }

    /// A homology sphere when `J` fills the box below `mu`, a homology ball otherwise.
    pub fn certify(&self, j: &PosetIdeal, field: Field) -> Result<Shape> {
        if self.is_full_box(j) {
            if let Some(d) = sphere_defect(&self.complex, field)? {
                return Err(d.into_error(&self.complex));
            }
            Ok(Shape::Sphere)
        } else {
            let check = ball_check(&self.complex, field)?;
            match check.defect {
                Some(d) => Err(d.into_error(&self.complex)),
                None => Ok(Shape::Ball),
            }
        }
    }
}

fn check_determined(a: &MonomialIdeal, c: &[u32]) -> Result<()> {
    let d = a.nvars();
    if c.len() != d || c.contains(&0) {
        return Err(Error::NotDetermined("bounds must be positive, one per variable".into()));
    }
    for (t, &ct) in c.iter().enumerate() {
        let mut power = Multidegree::zero(d);
        power.0[t] = ct as u8;
        if !a.contains(&power) {
            return Err(Error::NotDetermined(format!("missing {}", power.render(a.names()))));
        }
    }
    for g in a.gens() {
        if g.0.iter().zip(c).any(|(&e, &ct)| e as u32 > ct) {
            return Err(Error::NotDetermined(format!("{} exceeds the bounds", g.render(a.names()))));
        }
    }
    Ok(())
}

/// Sends `x_t^e` to `x_{t,1} ... x_{t,e}` inside `{(t, i) : i <= c_t}`.
pub fn polarize_artinian(a: &MonomialIdeal, c: &[u32]) -> Result<SqfMonomialIdeal> {
    check_determined(a, c)?;
    let vars = Arc::new(VarSet::restricted(a.names(), c)?);
    let gens = a
        .gens()
        .iter()
        .map(|g| {
            SqfMonomial::from_indices(g.0.iter().enumerate().flat_map(|(t, &e)| {
                let vars = vars.clone();
                (1..=e as u32).map(move |i| vars.index_of(t, i).expect("within bounds"))
            }))
        })
        .collect();
    Ok(SqfMonomialIdeal::new(vars, gens))
}

/// The poset ideal of `Hom(antichain, [n])` whose maps `phi` are the
/// exponents `phi - 1` of the monomials outside `a`.
pub fn multicomplex_ideal(a: &MonomialIdeal, c: &[u32], n: u32) -> Result<PosetIdeal> {
    check_determined(a, c)?;
    let d = a.nvars();
    let space = HomSpace::new(Poset::antichain(d), n)?;
    if c.iter().any(|&ct| ct > n) {
        return Err(Error::OutOfRange(n));
    }
    let members: Vec<IsotoneMap> = space
        .enumerate()
        .into_iter()
        .filter(|phi| {
            let e = Multidegree(phi.values().iter().map(|&v| (v - 1) as u8).collect());
            !a.contains(&e)
        })
        .collect();
    PosetIdeal::from_members(&space, &members)
}

/// The artinian ideal of monomials outside the multicomplex `J`, bounded by `c`.
pub fn artinian_of_multicomplex(j: &PosetIdeal, c: &[u32], names: Vec<String>) -> Result<MonomialIdeal> {
    let space = j.space();
    let d = space.poset().len();
    if c.len() != d || names.len() != d {
        return Err(Error::Invalid("one bound and one name per element".into()));
    }
    let mut gens: Vec<Multidegree> = (0..d)
        .map(|t| {
            let mut g = Multidegree::zero(d);
            g.0[t] = c[t] as u8;
            g
        })
        .collect();
    gens.extend(
        space
            .enumerate()
            .into_iter()
            .filter(|phi| !j.contains(phi) && phi.values().iter().zip(c).all(|(&v, &ct)| v <= ct))
            .map(|phi| Multidegree(phi.values().iter().map(|&v| (v - 1) as u8).collect())),
    );
    MonomialIdeal::new(names, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::is_homology_sphere;

    fn e1() -> PosetIdeal {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        PosetIdeal::generated_by(&s, &[IsotoneMap(vec![1, 2])]).unwrap()
    }

    fn names(c: &SimplicialComplex) -> Vec<Vec<String>> {
        c.facet_names()
    }

    #[test]
    fn delta_examples() {
        let j = e1();
        let d = delta_j(&j).unwrap();
        assert_eq!(facet_set(&d), facet_set(&delta_j_via_dual(&j).unwrap()));
        assert_eq!(d.facets().len(), 2);
        assert_eq!(d.dim(), 1);
        let s = HomSpace::new(Poset::antichain(2), 2).unwrap();
        let d = delta_j(&PosetIdeal::full(&s)).unwrap();
        assert_eq!(d.facets().len(), 4);
        assert!(is_homology_sphere(&d, Field::Rational).unwrap());
        let one = HomSpace::new(Poset::chain(1), 2).unwrap();
        let d = delta_j(&PosetIdeal::generated_by(&one, &[one.bottom()]).unwrap()).unwrap();
        assert_eq!(names(&d), vec![vec!["x_{p1,2}".to_string()]]);
        assert_eq!(delta_j(&PosetIdeal::empty(&one)).unwrap_err(), Error::EmptyIdeal);
    }

    #[test]
    fn sigma_examples() {
        let j = e1();
        let s = sigma_j(&j).unwrap();
        assert_eq!(
            names(&s),
            vec![vec!["x_{p2,1}".to_string()], vec!["x_{p2,2}".to_string()]]
        );
        let [a, b, c] = boundary_ideals(&j).unwrap();
        assert_eq!(b.gen_strings(), vec!["x_{p1,1}", "x_{p1,2}", "x_{p2,1}*x_{p2,2}"]);
        assert_eq!(gen_set(&a), gen_set(&b));
        assert_eq!(gen_set(&b), gen_set(&c));
        let a2 = HomSpace::new(Poset::antichain(2), 2).unwrap();
        assert_eq!(sigma_j(&PosetIdeal::full(&a2)).unwrap_err(), Error::ExceptionCase);
    }

    #[test]
    fn certify_examples() {
        let c = certify(&e1(), Field::Rational).unwrap();
        assert_eq!(c.shape, Shape::Ball);
        assert_eq!(c.codimension(), Some(3));
        let a2 = HomSpace::new(Poset::antichain(2), 2).unwrap();
        let c = certify(&PosetIdeal::full(&a2), Field::Prime(3)).unwrap();
        assert_eq!(c.shape, Shape::Sphere);
        assert_eq!(c.dual.gen_strings(), vec!["x_{p1,1}*x_{p1,2}", "x_{p2,1}*x_{p2,2}"]);
        assert_eq!(c.summary(), "sphere (exception case), complete intersection");
        let s3 = HomSpace::new(Poset::chain(3), 2).unwrap();
        for j in s3.poset_ideals(None).into_iter().filter(|j| !j.is_empty()) {
            assert_eq!(certify(&j, Field::Prime(2)).unwrap().shape, Shape::Ball);
        }
    }

    #[test]
    fn bier_examples() {
        let v = Arc::new(VarSet::numbered_points(2).unwrap());
        let x = SimplicialComplex::new(v.clone(), vec![SqfMonomial::singleton(0), SqfMonomial::singleton(1)]);
        let b = bier_sphere(&x).unwrap();
        assert_eq!(
            names(&b),
            vec![vec!["x_{p1,1}".to_string()], vec!["x_{p2,1}".to_string()]]
        );
        assert_eq!(facet_set(&b), facet_set(&sigma_j(&bier_poset_ideal(&x).unwrap()).unwrap()));
        let v3 = Arc::new(VarSet::numbered_points(3).unwrap());
        let ball = SimplicialComplex::new(
            v3.clone(),
            vec![SqfMonomial::from_indices([0, 1]), SqfMonomial::from_indices([1, 2])],
        );
        let b = bier_sphere(&ball).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(is_homology_sphere(&b, Field::Rational).unwrap());
        let one = Arc::new(VarSet::numbered_points(1).unwrap());
        assert_eq!(bier_sphere(&SimplicialComplex::simplex(one)).unwrap_err(), Error::FullSimplex);
        assert_eq!(proper_complexes(2).unwrap().len(), 4);
    }

    #[test]
    fn restriction_examples() {
        let j = e1();
        let r = restrict(&j, &j.hull().unwrap()).unwrap();
        assert_eq!(r.vars.len(), 3);
        assert!(r.cone_identity_holds(&j).unwrap());
        assert!(r.dual_commutes(&j).unwrap());
        assert_eq!(r.complex.dim(), 0);
        assert_eq!(r.certify(&j, Field::Rational).unwrap(), Shape::Sphere);
        let top = IsotoneMap(vec![2, 2]);
        let r = restrict(&j, &top).unwrap();
        assert_eq!(r.vars.len(), 4);
        assert!(r.apex.is_empty());
        assert_eq!(facet_set(&r.complex).len(), 2);
        assert_eq!(r.certify(&j, Field::Rational).unwrap(), Shape::Ball);
        let low = IsotoneMap(vec![1, 1]);
        assert_eq!(restrict(&j, &low).unwrap_err(), Error::NotAnUpperBound);
    }

    #[test]
    fn polarization_examples() {
        let names = vec!["1".to_string(), "2".to_string()];
        let a = MonomialIdeal::new(
            names.clone(),
            vec![Multidegree(vec![2, 0]), Multidegree(vec![1, 1]), Multidegree(vec![0, 2])],
        )
        .unwrap();
        let p = polarize_artinian(&a, &[2, 2]).unwrap();
        assert_eq!(p.gen_strings(), vec!["x_{1,1}*x_{1,2}", "x_{1,1}*x_{2,1}", "x_{2,1}*x_{2,2}"]);
        let j = multicomplex_ideal(&a, &[2, 2], 3).unwrap();
        assert_eq!(j.len(), 3);
        let r = restrict(&j, &IsotoneMap(vec![2, 2])).unwrap();
        assert_eq!(gen_set(&r.dual.transfer(p.vars().clone()).unwrap()), gen_set(&p));
        let back = artinian_of_multicomplex(&j, &[2, 2], names.clone()).unwrap();
        assert_eq!(back.gens(), a.gens());
        let x = MonomialIdeal::new(vec!["1".into()], vec![Multidegree(vec![1])]).unwrap();
        assert_eq!(polarize_artinian(&x, &[1]).unwrap().gen_strings(), vec!["x_{1,1}"]);
        let not = MonomialIdeal::new(names, vec![Multidegree(vec![2, 0])]).unwrap();
        assert!(matches!(polarize_artinian(&not, &[2, 2]), Err(Error::NotDetermined(_))));
    }
}
