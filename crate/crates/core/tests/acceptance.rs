use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rayon::prelude::*;

use llab::homology::{hochster_betti, reduced_homology};
use llab::ideal::{bpn_ideal, coletterplace_ideal, graph_monomial, SqfMonomialIdeal};
use llab::linalg::Field;
use llab::poset::{all_posets, HomSpace, IsotoneMap, Poset, PosetIdeal};
use llab::resolution::{
    ball_resolution_ranks, betti_table, coletterplace_resolution, is_minimal, verify_d_squared,
    check_resolves, verify_resolves,
};
use llab::simplicial::{FVector, SimplicialComplex};
use llab::sphere::{
    artinian_of_multicomplex, bier_poset_ideal, bier_sphere, boundary_ideals, certify,
    expected_sigma_dim, is_complete_intersection, is_exception, multicomplex_ideal,
    polarize_artinian, proper_complexes, restrict, sigma_j, Shape,
};
use llab::stable::{colp_resolution, dehomogenized_coletterplace, ek_resolution, StableIdeal};
use llab::staircase::{interval_decomposition, is_in_ljb, staircase_complex, t_star_lower, t_star_upper};
use llab::vars::SqfMonomial;

const SEED: u64 = 0x11ab;
const CAP: usize = 500;

type Outcome = std::result::Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn describe(j: &PosetIdeal) -> String {
    let covers: Vec<String> = j
        .poset()
        .covers()
        .iter()
        .map(|&(a, b)| format!("{}<{}", j.poset().names()[a], j.poset().names()[b]))
        .collect();
    format!(
        "|P|={} covers=[{}] n={} J={:?}",
        j.poset().len(),
        covers.join(","),
        j.n(),
        j.maximal()
    )
}

fn sweep() -> Vec<PosetIdeal> {
    let mut out = Vec::new();
    for m in 1..=4 {
        for poset in all_posets(m) {
            for n in 2..=3 {
                let space = HomSpace::new(poset.clone(), n).expect("n >= 1");
                out.extend(space.nonempty_ideals_capped(CAP, SEED));
            }
        }
    }
    out
}

fn closed_form(j: &PosetIdeal) -> Vec<usize> {
    let frees: Vec<usize> = interval_decomposition(j).iter().map(|iv| iv.free_part().len()).collect();
    let top = frees.iter().copied().max().unwrap_or(0);
    (0..=top).map(|i| frees.iter().map(|&f| binom(f, i)).sum()).collect()
}

fn check_sweep_instance(j: &PosetIdeal) -> std::result::Result<(), String> {
    let tag = || describe(j);
    let c = coletterplace_resolution(j).map_err(|e| format!("{}: {e}", tag()))?;
    let l = coletterplace_ideal(j);
    ensure(verify_d_squared(&c), || format!("d^2 != 0 for {}", tag()))?;
    ensure(is_minimal(&c), || format!("not minimal for {}", tag()))?;
    ensure(verify_resolves(&c, &l, Field::Rational), || format!("does not resolve for {}", tag()))?;
    let ours = betti_table(&c).map_err(|e| format!("{}: {e}", tag()))?;
    for field in [Field::Rational, Field::Prime(2)] {
        let h = hochster_betti(&l, field).map_err(|e| format!("{}: {e}", tag()))?;
        ensure(h == ours, || format!("Hochster over {field:?} gives {h:?}, resolution {ours:?} for {}", tag()))?;
    }
    let cf = closed_form(j);
    ensure(cf == c.ranks(), || format!("closed form {cf:?} vs ranks {:?} for {}", c.ranks(), tag()))?;
    Ok(())
}

fn criterion1(instances: &[PosetIdeal]) -> Outcome {
    instances.par_iter().try_for_each(check_sweep_instance)?;
    Ok(format!("{} instances", instances.len()))
}

fn criterion2() -> Outcome {
    let ranks = ball_resolution_ranks(&FVector(vec![1, 9, 33, 43, 18]), &FVector(vec![1, 9, 21, 14]));
    ensure(ranks == vec![18, 29, 12], || format!("got {ranks:?}"))?;
    Ok(format!("ranks {ranks:?}"))
}

fn criterion3() -> Outcome {
    let mut count = 0;
    for m in 1..=4 {
        for n in 1..=3 {
            let space = HomSpace::new(Poset::antichain(m), n).map_err(|e| e.to_string())?;
            let j = PosetIdeal::full(&space);
            let tag = || describe(&j);
            let dual = coletterplace_ideal(&j).alexander_dual().map_err(|e| e.to_string())?;
            ensure(
                dual.len() == m
                    && dual.gens().iter().all(|g| g.len() == n as usize)
                    && is_complete_intersection(&dual),
                || format!("dual {dual:?} for {}", tag()),
            )?;
            for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
                let cert = certify(&j, field).map_err(|e| format!("{}: {e}", tag()))?;
                ensure(cert.shape == Shape::Sphere, || format!("not a sphere: {}", tag()))?;
            }
            count += 1;
        }
    }
    Ok(format!("{count} antichain instances over Q, GF(2), GF(3)"))
}

fn check_ball_instance(j: &PosetIdeal) -> std::result::Result<(), String> {
    let tag = || describe(j);
    let cert = certify(j, Field::Rational).map_err(|e| format!("{}: {e}", tag()))?;
    ensure(cert.shape == Shape::Ball, || format!("not a ball: {}", tag()))?;
    let sigma = cert.sigma.as_ref().ok_or_else(|| format!("no sigma: {}", tag()))?;
    let space = j.space();
    let m = space.poset().len() as isize;
    let n = space.n() as isize;
    ensure(sigma.dim() == n * m - m - 2 && expected_sigma_dim(space) == sigma.dim(), || {
        format!("sigma dimension {} for {}", sigma.dim(), tag())
    })?;
    ensure(cert.codimension() == Some(m as usize + 1), || {
        format!("codimension {:?} for {}", cert.codimension(), tag())
    })?;
    let boundary: BTreeSet<SqfMonomial> = cert.delta.boundary().map_err(|e| e.to_string())?.facets().iter().copied().collect();
    let sig: BTreeSet<SqfMonomial> = sigma.facets().iter().copied().collect();
    ensure(boundary == sig, || format!("sigma is not the boundary for {}", tag()))?;
    let [a, b, c] = boundary_ideals(j).map_err(|e| e.to_string())?;
    let gens = |i: &SqfMonomialIdeal| i.gens().iter().copied().collect::<BTreeSet<_>>();
    ensure(gens(&a) == gens(&b) && gens(&b) == gens(&c), || format!("boundary ideals differ for {}", tag()))?;
    Ok(())
}

fn criterion4(instances: &[PosetIdeal]) -> Outcome {
    let balls: Vec<&PosetIdeal> = instances.iter().filter(|j| !is_exception(j)).collect();
    balls.par_iter().try_for_each(|j| check_ball_instance(j))?;
    Ok(format!("{} non-exception instances", balls.len()))
}

fn criterion5() -> Outcome {
    let mut count = 0;
    let mut differ = 0;
    for d in 1..=3 {
        for n in 1..=3 {
            let space = HomSpace::new(Poset::chain(d), n).map_err(|e| e.to_string())?;
            for j in space.poset_ideals(None).into_iter().filter(|j| !j.is_empty()) {
                let i = StableIdeal::from_poset_ideal(&j).map_err(|e| e.to_string())?;
                let tag = || format!("{:?}", i.gen_strings());
                let ek = ek_resolution(&i).map_err(|e| e.to_string())?;
                let colp = colp_resolution(&i).map_err(|e| e.to_string())?;
                for (name, c) in [("EK", &ek), ("colp", &colp)] {
                    ensure(verify_d_squared(c), || format!("{name} d^2 != 0 for {}", tag()))?;
                    ensure(is_minimal(c), || format!("{name} not minimal for {}", tag()))?;
                    check_resolves(c, &i.monomials(), Field::Rational)
                        .map_err(|f| format!("{name} does not resolve {}: {f:?}", tag()))?;
                }
                let (be, bc) = (
                    betti_table(&ek).map_err(|e| e.to_string())?,
                    betti_table(&colp).map_err(|e| e.to_string())?,
                );
                ensure(be == bc, || format!("Betti tables differ for {}", tag()))?;
                let top = i.maps().iter().map(|u| u.get(d - 1) as usize - 1).max().unwrap_or(0);
                let formula: Vec<usize> = (0..=top)
                    .map(|k| i.maps().iter().map(|u| binom(u.get(d - 1) as usize - 1, k)).sum())
                    .filter(|&x| x > 0)
                    .collect();
                ensure(formula == ek.ranks(), || format!("formula {formula:?} vs {:?} for {}", ek.ranks(), tag()))?;
                if ek.labeled_entries() != colp.labeled_entries() {
                    differ += 1;
                }
                let sub = dehomogenized_coletterplace(&i).map_err(|e| e.to_string())?;
                ensure(
                    sub.labeled_generators() == colp.labeled_generators()
                        && sub.labeled_entries() == colp.labeled_entries(),
                    || format!("dehomogenized resolution differs for {}", tag()),
                )?;
                count += 1;
            }
        }
    }
    ensure(differ > 0, || "EK and colp differentials never differ".into())?;
    Ok(format!("{count} ideals, differentials differ in {differ}"))
}

fn criterion6() -> Outcome {
    let mut count = 0;
    for d in 1..=4 {
        for x in proper_complexes(d).map_err(|e| e.to_string())? {
            let tag = || format!("X={:?}", x.facet_names());
            let b = bier_sphere(&x).map_err(|e| format!("{}: {e}", tag()))?;
            let j = bier_poset_ideal(&x).map_err(|e| e.to_string())?;
            let s = sigma_j(&j).map_err(|e| e.to_string())?;
            ensure(b.facet_names().into_iter().collect::<BTreeSet<_>>() == s.facet_names().into_iter().collect(), || {
                format!("Bier sphere differs from sigma for {}", tag())
            })?;
            let h = reduced_homology(&b, Field::Rational);
            ensure(h.is_sphere_of_dim(d as isize - 2) && b.dim() == d as isize - 2, || {
                format!("homology {:?} for {}", h, tag())
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} complexes"))
}

fn faces_with_full_projection(space: &HomSpace, faces: &[SqfMonomial]) -> BTreeSet<SqfMonomial> {
    let m = space.poset().len();
    let vars = space.vars();
    faces
        .iter()
        .copied()
        .filter(|f| {
            let seen: BTreeSet<usize> = f.iter().map(|k| vars.var(k).elem).collect();
            seen.len() == m
        })
        .collect()
}

fn check_staircase(space: &HomSpace) -> std::result::Result<(), String> {
    let maps = space.enumerate();
    let tag = || format!("|P|={} covers={:?} n={}", space.poset().len(), space.poset().covers(), space.n());
    for phi in &maps {
        for psi in &maps {
            let left = phi.leq(&space.phi_plus(psi));
            let right = space.phi_minus(phi).leq(psi);
            ensure(left == right, || format!("Galois fails at {phi:?}, {psi:?} in {}", tag()))?;
        }
        if space.is_upper_normal(phi) {
            let psi = space.phi_minus(phi);
            ensure(space.is_lower_normal(&psi) && space.phi_plus(&psi) == *phi, || {
                format!("normal pair broken at {phi:?} in {}", tag())
            })?;
            ensure(t_star_upper(space, &psi) == t_star_lower(space, phi), || {
                format!("T^* != T_* at {phi:?} in {}", tag())
            })?;
        }
    }
    let b = staircase_complex(space);
    let tops: Vec<SqfMonomial> = maps.iter().map(|phi| t_star_lower(space, phi)).collect();
    ensure(tops.iter().all(|&t| b.contains(t)), || format!("some T_* is not a face in {}", tag()))?;
    let faces = b.faces();
    ensure(faces.iter().all(|&f| tops.iter().any(|&t| f.is_subset(t))), || {
        format!("a face lies in no T_* in {}", tag())
    })?;
    let facets: BTreeSet<SqfMonomial> = b.facets().iter().copied().collect();
    let normal: BTreeSet<SqfMonomial> = maps
        .iter()
        .filter(|phi| space.is_upper_normal(phi))
        .map(|phi| t_star_lower(space, phi))
        .collect();
    ensure(facets == normal, || format!("facets are not the upper normal T_* in {}", tag()))?;
    let full = PosetIdeal::full(space);
    check_cover(&full, &faces_with_full_projection(space, &faces), &tag)?;
    for j in space.poset_ideals(None).into_iter().filter(|j| !j.is_empty()) {
        let mut gens: Vec<SqfMonomial> = j.complement().iter().map(|phi| graph_monomial(space, phi)).collect();
        gens.extend(bpn_ideal(space).gens().iter().copied());
        let bj = SimplicialComplex::of_ideal(&SqfMonomialIdeal::new(space.vars().clone(), gens))
            .map_err(|e| e.to_string())?;
        check_cover(&j, &faces_with_full_projection(space, &bj.faces()), &tag)?;
    }
    Ok(())
}

fn check_cover(
    j: &PosetIdeal,
    relative: &BTreeSet<SqfMonomial>,
    tag: &dyn Fn() -> String,
) -> std::result::Result<(), String> {
    let intervals = interval_decomposition(j);
    let total: usize = intervals.iter().map(|iv| iv.size()).sum();
    ensure(total == relative.len(), || {
        format!("interval sizes {total} vs {} faces for J={:?} in {}", relative.len(), j.maximal(), tag())
    })?;
    for &f in relative {
        let hits = intervals.iter().filter(|iv| iv.contains(f)).count();
        ensure(hits == 1, || format!("face in {hits} intervals for J={:?} in {}", j.maximal(), tag()))?;
        ensure(is_in_ljb(f, j), || format!("membership test rejects a face for J={:?} in {}", j.maximal(), tag()))?;
    }
    let all = SqfMonomial::full(j.space().vars().len());
    let accepted = all.subsets().filter(|&a| is_in_ljb(a, j)).count();
    ensure(accepted == relative.len(), || {
        format!("membership test accepts {accepted} sets, expected {} for J={:?} in {}", relative.len(), j.maximal(), tag())
    })?;
    Ok(())
}

fn criterion7() -> Outcome {
    let mut spaces = Vec::new();
    for m in 1..=3 {
        for poset in all_posets(m) {
            for n in 1..=3 {
                spaces.push(HomSpace::new(poset.clone(), n).map_err(|e| e.to_string())?);
            }
        }
    }
    spaces.par_iter().try_for_each(check_staircase)?;
    Ok(format!("{} spaces", spaces.len()))
}

fn criterion8(instances: &[PosetIdeal]) -> Outcome {
    instances.par_iter().try_for_each(|j| -> std::result::Result<(), String> {
        let tag = || describe(j);
        let hull = j.hull().map_err(|e| e.to_string())?;
        let r = restrict(j, &hull).map_err(|e| format!("{}: {e}", tag()))?;
        ensure(r.cone_identity_holds(j).map_err(|e| e.to_string())?, || format!("cone identity fails for {}", tag()))?;
        ensure(r.dual_commutes(j).map_err(|e| e.to_string())?, || format!("dual does not commute for {}", tag()))?;
        Ok(())
    })?;
    let mut artinian = 0;
    for d in 1..=3usize {
        let n = 3;
        let space = HomSpace::new(Poset::antichain(d), n).map_err(|e| e.to_string())?;
        let ideals: Vec<PosetIdeal> = space.poset_ideals(None).into_iter().filter(|j| !j.is_empty()).collect();
        let names: Vec<String> = (1..=d).map(|t| t.to_string()).collect();
        let bounds: Vec<Vec<u32>> = (0..d).fold(vec![vec![]], |acc, _| {
            acc.into_iter()
                .flat_map(|v| (1..=3).map(move |c| [v.clone(), vec![c]].concat()))
                .collect()
        });
        for c in &bounds {
            let mu = IsotoneMap(c.clone());
            for j in ideals.iter().filter(|j| j.iter().all(|phi| phi.leq(&mu))) {
                let tag = || format!("c={c:?} {}", describe(j));
                let a = artinian_of_multicomplex(j, c, names.clone()).map_err(|e| e.to_string())?;
                let back = multicomplex_ideal(&a, c, n).map_err(|e| e.to_string())?;
                ensure(back == *j, || format!("multicomplex round trip fails for {}", tag()))?;
                let p = polarize_artinian(&a, c).map_err(|e| format!("{}: {e}", tag()))?;
                let r = restrict(j, &mu).map_err(|e| e.to_string())?;
                let dual = r.dual.transfer(p.vars().clone()).map_err(|e| e.to_string())?;
                let set = |i: &SqfMonomialIdeal| i.gens().iter().copied().collect::<BTreeSet<_>>();
                ensure(set(&dual) == set(&p), || format!("polarization {:?} vs dual {:?} for {}", p, dual, tag()))?;
                let shape = r.certify(j, Field::Rational).map_err(|e| format!("{}: {e}", tag()))?;
                let expected = if r.is_full_box(j) { Shape::Sphere } else { Shape::Ball };
                ensure(shape == expected, || format!("restricted complex is {shape:?} for {}", tag()))?;
                artinian += 1;
            }
        }
    }
    Ok(format!("{} restrictions, {artinian} artinian ideals", instances.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let instances = sweep();
    let criteria: Vec<(usize, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, Box::new(|| criterion1(&instances))),
        (2, Box::new(criterion2)),
        (3, Box::new(criterion3)),
        (4, Box::new(|| criterion4(&instances))),
        (5, Box::new(criterion5)),
        (6, Box::new(criterion6)),
        (7, Box::new(criterion7)),
        (8, Box::new(|| criterion8(&instances))),
    ];
    let mut failed = 0;
    for (k, run) in criteria {
        let t = Instant::now();
        let outcome = run();
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {k}: PASS ({detail}; {secs:.1}s)"),
            Err(detail) => {
                failed += 1;
                println!("criterion {k}: FAIL ({detail}; {secs:.1}s)");
            }
        }
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
