//! Macaulay2 scripts for cross-checking ideals and complexes.
//!
//! Variables are written `x_(k,i)` with `k` the 1-based element position, or
//! `x_(k)` for plain vertex sets, listed in the fixed variable order.

use std::fmt::Write;

use crate::homology::BettiTable;
use crate::ideal::SqfMonomialIdeal;
use crate::linalg::Field;
use crate::resolution::MultigradedComplex;
use crate::vars::{Multidegree, VarSet};

fn ring_name(field: Field) -> String {
    match field {
        Field::Rational => "QQ".into(),
        Field::Prime(p) => format!("ZZ/{p}"),
    }
}

fn m2_vars(v: &VarSet) -> Vec<String> {
    v.vars()
        .iter()
        .map(|x| {
            if v.is_plain() {
                format!("x_({})", x.elem + 1)
            } else {
                format!("x_({},{})", x.elem + 1, x.level)
            }
        })
        .collect()
}

fn product(names: &[String], m: &Multidegree) -> String {
    let parts: Vec<String> = m
        .0
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(k, &e)| {
            if e == 1 {
                names[k].clone()
            } else {
                format!("{}^{e}", names[k])
            }
        })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn tally(t: &BettiTable) -> String {
    let entries: Vec<String> = t
        .coarse()
        .iter()
        .map(|(&(i, d), &c)| format!("({i},{{{d}}},{d}) => {c}"))
        .collect();
    format!("new BettiTally from {{{}}}", entries.join(", "))
}

fn header(out: &mut String, names: &[String], labels: &[String], field: Field) {
    out.push_str("-- generated by llab\n");
    for (n, l) in names.iter().zip(labels) {
        let _ = writeln!(out, "-- {n} = {l}");
    }
    let _ = writeln!(out, "R = {}[{}];", ring_name(field), names.join(", "));
}

/// Declares the ring and ideal, and asserts the Betti table when given.
pub fn export_ideal(ideal: &SqfMonomialIdeal, betti: Option<&BettiTable>, field: Field) -> String {
    let v = ideal.vars();
    let names = m2_vars(v);
    let labels: Vec<String> = (0..v.len()).map(|k| v.var_name(k)).collect();
    let mut out = String::new();
    header(&mut out, &names, &labels, field);
    let gens: Vec<String> = ideal
        .gens()
        .iter()
        .map(|g| product(&names, &g.to_multidegree(v.len())))
        .collect();
    let _ = writeln!(out, "I = monomialIdeal({});", gens.join(", "));
    if let Some(t) = betti {
        let _ = writeln!(out, "C = res I;");
        let _ = writeln!(out, "assert(betti C == {});", tally(t));
    }
    out
}

/// Declares each differential as a graded map and asserts `d^2 = 0`; with an
/// ideal, also asserts the Betti table of its minimal resolution.
pub fn export_complex(
    c: &MultigradedComplex,
    vars: &VarSet,
    ideal: Option<&SqfMonomialIdeal>,
    field: Field,
) -> String {
    let names = if vars.len() == c.nvars() {
        m2_vars(vars)
    } else {
        (1..=c.nvars()).map(|k| format!("x_({k})")).collect()
    };
    let mut out = String::new();
    header(&mut out, &names, c.names(), field);
    let module = |i: usize| {
        let degs: Vec<String> = c
            .module(i)
            .iter()
            .map(|g| format!("-{}", g.degree.total()))
            .collect();
        format!("R^{{{}}}", degs.join(", "))
    };
    for (i, d) in c.diffs().iter().enumerate() {
        let rows: Vec<String> = (0..d.nrows())
            .map(|r| {
                let cells: Vec<String> = (0..d.ncols())
                    .map(|col| match d.get(r, col) {
                        0 => "0".into(),
                        v => {
                            let m = c.entry_monomial(i, r, col).expect("homogeneous entry");
                            let body = product(&names, &m);
                            match v {
                                1 => body,
                                -1 => format!("-{body}"),
                                _ => format!("{v}*{body}"),
                            }
                        }
                    })
                    .collect();
                format!("{{{}}}", cells.join(", "))
            })
            .collect();
        let _ = writeln!(
            out,
            "d{} = map({}, {}, {{{}}});",
            i + 1,
            module(i),
            module(i + 1),
            rows.join(", ")
        );
        let _ = writeln!(out, "assert(isHomogeneous d{});", i + 1);
    }
    for i in 1..c.diffs().len() {
        let _ = writeln!(out, "assert(d{} * d{} == 0);", i, i + 1);
    }
    if let Some(ideal) = ideal {
        let gens: Vec<String> = ideal
            .gens()
            .iter()
            .map(|g| product(&names, &g.to_multidegree(c.nvars())))
            .collect();
        let _ = writeln!(out, "I = monomialIdeal({});", gens.join(", "));
        let ranks: Vec<String> = c.ranks().iter().map(|r| r.to_string()).collect();
        let _ = writeln!(
            out,
            "assert(apply(length res I + 1, i -> rank (res I)_i) == {{{}}});",
            ranks.join(", ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::hochster_betti;
    use crate::ideal::coletterplace_ideal;
    use crate::poset::{HomSpace, IsotoneMap, Poset, PosetIdeal};
    use crate::resolution::coletterplace_resolution;

    fn e1() -> PosetIdeal {
        let s = HomSpace::new(Poset::chain(2), 2).unwrap();
        PosetIdeal::generated_by(&s, &[IsotoneMap(vec![1, 2])]).unwrap()
    }

    #[test]
    fn ideal_script() {
        let l = coletterplace_ideal(&e1());
        let b = hochster_betti(&l, Field::Rational).unwrap();
        let s = export_ideal(&l, Some(&b), Field::Rational);
        assert!(s.contains("R = QQ[x_(1,1), x_(1,2), x_(2,1), x_(2,2)];"));
        assert!(s.contains("I = monomialIdeal(x_(1,1)*x_(2,1), x_(1,1)*x_(2,2));"));
        assert!(s.contains("(0,{2},2) => 2, (1,{3},3) => 1"));
        assert_eq!(s, export_ideal(&l, Some(&b), Field::Rational));
    }

    #[test]
    fn complex_script() {
        let j = e1();
        let c = coletterplace_resolution(&j).unwrap();
        let l = coletterplace_ideal(&j);
        let s = export_complex(&c, l.vars(), Some(&l), Field::Prime(2));
        assert!(s.starts_with("-- generated by llab\n"));
        assert!(s.contains("R = ZZ/2["));
        assert!(s.contains("d1 = map(R^{-2, -2}, R^{-3}, {{x_(2,2)}, {-x_(2,1)}});"));
        assert!(s.contains("== {2, 1}"));
    }

    #[test]
    fn plain_names() {
        let v = std::sync::Arc::new(VarSet::numbered_points(3).unwrap());
        let i = SqfMonomialIdeal::new(v, vec![crate::vars::SqfMonomial::from_indices([0, 2])]);
        let s = export_ideal(&i, None, Field::Rational);
        assert!(s.contains("I = monomialIdeal(x_(1)*x_(3));"));
        assert!(!s.contains("res I"));
    }
}
