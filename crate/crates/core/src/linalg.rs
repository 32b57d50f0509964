//! Exact ranks of sparse integer matrices over the rationals and prime fields.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

/// Largest prime below `2^31`.
pub(crate) const FAST_PRIME: u32 = 2_147_483_647;

/// Coefficient field for homology and exactness checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `qq`, `f<p>` and `gf<p>`.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("gf")
            .or_else(|| t.strip_prefix('f'))
            .ok_or_else(|| Error::Invalid(format!("unknown field `{s}`")))?;
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::Invalid(format!("unknown field `{s}`")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// A sparse matrix with small integer entries, stored by rows.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn new(nrows: usize, ncols: usize) -> Self {
        SparseMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    /// Adds `val` to entry `(r, c)`.
    pub fn add(&mut self, r: usize, c: usize, val: i64) {
        assert!(r < self.nrows && c < self.ncols, "entry out of bounds");
        let row = &mut self.rows[r];
        match row.binary_search_by_key(&c, |e| e.0) {
            Ok(k) => {
                row[k].1 += val;
                if row[k].1 == 0 {
                    row.remove(k);
                }
            }
            Err(k) => {
                if val != 0 {
                    row.insert(k, (c, val));
                }
            }
        }
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn row(&self, r: usize) -> &[(usize, i64)] {
        &self.rows[r]
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let row = &self.rows[r];
        row.binary_search_by_key(&c, |e| e.0)
            .map(|k| row[k].1)
            .unwrap_or(0)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut t = SparseMatrix::new(self.ncols, self.nrows);
        for (r, row) in self.rows.iter().enumerate() {
            for &(c, v) in row {
                t.rows[c].push((r, v));
            }
        }
        t
    }

    /// Keeps the listed rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut colmap = vec![usize::MAX; self.ncols];
        for (k, &c) in cols.iter().enumerate() {
            colmap[c] = k;
        }
        let mut out = SparseMatrix::new(rows.len(), cols.len());
        for (k, &r) in rows.iter().enumerate() {
            let mut row: Vec<(usize, i64)> = self.rows[r]
                .iter()
                .filter(|(c, _)| colmap[*c] != usize::MAX)
                .map(|&(c, v)| (colmap[c], v))
                .collect();
            row.sort_unstable();
            out.rows[k] = row;
        }
        out
    }

    pub fn rank(&self, field: Field) -> usize {
        let rows = self.rows.iter().filter(|r| !r.is_empty());
        match field {
            Field::Prime(2) => rank_gf2(self.ncols, rows),
            Field::Prime(p) => rank_mod_p(p as u64, self.ncols, rows),
            Field::Rational => rank_rational(&self.rows),
        }
    }
}

impl SparseMatrix {
    /// Pivot columns of a row reduction modulo `p`, taking the last entry of
    /// each row as its pivot and only adding earlier rows. Rows flagged in
    /// `skip` are left out; they must reduce to zero for the count to be the rank.
    pub fn pivot_columns(&self, p: u32, skip: &[bool]) -> Vec<usize> {
        if p == 2 {
            return self.pivot_columns_gf2(skip);
        }
        let p = p as u64;
        let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; self.ncols];
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if skip.get(r).copied().unwrap_or(false) {
                continue;
            }
            let mut cur: Vec<(usize, u64)> = row
                .iter()
                .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
                .filter(|&(_, v)| v != 0)
                .collect();
            while let Some(&(c, lead)) = cur.last() {
                match &pivots[c] {
                    Some(piv) => cur = axpy_mod(&cur, piv, p - lead, p),
                    None => {
                        let inv = mod_inv(lead, p);
                        pivots[c] = Some(cur.iter().map(|&(c, v)| (c, v * inv % p)).collect());
                        out.push(c);
                        break;
                    }
                }
            }
        }
        out
    }
}

impl SparseMatrix {
    fn pivot_columns_gf2(&self, skip: &[bool]) -> Vec<usize> {
        let words = self.ncols.div_ceil(64);
        let mut pivots: Vec<Option<Vec<u64>>> = vec![None; self.ncols];
        let mut out = Vec::new();
        for (r, row) in self.rows.iter().enumerate() {
            if skip.get(r).copied().unwrap_or(false) {
                continue;
            }
            let mut bits = vec![0u64; words];
            for &(c, v) in row {
                if v.rem_euclid(2) == 1 {
                    bits[c / 64] ^= 1 << (c % 64);
                }
            }
            let mut w = words;
            loop {
                while w > 0 && bits[w - 1] == 0 {
                    w -= 1;
                }
                if w == 0 {
                    break;
                }
                let c = (w - 1) * 64 + 63 - bits[w - 1].leading_zeros() as usize;
                match &pivots[c] {
                    Some(p) => {
                        for k in 0..w {
                            bits[k] ^= p[k];
                        }
                    }
                    None => {
                        pivots[c] = Some(bits);
                        out.push(c);
                        break;
                    }
                }
            }
        }
        out
    }
}

fn rank_gf2<'a>(ncols: usize, rows: impl Iterator<Item = &'a Vec<(usize, i64)>>) -> usize {
    let words = ncols.div_ceil(64);
    let mut pivots: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut bits = vec![0u64; words];
        for &(c, v) in row {
            if v.rem_euclid(2) == 1 {
                bits[c / 64] ^= 1 << (c % 64);
            }
        }
        let mut w = 0;
        loop {
            while w < words && bits[w] == 0 {
                w += 1;
            }
            if w == words {
                break;
            }
            let c = w * 64 + bits[w].trailing_zeros() as usize;
            match &pivots[c] {
                Some(p) => {
                    for k in w..words {
                        bits[k] ^= p[k];
                    }
                }
                None => {
                    pivots[c] = Some(bits);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

fn rank_mod_p<'a>(p: u64, ncols: usize, rows: impl Iterator<Item = &'a Vec<(usize, i64)>>) -> usize {
    let mut pivots: Vec<Option<Vec<(usize, u64)>>> = vec![None; ncols];
    let mut rank = 0;
    for row in rows {
        let mut cur: Vec<(usize, u64)> = row
            .iter()
            .map(|&(c, v)| (c, v.rem_euclid(p as i64) as u64))
            .filter(|&(_, v)| v != 0)
            .collect();
        while let Some(&(c, lead)) = cur.first() {
            match &pivots[c] {
                Some(piv) => {
                    cur = axpy_mod(&cur, piv, p - lead, p);
                }
                None => {
                    let inv = mod_inv(lead, p);
                    let monic = cur.iter().map(|&(c, v)| (c, v * inv % p)).collect();
                    pivots[c] = Some(monic);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn axpy_mod(a: &[(usize, u64)], b: &[(usize, u64)], s: u64, p: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ca < cb {
            i += 1;
            (ca, a[i - 1].1)
        } else if cb < ca {
            j += 1;
            (cb, s * b[j - 1].1 % p)
        } else {
            i += 1;
            j += 1;
            (ca, (a[i - 1].1 + s * b[j - 1].1) % p)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    out
}

trait Coeff: Clone + PartialEq {
    fn zero() -> Self;
    fn combine(sa: &Self, a: &Self, sb: &Self, b: &Self) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_unit_abs(&self) -> bool;
}

impl Coeff for i128 {
    fn zero() -> Self {
        0
    }
    fn combine(sa: &Self, a: &Self, sb: &Self, b: &Self) -> Option<Self> {
        sa.checked_mul(*a)?.checked_sub(sb.checked_mul(*b)?)
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit_abs(&self) -> bool {
        self.abs() == 1
    }
}

impl Coeff for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn combine(sa: &Self, a: &Self, sb: &Self, b: &Self) -> Option<Self> {
        Some(sa * a - sb * b)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn gcd(&self, other: &Self) -> Self {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &Self) -> Self {
        self / d
    }
    fn is_unit_abs(&self) -> bool {
        self.abs() == BigInt::from(1)
    }
}

/// `sa * a - sb * b` on sparse rows, reduced by content.
fn combine_rows<T: Coeff>(
    sa: &T,
    a: &[(usize, T)],
    sb: &T,
    b: &[(usize, T)],
) -> Option<Vec<(usize, T)>> {
    let mut out: Vec<(usize, T)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map_or(usize::MAX, |e| e.0);
        let cb = b.get(j).map_or(usize::MAX, |e| e.0);
        let z = T::zero();
        let (c, v) = if ca < cb {
            i += 1;
            (ca, T::combine(sa, &a[i - 1].1, sb, &z)?)
        } else if cb < ca {
            j += 1;
            (cb, T::combine(sa, &z, sb, &b[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            (ca, T::combine(sa, &a[i - 1].1, sb, &b[j - 1].1)?)
        };
        if !v.is_zero() {
            out.push((c, v));
        }
    }
    if let Some(first) = out.first() {
        let mut g = first.1.clone();
        for (_, v) in &out[1..] {
            if g.is_unit_abs() {
                break;
            }
            g = g.gcd(v);
        }
        if !g.is_unit_abs() {
            for e in &mut out {
                e.1 = e.1.div_exact(&g);
            }
        }
    }
    Some(out)
}

fn eliminate<T: Coeff>(rows: Vec<Vec<(usize, T)>>) -> Option<usize> {
    let mut pivots: HashMap<usize, Vec<(usize, T)>> = HashMap::new();
    let mut rank = 0;
    for mut cur in rows {
        while let Some((c, lead)) = cur.first().cloned() {
            match pivots.get(&c) {
                Some(piv) => {
                    let plead = piv[0].1.clone();
                    cur = combine_rows(&plead, &cur, &lead, piv)?;
                }
                None => {
                    pivots.insert(c, cur);
                    rank += 1;
                    break;
                }
            }
        }
    }
    Some(rank)
}

fn rank_rational(rows: &[Vec<(usize, i64)>]) -> usize {
    let small: Vec<Vec<(usize, i128)>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&(c, v)| (c, v as i128)).collect())
        .collect();
    if let Some(r) = eliminate(small) {
        return r;
    }
    let big: Vec<Vec<(usize, BigInt)>> = rows
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.iter().map(|&(c, v)| (c, BigInt::from(v))).collect())
        .collect();
    eliminate(big).expect("big integers do not overflow")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dense(rows: &[&[i64]]) -> SparseMatrix {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = SparseMatrix::new(rows.len(), ncols);
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add(r, c, v);
            }
        }
        m
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("f2".parse::<Field>().unwrap(), Field::Prime(2));
        assert_eq!("GF3".parse::<Field>().unwrap(), Field::Prime(3));
        assert_eq!("f4".parse::<Field>(), Err(Error::NotPrime(4)));
        assert!("z".parse::<Field>().is_err());
    }

    #[test]
    fn characteristic_dependent_rank() {
        // [[1,1],[1,-1]] has determinant -2
        let m = dense(&[&[1, 1], &[1, -1]]);
        assert_eq!(m.rank(Field::Rational), 2);
        assert_eq!(m.rank(Field::Prime(2)), 1);
        assert_eq!(m.rank(Field::Prime(3)), 2);
    }

    #[test]
    fn big_entries_fall_back() {
        let b = 1i64 << 40;
        let m = dense(&[&[b, b + 1, 3], &[b + 1, b, 5], &[2 * b + 1, 2 * b + 1, 8]]);
        assert_eq!(m.rank(Field::Rational), 2);
        let huge: Vec<Vec<i64>> = (0..12)
            .map(|i| (0..12).map(|j| ((i * 7 + j * 13) % 17) as i64 * b + (i == j) as i64).collect())
            .collect();
        let refs: Vec<&[i64]> = huge.iter().map(|r| r.as_slice()).collect();
        assert_eq!(dense(&refs).rank(Field::Rational), 12);
    }

    fn det_rank_rational(m: &[Vec<i64>]) -> usize {
        // reference: fraction elimination in f64-free big rationals via BigInt cross multiplication
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        let mut rows = rows;
        let ncols = rows.first().map_or(0, Vec::len);
        let mut rank = 0;
        for c in 0..ncols {
            if let Some(k) = (rank..rows.len()).find(|&k| !Zero::is_zero(&rows[k][c])) {
                rows.swap(rank, k);
                for k in 0..rows.len() {
                    if k != rank && !Zero::is_zero(&rows[k][c]) {
                        let (a, b) = (rows[rank][c].clone(), rows[k][c].clone());
                        let pivot = rows[rank].clone();
                        for (x, y) in rows[k].iter_mut().zip(pivot) {
                            *x = &a * &*x - &b * y;
                        }
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    proptest! {
        #[test]
        fn rank_agrees_with_reference(m in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
            let refs: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
            let s = dense(&refs);
            prop_assert_eq!(s.rank(Field::Rational), det_rank_rational(&m));
            prop_assert!(s.rank(Field::Prime(2)) <= s.rank(Field::Rational));
            prop_assert!(s.rank(Field::Prime(3)) <= s.rank(Field::Rational));
            prop_assert_eq!(s.transpose().rank(Field::Rational), s.rank(Field::Rational));
            prop_assert_eq!(s.transpose().rank(Field::Prime(5)), s.rank(Field::Prime(5)));
            prop_assert_eq!(s.transpose().rank(Field::Prime(2)), s.rank(Field::Prime(2)));
            for p in [2u32, 3, 5] {
                prop_assert_eq!(s.pivot_columns(p, &[]).len(), s.rank(Field::Prime(p)));
            }
        }
    }
}
