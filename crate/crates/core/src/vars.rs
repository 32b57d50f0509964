//! Variable sets and monomials.
//!
//! Variables are indexed by pairs `(element, level)` and carry a fixed total
//! order (element declaration order, then level). Every sign computed downstream
//! refers to this order. Squarefree monomials are bitsets over the indices.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest number of variables a [`VarSet`] may hold.
pub const MAX_VARS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var {
    pub elem: usize,
    pub level: u32,
}

/// An ordered set of variables `x_{p,i}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarSet {
    elements: Vec<String>,
    vars: Vec<Var>,
    plain: bool,
}

impl VarSet {
    fn build(elements: Vec<String>, vars: Vec<Var>, plain: bool) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len(), MAX_VARS));
        }
        Ok(VarSet {
            elements,
            vars,
            plain,
        })
    }

    /// The full grid `P x [n]`.
    pub fn grid(elements: &[String], n: u32) -> Result<Self> {
        let vars = (0..elements.len())
            .flat_map(|elem| (1..=n).map(move |level| Var { elem, level }))
            .collect();
        Self::build(elements.to_vec(), vars, false)
    }

    /// The restricted grid `{(p, i) : i <= bound[p]}`.
    pub fn restricted(elements: &[String], bound: &[u32]) -> Result<Self> {
        assert_eq!(elements.len(), bound.len());
        let vars = bound
            .iter()
            .enumerate()
            .flat_map(|(elem, &b)| (1..=b).map(move |level| Var { elem, level }))
            .collect();
        Self::build(elements.to_vec(), vars, false)
    }

    /// A plain vertex set; variables print as their element names.
    pub fn points(elements: &[String]) -> Result<Self> {
        let vars = (0..elements.len())
            .map(|elem| Var { elem, level: 1 })
            .collect();
        Self::build(elements.to_vec(), vars, true)
    }

    pub fn numbered_points(count: usize) -> Result<Self> {
        let names: Vec<String> = (1..=count).map(|i| i.to_string()).collect();
        Self::points(&names)
    }

    /// Builds a set from explicit variables, sorted into the canonical order.
    pub fn from_vars(elements: &[String], mut vars: Vec<Var>) -> Result<Self> {
        vars.sort();
        vars.dedup();
        if let Some(v) = vars.iter().find(|v| v.elem >= elements.len() || v.level == 0) {
            return Err(Error::Invalid(format!("variable {v:?} out of range")));
        }
        Self::build(elements.to_vec(), vars, false)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_plain(&self) -> bool {
        self.plain
    }

    pub fn var(&self, index: usize) -> Var {
        self.vars[index]
    }

    pub fn index_of(&self, elem: usize, level: u32) -> Option<usize> {
        self.vars.binary_search(&Var { elem, level }).ok()
    }

    /// Every variable of the set as a monomial.
    pub fn full(&self) -> SqfMonomial {
        SqfMonomial::full(self.len())
    }

    pub fn var_name(&self, index: usize) -> String {
        let v = self.vars[index];
        if self.plain {
            self.elements[v.elem].clone()
        } else {
            format!("x_{{{},{}}}", self.elements[v.elem], v.level)
        }
    }

    pub fn monomial_string(&self, m: SqfMonomial) -> String {
        if m.is_empty() {
            return "1".to_string();
        }
        m.iter()
            .map(|i| self.var_name(i))
            .collect::<Vec<_>>()
            .join("*")
    }

    /// Maps a monomial over `self` into `other` by variable identity.
    pub fn transfer(&self, m: SqfMonomial, other: &VarSet) -> Option<SqfMonomial> {
        let mut out = SqfMonomial::empty();
        for i in m.iter() {
            let v = self.vars[i];
            out.insert(other.index_of(v.elem, v.level)?);
        }
        Some(out)
    }
}

pub fn same_vars(a: &Arc<VarSet>, b: &Arc<VarSet>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A squarefree monomial `m_S`, stored as the bitset of `S`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SqfMonomial(u64);

impl SqfMonomial {
    pub const fn empty() -> Self {
        SqfMonomial(0)
    }

    pub const fn from_bits(bits: u64) -> Self {
        SqfMonomial(bits)
    }

    pub fn full(len: usize) -> Self {
        if len >= 64 {
            SqfMonomial(u64::MAX)
        } else {
            SqfMonomial((1u64 << len) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        SqfMonomial(1 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = SqfMonomial(0);
        for i in it {
            m.insert(i);
        }
        m
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        SqfMonomial(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        SqfMonomial(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        SqfMonomial(self.0 & !other.0)
    }

    pub fn complement(self, len: usize) -> Self {
        SqfMonomial(!self.0 & Self::full(len).0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn with(self, i: usize) -> Self {
        SqfMonomial(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        SqfMonomial(self.0 & !(1 << i))
    }

    /// Number of elements of `self` strictly below `i` in the variable order.
    pub fn count_below(self, i: usize) -> usize {
        (self.0 & ((1u64 << i) - 1)).count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All submonomials, the empty one first, `self` last.
    pub fn subsets(self) -> impl Iterator<Item = SqfMonomial> {
        let full = self.0;
        let mut sub = 0u64;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = SqfMonomial(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }

    pub fn to_multidegree(self, nvars: usize) -> Multidegree {
        Multidegree((0..nvars).map(|i| self.contains(i) as u8).collect())
    }
}

impl fmt::Debug for SqfMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Degree first, then lexicographic on the sorted index lists.
impl Ord for SqfMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for SqfMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exponent vector in `N^k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Multidegree(pub Vec<u8>);

impl Multidegree {
    pub fn zero(nvars: usize) -> Self {
        Multidegree(vec![0; nvars])
    }

    pub fn unit(nvars: usize, i: usize) -> Self {
        let mut v = vec![0; nvars];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn to_sqf(&self) -> Option<SqfMonomial> {
        if !self.is_squarefree() || self.0.len() > 64 {
            return None;
        }
        Some(SqfMonomial::from_indices(
            self.0.iter().enumerate().filter(|(_, &e)| e == 1).map(|(i, _)| i),
        ))
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self - other`, or `None` when `other` does not divide `self`.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Multidegree)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Multidegree(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Renders the monomial with the given variable names.
    pub fn render(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    names[i].clone()
                } else {
                    format!("{}^{}", names[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
