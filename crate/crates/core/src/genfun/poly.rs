use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector `t1^e1 * ... * tn^en`. Ordered graded-lexicographically
/// with `t1 > t2 > ... > tn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    /// The variable `t_i`, `i` counted from 1.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(
            (1..=nvars).contains(&i),
            "t{i} is not a variable of a {nvars}-variable ring"
        );
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn reversed(&self) -> Self {
        let mut e = self.0.clone();
        e.reverse();
        Self(e)
    }

    pub fn embed(&self, nvars: usize) -> Self {
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Self(e)
    }

    fn times(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Printing order: ascending degree, and within a degree the larger
    /// monomial first.
    pub(crate) fn print_cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "t{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `t1..tn` with exact integer coefficients. Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        Self::from_monomial(Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::from_monomial(Monomial::var(nvars, i), BigInt::one())
    }

    pub fn from_monomial(m: Monomial, c: BigInt) -> Self {
        let mut p = Self::zero(m.nvars());
        p.add_term(m, c);
        p
    }

    /// Builds from `(exponents, coefficient)` pairs; repeated monomials add up.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, i64)>,
    {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector of the wrong length");
            p.add_term(Monomial::new(e), BigInt::from(c));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> BigInt {
        self.terms
            .get(&Monomial::new(exponents.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn max_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.nvars == other.nvars {
            Ok(())
        } else {
            Err(Error::MismatchedVariables(self.nvars, other.nvars))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.mul_bounded(other, None)
    }

    /// Product with every term of degree above `bound` discarded.
    pub fn mul_truncated(&self, other: &Self, bound: u64) -> Result<Self> {
        self.mul_bounded(other, Some(bound))
    }

    fn mul_bounded(&self, other: &Self, bound: Option<u64>) -> Result<Self> {
        self.same_ring(other)?;
        let mut acc: BTreeMap<Monomial, BigInt> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            let da = ma.degree();
            for (mb, cb) in &other.terms {
                if bound.is_some_and(|b| da + mb.degree() > b) {
                    continue;
                }
                *acc.entry(ma.times(mb)).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(Self {
            nvars: self.nvars,
            terms: acc,
        })
    }

    /// Quotient of a division known to leave no remainder, by repeatedly
    /// cancelling the graded-lex leading term.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.same_ring(divisor)?;
        let (lead_m, lead_c) = divisor
            .terms
            .iter()
            .next_back()
            .ok_or(Error::InexactDivision)?;
        let mut remainder = self.clone();
        let mut quotient = Self::zero(self.nvars);
        while let Some((m, c)) = remainder.terms.iter().next_back() {
            let shift: Option<Vec<u32>> =
                m.0.iter()
                    .zip(&lead_m.0)
                    .map(|(a, b)| a.checked_sub(*b))
                    .collect();
            let shift = shift.ok_or(Error::InexactDivision)?;
            if !(c % lead_c).is_zero() {
                return Err(Error::InexactDivision);
            }
            let term = Self::from_monomial(Monomial(shift), c / lead_c);
            remainder = remainder.checked_sub(&term.checked_mul(divisor)?)?;
            quotient = quotient.checked_add(&term)?;
        }
        Ok(quotient)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Variable reversal `t_i -> t_{n+1-i}`.
    pub fn prime(&self) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.reversed(), c.clone()))
                .collect(),
        }
    }

    /// The same polynomial viewed in a ring with `nvars >= self.nvars()`
    /// variables, occupying `t1..t_{self.nvars()}`.
    pub fn embed(&self, nvars: usize) -> Self {
        assert!(nvars >= self.nvars, "cannot embed into a smaller ring");
        Self {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.embed(nvars), c.clone()))
                .collect(),
        }
    }

    pub fn filter_degrees(&self, keep: impl Fn(u64) -> bool) -> Self {
        Self {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Terms of total degree exactly `d`.
    pub fn homogeneous_part(&self, d: u64) -> Self {
        self.filter_degrees(|e| e == d)
    }

    pub fn even_part(&self) -> Self {
        self.filter_degrees(|e| e % 2 == 0)
    }

    pub fn truncate(&self, bound: u64) -> Self {
        self.filter_degrees(|e| e <= bound)
    }

    /// Terms in printing order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| a.0.print_cmp(b.0));
        terms
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            if c.is_negative() {
                f.write_str("-")?;
            } else if idx > 0 {
                f.write_str("+")?;
            }
            let magnitude = c.abs();
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;

    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;

    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;

    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;

    fn neg(self) -> MultiPoly {
        self.scale(&BigInt::from(-1))
    }
}
