//! Generating functions of path counts.
//!
//! `D^n_1` is the rational function whose `t^v` coefficient is the number of
//! paths realizing `v`. It is kept as a numerator/denominator pair with
//! denominator constant term 1 (no GCD reduction is ever attempted), and
//! coefficients are read off by expanding the power series degree by degree.
//!
//! The construction solves the flip equation
//! `de' * D = nu' + t_n * prime(D)` (primed pieces are the `n-1` plate
//! fraction embedded in `n` variables) together with its own image under
//! `prime`, which eliminates `prime(D)`:
//!
//! ```text
//! nu_n = nu' * prime(de') + t_n * prime(nu')
//! de_n = de' * prime(de') - t_1 * t_n
//! ```
//!
//! The flip equation only holds when the `n-1` plate fraction is in parity
//! form: every denominator term of even degree, every numerator term except
//! the constant of odd degree. Then the even part of the series is exactly
//! `1 / de`. The raw `nu_n / de_n` can pick up a common even factor (from 4
//! plates on), and that factor is precisely the even part of `nu_n`, so both
//! halves are divided by it exactly before the next step.

mod poly;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

pub use poly::{Monomial, MultiPoly};

use crate::error::{Error, Result};

/// A formal power series given as `nu / de`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    nu: MultiPoly,
    de: MultiPoly,
}

impl RationalGF {
    pub fn new(nu: MultiPoly, de: MultiPoly) -> Result<Self> {
        if nu.nvars() != de.nvars() {
            return Err(Error::MismatchedVariables(nu.nvars(), de.nvars()));
        }
        if !de.constant_term().is_one() {
            return Err(Error::UnnormalizedDenominator);
        }
        Ok(Self { nu, de })
    }

    pub fn nu(&self) -> &MultiPoly {
        &self.nu
    }

    pub fn de(&self) -> &MultiPoly {
        &self.de
    }

    pub fn nvars(&self) -> usize {
        self.nu.nvars()
    }

    pub fn prime(&self) -> Self {
        Self {
            nu: self.nu.prime(),
            de: self.de.prime(),
        }
    }

    /// Equality as power series, by cross-multiplication.
    pub fn same_series(&self, other: &Self) -> Result<bool> {
        Ok(self.nu.checked_mul(&other.de)? == other.nu.checked_mul(&self.de)?)
    }

    /// Denominator terms all of even degree; numerator terms other than the
    /// constant all of odd degree.
    pub fn has_parity_structure(&self) -> bool {
        let de_even = self.de.terms().all(|(m, _)| m.degree() % 2 == 0);
        let nu_odd = self
            .nu
            .terms()
            .all(|(m, _)| m.is_one() || m.degree() % 2 == 1);
        de_even && nu_odd
    }

    pub fn series(&self, bound: u64) -> Result<TruncatedSeries> {
        series(self, bound)
    }
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.nu, self.de)
    }
}

/// `D^n_1`, the generating function of paths between `n >= 2` plates.
pub fn build_d1(n: usize) -> Result<RationalGF> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "D^n_1 needs at least 2 plates, got {n}"
        )));
    }
    let t = |i| MultiPoly::var(2, i);
    let mut nu = &MultiPoly::one(2) + &t(2);
    let mut de = &MultiPoly::one(2) - &(&t(1) * &t(2));
    for k in 3..=n {
        let nu_prev = nu.embed(k);
        let de_prev = de.embed(k);
        let t_last = MultiPoly::var(k, k);
        let t_first = MultiPoly::var(k, 1);
        let raw_nu = &(&nu_prev * &de_prev.prime()) + &(&t_last * &nu_prev.prime());
        let raw_de = &(&de_prev * &de_prev.prime()) - &(&t_first * &t_last);
        let common = raw_nu.even_part();
        nu = raw_nu.exact_div(&common)?;
        de = raw_de.exact_div(&common)?;
    }
    RationalGF::new(nu, de)
}

/// `D^n_i`, counting paths whose first reflection lies strictly below plate `i`.
///
/// Every `D^n_a` shares the denominator of `D^n_1`, so only numerators are
/// carried through the recursion
/// `D_i = D_1 - sum_{2<=j<=i} t_j - sum_{1<=a<b<=i} t_b t_a D_a`.
pub fn build_di(n: usize, i: usize) -> Result<RationalGF> {
    if i == 0 || i > n {
        return Err(Error::InvalidParameter(format!(
            "plate index {i} outside 1..={n}"
        )));
    }
    let d1 = build_d1(n)?;
    let de = d1.de.clone();
    let mut numerators: Vec<MultiPoly> = vec![d1.nu.clone()];
    for target in 2..=i {
        let mut nu = d1.nu.clone();
        for j in 2..=target {
            nu = &nu - &(&de * &MultiPoly::var(n, j));
        }
        for b in 2..=target {
            for a in 1..b {
                let pair = &MultiPoly::var(n, b) * &MultiPoly::var(n, a);
                nu = &nu - &(&pair * &numerators[a - 1]);
            }
        }
        numerators.push(nu);
    }
    let nu = numerators.pop().expect("at least D_1 is present");
    RationalGF::new(nu, de)
}

/// Power series coefficients of every monomial of degree at most `bound`.
/// Monomials missing from the map have coefficient zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    nvars: usize,
    bound: u64,
    coeffs: BTreeMap<Monomial, BigInt>,
}

impl TruncatedSeries {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    /// `None` when the monomial lies beyond the truncation or in another ring.
    pub fn coeff(&self, exponents: &[u32]) -> Option<BigInt> {
        let m = Monomial::new(exponents.to_vec());
        if exponents.len() != self.nvars || m.degree() > self.bound {
            return None;
        }
        Some(self.coeffs.get(&m).cloned().unwrap_or_default())
    }

    /// Nonzero coefficients in printing order.
    pub fn nonzero(&self) -> Vec<(&Monomial, &BigInt)> {
        let mut terms: Vec<_> = self.coeffs.iter().collect();
        terms.sort_by(|a, b| a.0.print_cmp(b.0));
        terms
    }

    pub fn to_poly(&self) -> MultiPoly {
        let mut p = MultiPoly::zero(self.nvars);
        for (m, c) in &self.coeffs {
            p.add_term(m.clone(), c.clone());
        }
        p
    }
}

/// Expands `gf` up to total degree `bound` using
/// `S_d = nu_d - sum_{e>=1} de_e * S_{d-e}` on homogeneous slices.
pub fn series(gf: &RationalGF, bound: u64) -> Result<TruncatedSeries> {
    if !gf.de.constant_term().is_one() {
        return Err(Error::UnnormalizedDenominator);
    }
    let nvars = gf.nvars();
    let de_slices: Vec<(u64, MultiPoly)> = (1..=bound.min(gf.de.max_degree().unwrap_or(0)))
        .map(|e| (e, gf.de.homogeneous_part(e)))
        .filter(|(_, p)| !p.is_zero())
        .collect();
    let mut slices: Vec<MultiPoly> = Vec::with_capacity(bound as usize + 1);
    for d in 0..=bound {
        let mut s = gf.nu.homogeneous_part(d);
        for (e, de_e) in &de_slices {
            if *e > d {
                break;
            }
            let lower = &slices[(d - e) as usize];
            if !lower.is_zero() {
                s = &s - &(de_e * lower);
            }
        }
        slices.push(s);
    }
    let mut coeffs = BTreeMap::new();
    for s in slices {
        for (m, c) in s.terms() {
            coeffs.insert(m.clone(), c.clone());
        }
    }
    Ok(TruncatedSeries {
        nvars,
        bound,
        coeffs,
    })
}

/// Checks that the even-degree part of the series of `D^n_1` times the
/// denominator of `D^n_1` is 1 through degree `bound`.
pub fn even_part_identity_check(n: usize, bound: u64) -> Result<bool> {
    let d1 = build_d1(n)?;
    let even = series(&d1, bound)?.to_poly().even_part();
    let product = even.mul_truncated(&d1.de, bound)?;
    Ok(product == MultiPoly::one(n))
}
