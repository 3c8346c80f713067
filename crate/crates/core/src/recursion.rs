//! Counting without generating functions: the alternating-sign closed form
//! for words ending at a given plate, and the vector recursion for `N(v)`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};

use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::words::{vectors_with_total, ReflectionVector, Semantics};

/// `a_0 = 1`, `a_l = sum_{i=1..l} (-1)^(i+1) C(n+i-1, 2i) a_(l-i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxSequence {
    n: usize,
    values: Vec<BigInt>,
}

impl AuxSequence {
    /// Terms `a_0..=a_max`.
    pub fn new(n: usize, max: usize) -> Self {
        let mut values: Vec<BigInt> = vec![BigInt::one()];
        for l in 1..=max {
            let mut acc = BigInt::zero();
            for i in 1..=l {
                let term =
                    BigInt::from(binomial((n + i - 1) as i64, 2 * i as i64)) * &values[l - i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            values.push(acc);
        }
        Self { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }
}

fn check_closed_params(n: usize, m: usize) -> Result<()> {
    if n < 2 || m < 1 {
        return Err(Error::InvalidParameter(format!(
            "closed form needs n >= 2 and m >= 1, got n={n}, m={m}"
        )));
    }
    Ok(())
}

fn to_count(x: BigInt) -> BigUint {
    match x.sign() {
        Sign::Minus => panic!("closed form produced a negative count {x}"),
        _ => x.magnitude().clone(),
    }
}

fn a_last_with(aux: &AuxSequence, m: usize, j: usize) -> BigUint {
    let n = aux.n as i64;
    let r = (m - 1) / 2;
    let mut acc = BigInt::zero();
    for (l, a_l) in aux.values[..=r].iter().enumerate() {
        let c = binomial(n - j as i64 + (r - l) as i64, (m - 1 - 2 * l) as i64);
        let term = a_l * BigInt::from(c);
        if (l + r) % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    to_count(acc)
}

/// Down-up words of length `m` over `{1..n}` ending in letter `j`, by the
/// alternating-sign closed form.
pub fn a_last_closed(n: usize, m: usize, j: usize) -> Result<BigUint> {
    check_closed_params(n, m)?;
    if j == 0 || j > n {
        return Err(Error::InvalidParameter(format!(
            "plate {j} outside 1..={n}"
        )));
    }
    Ok(a_last_with(&AuxSequence::new(n, (m - 1) / 2), m, j))
}

/// All down-up words of length `m` (word semantics).
pub fn a_closed(n: usize, m: usize) -> Result<BigUint> {
    check_closed_params(n, m)?;
    let aux = AuxSequence::new(n, (m - 1) / 2);
    Ok((1..=n).map(|j| a_last_with(&aux, m, j)).sum())
}

/// Paths (or words) with `m` reflections, from the closed form; `m = 0`
/// gives the empty path.
pub fn a_closed_with(n: usize, m: usize, semantics: Semantics) -> Result<BigUint> {
    if m == 0 {
        return Ok(BigUint::one());
    }
    let words = a_closed(n, m)?;
    Ok(match semantics {
        Semantics::Path if m == 1 => words - 1u32,
        _ => words,
    })
}

/// Checks `a_{2i,j} = sum_{j'>j} a_{2i-1,j'}` and
/// `a_{2i+1,j} = sum_{j'<j} a_{2i,j'}` on closed-form values up to `m_max`.
pub fn step_recursion_check(n: usize, m_max: usize) -> Result<bool> {
    check_closed_params(n, 1)?;
    let aux = AuxSequence::new(n, m_max.saturating_sub(1) / 2);
    let row = |m: usize| -> Vec<BigUint> { (1..=n).map(|j| a_last_with(&aux, m, j)).collect() };
    let mut prev = row(1);
    if prev.iter().any(|c| !c.is_one()) {
        return Ok(false);
    }
    for m in 2..=m_max {
        let cur = row(m);
        for j in 0..n {
            let expect: BigUint = if m % 2 == 0 {
                prev[j + 1..].iter().sum()
            } else {
                prev[..j].iter().sum()
            };
            if cur[j] != expect {
                return Ok(false);
            }
        }
        prev = cur;
    }
    Ok(true)
}

/// Memoized evaluation of the vector recursion for `N(v)`.
///
/// Vectors with a zero coordinate (and at least two reflections) are
/// compressed to the remaining plates first; one and two plates are closed
/// bases; otherwise the recursion splits paths by where they first reach
/// plate 1 or plate `n`. Sub-paths strictly between the outer plates are
/// counted on `n-2` plates with the same path convention.
#[derive(Debug, Default, Clone)]
pub struct PathCounter {
    memo: HashMap<Vec<u32>, BigUint>,
}

impl PathCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn count(&mut self, v: &ReflectionVector) -> BigUint {
        self.count_slice(v.counts())
    }

    fn count_signed(&mut self, v: &[i64]) -> BigUint {
        if v.iter().any(|&x| x < 0) {
            return BigUint::zero();
        }
        let v: Vec<u32> = v.iter().map(|&x| x as u32).collect();
        self.count_slice(&v)
    }

    fn count_slice(&mut self, v: &[u32]) -> BigUint {
        let total: u64 = v.iter().map(|&x| u64::from(x)).sum();
        match total {
            0 => return BigUint::one(),
            1 => {
                return if v[0] == 1 {
                    BigUint::zero()
                } else {
                    BigUint::one()
                }
            }
            _ => {}
        }
        if v.contains(&0) {
            let compressed: Vec<u32> = v.iter().copied().filter(|&x| x != 0).collect();
            return self.count_slice(&compressed);
        }
        match v.len() {
            1 => return BigUint::zero(),
            2 => {
                return if v[1] == v[0] || v[1] == v[0] + 1 {
                    BigUint::one()
                } else {
                    BigUint::zero()
                }
            }
            _ => {}
        }
        if let Some(hit) = self.memo.get(v) {
            return hit.clone();
        }
        let result = self.split(v, total % 2 == 1);
        self.memo.insert(v.to_vec(), result.clone());
        result
    }

    fn split(&mut self, v: &[u32], odd: bool) -> BigUint {
        let n = v.len();
        let base: Vec<i64> = v.iter().map(|&x| i64::from(x)).collect();
        let minus = |idx: &[usize]| -> Vec<i64> {
            let mut w = base.clone();
            for &i in idx {
                w[i] -= 1;
            }
            w
        };

        // Odd totals peel from the front of the word as written; even totals
        // use the mirrored word, so the interior block is subtracted reversed
        // and its range is the reversed interior.
        let (mut acc, after_one, after_top) = if odd {
            (
                self.count_signed(&minus(&[0, 1])) + self.count_signed(&minus(&[n - 1])),
                0,
                n - 1,
            )
        } else {
            (
                self.count_signed(&minus(&[n - 1, n - 2])) + self.count_signed(&minus(&[0])),
                n - 1,
                0,
            )
        };
        let mut interior: Vec<u32> = v[1..n - 1].to_vec();
        if !odd {
            interior.reverse();
        }

        for u in BoxIter::new(&interior) {
            let inner_total: u32 = u.iter().sum();
            if inner_total == 0 {
                continue;
            }
            let inner = self.count_slice(&u);
            if inner.is_zero() {
                continue;
            }
            let mut rest = base.clone();
            for (k, &x) in u.iter().enumerate() {
                let slot = if odd { 1 + k } else { n - 2 - k };
                rest[slot] -= i64::from(x);
            }
            rest[if inner_total % 2 == 1 {
                after_one
            } else {
                after_top
            }] -= 1;
            acc += inner * self.count_signed(&rest);
        }
        acc
    }
}

/// `N(v)` by the vector recursion with a fresh memo table.
pub fn n_rec(v: &ReflectionVector) -> BigUint {
    PathCounter::new().count(v)
}

/// Checks `N(v) = N(reverse(v))` for every `v` on `n` plates with even total
/// at most `total_max`.
pub fn reversal_symmetry_check(n: usize, total_max: u32) -> bool {
    let mut counter = PathCounter::new();
    (0..=total_max).step_by(2).all(|total| {
        vectors_with_total(n, total)
            .iter()
            .all(|v| counter.count(v) == counter.count(&v.reversed()))
    })
}

/// Every vector `u` with `0 <= u <= upper` componentwise, odometer order.
struct BoxIter {
    upper: Vec<u32>,
    current: Option<Vec<u32>>,
}

impl BoxIter {
    fn new(upper: &[u32]) -> Self {
        Self {
            upper: upper.to_vec(),
            current: Some(vec![0; upper.len()]),
        }
    }
}

impl Iterator for BoxIter {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.clone()?;
        let mut next = out.clone();
        let mut carried = true;
        for (slot, &cap) in next.iter_mut().zip(&self.upper).rev() {
            if *slot < cap {
                *slot += 1;
                carried = false;
                break;
            }
            *slot = 0;
        }
        self.current = if carried { None } else { Some(next) };
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{dp_n, oracle_a, oracle_a_last, oracle_n, vectors_in_box};

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    fn rv(c: &[u32]) -> ReflectionVector {
        ReflectionVector::new(c.to_vec())
    }

    #[test]
    fn aux_sequence() {
        let aux = AuxSequence::new(3, 3);
        let shown: Vec<String> = aux.values().iter().map(|x| x.to_string()).collect();
        // a1 = C(3,2) = 3, a2 = 3*a1 - C(4,4) = 8, a3 = 3*a2 - a1 + C(5,6)*1 = 21
        assert_eq!(shown, ["1", "3", "8", "21"]);
        for n in 2..=10 {
            assert_eq!(AuxSequence::new(n, 20).values().len(), 21);
        }
    }

    #[test]
    fn closed_form_values() {
        assert_eq!(a_last_closed(3, 1, 2).unwrap(), big(1));
        assert_eq!(a_last_closed(3, 4, 1).unwrap(), big(5));
        assert_eq!(a_last_closed(3, 2, 1).unwrap(), big(2));
        assert_eq!(a_closed(3, 4).unwrap(), big(8));
        assert_eq!(a_closed(3, 1).unwrap(), big(3));
        assert_eq!(a_closed(4, 6).unwrap(), oracle_a(4, 6, Semantics::Word));
        assert_eq!(a_closed_with(3, 1, Semantics::Path).unwrap(), big(2));
        assert_eq!(a_closed_with(3, 0, Semantics::Path).unwrap(), big(1));
    }

    #[test]
    fn closed_form_rejects_bad_parameters() {
        assert!(a_last_closed(1, 3, 1).is_err());
        assert!(a_last_closed(3, 0, 1).is_err());
        assert!(a_last_closed(3, 2, 0).is_err());
        assert!(a_last_closed(3, 2, 4).is_err());
        assert!(a_closed(3, 0).is_err());
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for n in 2..=5 {
            for m in 1..=9 {
                for j in 1..=n {
                    assert_eq!(
                        a_last_closed(n, m, j).unwrap(),
                        oracle_a_last(n, m, j).unwrap(),
                        "n={n} m={m} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn interleaved_steps() {
        assert!(step_recursion_check(3, 10).unwrap());
        assert!(step_recursion_check(2, 10).unwrap());
        assert!(step_recursion_check(5, 8).unwrap());
    }

    #[test]
    fn recursion_values() {
        assert_eq!(n_rec(&rv(&[1, 1, 1])), big(2));
        assert_eq!(n_rec(&rv(&[2, 1, 1])), big(2));
        assert_eq!(n_rec(&rv(&[7, 5, 7])), big(840));
        assert_eq!(n_rec(&rv(&[0, 0, 0])), big(1));
        assert_eq!(n_rec(&rv(&[1, 0, 0])), big(0));
        assert_eq!(n_rec(&rv(&[0, 1, 0])), big(1));
        assert_eq!(n_rec(&rv(&[4, 4])), big(1));
        assert_eq!(n_rec(&rv(&[4, 5])), big(1));
        assert_eq!(n_rec(&rv(&[5, 4])), big(0));
        assert_eq!(n_rec(&rv(&[])), big(1));
    }

    #[test]
    fn recursion_matches_dp() {
        let mut counter = PathCounter::new();
        for n in 1..=5 {
            let total_max = if n <= 3 { 12 } else { 9 };
            for total in 0..=total_max {
                for v in vectors_with_total(n, total) {
                    assert_eq!(counter.count(&v), dp_n(&v), "{v}");
                }
            }
        }
    }

    #[test]
    fn recursion_matches_enumeration() {
        for n in 3..=4 {
            for total in 0..=7 {
                for v in vectors_with_total(n, total) {
                    assert_eq!(n_rec(&v), oracle_n(&v), "{v}");
                }
            }
        }
    }

    #[test]
    fn memo_is_invisible() {
        let mut shared = PathCounter::new();
        for v in vectors_in_box(4, 3) {
            let warm = shared.count(&v);
            let cold = n_rec(&v);
            assert_eq!(warm, cold, "{v}");
        }
        assert!(shared.memo_len() > 0);
        shared.clear();
        assert_eq!(shared.memo_len(), 0);
        assert_eq!(shared.count(&rv(&[7, 5, 7])), big(840));
    }

    #[test]
    fn reversal_symmetry() {
        assert!(reversal_symmetry_check(3, 10));
        assert!(reversal_symmetry_check(4, 8));
        assert!(reversal_symmetry_check(2, 10));
        assert!(reversal_symmetry_check(1, 10));
    }

    #[test]
    fn odd_totals_can_break_reversal() {
        let v = rv(&[1, 0, 0]);
        assert_ne!(n_rec(&v), n_rec(&v.reversed()));
    }

    #[test]
    fn box_iteration() {
        let all: Vec<Vec<u32>> = BoxIter::new(&[1, 2]).collect();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], [0, 0]);
        assert_eq!(all[5], [1, 2]);
        assert_eq!(BoxIter::new(&[]).count(), 1);
    }
}
