//! Three plates.
//!
//! For a fixed count `n` at plate 1, the counts `N(n, i, j)` form the matrix
//! `M_n`. Its nonzero entries sit on `2n+3` diagonals, numbered from the
//! bottom-left; the `i`-th starts on the antidiagonal `row + col = n` (even
//! `i`) or `n + 1` (odd `i`) and is an arithmetic sequence of order
//! `floor(i/2) - 1`. That structure yields a closed form for `N(x, y, z)`.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::backend::{CountBackend, Engine};
use crate::binomial::binomial;
use crate::error::{Error, Result};
use crate::words::{is_admissible, AlternatingWord, ReflectionVector, Semantics};

/// Binomial with the extra rule `C(-1, -1) = 1`, `C(a, -1) = 0` otherwise.
fn binomial_closed(a: i64, b: i64) -> BigUint {
    if b == -1 {
        return if a == -1 {
            BigUint::one()
        } else {
            BigUint::zero()
        };
    }
    binomial(a, b)
}

fn gcd2(x: i64) -> i64 {
    if x % 2 == 0 {
        2
    } else {
        1
    }
}

/// `N(x, y, z)` on three plates in closed form.
pub fn closed_n3(x: u64, y: u64, z: u64) -> BigUint {
    let (x, y, z) = (x as i64, y as i64, z as i64);
    let k = x - 1 + gcd2(y + z + x + 1);
    let l = k + z - y + gcd2(y + z + x);
    assert!((k + z - y) % 2 == 0, "k + z - y must be even");
    let lead = binomial_closed(k, (k + z - y) / 2);
    if lead.is_zero() {
        return lead;
    }
    let order = (l - 2).div_euclid(2);
    let position = (y + z - k).div_euclid(2);
    lead * binomial_closed(order + position, order)
}

/// `M_n` truncated to `extent x extent`; entry `(i, j)` is `N(n, i, j)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountMatrix {
    n: u32,
    entries: Vec<Vec<BigUint>>,
}

impl CountMatrix {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn extent(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.entries[i][j]
    }

    /// Zero outside the computed extent or for negative indices.
    pub fn get_or_zero(&self, i: i64, j: i64) -> BigUint {
        let e = self.extent() as i64;
        if i < 0 || j < 0 || i >= e || j >= e {
            BigUint::zero()
        } else {
            self.entries[i as usize][j as usize].clone()
        }
    }

    pub fn rows(&self) -> &[Vec<BigUint>] {
        &self.entries
    }

    /// Tab-separated, one row per line, row index `i`, column index `j`.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(BigUint::to_string).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

pub fn build_matrix(n: u32, extent: usize, backend: CountBackend) -> Result<CountMatrix> {
    if extent == 0 {
        return Err(Error::InvalidParameter(
            "matrix extent must be at least 1".into(),
        ));
    }
    let mut engine = Engine::new(backend);
    if backend == CountBackend::Gf {
        engine.prepare_series(3, u64::from(n) + 2 * (extent as u64 - 1))?;
    }
    let mut entries = Vec::with_capacity(extent);
    for i in 0..extent {
        let mut row = Vec::with_capacity(extent);
        for j in 0..extent {
            let v = ReflectionVector::new(vec![n, i as u32, j as u32]);
            row.push(engine.count(&v)?);
        }
        entries.push(row);
    }
    Ok(CountMatrix { n, entries })
}

/// Checks `m^n_{i,j} = m^{n-1}_{i-1,j} + sum_{k>=0} m^{n-1}_{i-k,j-1-k}`
/// against the previous matrix for every cell of `current`.
pub fn tick_holds(current: &CountMatrix, previous: &CountMatrix) -> bool {
    let e = current.extent() as i64;
    (0..e).all(|i| {
        (0..e).all(|j| {
            let mut rhs = previous.get_or_zero(i - 1, j);
            for k in 0..=i.min(j - 1).max(-1) {
                rhs += previous.get_or_zero(i - k, j - 1 - k);
            }
            rhs == current.get_or_zero(i, j)
        })
    })
}

pub fn tick_check(n: u32, extent: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "tick recursion needs n >= 1".into(),
        ));
    }
    let current = build_matrix(n, extent, CountBackend::Dp)?;
    let previous = build_matrix(n - 1, extent, CountBackend::Dp)?;
    Ok(tick_holds(&current, &previous))
}

/// A nonzero diagonal of `M_n`, from its first nonzero entry to the edge of
/// the computed extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSequence {
    pub n: u32,
    /// Position among the nonzero diagonals, counted from the bottom, from 1.
    pub index: usize,
    /// `row - col` along the diagonal.
    pub offset: i64,
    pub start: (usize, usize),
    pub terms: Vec<BigUint>,
}

impl DiagonalSequence {
    pub fn leading_term(&self) -> &BigUint {
        &self.terms[0]
    }

    pub fn signed_terms(&self) -> Vec<BigInt> {
        self.terms.iter().cloned().map(BigInt::from).collect()
    }

    /// Difference rows of every order the observed prefix supports.
    pub fn triangle(&self) -> DifferenceTriangle {
        difference_triangle(&self.signed_terms(), self.terms.len() - 1)
            .expect("a prefix of length L supports order L - 1")
    }
}

fn diagonal_at(matrix: &CountMatrix, offset: i64) -> Option<((usize, usize), Vec<BigUint>)> {
    let e = matrix.extent() as i64;
    let (mut i, mut j) = (offset.max(0), (-offset).max(0));
    let mut cells = Vec::new();
    while i < e && j < e {
        cells.push((
            (i as usize, j as usize),
            matrix.get(i as usize, j as usize).clone(),
        ));
        i += 1;
        j += 1;
    }
    let first = cells.iter().position(|(_, c)| !c.is_zero())?;
    let start = cells[first].0;
    Some((start, cells.drain(first..).map(|(_, c)| c).collect()))
}

/// Every nonzero diagonal visible in the extent, bottom first.
pub fn diagonals(matrix: &CountMatrix) -> Vec<DiagonalSequence> {
    let e = matrix.extent() as i64;
    (-(e - 1)..e)
        .rev()
        .filter_map(|offset| diagonal_at(matrix, offset).map(|d| (offset, d)))
        .enumerate()
        .map(|(idx, (offset, (start, terms)))| DiagonalSequence {
            n: matrix.n,
            index: idx + 1,
            offset,
            start,
            terms,
        })
        .collect()
}

/// The `i`-th nonzero diagonal from the bottom (found by scanning).
pub fn diagonal(matrix: &CountMatrix, i: usize) -> Result<DiagonalSequence> {
    let limit = 2 * matrix.n as usize + 3;
    let found = diagonals(matrix);
    if i == 0 || i > limit || i > found.len() {
        return Err(Error::NoSuchDiagonal {
            index: i,
            available: found.len().min(limit),
        });
    }
    Ok(found[i - 1].clone())
}

/// Where the `i`-th diagonal of `M_n` starts: on `row + col = n + 1` for odd
/// `i`, on `row + col = n` for even `i`.
pub fn diagonal_start(n: u32, i: usize) -> (usize, usize) {
    let n = n as usize;
    if i % 2 == 1 {
        ((2 * n + 3 - i) / 2, (i - 1) / 2)
    } else {
        ((2 * n + 2 - i) / 2, (i - 2) / 2)
    }
}

/// First term of the `i`-th diagonal of `M_n`.
pub fn lt_closed(n: u32, i: usize) -> Result<BigUint> {
    if i == 0 || i > 2 * n as usize + 3 {
        return Err(Error::InvalidParameter(format!(
            "M_{n} has diagonals 1..={}, got {i}",
            2 * n + 3
        )));
    }
    let n = i64::from(n);
    let i = i as i64;
    Ok(if i % 2 == 1 {
        binomial(n + 1, (i - 1) / 2)
    } else {
        binomial(n, i / 2 - 1)
    })
}

/// Successive finite differences; `rows[0]` is the sequence itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceTriangle {
    pub rows: Vec<Vec<BigInt>>,
}

impl DifferenceTriangle {
    pub fn leading_terms(&self) -> Vec<BigInt> {
        self.rows
            .iter()
            .filter_map(|r| r.first().cloned())
            .collect()
    }

    pub fn max_order(&self) -> usize {
        self.rows.len() - 1
    }

    /// Term `t` of the base sequence rebuilt from the leading terms,
    /// `sum_k C(t, k) * LT(d(S, k))`. Exact once the differences of the
    /// highest stored order are constant.
    pub fn newton_term(&self, t: usize) -> BigInt {
        self.leading_terms()
            .iter()
            .enumerate()
            .map(|(k, lt)| lt * BigInt::from(binomial(t as i64, k as i64)))
            .sum()
    }
}

pub fn difference_triangle(seq: &[BigInt], max_order: usize) -> Result<DifferenceTriangle> {
    if seq.len() <= max_order {
        return Err(Error::InsufficientLength {
            len: seq.len(),
            order: max_order,
        });
    }
    let mut rows = vec![seq.to_vec()];
    for _ in 0..max_order {
        let last = rows.last().expect("nonempty");
        let next: Vec<BigInt> = last.windows(2).map(|w| &w[1] - &w[0]).collect();
        rows.push(next);
    }
    Ok(DifferenceTriangle { rows })
}

/// Outcome of a structural check over a finite matrix: `checked` counts the
/// conditions that could be observed, `unobservable` those the extent cut off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub holds: bool,
    pub checked: usize,
    pub unobservable: usize,
}

impl CheckReport {
    fn new() -> Self {
        Self {
            holds: true,
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool) {
        self.checked += 1;
        self.holds &= ok;
    }
}

fn expected_offset(n: u32, i: usize) -> i64 {
    i64::from(n) + 2 - i as i64
}

fn observable(n: u32, i: usize, extent: usize) -> bool {
    let (r, c) = diagonal_start(n, i);
    r < extent && c < extent
}

/// Counts the nonzero diagonals of `M_n` (every observable one of the
/// `2n+3`, nothing else) and checks the order of each arithmetic sequence
/// on the observed prefix.
pub fn arithmetic_order_check(n: u32, extent: usize) -> Result<CheckReport> {
    let matrix = build_matrix(n, extent, CountBackend::Dp)?;
    Ok(arithmetic_order_report(&matrix))
}

pub fn arithmetic_order_report(matrix: &CountMatrix) -> CheckReport {
    let n = matrix.n;
    let extent = matrix.extent();
    let count = 2 * n as usize + 3;
    let mut report = CheckReport::new();

    let found = diagonals(matrix);
    let found_offsets: Vec<i64> = found.iter().map(|d| d.offset).collect();
    let expected: Vec<i64> = (1..=count)
        .filter(|&i| observable(n, i, extent))
        .map(|i| expected_offset(n, i))
        .collect();
    report.unobservable += count - expected.len();
    report.record(found_offsets == expected);

    let by_offset = |i: usize| found.iter().find(|d| d.offset == expected_offset(n, i));

    for i in 1..=count {
        let Some(seq) = by_offset(i) else {
            continue;
        };
        report.record(seq.start == diagonal_start(n, i));
        if i == 1 {
            let tail_zero = seq.terms[1..].iter().all(Zero::is_zero);
            report.record(seq.leading_term().is_one() && tail_zero);
            continue;
        }
        let order = i / 2 - 1;
        if seq.terms.len() < order + 2 {
            report.unobservable += 1;
            continue;
        }
        let tri = difference_triangle(&seq.signed_terms(), order + 1).expect("length checked");
        report.record(tri.rows[order + 1].iter().all(Zero::is_zero));
    }
    report
}

/// Checks `LT(d(S^n_i, j)) = LT(S^n_i) * C(q, j)` for the observable `j`,
/// where `q = floor(i/2) - 1`, and the leading-term recursion linking
/// `M_n` to `M_{n-1}`.
pub fn lt_ratio_check(n: u32, extent: usize) -> Result<CheckReport> {
    let matrix = build_matrix(n, extent, CountBackend::Dp)?;
    let previous = match n {
        0 => None,
        _ => Some(build_matrix(n - 1, extent, CountBackend::Dp)?),
    };
    Ok(lt_ratio_report(&matrix, previous.as_ref()))
}

fn leading_differences(matrix: &CountMatrix, i: usize) -> Option<Vec<BigInt>> {
    let n = matrix.n;
    if i == 0 || i > 2 * n as usize + 3 {
        return Some(Vec::new());
    }
    let (_, terms) = diagonal_at(matrix, expected_offset(n, i))?;
    let seq: Vec<BigInt> = terms.into_iter().map(BigInt::from).collect();
    let len = seq.len();
    Some(difference_triangle(&seq, len - 1).ok()?.leading_terms())
}

pub fn lt_ratio_report(matrix: &CountMatrix, previous: Option<&CountMatrix>) -> CheckReport {
    let n = matrix.n;
    let mut report = CheckReport::new();
    for i in 2..=(2 * n as usize + 3) {
        let q = i / 2 - 1;
        let Some(lts) = leading_differences(matrix, i) else {
            report.unobservable += q + 1;
            continue;
        };
        for j in 0..=q {
            match lts.get(j) {
                Some(lt) => {
                    let expect = &lts[0] * BigInt::from(binomial(q as i64, j as i64));
                    report.record(*lt == expect);
                }
                None => report.unobservable += 1,
            }
        }
    }

    if let Some(prev) = previous {
        let lt = |m: &CountMatrix, i: usize, j: i64| -> Option<BigInt> {
            if j < 0 {
                return Some(BigInt::zero());
            }
            let lts = leading_differences(m, i)?;
            if lts.is_empty() {
                return Some(BigInt::zero());
            }
            lts.get(j as usize).cloned()
        };
        for i in 1..=(2 * n as usize + 3) {
            for j in 0..matrix.extent() as i64 {
                let terms = (
                    lt(matrix, i, j),
                    lt(prev, i, j),
                    lt(prev, i.wrapping_sub(2), j),
                    lt(prev, i.wrapping_sub(2), j - 1),
                );
                match terms {
                    (Some(lhs), Some(a), Some(b), Some(c)) => report.record(lhs == a + b + c),
                    _ => report.unobservable += 1,
                }
            }
        }
    }
    report
}

/// Whether a path realizes `(a1, a2, a3)`, with a witness word when it does.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    pub witness: Option<AlternatingWord>,
    /// Which condition failed, when infeasible.
    pub violation: Option<String>,
}

fn triangle_holds(a: [u64; 3]) -> bool {
    a[0] + a[1] >= a[2] && a[1] + a[2] >= a[0] && a[2] + a[0] >= a[1]
}

/// Concatenates `x` copies of `21`, `y` of `32`, `z` of `31`, where
/// `x(1,1,0) + y(0,1,1) + z(1,0,1) = a`.
fn even_witness(a: [u64; 3]) -> Vec<u32> {
    let x = (a[0] + a[1] - a[2]) / 2;
    let y = (a[1] + a[2] - a[0]) / 2;
    let z = (a[0] + a[2] - a[1]) / 2;
    let mut letters = Vec::with_capacity(a.iter().sum::<u64>() as usize);
    for (pair, copies) in [([2, 1], x), ([3, 2], y), ([3, 1], z)] {
        for _ in 0..copies {
            letters.extend_from_slice(&pair);
        }
    }
    letters
}

fn odd_witness(a: [u64; 3]) -> Option<Vec<u32>> {
    for j in 0..3 {
        if a[j] == 0 {
            continue;
        }
        let mut rest = a;
        rest[j] -= 1;
        if !triangle_holds(rest) {
            continue;
        }
        let base = even_witness(rest);
        let letter = j as u32 + 1;
        let mut front = vec![letter];
        front.extend_from_slice(&base);
        let mut back = base;
        back.push(letter);
        for candidate in [front, back] {
            if is_admissible(&candidate, Semantics::Path) {
                return Some(candidate);
            }
        }
    }
    None
}

/// Even totals need the triangle inequalities. Odd totals also admit
/// `(a, a+1, 0)`, which ends on plate 2, and `(a1, a2, a1+a2+1)`, which
/// ends on plate 3 after `a1 + a2` trips from plate 3 and back.
pub fn exists3(a1: u64, a2: u64, a3: u64) -> Feasibility {
    let a = [a1, a2, a3];
    let odd = (a1 + a2 + a3) % 2 == 1;
    let feasible = triangle_holds(a) || (odd && ((a3 == 0 && a2 == a1 + 1) || a3 == a1 + a2 + 1));
    if !feasible {
        let violation = if odd {
            "triangle, not (a,a+1,0), not (a,b,a+b+1)"
        } else {
            "triangle"
        };
        return Feasibility {
            feasible,
            witness: None,
            violation: Some(violation.to_string()),
        };
    }
    let letters = if odd {
        odd_witness(a).expect("every feasible odd vector has a one-letter extension")
    } else {
        even_witness(a)
    };
    let word = AlternatingWord::new(letters).expect("witness construction stays alternating");
    Feasibility {
        feasible,
        witness: Some(word),
        violation: None,
    }
}

/// Number of distinct vectors realized by paths with `m` reflections.
pub fn b3_closed(m: u64) -> BigUint {
    match m {
        0 => BigUint::one(),
        m if m % 2 == 0 => binomial((m / 2 + 2) as i64, 2),
        m => binomial(((m - 1) / 2 + 2) as i64, 2) + 1u32,
    }
}

/// Text dump of every diagonal with its difference triangle.
pub fn render_diagonals(matrix: &CountMatrix) -> String {
    let mut out = String::new();
    for d in diagonals(matrix) {
        let _ = writeln!(
            out,
            "S\t{}\t{}\tstart\t{}\t{}\tlength\t{}",
            d.n,
            d.index,
            d.start.0,
            d.start.1,
            d.terms.len()
        );
        for (order, row) in d.triangle().rows.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(BigInt::to_string).collect();
            let _ = writeln!(out, "d{order}\t{}", cells.join("\t"));
        }
    }
    out
}
