//! Hilbert-series combinatorics: q-integers, (q,t)-multinomial coefficients,
//! the conjectural series for parabolic invariants, and the recursion for the
//! Borel series.
//!
//! Series are polynomials in a grading variable `t` with exact integer
//! coefficients (they count dimensions), kept dense and trimmed.

use std::collections::BTreeMap;
use std::fmt;

use crate::mpoly::MPoly;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    NotDivisible,
    NotHomogeneous,
    BadComposition { total: u64, expected: u64 },
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NotDivisible => write!(f, "series division left a remainder"),
            SeriesError::NotHomogeneous => write!(f, "family member is not homogeneous"),
            SeriesError::BadComposition { total, expected } => {
                write!(f, "composition sums to {total}, expected {expected}")
            }
        }
    }
}

impl std::error::Error for SeriesError {}

/// Polynomial in `t` with integer coefficients, finitely supported.
#[derive(Clone, PartialEq, Eq)]
pub struct TSeries {
    coeffs: Vec<i64>,
}

impl TSeries {
    pub fn zero() -> TSeries {
        TSeries { coeffs: vec![] }
    }

    pub fn one() -> TSeries {
        TSeries { coeffs: vec![1] }
    }

    /// `c * t^d`.
    pub fn monomial(c: i64, d: u64) -> TSeries {
        if c == 0 {
            return TSeries::zero();
        }
        let mut coeffs = vec![0; d as usize + 1];
        coeffs[d as usize] = c;
        TSeries { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<i64>) -> TSeries {
        let mut s = TSeries { coeffs };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() as u64 - 1)
        }
    }

    pub fn coeff(&self, d: u64) -> i64 {
        self.coeffs.get(d as usize).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Value at `t = 1`: the total dimension a Hilbert series counts.
    pub fn total(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &TSeries) -> TSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i as u64) + other.coeff(i as u64);
        }
        TSeries::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &TSeries) -> TSeries {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = vec![0; n];
        for (i, c) in coeffs.iter_mut().enumerate() {
            *c = self.coeff(i as u64) - other.coeff(i as u64);
        }
        TSeries::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &TSeries) -> TSeries {
        if self.is_zero() || other.is_zero() {
            return TSeries::zero();
        }
        let mut coeffs = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        TSeries::from_coeffs(coeffs)
    }

    /// Exact polynomial division; errors if a remainder survives.
    pub fn exact_div(&self, other: &TSeries) -> Result<TSeries, SeriesError> {
        assert!(!other.is_zero(), "division by the zero series");
        if self.is_zero() {
            return Ok(TSeries::zero());
        }
        if self.coeffs.len() < other.coeffs.len() {
            return Err(SeriesError::NotDivisible);
        }
        let lead = *other.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0i64; self.coeffs.len() - other.coeffs.len() + 1];
        for k in (0..quot.len()).rev() {
            let top = rem[k + other.coeffs.len() - 1];
            if top % lead != 0 {
                return Err(SeriesError::NotDivisible);
            }
            let q = top / lead;
            quot[k] = q;
            if q != 0 {
                for (i, &b) in other.coeffs.iter().enumerate() {
                    rem[k + i] -= q * b;
                }
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return Err(SeriesError::NotDivisible);
        }
        Ok(TSeries::from_coeffs(quot))
    }

    /// Substitution `t -> t^k` (degree dilation).
    pub fn dilate(&self, k: u64) -> TSeries {
        if self.is_zero() {
            return TSeries::zero();
        }
        let mut coeffs = vec![0; (self.coeffs.len() - 1) * k as usize + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[i * k as usize] = c;
        }
        TSeries::from_coeffs(coeffs)
    }

    /// `1 - t^d`.
    pub fn one_minus_t_pow(d: u64) -> TSeries {
        TSeries::one().sub(&TSeries::monomial(1, d))
    }
}

impl fmt::Display for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (d, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (d, 1) => write!(f, "t^{d}")?,
                (d, c) => write!(f, "{c}*t^{d}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for TSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn q_pow(q: u64, a: u32) -> u64 {
    q.checked_pow(a).expect("q^a overflows u64")
}

/// The q-integer `[a]_q = (q^a - 1)/(q - 1)`, the number of lines in `F_q^a`.
pub fn q_int(a: u32, q: u64) -> u64 {
    (q_pow(q, a) - 1) / (q - 1)
}

/// The (q,t)-multinomial coefficient for a weak composition `alpha` of `k`:
/// `prod_{j<k} (1 - t^{q^k - q^j})` divided exactly by
/// `prod_i prod_{j=1..alpha_i} (1 - t^{q^{A_i} - q^{A_i - j}})`
/// with `A_i` the partial sums of `alpha`.
pub fn qt_multinomial(k: u32, alpha: &[u32], q: u64) -> Result<TSeries, SeriesError> {
    let total: u64 = alpha.iter().map(|&a| a as u64).sum();
    if total != k as u64 {
        return Err(SeriesError::BadComposition {
            total,
            expected: k as u64,
        });
    }
    let mut num = TSeries::one();
    for j in 0..k {
        num = num.mul(&TSeries::one_minus_t_pow(q_pow(q, k) - q_pow(q, j)));
    }
    let mut den = TSeries::one();
    let mut partial = 0u32;
    for &a in alpha {
        partial += a;
        for j in 1..=a {
            den = den.mul(&TSeries::one_minus_t_pow(
                q_pow(q, partial) - q_pow(q, partial - j),
            ));
        }
    }
    num.exact_div(&den)
}

/// The (q,t)-binomial `[m choose s]_{q,t}`.
pub fn qt_binomial(m: u32, s: u32, q: u64) -> TSeries {
    qt_multinomial(m, &[s, m - s], q).expect("binomial shape is always valid")
}

/// Degree shift `e(m, alpha, beta) = sum_i (alpha_i - beta_i)(q^m - q^{B_i})`.
pub fn e_exponent(q: u64, m: u32, alpha: &[u32], beta: &[u32]) -> u64 {
    let qm = q_pow(q, m);
    let mut e = 0u64;
    let mut b_partial = 0u32;
    for (&a, &b) in alpha.iter().zip(beta) {
        b_partial += b;
        e += (a - b) as u64 * (qm - q_pow(q, b_partial));
    }
    e
}

fn weak_compositions_below(alpha: &[u32], budget: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &a in alpha {
        let mut next = Vec::new();
        for partial in &out {
            let used: u32 = partial.iter().sum();
            for b in 0..=a.min(budget - used) {
                let mut w = partial.clone();
                w.push(b);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// The conjectural Hilbert series of the parabolic invariants for the
/// composition `alpha` of `n`:
/// `sum_{beta <= alpha, |beta| <= m} t^{e(m,alpha,beta)} [m; beta, m-|beta|]_{q,t}`.
pub fn c_alpha_m(q: u64, m: u32, alpha: &[u32]) -> TSeries {
    let mut acc = TSeries::zero();
    for beta in weak_compositions_below(alpha, m) {
        let used: u32 = beta.iter().sum();
        let mut parts = beta.clone();
        parts.push(m - used);
        let multi = qt_multinomial(m, &parts, q)
            .expect("the multinomial of a weak composition of m divides exactly");
        let term = TSeries::monomial(1, e_exponent(q, m, alpha, &beta)).mul(&multi);
        acc = acc.add(&term);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesMode {
    Recursive,
    Direct,
}

/// The Borel-invariant Hilbert series `F_{n,m}`.
///
/// Recursive mode uses
/// `F_{n,m} = t^{q^m-1} F_{n-1,m} + (1-t^{q^m-1})/(1-t^{q-1}) F_{n-1,m-1}(t^q)`
/// with base cases `F_{n,0} = F_{0,m} = 1`; direct mode evaluates the
/// composition formula at `alpha = 1^n`. The two must agree.
pub fn f_nm(n: u32, m: u32, q: u64, mode: SeriesMode) -> TSeries {
    match mode {
        SeriesMode::Direct => c_alpha_m(q, m, &vec![1; n as usize]),
        SeriesMode::Recursive => {
            if n == 0 || m == 0 {
                return TSeries::one();
            }
            let first = TSeries::monomial(1, q_pow(q, m) - 1).mul(&f_nm(
                n - 1,
                m,
                q,
                SeriesMode::Recursive,
            ));
            // (1 - t^{q^m-1})/(1 - t^{q-1}) = sum_{i < [m]_q} t^{i(q-1)}
            let geom = TSeries::one_minus_t_pow(q_pow(q, m) - 1)
                .exact_div(&TSeries::one_minus_t_pow(q - 1))
                .expect("q-1 divides q^m-1 as exponents");
            let second = geom.mul(&f_nm(n - 1, m - 1, q, SeriesMode::Recursive).dilate(q));
            first.add(&second)
        }
    }
}

/// The conjectural Hilbert series of the GL_n-invariants:
/// `sum_s t^{(n-s)(q^m - q^s)} [m choose s]_{q,t}`.
pub fn c_nm_gl(q: u64, m: u32, n: u32) -> TSeries {
    let mut acc = TSeries::zero();
    for s in 0..=m.min(n) {
        let shift = (n - s) as u64 * (q_pow(q, m) - q_pow(q, s));
        acc = acc.add(&TSeries::monomial(1, shift).mul(&qt_binomial(m, s, q)));
    }
    acc
}

/// Hilbert series of a linearly independent homogeneous family: the
/// coefficient of `t^d` counts members of degree `d`.
pub fn hilbert_of_family(polys: &[MPoly]) -> Result<TSeries, SeriesError> {
    let mut degrees = Vec::with_capacity(polys.len());
    for p in polys {
        if !p.is_homogeneous() {
            return Err(SeriesError::NotHomogeneous);
        }
        degrees.push(p.degree().unwrap_or(0));
    }
    Ok(hilbert_of_degrees(degrees.into_iter()))
}

pub fn hilbert_of_degrees(degrees: impl Iterator<Item = u64>) -> TSeries {
    let mut acc = TSeries::zero();
    for d in degrees {
        acc = acc.add(&TSeries::monomial(1, d));
    }
    acc
}

pub fn hilbert_of_dims(dims: &BTreeMap<u64, usize>) -> TSeries {
    let mut acc = TSeries::zero();
    for (&d, &dim) in dims {
        acc = acc.add(&TSeries::monomial(dim as i64, d));
    }
    acc
}

/// Number of nested flags for one dimension pattern `beta <= 1^n`:
/// each of the `|beta|` dimension jumps chooses a line in a quotient space,
/// contributing `[m]_q [m-1]_q ... [m-|beta|+1]_q`.
pub fn flag_count_by_beta(q: u64, m: u32, n: u32) -> Vec<(Vec<u8>, u64)> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let beta: Vec<u8> = (0..n).map(|i| ((mask >> i) & 1) as u8).collect();
        let size = beta.iter().map(|&b| b as u32).sum::<u32>();
        if size > m {
            continue;
        }
        let mut count = 1u64;
        for step in 0..size {
            count *= q_int(m - step, q);
        }
        out.push((beta, count));
    }
    out
}

/// Total number of Borel flags in `F_{q^m}` of length `n`.
pub fn flag_count(q: u64, m: u32, n: u32) -> u64 {
    flag_count_by_beta(q, m, n).iter().map(|(_, c)| c).sum()
}

/// First degree where two series disagree, if any.
pub fn first_mismatch(a: &TSeries, b: &TSeries) -> Option<u64> {
    let top = a.coeffs.len().max(b.coeffs.len()) as u64;
    (0..top).find(|&d| a.coeff(d) != b.coeff(d))
}
