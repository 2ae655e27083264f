//! Sparse multivariate polynomials and rational functions over `F_q`.
//!
//! Monomials are ordered in graded lexicographic order with
//! `x_1 > x_2 > ... > x_n` (total degree first, ties broken left to right),
//! fixed globally: the smallest-monomial statements downstream and the
//! single-divisor exact division both assume this one order.
//!
//! Rational functions are never gcd-reduced; equality is by
//! cross-multiplication and simplification happens only through exact
//! division on demand.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf::{Field, FqElem};

#[derive(Debug)]
pub enum PolyError {
    ArityMismatch { left: usize, right: usize },
    FieldMismatch,
    NotDivisible { remainder: Box<MPoly> },
    DivisionByZero,
    ZeroPolynomial,
    NotInjective,
    NotSquare,
    NotPolynomial,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::ArityMismatch { left, right } => {
                write!(f, "operands have {left} and {right} variables")
            }
            PolyError::FieldMismatch => write!(f, "operands belong to different fields"),
            PolyError::NotDivisible { remainder } => {
                write!(f, "not exactly divisible, remainder {remainder}")
            }
            PolyError::DivisionByZero => write!(f, "division by the zero polynomial"),
            PolyError::ZeroPolynomial => write!(f, "the zero polynomial has no monomials"),
            PolyError::NotInjective => write!(f, "variable map is not injective"),
            PolyError::NotSquare => write!(f, "matrix is not square"),
            PolyError::NotPolynomial => write!(f, "rational function is not a polynomial"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Exponent vector, one entry per ambient variable.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    pub fn unit(nvars: usize) -> Monomial {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.checked_add(b).expect("exponent overflow"))
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`; caller must have checked divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(&b, &a)| b - a)
                .collect(),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl Monomial {
    fn render(&self) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// Truncation data for the quotient by `(x_1^{q^m}, ..., x_n^{q^m})`:
/// every surviving exponent is `< cap = q^m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationSpec {
    pub m: u32,
    pub q: u64,
    pub cap: u64,
}

impl TruncationSpec {
    pub fn new(q: u64, m: u32) -> TruncationSpec {
        let cap = q.checked_pow(m).expect("q^m overflows u64");
        TruncationSpec { m, q, cap }
    }
}

/// One term of the JSON wire form for polynomials.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermDto {
    pub exponents: Vec<u32>,
    pub coeff: Vec<u64>,
}

/// Sparse multivariate polynomial over `F_q` in canonical form: no zero
/// coefficients are stored and all monomials have length `nvars`.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, FqElem>,
}

impl MPoly {
    pub fn zero(field: &Field, nvars: usize) -> MPoly {
        MPoly {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: &Field, nvars: usize) -> MPoly {
        MPoly::constant(field, nvars, &field.one())
    }

    pub fn constant(field: &Field, nvars: usize, c: &FqElem) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        p.add_term(Monomial::unit(nvars), c.clone());
        p
    }

    /// The variable `x_{i+1}` (0-based index `i`).
    pub fn var(field: &Field, nvars: usize, i: usize) -> MPoly {
        MPoly::var_pow(field, nvars, i, 1)
    }

    pub fn var_pow(field: &Field, nvars: usize, i: usize, exp: u32) -> MPoly {
        assert!(i < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[i] = exp;
        let mut p = MPoly::zero(field, nvars);
        p.add_term(Monomial::new(exps), field.one());
        p
    }

    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, FqElem)>,
    ) -> MPoly {
        let mut p = MPoly::zero(field, nvars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), nvars, "monomial length must equal nvars");
            p.add_term(Monomial::new(exps), c);
        }
        p
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FqElem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FqElem {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    fn add_term(&mut self, m: Monomial, c: FqElem) {
        if self.field.is_zero(&c) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(o.get(), &c);
                if self.field.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn assert_compatible(&self, other: &MPoly) {
        assert_eq!(
            self.nvars, other.nvars,
            "arity mismatch: {} vs {} variables",
            self.nvars, other.nvars
        );
        assert!(self.field == other.field, "field mismatch");
    }

    pub fn checked_add(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(self.add(other))
    }

    pub fn checked_mul(&self, other: &MPoly) -> Result<MPoly, PolyError> {
        if self.nvars != other.nvars {
            return Err(PolyError::ArityMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        Ok(self.mul(other))
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), self.field.neg(c));
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &FqElem) -> MPoly {
        if self.field.is_zero(c) {
            return MPoly::zero(&self.field, self.nvars);
        }
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (m, a) in &self.terms {
            out.add_term(m.clone(), self.field.mul(a, c));
        }
        out
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        self.assert_compatible(other);
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), self.field.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(&self.field, self.nvars);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Graded-lex largest monomial (the division algorithm pivots on this).
    pub fn max_monomial(&self) -> Result<Monomial, PolyError> {
        self.terms
            .keys()
            .next_back()
            .cloned()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Graded-lex smallest monomial.
    pub fn min_monomial(&self) -> Result<Monomial, PolyError> {
        self.terms
            .keys()
            .next()
            .cloned()
            .ok_or(PolyError::ZeroPolynomial)
    }

    /// Exact quotient `self / g`, or `NotDivisible` carrying the first
    /// irreducible remainder the division run produced.
    ///
    /// Single-divisor division under the global graded-lex order; since the
    /// order is multiplicative, the run may stop at the first leading term
    /// that `g`'s leading term does not divide.
    pub fn exact_div(&self, g: &MPoly) -> Result<MPoly, PolyError> {
        self.assert_compatible(g);
        if g.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let gm = g.max_monomial().unwrap();
        let gc_inv = self
            .field
            .inv(&g.terms[&gm])
            .expect("leading coefficient is nonzero");
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.field, self.nvars);
        while !rem.is_zero() {
            let rm = rem.max_monomial().unwrap();
            if !gm.divides(&rm) {
                return Err(PolyError::NotDivisible {
                    remainder: Box::new(rem),
                });
            }
            let qm = gm.quotient_into(&rm);
            let qc = self.field.mul(&rem.terms[&rm], &gc_inv);
            for (m, c) in &g.terms {
                rem.add_term(qm.mul(m), self.field.neg(&self.field.mul(c, &qc)));
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Image in the truncated ring: drops every term with an exponent `>= cap`.
    pub fn truncate(&self, spec: &TruncationSpec) -> MPoly {
        let mut out = MPoly::zero(&self.field, self.nvars);
        for (m, c) in &self.terms {
            if m.exps.iter().all(|&e| (e as u64) < spec.cap) {
                out.terms.insert(m.clone(), c.clone());
            }
        }
        out
    }

    /// Renames variable `i` to `map[i]`; `map` must be injective into
    /// `[0, target_nvars)`.
    pub fn remap_vars(&self, map: &[usize], target_nvars: usize) -> Result<MPoly, PolyError> {
        assert_eq!(map.len(), self.nvars, "map must cover every variable");
        let mut seen = vec![false; target_nvars];
        for &t in map {
            if t >= target_nvars || seen[t] {
                return Err(PolyError::NotInjective);
            }
            seen[t] = true;
        }
        let mut out = MPoly::zero(&self.field, target_nvars);
        for (m, c) in &self.terms {
            let mut exps = vec![0; target_nvars];
            for (i, &e) in m.exps.iter().enumerate() {
                exps[map[i]] = e;
            }
            out.terms.insert(Monomial::new(exps), c.clone());
        }
        Ok(out)
    }

    /// Identity embedding into a ring with more variables.
    pub fn extend_vars(&self, target_nvars: usize) -> MPoly {
        assert!(target_nvars >= self.nvars);
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap_vars(&map, target_nvars).unwrap()
    }

    /// Substitutes `x_{j+1} -> subs[j]` for every variable simultaneously.
    /// All substituents must share one arity, which becomes the result arity.
    pub fn substitute_linear(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars, "one substituent per variable");
        let target = if subs.is_empty() { 0 } else { subs[0].nvars };
        for s in subs {
            assert_eq!(s.nvars, target, "substituents must share arity");
            assert!(s.field == self.field, "field mismatch");
        }
        // Power cache per substituted variable.
        let mut powers: Vec<Vec<MPoly>> = subs
            .iter()
            .map(|s| vec![MPoly::one(&self.field, target), s.clone()])
            .collect();
        let mut out = MPoly::zero(&self.field, target);
        for (m, c) in &self.terms {
            let mut acc = MPoly::constant(&self.field, target, c);
            for (j, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let cache = &mut powers[j];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&subs[j]);
                    cache.push(next);
                }
                acc = acc.mul(&cache[e as usize]);
            }
            out = out.add(&acc);
        }
        out
    }

    /// Sets `x_{i+1} = 0` and removes that variable slot.
    pub fn substitute_zero_drop(&self, i: usize) -> MPoly {
        assert!(i < self.nvars);
        let mut out = MPoly::zero(&self.field, self.nvars - 1);
        for (m, c) in &self.terms {
            if m.exps[i] != 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps.remove(i);
            out.terms.insert(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Determinant of a square matrix of polynomials: Laplace expansion along
    /// the last row up to size 6, fraction-free elimination above.
    pub fn det(mat: &[Vec<MPoly>]) -> Result<MPoly, PolyError> {
        let n = mat.len();
        if n == 0 || mat.iter().any(|row| row.len() != n) {
            return Err(PolyError::NotSquare);
        }
        if n <= 6 {
            Ok(det_laplace(mat))
        } else {
            Ok(det_bareiss(mat))
        }
    }

    pub fn to_dtos(&self) -> Vec<TermDto> {
        self.terms
            .iter()
            .rev()
            .map(|(m, c)| TermDto {
                exponents: m.exps.clone(),
                coeff: c.coeffs().to_vec(),
            })
            .collect()
    }

    pub fn from_dtos(field: &Field, nvars: usize, dtos: &[TermDto]) -> MPoly {
        MPoly::from_terms(
            field,
            nvars,
            dtos.iter()
                .map(|t| (t.exponents.clone(), field.from_coeffs(&t.coeff))),
        )
    }
}

fn det_laplace(mat: &[Vec<MPoly>]) -> MPoly {
    let n = mat.len();
    let field = mat[0][0].field().clone();
    let nvars = mat[0][0].nvars();
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = MPoly::zero(&field, nvars);
    for j in 0..n {
        if mat[n - 1][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MPoly>> = mat[..n - 1]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = det_laplace(&minor).mul(&mat[n - 1][j]);
        if (n - 1 + j).is_multiple_of(2) {
            acc = acc.add(&cofactor);
        } else {
            acc = acc.sub(&cofactor);
        }
    }
    acc
}

fn det_bareiss(mat: &[Vec<MPoly>]) -> MPoly {
    let n = mat.len();
    let field = mat[0][0].field().clone();
    let nvars = mat[0][0].nvars();
    let mut m: Vec<Vec<MPoly>> = mat.to_vec();
    let mut negate = false;
    let mut prev = MPoly::one(&field, nvars);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return MPoly::zero(&field, nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
            m[i][k] = MPoly::zero(&field, nvars);
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_const = m.degree() == 0;
            if is_const {
                write!(f, "{}", self.field.fmt_elem(c))?;
            } else if self.field.is_one(c) {
                write!(f, "{}", m.render())?;
            } else {
                write!(f, "{}*{}", self.field.fmt_elem(c), m.render())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Quotient of two polynomials; the denominator is nonzero. No implicit gcd
/// reduction: equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFn {
    num: MPoly,
    den: MPoly,
}

impl RationalFn {
    pub fn new(num: MPoly, den: MPoly) -> Result<RationalFn, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        num.assert_compatible(&den);
        if num.is_zero() {
            let one = MPoly::one(num.field(), num.nvars());
            return Ok(RationalFn { num, den: one });
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: MPoly) -> RationalFn {
        let den = MPoly::one(p.field(), p.nvars());
        RationalFn { num: p, den }
    }

    pub fn zero(field: &Field, nvars: usize) -> RationalFn {
        RationalFn::from_poly(MPoly::zero(field, nvars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &RationalFn) -> RationalFn {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RationalFn::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RationalFn) -> RationalFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn mul_poly(&self, p: &MPoly) -> RationalFn {
        RationalFn::new(self.num.mul(p), self.den.clone()).unwrap()
    }

    pub fn scalar_mul(&self, c: &FqElem) -> RationalFn {
        RationalFn::new(self.num.scalar_mul(c), self.den.clone()).unwrap()
    }

    pub fn pow(&self, k: u64) -> RationalFn {
        RationalFn {
            num: self.num.pow(k),
            den: self.den.pow(k),
        }
    }

    pub fn remap_vars(&self, map: &[usize], target_nvars: usize) -> Result<RationalFn, PolyError> {
        Ok(RationalFn {
            num: self.num.remap_vars(map, target_nvars)?,
            den: self.den.remap_vars(map, target_nvars)?,
        })
    }

    pub fn extend_vars(&self, target_nvars: usize) -> RationalFn {
        RationalFn {
            num: self.num.extend_vars(target_nvars),
            den: self.den.extend_vars(target_nvars),
        }
    }

    /// Attempts to clear the denominator by exact division; on success the
    /// result has denominator 1 (or a unit folded into the numerator).
    pub fn simplify(&self) -> RationalFn {
        if self.num.is_zero() {
            return RationalFn::zero(self.field(), self.nvars());
        }
        if self.den.num_terms() == 1 {
            if let Ok(m) = self.den.max_monomial() {
                if m.degree() == 0 {
                    let c = self.field().inv(&self.den.coeff(&m)).unwrap();
                    return RationalFn::from_poly(self.num.scalar_mul(&c));
                }
            }
        }
        match self.num.exact_div(&self.den) {
            Ok(q) => RationalFn::from_poly(q),
            Err(_) => self.clone(),
        }
    }

    /// The underlying polynomial, when the denominator divides the numerator.
    pub fn as_poly(&self) -> Result<MPoly, PolyError> {
        let s = self.simplify();
        if s.den.num_terms() == 1 && s.den.max_monomial().unwrap().degree() == 0 {
            let c = s
                .field()
                .inv(&s.den.coeff(&s.den.max_monomial().unwrap()))
                .unwrap();
            return Ok(s.num.scalar_mul(&c));
        }
        Err(PolyError::NotPolynomial)
    }

    /// Sum of many fractions over the product denominator, using
    /// prefix/suffix denominator products to avoid quadratic blowup.
    pub fn sum(field: &Field, nvars: usize, items: &[RationalFn]) -> RationalFn {
        if items.is_empty() {
            return RationalFn::zero(field, nvars);
        }
        let n = items.len();
        let mut prefix = Vec::with_capacity(n + 1);
        prefix.push(MPoly::one(field, nvars));
        for item in items {
            let last = prefix.last().unwrap().mul(&item.den);
            prefix.push(last);
        }
        let mut suffix = vec![MPoly::one(field, nvars); n + 1];
        for i in (0..n).rev() {
            suffix[i] = suffix[i + 1].mul(&items[i].den);
        }
        let mut num = MPoly::zero(field, nvars);
        for (i, item) in items.iter().enumerate() {
            num = num.add(&item.num.mul(&prefix[i]).mul(&suffix[i + 1]));
        }
        RationalFn::new(num, prefix[n].clone()).unwrap()
    }
}

/// Equality by cross-multiplication: `a/b = c/d` iff `ad = cb`. Transitive
/// because the polynomial ring is an integral domain.
impl PartialEq for RationalFn {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalFn {}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.num_terms() == 1 && self.den.max_monomial().unwrap().degree() == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
