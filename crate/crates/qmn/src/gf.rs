//! Exact arithmetic in the finite field `F_q`, `q = p^e`.
//!
//! A [`Field`] is a cheaply clonable handle describing `q = p^e` together
//! with (for `e > 1`) a deterministically chosen irreducible modulus, and all
//! arithmetic goes through it. Elements are plain coefficient vectors in the
//! basis `1, x, ..., x^{e-1}`, canonical (every coefficient reduced mod `p`),
//! so element equality is structural.

use std::fmt;
use std::sync::Arc;

/// Default upper bound on the field size; everything downstream enumerates
/// over `F_q`, so `q` is kept desk-scale.
pub const DEFAULT_FIELD_BOUND: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    FieldTooLarge { q: u64, bound: u64 },
    DivisionByZero,
    FieldMismatch,
    BadFieldSpec(String),
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::FieldTooLarge { q, bound } => {
                write!(f, "field size {q} exceeds configured bound {bound}")
            }
            FieldError::DivisionByZero => write!(f, "division by zero in F_q"),
            FieldError::FieldMismatch => write!(f, "elements belong to different fields"),
            FieldError::BadFieldSpec(s) => write!(f, "cannot parse field spec {s:?}"),
        }
    }
}

impl std::error::Error for FieldError {}

/// Element of `F_q`: coefficients of `1, x, ..., x^{e-1}`, each in `[0, p)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    coeffs: Vec<u64>,
}

impl FqElem {
    /// Coefficient vector, little-endian in the power basis.
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            write!(f, "{}", self.coeffs[0])
        } else {
            write!(f, "{:?}", self.coeffs)
        }
    }
}

#[derive(Debug)]
struct FieldInner {
    p: u64,
    e: usize,
    q: u64,
    /// Monic irreducible of degree `e` over `Z_p`, little-endian, length `e+1`.
    /// For `e = 1` this is the placeholder `x` and arithmetic is plain mod `p`.
    modulus: Vec<u64>,
}

/// Shared, immutable description of `F_q`; all element arithmetic is a method
/// on this handle.
#[derive(Clone)]
pub struct Field {
    inner: Arc<FieldInner>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.p == other.inner.p
                && self.inner.e == other.inner.e
                && self.inner.modulus == other.inner.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "{}", self.inner.p)
        } else {
            write!(f, "{}^{}", self.inner.p, self.inner.e)
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` by monic `m` over `Z_p`; both little-endian.
fn poly_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap() % p;
        let k = a.len() - 1 - dm;
        if lead != 0 {
            for i in 0..=dm {
                let sub = (lead * m[i]) % p;
                a[k + i] = (a[k + i] + p * p - sub) % p;
            }
        }
        a.pop();
    }
    while a.len() > 1 && *a.last().unwrap() == 0 {
        a.pop();
    }
    a
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

/// Monic polynomial of degree `e` whose low coefficients are the base-`p`
/// digits of `k` (coefficient of `x^i` = digit `i`).
fn poly_from_index(mut k: u64, e: usize, p: u64) -> Vec<u64> {
    let mut c = vec![0u64; e + 1];
    for item in c.iter_mut().take(e) {
        *item = k % p;
        k /= p;
    }
    c[e] = 1;
    c
}

/// Irreducibility over `Z_p` by trial division against every monic polynomial
/// of degree `1..=e/2`. Fine at the configured field bound.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let e = f.len() - 1;
    for d in 1..=e / 2 {
        let count = p.pow(d as u32);
        for k in 0..count {
            let g = poly_from_index(k, d, p);
            if poly_is_zero(&poly_rem(f.to_vec(), &g, p)) {
                return false;
            }
        }
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// `F_{p^e}` with the default size bound.
    pub fn new(p: u64, e: usize) -> Result<Field, FieldError> {
        Field::with_bound(p, e, DEFAULT_FIELD_BOUND)
    }

    /// `F_{p^e}` with an explicit bound on `q = p^e`.
    ///
    /// For `e > 1` the modulus is the monic irreducible of degree `e` over
    /// `Z_p` whose coefficient vector `(c_0, ..., c_{e-1})` has the smallest
    /// base-`p` integer encoding; repeated calls are bit-identical.
    pub fn with_bound(p: u64, e: usize, bound: u64) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        assert!(e >= 1, "extension degree must be at least 1");
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(p)
                .filter(|&v| v <= bound)
                .ok_or(FieldError::FieldTooLarge { q: u64::MAX, bound })?;
        }
        if q > bound {
            return Err(FieldError::FieldTooLarge { q, bound });
        }
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for k in 0..q {
                let f = poly_from_index(k, e, p);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.expect("an irreducible polynomial of each degree exists over Z_p")
        };
        Ok(Field {
            inner: Arc::new(FieldInner { p, e, q, modulus }),
        })
    }

    /// Parses `"p"` or `"p^e"`.
    pub fn parse(s: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadFieldSpec(s.to_string());
        let (ps, es) = match s.split_once('^') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s.trim(), None),
        };
        let p: u64 = ps.parse().map_err(|_| bad())?;
        let e: usize = match es {
            Some(t) => t.parse().map_err(|_| bad())?,
            None => 1,
        };
        if e == 0 {
            return Err(bad());
        }
        Field::new(p, e)
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }

    pub fn extension_degree(&self) -> usize {
        self.inner.e
    }

    pub fn q(&self) -> u64 {
        self.inner.q
    }

    /// The defining modulus, little-endian with leading coefficient 1.
    pub fn modulus(&self) -> &[u64] {
        &self.inner.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem {
            coeffs: vec![0; self.inner.e],
        }
    }

    pub fn one(&self) -> FqElem {
        self.scalar(1)
    }

    pub fn neg_one(&self) -> FqElem {
        self.neg(&self.one())
    }

    /// Embeds the integer `v mod p` into the prime subfield.
    pub fn scalar(&self, v: u64) -> FqElem {
        let mut coeffs = vec![0; self.inner.e];
        coeffs[0] = v % self.inner.p;
        FqElem { coeffs }
    }

    /// Element whose coefficients are the base-`p` digits of `idx < q`.
    pub fn element_from_index(&self, mut idx: u64) -> FqElem {
        assert!(idx < self.inner.q, "index out of range");
        let mut coeffs = vec![0; self.inner.e];
        for c in coeffs.iter_mut() {
            *c = idx % self.inner.p;
            idx /= self.inner.p;
        }
        FqElem { coeffs }
    }

    pub fn index_of(&self, a: &FqElem) -> u64 {
        self.check(a);
        let mut idx = 0;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.inner.p + c;
        }
        idx
    }

    /// All `q` elements, in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        (0..self.inner.q).map(move |i| self.element_from_index(i))
    }

    /// Builds a canonical element from arbitrary coefficients (reduced mod
    /// `p`, truncated or zero-padded to length `e`).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> FqElem {
        let mut c = vec![0; self.inner.e];
        for (i, &v) in coeffs.iter().enumerate() {
            assert!(i < self.inner.e, "coefficient vector longer than degree");
            c[i] = v % self.inner.p;
        }
        FqElem { coeffs: c }
    }

    fn check(&self, a: &FqElem) {
        assert_eq!(
            a.coeffs.len(),
            self.inner.e,
            "element does not belong to this field"
        );
    }

    pub fn is_zero(&self, a: &FqElem) -> bool {
        self.check(a);
        a.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &FqElem) -> bool {
        *a == self.one()
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        FqElem {
            coeffs: a
                .coeffs
                .iter()
                .zip(&b.coeffs)
                .map(|(&x, &y)| (x + y) % p)
                .collect(),
        }
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        self.check(a);
        let p = self.inner.p;
        FqElem {
            coeffs: a.coeffs.iter().map(|&x| (p - x) % p).collect(),
        }
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        self.check(a);
        self.check(b);
        let p = self.inner.p;
        let e = self.inner.e;
        if e == 1 {
            return FqElem {
                coeffs: vec![(a.coeffs[0] * b.coeffs[0]) % p],
            };
        }
        let mut prod = vec![0u64; 2 * e - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        let mut r = poly_rem(prod, &self.inner.modulus, p);
        r.resize(e, 0);
        FqElem { coeffs: r }
    }

    pub fn pow(&self, a: &FqElem, mut k: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: &FqElem) -> Result<FqElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        // a^(q-2) by Fermat; q is desk-scale so this is cheap.
        Ok(self.pow(a, self.inner.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: &FqElem) -> u64 {
        assert!(!self.is_zero(a));
        let group = self.inner.q - 1;
        let mut ord = group;
        for r in prime_factors(group) {
            while ord.is_multiple_of(r) && self.is_one(&self.pow(a, ord / r)) {
                ord /= r;
            }
        }
        ord
    }

    /// Smallest element (in index order over the coefficient encoding) of
    /// multiplicative order `q - 1`; deterministic.
    pub fn primitive_element(&self) -> FqElem {
        let group = self.inner.q - 1;
        if group == 0 {
            unreachable!("q >= 2");
        }
        for idx in 1..self.inner.q {
            let a = self.element_from_index(idx);
            if self.order(&a) == group {
                return a;
            }
        }
        unreachable!("F_q^x is cyclic, so a generator exists")
    }

    /// Canonical text form: bare integer for prime fields, coefficient list
    /// `[c0,c1,...]` for extensions.
    pub fn fmt_elem(&self, a: &FqElem) -> String {
        self.check(a);
        if self.inner.e == 1 {
            format!("{}", a.coeffs[0])
        } else {
            let inner: Vec<String> = a.coeffs.iter().map(|c| c.to_string()).collect();
            format!("[{}]", inner.join(","))
        }
    }
}

/// Checked binary operation carrying the spec's mismatch error.
pub fn checked_arith(
    field: &Field,
    a: &FqElem,
    b: &FqElem,
    op: fn(&Field, &FqElem, &FqElem) -> FqElem,
) -> Result<FqElem, FieldError> {
    if a.coeffs.len() != field.extension_degree() || b.coeffs.len() != field.extension_degree() {
        return Err(FieldError::FieldMismatch);
    }
    Ok(op(field, a, b))
}
