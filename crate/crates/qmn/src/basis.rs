//! Enumeration of the Borel-invariant basis of the truncated ring, of the
//! Dickson-algebra slices indexed by box partitions, and of the candidate
//! bases for the general linear group and its parabolic subgroups.
//!
//! Basis elements are indexed combinatorially and evaluated to polynomials
//! on demand. The parabolic candidates are built as expression trees because
//! the Frobenius-like shift acts on the syntax of an expression (operator
//! and generator subscripts), not on its value.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf::Field;
use crate::invariants::{self, InvError};
use crate::mpoly::{MPoly, Monomial, RationalFn};
use crate::series::{q_int, q_pow};

#[derive(Debug)]
pub enum BasisError {
    CompositionInvalid(String),
    InvalidIndex(String),
    Inv(InvError),
}

impl fmt::Display for BasisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisError::CompositionInvalid(s) => write!(f, "invalid composition: {s}"),
            BasisError::InvalidIndex(s) => write!(f, "invalid basis index: {s}"),
            BasisError::Inv(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for BasisError {}

impl From<InvError> for BasisError {
    fn from(e: InvError) -> Self {
        BasisError::Inv(e)
    }
}

/// Combinatorial label of one nested invariant `Y_b(I; J)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct YIndex {
    pub b: u32,
    #[serde(rename = "I")]
    pub i: Vec<u32>,
    #[serde(rename = "J")]
    pub j: Vec<u64>,
}

impl fmt::Debug for YIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Y_{}({:?}; {:?})", self.b, self.i, self.j)
    }
}

impl YIndex {
    pub fn new(b: u32, i: Vec<u32>, j: Vec<u64>) -> YIndex {
        assert_eq!(i.len(), j.len(), "I and J must have equal length");
        YIndex { b, i, j }
    }

    /// Number of nested blocks.
    pub fn k(&self) -> usize {
        self.i.len()
    }

    /// Ambient variable count `n = k + sum(I)`.
    pub fn n(&self) -> u32 {
        self.k() as u32 + self.i.iter().sum::<u32>()
    }

    /// Total degree: block `s` contributes `i_s (q^b - q^{s-1})` from the
    /// operator applications and `j_s q^{s-1}(q-1)` from the Dickson power.
    pub fn degree(&self, q: u64) -> u64 {
        let qb = q_pow(q, self.b);
        let mut d = 0u64;
        for (s0, (&i, &j)) in self.i.iter().zip(&self.j).enumerate() {
            let qs = q_pow(q, s0 as u32);
            d += i as u64 * (qb - qs) + j * qs * (q - 1);
        }
        d
    }

    /// Frobenius-like index shift `(b, I, J) -> (b+1, 0.I, 0.J)`.
    pub fn phi(&self) -> YIndex {
        let mut i = vec![0];
        i.extend_from_slice(&self.i);
        let mut j = vec![0];
        j.extend_from_slice(&self.j);
        YIndex::new(self.b + 1, i, j)
    }

    /// Evaluates the nested invariant as an exact polynomial in `n` variables.
    pub fn evaluate(&self, field: &Field) -> Result<MPoly, InvError> {
        invariants::eval_y(field, self.b, &self.i, &self.j)
    }

    /// The graded-lex smallest monomial of the evaluated invariant, from the
    /// closed product formula over blocks (no evaluation needed).
    pub fn smallest_monomial(&self, q: u64, m: u32) -> Result<Monomial, BasisError> {
        if self.b != m {
            return Err(BasisError::InvalidIndex(format!(
                "index has b={}, expected m={m}",
                self.b
            )));
        }
        let n = self.n() as usize;
        let qm = q_pow(q, m);
        let mut exps = vec![0u32; n];
        let mut prefix = 0usize; // i_1 + ... + i_{s-1}
        for (s0, (&i, &j)) in self.i.iter().zip(&self.j).enumerate() {
            let qs = q_pow(q, s0 as u32);
            // block of i_s variables with exponent q^m - q^{s-1}
            for t in 0..i as usize {
                let pos = prefix + t + s0; // 0-based position of x_{prefix + s + t}
                exps[pos] = u32::try_from(qm - qs).expect("exponent fits u32");
            }
            prefix += i as usize;
            // one variable with exponent j_s q^{s-1}(q-1)
            let pos = prefix + s0;
            exps[pos] = u32::try_from(j * qs * (q - 1)).expect("exponent fits u32");
        }
        Ok(Monomial::new(exps))
    }

    /// The flag shape attached to this index: ones at the interior block
    /// boundaries, and at the last position exactly when `j_k` is below its
    /// maximum `[m-k+1]_q`.
    pub fn beta_assignment(&self, q: u64, m: u32) -> Vec<u8> {
        let n = self.n() as usize;
        let k = self.k();
        let mut beta = vec![0u8; n];
        let mut prefix = 0usize;
        for (s0, &i) in self.i.iter().enumerate() {
            prefix += i as usize;
            let pos = prefix + s0; // 0-based position i_1+..+i_s + s - 1
            if s0 + 1 < k {
                beta[pos] = 1;
            } else {
                let cap = q_int(m + 1 - k as u32, q);
                beta[pos] = if self.j[k - 1] < cap { 1 } else { 0 };
            }
        }
        beta
    }
}

fn compositions_of(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions_of(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

/// Borel basis indices by the closed-form description: blocks `k` from 1 to
/// `min(n, m+1)`, compositions `I` of `n-k`, and Dickson exponents bounded by
/// `j_s < [m-s+1]_q` for `s < k`, `j_k <= [m-k+1]_q`.
pub fn borel_basis_closed(q: u64, m: u32, n: u32) -> Vec<YIndex> {
    assert!(n >= 1);
    let mut out = Vec::new();
    for k in 1..=(n.min(m + 1)) as usize {
        for i in compositions_of(n - k as u32, k) {
            let mut j_choices: Vec<Vec<u64>> = vec![vec![]];
            for s in 1..=k {
                let bound = q_int(m + 1 - s as u32, q);
                let upper = if s < k { bound } else { bound + 1 };
                let mut next = Vec::new();
                for prefix in &j_choices {
                    for j in 0..upper {
                        let mut v = prefix.clone();
                        v.push(j);
                        next.push(v);
                    }
                }
                j_choices = next;
            }
            for j in j_choices {
                out.push(YIndex::new(m, i.clone(), j));
            }
        }
    }
    out.sort_by(|a, b| (a.k(), &a.i, &a.j).cmp(&(b.k(), &b.i, &b.j)));
    out
}

/// Borel basis indices by the inductive rule: the base cases are the single
/// trivial index for `m = 0` and the Dickson powers for `n = 1`; otherwise
/// the disjoint union of a first-block bump of the rank `n-1` basis and the
/// shifted rank `n-1` basis at `m-1` times a Dickson power.
pub fn borel_basis_inductive(q: u64, m: u32, n: u32) -> Vec<YIndex> {
    assert!(n >= 1);
    if m == 0 {
        return vec![YIndex::new(0, vec![n - 1], vec![0])];
    }
    if n == 1 {
        return (0..=q_int(m, q))
            .map(|a| YIndex::new(m, vec![0], vec![a]))
            .collect();
    }
    let mut out = Vec::new();
    for y in borel_basis_inductive(q, m, n - 1) {
        let mut i = y.i.clone();
        i[0] += 1;
        out.push(YIndex::new(m, i, y.j.clone()));
    }
    for a in 0..q_int(m, q) {
        for y in borel_basis_inductive(q, m - 1, n - 1) {
            let shifted = y.phi();
            let mut j = shifted.j.clone();
            j[0] = a;
            out.push(YIndex::new(m, shifted.i, j));
        }
    }
    out.sort_by(|a, b| (a.k(), &a.i, &a.j).cmp(&(b.k(), &b.i, &b.j)));
    out
}

/// The Borel basis indices, produced by both the closed form and the
/// inductive rule; the two enumerations must coincide.
pub fn borel_basis(q: u64, m: u32, n: u32) -> Vec<YIndex> {
    let closed = borel_basis_closed(q, m, n);
    let inductive = borel_basis_inductive(q, m, n);
    assert_eq!(
        closed, inductive,
        "closed-form and inductive enumerations disagree at q={q}, m={m}, n={n}"
    );
    closed
}

/// Expression tree over the Dickson/Schur generators and the
/// determinant-quotient operator. The Frobenius-like shift acts on subscripts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expr {
    One,
    /// `Q_{rank, index}` in `rank` variables.
    Dickson {
        rank: usize,
        index: usize,
    },
    /// Schur variation for `lambda` in `rank` variables.
    Schur {
        rank: usize,
        lambda: Vec<u32>,
    },
    Pow(Box<Expr>, u64),
    Mul(Box<Expr>, Box<Expr>),
    /// `delta_{a;b}^h(inner)`.
    Delta {
        a: usize,
        b: u32,
        h: usize,
        inner: Box<Expr>,
    },
}

impl Expr {
    /// The Frobenius-like shift: `Q_{r,i} -> Q_{r+1,i+1}`,
    /// `S_lambda -> S_{lambda,0}` (one more variable), and
    /// `delta_{a;b} -> delta_{a+1;b+1}`, applied through the whole tree.
    pub fn phi_shift(&self) -> Expr {
        match self {
            Expr::One => Expr::One,
            Expr::Dickson { rank, index } => Expr::Dickson {
                rank: rank + 1,
                index: index + 1,
            },
            Expr::Schur { rank, lambda } => {
                let mut lam = lambda.clone();
                lam.resize(*rank, 0);
                lam.push(0);
                Expr::Schur {
                    rank: rank + 1,
                    lambda: lam,
                }
            }
            Expr::Pow(e, k) => Expr::Pow(Box::new(e.phi_shift()), *k),
            Expr::Mul(l, r) => Expr::Mul(Box::new(l.phi_shift()), Box::new(r.phi_shift())),
            Expr::Delta { a, b, h, inner } => Expr::Delta {
                a: a + 1,
                b: b + 1,
                h: *h,
                inner: Box::new(inner.phi_shift()),
            },
        }
    }

    /// Evaluates the tree to a rational function together with its ambient
    /// arity; factors of a product are embedded into the larger arity.
    pub fn eval(&self, field: &Field) -> Result<RationalFn, InvError> {
        match self {
            Expr::One => Ok(RationalFn::from_poly(MPoly::one(field, 0))),
            Expr::Dickson { rank, index } => Ok(RationalFn::from_poly(invariants::dickson(
                field, *rank, *index,
            )?)),
            Expr::Schur { rank, lambda } => Ok(RationalFn::from_poly(invariants::schur(
                field, *rank, lambda,
            )?)),
            Expr::Pow(e, k) => Ok(e.eval(field)?.pow(*k)),
            Expr::Mul(l, r) => {
                let lv = l.eval(field)?;
                let rv = r.eval(field)?;
                let n = lv.nvars().max(rv.nvars());
                Ok(lv.extend_vars(n).mul(&rv.extend_vars(n)))
            }
            Expr::Delta { a, b, h, inner } => {
                let v = inner.eval(field)?;
                invariants::delta_pow(field, *a, *b, *h, &v)
            }
        }
    }

    /// Expected polynomial evaluation.
    pub fn eval_poly(&self, field: &Field) -> Result<MPoly, InvError> {
        let v = self.eval(field)?;
        v.as_poly().map_err(|_| InvError::NotPolynomial {
            context: format!("{self:?}"),
        })
    }
}

/// One element of the Dickson-algebra slice attached to a box partition:
/// the Schur factor for `lambda` times `Q_{s,s-1}^{a_1} ... Q_{s,0}^{a_s}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct NablaElement {
    pub s: u32,
    pub lambda: Vec<u32>,
    /// `a_i < q^{lambda_i}`; `a_1` pairs with `Q_{s,s-1}`, `a_s` with `Q_{s,0}`.
    pub dickson_exps: Vec<u64>,
}

impl NablaElement {
    pub fn degree(&self, q: u64) -> u64 {
        let s = self.s;
        let mut d = 0u64;
        for (j0, &l) in self.lambda.iter().enumerate() {
            // column j (1-based) contributes q^{lambda_j + s - j} - q^{s - j}
            let high = l + s - (j0 as u32 + 1);
            let low = s - (j0 as u32 + 1);
            d += q_pow(q, high) - q_pow(q, low);
        }
        for (i0, &a) in self.dickson_exps.iter().enumerate() {
            // a_i multiplies Q_{s, s-i}, of degree q^s - q^{s-i}
            let drop = i0 as u32 + 1;
            d += a * (q_pow(q, s) - q_pow(q, s - drop));
        }
        d
    }

    pub fn to_expr(&self) -> Expr {
        let s = self.s as usize;
        let mut e = Expr::Schur {
            rank: s,
            lambda: self.lambda.clone(),
        };
        for (i0, &a) in self.dickson_exps.iter().enumerate() {
            if a > 0 {
                let factor = Expr::Pow(
                    Box::new(Expr::Dickson {
                        rank: s,
                        index: s - (i0 + 1),
                    }),
                    a,
                );
                e = Expr::Mul(Box::new(e), Box::new(factor));
            }
        }
        e
    }

    pub fn evaluate(&self, field: &Field) -> Result<MPoly, InvError> {
        self.to_expr().eval_poly(field)
    }
}

fn partitions_in_box(rows: u32, max_part: u32) -> Vec<Vec<u32>> {
    fn rec(rows: u32, cap: u32) -> Vec<Vec<u32>> {
        if rows == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in (0..=cap).rev() {
            for mut rest in rec(rows - 1, first) {
                let mut v = vec![first];
                v.append(&mut rest);
                out.push(v);
            }
        }
        out
    }
    rec(rows, max_part)
}

/// The slice of the rank-`s` Dickson algebra built from Schur factors:
/// for each partition `lambda` in an `s x (m-s)` box, all products
/// `S_lambda Q_{s,s-1}^{a_1} ... Q_{s,0}^{a_s}` with `0 <= a_i < q^{lambda_i}`.
pub fn nabla(q: u64, m: u32, s: u32) -> Vec<NablaElement> {
    assert!(s <= m, "the partition box needs s <= m");
    let mut out = Vec::new();
    for lambda in partitions_in_box(s, m - s) {
        let mut choices: Vec<Vec<u64>> = vec![vec![]];
        for &l in &lambda {
            let mut next = Vec::new();
            for prefix in &choices {
                for a in 0..q_pow(q, l) {
                    let mut v = prefix.clone();
                    v.push(a);
                    next.push(v);
                }
            }
            choices = next;
        }
        for dickson_exps in choices {
            out.push(NablaElement {
                s,
                lambda: lambda.clone(),
                dickson_exps,
            });
        }
    }
    out.sort();
    out
}

/// The q-compatible Dickson-monomial slice: for each partition `lambda` in
/// the `s x (m-s)` box, the exponent tuples `(m_1..m_s)` of
/// `Q_{s,s-1}^{m_1} ... Q_{s,0}^{m_s}` with
/// `[lambda_i]-style` bounds `(q^{lambda_i}-q^{lambda_{i+1}})/(q-1) <= m_i <
/// (q^{lambda_i+1}-q^{lambda_{i+1}})/(q-1)`.
pub fn delta_compatible(q: u64, m: u32, s: u32) -> Vec<Vec<u64>> {
    assert!(s <= m);
    let mut out = Vec::new();
    for lambda in partitions_in_box(s, m - s) {
        let mut lam = lambda.clone();
        lam.push(0);
        let mut choices: Vec<Vec<u64>> = vec![vec![]];
        for i in 0..s as usize {
            let lo = (q_pow(q, lam[i]) - q_pow(q, lam[i + 1])) / (q - 1);
            let hi = (q_pow(q, lam[i] + 1) - q_pow(q, lam[i + 1])) / (q - 1);
            let mut next = Vec::new();
            for prefix in &choices {
                for v in lo..hi {
                    let mut w = prefix.clone();
                    w.push(v);
                    next.push(w);
                }
            }
            choices = next;
        }
        out.extend(choices);
    }
    out.sort();
    out
}

/// Degree of the Dickson monomial `Q_{s,s-1}^{m_1} ... Q_{s,0}^{m_s}`.
pub fn dickson_monomial_degree(q: u64, s: u32, exps: &[u64]) -> u64 {
    exps.iter()
        .enumerate()
        .map(|(i0, &e)| e * (q_pow(q, s) - q_pow(q, s - (i0 as u32 + 1))))
        .sum()
}

/// One candidate invariant for the full linear group: `delta_{s+1}^{n-s}`
/// applied to a Dickson-slice element of rank `s`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct GlCandidate {
    pub n: u32,
    pub head: NablaElement,
}

impl GlCandidate {
    pub fn degree(&self, q: u64, m: u32) -> u64 {
        let s = self.head.s;
        self.head.degree(q) + (self.n - s) as u64 * (q_pow(q, m) - q_pow(q, s))
    }

    pub fn to_expr(&self, m: u32) -> Expr {
        Expr::Delta {
            a: self.head.s as usize + 1,
            b: m,
            h: (self.n - self.head.s) as usize,
            inner: Box::new(self.head.to_expr()),
        }
    }

    pub fn evaluate(&self, field: &Field, m: u32) -> Result<MPoly, InvError> {
        self.to_expr(m).eval_poly(field)
    }
}

/// Candidate basis for the invariants of the full linear group:
/// `{ delta_{s+1}^{n-s}(f) : f in nabla_s, 0 <= s <= min(m, n) }`.
pub fn gl_candidate_basis(q: u64, m: u32, n: u32) -> Vec<GlCandidate> {
    let mut out = Vec::new();
    for s in 0..=m.min(n) {
        for head in nabla(q, m, s) {
            out.push(GlCandidate { n, head });
        }
    }
    out
}

/// One candidate invariant for a parabolic subgroup, following the inductive
/// description: `delta_{s+1}^{n_1-s}(f . Phi^s g)` with `f` from the rank-`s`
/// Dickson slice and `g` a candidate for the tail composition at `m - s`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct ParabolicElement {
    pub n1: u32,
    pub s: u32,
    pub head: NablaElement,
    pub tail: Option<Box<ParabolicElement>>,
}

impl ParabolicElement {
    pub fn to_expr(&self, m: u32) -> Expr {
        let mut inner = self.head.to_expr();
        if let Some(tail) = &self.tail {
            let mut g = tail.to_expr(m - self.s);
            for _ in 0..self.s {
                g = g.phi_shift();
            }
            inner = Expr::Mul(Box::new(inner), Box::new(g));
        }
        Expr::Delta {
            a: self.s as usize + 1,
            b: m,
            h: (self.n1 - self.s) as usize,
            inner: Box::new(inner),
        }
    }

    pub fn evaluate(&self, field: &Field, m: u32) -> Result<MPoly, InvError> {
        self.to_expr(m).eval_poly(field)
    }
}

/// Candidate basis for the parabolic subgroup attached to the composition
/// `alpha` of `n`, built by the inductive rule over the blocks of `alpha`.
pub fn parabolic_candidate_basis(
    q: u64,
    m: u32,
    alpha: &[u32],
) -> Result<Vec<ParabolicElement>, BasisError> {
    if alpha.is_empty() || alpha.contains(&0) {
        return Err(BasisError::CompositionInvalid(format!("{alpha:?}")));
    }
    let mut out = Vec::new();
    let n1 = alpha[0];
    let tail = &alpha[1..];
    for s in 0..=n1.min(m) {
        for head in nabla(q, m, s) {
            if tail.is_empty() {
                out.push(ParabolicElement {
                    n1,
                    s,
                    head: head.clone(),
                    tail: None,
                });
            } else {
                for g in parabolic_candidate_basis(q, m - s, tail)? {
                    out.push(ParabolicElement {
                        n1,
                        s,
                        head: head.clone(),
                        tail: Some(Box::new(g)),
                    });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}
