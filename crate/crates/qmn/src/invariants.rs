//! Modular invariant-theoretic constructions over `F_q`: Moore determinants
//! `L_k`, the additive polynomials `V_k`, Dickson invariants `Q_{k,s}`, the
//! determinant-quotient operator `delta_{a;b}`, its iterated closed form,
//! weighted shuffle products, a variation of Schur polynomials with q-power
//! exponents, and the nested invariants `Y_b(I;J)`.
//!
//! The operator `delta_{a;b}` maps rational functions in `c` variables to
//! rational functions in `c+1` variables; fractions are carried throughout
//! and simplified lazily, because only specific composite expressions are
//! guaranteed polynomial.

use std::fmt;

use itertools::Itertools;

use crate::gf::{Field, FqElem};
use crate::mpoly::{MPoly, PolyError, RationalFn};
use crate::series::q_pow;

#[derive(Debug)]
pub enum InvError {
    EmptyIndexSet,
    IndexOutOfRange { k: usize, s: usize },
    SpecInvalid { a: usize, nvars: usize },
    ArityViolation(String),
    SymmetryViolation,
    InvalidPartition,
    NotPolynomial { context: String },
    Poly(PolyError),
}

impl fmt::Display for InvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvError::EmptyIndexSet => write!(f, "index set must be nonempty"),
            InvError::IndexOutOfRange { k, s } => {
                write!(f, "Dickson index s={s} out of range for rank k={k}")
            }
            InvError::SpecInvalid { a, nvars } => {
                write!(
                    f,
                    "delta row size a={a} invalid for {nvars} input variables"
                )
            }
            InvError::ArityViolation(s) => write!(f, "arity violation: {s}"),
            InvError::SymmetryViolation => write!(f, "input is not symmetric"),
            InvError::InvalidPartition => write!(f, "partition parts must weakly decrease"),
            InvError::NotPolynomial { context } => {
                write!(f, "rational function is not polynomial: {context}")
            }
            InvError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for InvError {}

impl From<PolyError> for InvError {
    fn from(e: PolyError) -> Self {
        InvError::Poly(e)
    }
}

fn exp_u32(x: u64) -> u32 {
    x.try_into().expect("exponent exceeds u32")
}

fn sign_elem(field: &Field, parity: usize) -> FqElem {
    if parity.is_multiple_of(2) {
        field.one()
    } else {
        field.neg_one()
    }
}

/// Moore determinant `L(x_{i_1},...,x_{i_k}) = det(x_{i_j}^{q^{r-1}})` on the
/// chosen variables (0-based indices, in the given column order) inside a
/// ring with `nvars` variables. Repeated indices give 0.
pub fn moore_det(field: &Field, idxs: &[usize], nvars: usize) -> Result<MPoly, InvError> {
    if idxs.is_empty() {
        return Err(InvError::EmptyIndexSet);
    }
    let k = idxs.len();
    let q = field.q();
    let mat: Vec<Vec<MPoly>> = (0..k)
        .map(|row| {
            idxs.iter()
                .map(|&j| MPoly::var_pow(field, nvars, j, exp_u32(q_pow(q, row as u32))))
                .collect()
        })
        .collect();
    Ok(MPoly::det(&mat)?)
}

/// `V(J, i) = L(J, i)/L(J)`, the product of all linear forms
/// `lambda . x_J + x_i`; zero when `i` lies in `J`, `x_i` when `J` is empty.
/// Indices in `J` must be distinct.
pub fn v_poly(field: &Field, j_set: &[usize], i: usize, nvars: usize) -> MPoly {
    if j_set.contains(&i) {
        return MPoly::zero(field, nvars);
    }
    if j_set.is_empty() {
        return MPoly::var(field, nvars, i);
    }
    let mut cols = j_set.to_vec();
    cols.push(i);
    let num = moore_det(field, &cols, nvars).unwrap();
    let den = moore_det(field, j_set, nvars).unwrap();
    num.exact_div(&den)
        .expect("the Moore determinant quotient V(J,i) is polynomial")
}

/// `V(J, I) = prod_{i in I} V(J, i)`; 1 for empty `I`.
pub fn v_product(field: &Field, j_set: &[usize], i_set: &[usize], nvars: usize) -> MPoly {
    let mut acc = MPoly::one(field, nvars);
    for &i in i_set {
        acc = acc.mul(&v_poly(field, j_set, i, nvars));
    }
    acc
}

/// Independent route to `V(J, i)`: the product of the linear forms
/// `lambda_1 x_{j_1} + ... + lambda_k x_{j_k} + x_i` over all tuples
/// `lambda` in `F_q^k`.
pub fn v_linear_product(field: &Field, j_set: &[usize], i: usize, nvars: usize) -> MPoly {
    let k = j_set.len();
    let q = field.q();
    let mut acc = MPoly::one(field, nvars);
    let count = q_pow(q, k as u32);
    for tuple in 0..count {
        let mut form = MPoly::var(field, nvars, i);
        let mut rest = tuple;
        for &j in j_set {
            let lambda = field.element_from_index(rest % q);
            rest /= q;
            if !field.is_zero(&lambda) {
                form = form.add(&MPoly::var(field, nvars, j).scalar_mul(&lambda));
            }
        }
        acc = acc.mul(&form);
    }
    acc
}

/// Dickson invariant `Q_{k,s}` in `k` variables, via the determinant
/// quotient (numerator rows `q^0..q^k` with `q^s` omitted, denominator the
/// Moore determinant).
pub fn dickson(field: &Field, k: usize, s: usize) -> Result<MPoly, InvError> {
    if s >= k {
        return Err(InvError::IndexOutOfRange { k, s });
    }
    let q = field.q();
    let rows: Vec<u32> = (0..=k as u32).filter(|&r| r != s as u32).collect();
    let mat: Vec<Vec<MPoly>> = rows
        .iter()
        .map(|&r| {
            (0..k)
                .map(|j| MPoly::var_pow(field, k, j, exp_u32(q_pow(q, r))))
                .collect()
        })
        .collect();
    let num = MPoly::det(&mat)?;
    let den = moore_det(field, &(0..k).collect::<Vec<_>>(), k)?;
    Ok(num
        .exact_div(&den)
        .expect("Dickson determinant quotients are polynomial"))
}

/// `D_a = Q_{a,a-1}`, the top Dickson invariant of degree `q^a - q^{a-1}`.
pub fn dickson_top(field: &Field, a: usize) -> MPoly {
    dickson(field, a, a - 1).expect("s = a-1 < a")
}

fn coefficient_of_last_var_power(v: &MPoly, k: usize, power: u64) -> MPoly {
    let field = v.field().clone();
    let mut out = MPoly::zero(&field, k);
    for (mono, c) in v.terms() {
        if mono.exps()[k] as u64 == power {
            let exps = mono.exps()[..k].to_vec();
            out = out.add(&MPoly::from_terms(&field, k, vec![(exps, c.clone())]));
        }
    }
    out
}

/// `Q_{k,s}` read off the additive polynomial: `V(x_1..x_k, X)` equals
/// `X^{q^k} + sum_i (-1)^{k-i} Q_{k,i} X^{q^i}`, so the coefficient of
/// `X^{q^s}` times `(-1)^{k-s}` recovers `Q_{k,s}`.
pub fn dickson_from_fundamental(field: &Field, k: usize, s: usize) -> Result<MPoly, InvError> {
    if s >= k {
        return Err(InvError::IndexOutOfRange { k, s });
    }
    let v = v_poly(field, &(0..k).collect::<Vec<_>>(), k, k + 1);
    let c = coefficient_of_last_var_power(&v, k, q_pow(field.q(), s as u32));
    Ok(c.scalar_mul(&sign_elem(field, k - s)))
}

/// `Q_{k,s}` via the fully expanded product of linear forms.
pub fn dickson_from_product(field: &Field, k: usize, s: usize) -> Result<MPoly, InvError> {
    if s >= k {
        return Err(InvError::IndexOutOfRange { k, s });
    }
    let v = v_linear_product(field, &(0..k).collect::<Vec<_>>(), k, k + 1);
    let c = coefficient_of_last_var_power(&v, k, q_pow(field.q(), s as u32));
    Ok(c.scalar_mul(&sign_elem(field, k - s)))
}

/// One application of the determinant-quotient operator: maps a rational
/// function of `c` variables to one of `c+1` variables, raising degree by
/// `q^b - q^{a-1}`.
///
/// The numerator determinant is expanded along its last row; the `a = 1`
/// case short-circuits to `x_1^{q^b - 1} f(x_2, ..., x_{c+1})`.
pub fn delta(field: &Field, a: usize, b: u32, f: &RationalFn) -> Result<RationalFn, InvError> {
    let c = f.nvars();
    if a < 1 || a > c + 1 {
        return Err(InvError::SpecInvalid { a, nvars: c });
    }
    let out = c + 1;
    let qb = q_pow(field.q(), b);
    if a == 1 {
        let map: Vec<usize> = (1..=c).collect();
        let shifted = f.remap_vars(&map, out).unwrap();
        let xpow = MPoly::var_pow(field, out, 0, exp_u32(qb - 1));
        return Ok(shifted.mul_poly(&xpow).simplify());
    }
    let l_a = moore_det(field, &(0..a).collect::<Vec<_>>(), out)?;
    let mut summands = Vec::with_capacity(a);
    for jcol in 0..a {
        let others: Vec<usize> = (0..a).filter(|&t| t != jcol).collect();
        let minor = moore_det(field, &others, out)?;
        let map: Vec<usize> = (0..c).map(|t| if t < jcol { t } else { t + 1 }).collect();
        let f_omit = f.remap_vars(&map, out).unwrap();
        let xq = MPoly::var_pow(field, out, jcol, exp_u32(qb));
        // cofactor sign for entry (a, jcol+1) in 1-based indexing
        let sign = sign_elem(field, a + jcol + 1);
        summands.push(f_omit.mul_poly(&xq).mul_poly(&minor).scalar_mul(&sign));
    }
    let sum = RationalFn::sum(field, out, &summands);
    let res = RationalFn::new(sum.num().clone(), sum.den().mul(&l_a)).unwrap();
    Ok(res.simplify())
}

/// `h`-fold iteration of [`delta`], simplifying after each application.
pub fn delta_pow(
    field: &Field,
    a: usize,
    b: u32,
    h: usize,
    f: &RationalFn,
) -> Result<RationalFn, InvError> {
    let mut cur = f.clone();
    for _ in 0..h {
        cur = delta(field, a, b, &cur)?;
    }
    Ok(cur)
}

/// Weighted shuffle sum: for `f` in `r' >= r` variables and a weight in `h`
/// variables, computes `sum_{|I|=h, I subset [r+h]} f(comp I) w(I) / V(comp I, I)`
/// in `r' + h` variables. Extra trailing variables of `f` pass through.
pub fn weighted_shuffle(
    field: &Field,
    f: &RationalFn,
    r: usize,
    weight: &RationalFn,
    h: usize,
) -> Result<RationalFn, InvError> {
    let rp = f.nvars();
    if rp < r {
        return Err(InvError::ArityViolation(format!(
            "function has {rp} variables, needs at least {r}"
        )));
    }
    if weight.nvars() != h {
        return Err(InvError::ArityViolation(format!(
            "weight has {} variables, expected {h}",
            weight.nvars()
        )));
    }
    let out = rp + h;
    let mut summands = Vec::new();
    for subset in (0..r + h).combinations(h) {
        let comp: Vec<usize> = (0..r + h).filter(|t| !subset.contains(t)).collect();
        let mut map: Vec<usize> = comp.clone();
        map.extend((r..rp).map(|t| t + h));
        let f_remap = f.remap_vars(&map, out).unwrap();
        let w_remap = weight.remap_vars(&subset, out).unwrap();
        let vden = v_product(field, &comp, &subset, out);
        let num = f_remap.num().mul(w_remap.num());
        let den = f_remap.den().mul(w_remap.den()).mul(&vden);
        summands.push(RationalFn::new(num, den).unwrap());
    }
    Ok(RationalFn::sum(field, out, &summands))
}

/// Closed form for the `h`-fold iterate of `delta_{r+1;b}`: the weighted
/// shuffle against the Frobenius weight `(y_1 ... y_h)^{q^b}`.
pub fn delta_closed_form(
    field: &Field,
    r: usize,
    b: u32,
    h: usize,
    f: &RationalFn,
) -> Result<RationalFn, InvError> {
    let qb = exp_u32(q_pow(field.q(), b));
    let weight = MPoly::from_terms(field, h, vec![(vec![qb; h], field.one())]);
    weighted_shuffle(field, f, r, &RationalFn::from_poly(weight), h)
}

/// One term of the expansion of `prod_j V(x_1..x_s, y_j)` indexed by a weak
/// composition of `h` into `s+1` parts: `parts[i]` counts the factors that
/// contributed exponent `q^i`.
pub struct ExpansionTerm {
    pub parts: Vec<usize>,
    /// Signed Dickson monomial in `x_1..x_s`.
    pub beta: MPoly,
    /// Monomial symmetric polynomial in `y_1..y_h` with q-power exponents.
    pub alpha: MPoly,
}

fn weak_compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in weak_compositions(total - first, parts - 1) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

fn monomial_symmetric(field: &Field, h: usize, exps: &[u64]) -> MPoly {
    assert_eq!(exps.len(), h);
    let distinct: std::collections::BTreeSet<Vec<u64>> = (0..h)
        .permutations(h)
        .map(|perm| perm.iter().map(|&i| exps[i]).collect())
        .collect();
    MPoly::from_terms(
        field,
        h,
        distinct
            .into_iter()
            .map(|e| (e.iter().map(|&x| exp_u32(x)).collect(), field.one())),
    )
}

/// Expands `prod_{j=1}^h V(x_1..x_s, y_j)` as `sum_T beta_T(x) alpha_T(y)`.
/// For `h = 0` the single term has `alpha = beta = 1`.
pub fn expand_v_product(field: &Field, s: usize, h: usize) -> Vec<ExpansionTerm> {
    let q = field.q();
    let mut out = Vec::new();
    for parts in weak_compositions(h, s + 1) {
        // sign: each factor choosing exponent q^i (i < s) carries (-1)^{s-i}
        let parity: usize = (0..s).map(|i| parts[i] * (s - i)).sum();
        let mut beta = MPoly::one(field, s).scalar_mul(&sign_elem(field, parity));
        for (i, &t) in parts.iter().enumerate().take(s) {
            if t > 0 {
                beta = beta.mul(&dickson(field, s, i).unwrap().pow(t as u64));
            }
        }
        let mut exps = Vec::with_capacity(h);
        for (i, &t) in parts.iter().enumerate() {
            exps.extend(std::iter::repeat_n(q_pow(q, i as u32), t));
        }
        let alpha = monomial_symmetric(field, h, &exps);
        out.push(ExpansionTerm { parts, beta, alpha });
    }
    out
}

/// The diagonal operator attached to one expansion term: the weighted
/// shuffle of `g` against `alpha_T`.
pub fn a_operator(
    field: &Field,
    r: usize,
    term: &ExpansionTerm,
    g: &RationalFn,
) -> Result<RationalFn, InvError> {
    let h = term.alpha.nvars();
    weighted_shuffle(field, g, r, &RationalFn::from_poly(term.alpha.clone()), h)
}

/// Whether a polynomial is invariant under all permutations of its first
/// `k` variables.
pub fn is_symmetric(f: &MPoly, k: usize) -> bool {
    let n = f.nvars();
    assert!(k <= n);
    for i in 0..k.saturating_sub(1) {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, i + 1);
        if f.remap_vars(&map, n).unwrap() != *f {
            return false;
        }
    }
    true
}

fn rational_is_symmetric(f: &RationalFn, k: usize) -> bool {
    let n = f.nvars();
    for i in 0..k.saturating_sub(1) {
        let mut map: Vec<usize> = (0..n).collect();
        map.swap(i, i + 1);
        if !f.remap_vars(&map, n).unwrap().eq(f) {
            return false;
        }
    }
    true
}

/// Weighted shuffle product of `f` (symmetric in exactly `r` variables) and
/// `g` (symmetric in exactly `h` variables):
/// `sum_{I ⊔ J = [r+h]} f(I) g(J) / V(I, J)`.
///
/// `check_symmetry` enables the optional precondition check.
pub fn shuffle(
    field: &Field,
    f: &RationalFn,
    g: &RationalFn,
    r: usize,
    h: usize,
    check_symmetry: bool,
) -> Result<RationalFn, InvError> {
    if f.nvars() != r || g.nvars() != h {
        return Err(InvError::ArityViolation(format!(
            "shuffle expects arities ({r}, {h}), got ({}, {})",
            f.nvars(),
            g.nvars()
        )));
    }
    if check_symmetry && !(rational_is_symmetric(f, r) && rational_is_symmetric(g, h)) {
        return Err(InvError::SymmetryViolation);
    }
    weighted_shuffle(field, f, r, g, h)
}

pub struct CompositeCheck {
    pub holds: bool,
    pub lhs: RationalFn,
    pub rhs: RationalFn,
}

/// Verifies the composition rule
/// `delta_{r+1}^h(g * delta_{s+1}^k(f)) =
///  sum_T A_{r;T}(g) * delta_{s+1}^{h+k}(beta_T f)`
/// by cross-multiplied equality of rational functions.
#[allow(clippy::too_many_arguments)]
pub fn composite_delta_check(
    field: &Field,
    r: usize,
    s: usize,
    k: usize,
    h: usize,
    b: u32,
    f: &MPoly,
    g: &MPoly,
) -> Result<CompositeCheck, InvError> {
    if r > s + k {
        return Err(InvError::ArityViolation(format!(
            "need r <= s + k, got r={r}, s={s}, k={k}"
        )));
    }
    let sp = f.nvars().max(s);
    let rp = g.nvars().max(r);
    let f = f.extend_vars(sp);
    let g = g.extend_vars(rp);

    let inner = delta_pow(field, s + 1, b, k, &RationalFn::from_poly(f.clone()))?;
    let ambient0 = rp.max(sp + k);
    let product = inner
        .extend_vars(ambient0)
        .mul_poly(&g.extend_vars(ambient0));
    let lhs = delta_pow(field, r + 1, b, h, &product)?;

    let ambient = ambient0 + h;
    let mut rhs = RationalFn::zero(field, ambient);
    for term in expand_v_product(field, s, h) {
        let a_g = a_operator(field, r, &term, &RationalFn::from_poly(g.clone()))?;
        let beta_f = term.beta.extend_vars(sp).mul(&f);
        let dd = delta_pow(field, s + 1, b, h + k, &RationalFn::from_poly(beta_f))?;
        rhs = rhs.add(&a_g.extend_vars(ambient).mul(&dd.extend_vars(ambient)));
    }
    let lhs = lhs.extend_vars(ambient);
    let holds = lhs.eq(&rhs);
    Ok(CompositeCheck { holds, lhs, rhs })
}

/// Schur polynomial with q-power exponents for a partition with at most `s`
/// parts: `det(x_i^{q^{lambda_j + s - j}}) / det(x_i^{q^{s - j}})` in `s`
/// variables.
pub fn schur(field: &Field, s: usize, lambda: &[u32]) -> Result<MPoly, InvError> {
    let lam = normalize_partition(s, lambda)?;
    if s == 0 {
        return Ok(MPoly::one(field, 0));
    }
    let q = field.q();
    let num_mat: Vec<Vec<MPoly>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| {
                    let power = lam[j] + (s - 1 - j) as u32;
                    MPoly::var_pow(field, s, i, exp_u32(q_pow(q, power)))
                })
                .collect()
        })
        .collect();
    let den_mat: Vec<Vec<MPoly>> = (0..s)
        .map(|i| {
            (0..s)
                .map(|j| MPoly::var_pow(field, s, i, exp_u32(q_pow(q, (s - 1 - j) as u32))))
                .collect()
        })
        .collect();
    let num = MPoly::det(&num_mat)?;
    let den = MPoly::det(&den_mat)?;
    Ok(num
        .exact_div(&den)
        .expect("Schur determinant quotients are polynomial"))
}

/// Same polynomial built inductively through the delta operator:
/// `S_lambda = delta_{s; lambda_1 + s - 1}(S_{lambda_2..lambda_s})`.
pub fn schur_inductive(field: &Field, s: usize, lambda: &[u32]) -> Result<MPoly, InvError> {
    let lam = normalize_partition(s, lambda)?;
    if s == 0 {
        return Ok(MPoly::one(field, 0));
    }
    let tail = schur_inductive(field, s - 1, &lam[1..])?;
    let b = lam[0] + (s - 1) as u32;
    let res = delta(field, s, b, &RationalFn::from_poly(tail))?;
    res.as_poly().map_err(|_| InvError::NotPolynomial {
        context: format!("inductive Schur for lambda={lam:?}"),
    })
}

fn normalize_partition(s: usize, lambda: &[u32]) -> Result<Vec<u32>, InvError> {
    if lambda.len() > s {
        return Err(InvError::InvalidPartition);
    }
    let mut lam = lambda.to_vec();
    lam.resize(s, 0);
    if lam.windows(2).any(|w| w[0] < w[1]) {
        return Err(InvError::InvalidPartition);
    }
    Ok(lam)
}

/// Evaluates the nested invariant
/// `Y_b(I;J) = delta_{1;b}^{i_1}(D_1^{j_1} delta_{2;b}^{i_2}(D_2^{j_2}(...)))`
/// in `n = k + sum(I)` variables, certifying polynomiality of the final
/// value only. Intermediate fractions are carried as-is.
pub fn eval_y(field: &Field, b: u32, i_seq: &[u32], j_seq: &[u64]) -> Result<MPoly, InvError> {
    let k = i_seq.len();
    if k == 0 || j_seq.len() != k {
        return Err(InvError::ArityViolation(format!(
            "index sequences must be nonempty and equal length, got ({}, {})",
            k,
            j_seq.len()
        )));
    }
    // innermost block: D_k^{j_k} regarded in k variables
    let mut cur = RationalFn::from_poly(dickson_top(field, k).pow(j_seq[k - 1]));
    for _ in 0..i_seq[k - 1] {
        cur = delta(field, k, b, &cur)?;
    }
    for s in (1..k).rev() {
        let d_pow = dickson_top(field, s).pow(j_seq[s - 1]);
        cur = cur.mul_poly(&d_pow.extend_vars(cur.nvars()));
        for _ in 0..i_seq[s - 1] {
            cur = delta(field, s, b, &cur)?;
        }
    }
    cur.as_poly().map_err(|_| InvError::NotPolynomial {
        context: format!("Y_{b}({i_seq:?}; {j_seq:?})"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::TruncationSpec;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn f3() -> Field {
        Field::new(3, 1).unwrap()
    }

    fn rf(p: MPoly) -> RationalFn {
        RationalFn::from_poly(p)
    }

    #[test]
    fn moore_small() {
        let k = f2();
        assert_eq!(moore_det(&k, &[0], 1).unwrap(), MPoly::var(&k, 1, 0));
        let l2 = moore_det(&k, &[0, 1], 2).unwrap();
        let expected = MPoly::from_terms(&k, 2, vec![(vec![1, 2], k.one()), (vec![2, 1], k.one())]);
        assert_eq!(l2, expected);
        // duplicate indices give zero
        assert!(moore_det(&k, &[0, 0], 2).unwrap().is_zero());
        assert!(matches!(
            moore_det(&k, &[], 1),
            Err(InvError::EmptyIndexSet)
        ));
    }

    #[test]
    fn v_poly_examples() {
        let k = f2();
        assert_eq!(v_poly(&k, &[], 0, 1), MPoly::var(&k, 1, 0));
        // q=2: V({x1}, x2) = x2(x2 + x1) = x2^2 + x1 x2
        let v = v_poly(&k, &[0], 1, 2);
        let expected = MPoly::from_terms(&k, 2, vec![(vec![0, 2], k.one()), (vec![1, 1], k.one())]);
        assert_eq!(v, expected);
        // i in J gives zero
        assert!(v_poly(&k, &[0, 1], 1, 3).is_zero());
        assert_eq!(v_product(&k, &[0], &[], 2), MPoly::one(&k, 2));
    }

    #[test]
    fn v_poly_matches_linear_product() {
        for field in [f2(), f3()] {
            for jn in 0..=2usize {
                let j_set: Vec<usize> = (0..jn).collect();
                let n = jn + 1;
                assert_eq!(
                    v_poly(&field, &j_set, jn, n),
                    v_linear_product(&field, &j_set, jn, n),
                    "q={} |J|={jn}",
                    field.q()
                );
            }
        }
    }

    #[test]
    fn fundamental_equation() {
        // V(x_1..x_k, X) = X^{q^k} + sum_i (-1)^{k-i} Q_{k,i} X^{q^i}
        for field in [f2(), f3()] {
            let q = field.q();
            for k in 1..=2usize {
                let v = v_poly(&field, &(0..k).collect::<Vec<_>>(), k, k + 1);
                let mut expect = MPoly::var_pow(&field, k + 1, k, exp_u32(q_pow(q, k as u32)));
                for i in 0..k {
                    let qki = dickson(&field, k, i)
                        .unwrap()
                        .extend_vars(k + 1)
                        .scalar_mul(&sign_elem(&field, k - i));
                    let x_pow = MPoly::var_pow(&field, k + 1, k, exp_u32(q_pow(q, i as u32)));
                    expect = expect.add(&qki.mul(&x_pow));
                }
                assert_eq!(v, expect, "q={q} k={k}");
            }
        }
    }

    #[test]
    fn dickson_three_routes_agree() {
        for field in [f2(), f3()] {
            for k in 1..=3usize {
                for s in 0..k {
                    let a = dickson(&field, k, s).unwrap();
                    let b = dickson_from_fundamental(&field, k, s).unwrap();
                    let c = dickson_from_product(&field, k, s).unwrap();
                    assert_eq!(a, b, "q={} k={k} s={s}", field.q());
                    assert_eq!(a, c, "q={} k={k} s={s}", field.q());
                    assert_eq!(
                        a.degree().unwrap(),
                        q_pow(field.q(), k as u32) - q_pow(field.q(), s as u32)
                    );
                }
            }
        }
    }

    #[test]
    fn dickson_frozen_values() {
        // Q_{1,0} = x^{q-1}
        for field in [f2(), f3()] {
            let q = field.q();
            assert_eq!(
                dickson(&field, 1, 0).unwrap(),
                MPoly::var_pow(&field, 1, 0, (q - 1) as u32)
            );
        }
        // q=2: Q_{2,1} = x1^2 + x1 x2 + x2^2, Q_{2,0} = x1^2 x2 + x1 x2^2
        let k = f2();
        let q21 = MPoly::from_terms(
            &k,
            2,
            vec![
                (vec![2, 0], k.one()),
                (vec![1, 1], k.one()),
                (vec![0, 2], k.one()),
            ],
        );
        let q20 = MPoly::from_terms(&k, 2, vec![(vec![2, 1], k.one()), (vec![1, 2], k.one())]);
        assert_eq!(dickson(&k, 2, 1).unwrap(), q21);
        assert_eq!(dickson(&k, 2, 0).unwrap(), q20);
        assert!(matches!(
            dickson(&k, 2, 2),
            Err(InvError::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn dickson_is_linear_group_invariant() {
        // exact invariance (not just modulo the truncation ideal) under the
        // generating substitutions of the full linear group
        for field in [f2(), f3()] {
            for k in 1..=3usize {
                for s in 0..k {
                    let qks = dickson(&field, k, s).unwrap();
                    for (i, j) in (0..k).flat_map(|i| (0..k).map(move |j| (i, j))) {
                        if i == j {
                            continue;
                        }
                        // x_j -> x_j + x_i
                        let mut subs: Vec<MPoly> =
                            (0..k).map(|t| MPoly::var(&field, k, t)).collect();
                        subs[j] = subs[j].add(&MPoly::var(&field, k, i));
                        assert_eq!(qks.substitute_linear(&subs), qks);
                    }
                    let lambda = field.primitive_element();
                    let mut subs: Vec<MPoly> = (0..k).map(|t| MPoly::var(&field, k, t)).collect();
                    subs[0] = subs[0].scalar_mul(&lambda);
                    assert_eq!(qks.substitute_linear(&subs), qks);
                }
            }
        }
    }

    #[test]
    fn delta_basics() {
        let k = f2();
        // delta_{1;b}(f) = x1^{q^b - 1} f(x2,...)
        let f = rf(MPoly::var(&k, 1, 0)); // f = x1 in one variable
        let d = delta(&k, 1, 1, &f).unwrap().as_poly().unwrap();
        assert_eq!(d, MPoly::var(&k, 2, 0).mul(&MPoly::var(&k, 2, 1)));
        // delta_{a;a}(1) = Q_{a,a-1}
        for field in [f2(), f3()] {
            for a in 1..=3usize {
                let one = rf(MPoly::one(&field, a - 1));
                let d = delta(&field, a, a as u32, &one).unwrap().as_poly().unwrap();
                assert_eq!(d, dickson_top(&field, a), "q={} a={a}", field.q());
            }
        }
        // q=2: delta_{2;2}(1) = x1^2 + x1 x2 + x2^2
        let d22 = delta(&k, 2, 2, &rf(MPoly::one(&k, 1)))
            .unwrap()
            .as_poly()
            .unwrap();
        assert_eq!(d22, dickson(&k, 2, 1).unwrap());
        // invalid row size
        assert!(matches!(
            delta(&k, 3, 1, &rf(MPoly::one(&k, 1))),
            Err(InvError::SpecInvalid { .. })
        ));
    }

    #[test]
    fn closed_form_matches_iteration_small() {
        for field in [f2(), f3()] {
            let q = field.q();
            for r in 0..=2usize {
                for h in 1..=2usize {
                    for b in 0..=2u32 {
                        // monomial input in exactly r variables (constant 1 when r=0)
                        let f = if r == 0 {
                            MPoly::one(&field, 0)
                        } else {
                            MPoly::var_pow(&field, r, 0, (q - 1) as u32)
                        };
                        let lhs = delta_pow(&field, r + 1, b, h, &rf(f.clone())).unwrap();
                        let rhs = delta_closed_form(&field, r, b, h, &rf(f)).unwrap();
                        assert!(lhs.eq(&rhs), "q={q} r={r} h={h} b={b}: {lhs} vs {rhs}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_form_passes_trailing_variables() {
        // f in r' > r variables: trailing variables shift past the new block
        let k = f2();
        let f = MPoly::var(&k, 2, 0).mul(&MPoly::var_pow(&k, 2, 1, 2)); // x1 x2^2, r' = 2
        let lhs = delta_pow(&k, 2, 2, 1, &rf(f.clone())).unwrap(); // r = 1
        let rhs = delta_closed_form(&k, 1, 2, 1, &rf(f)).unwrap();
        assert!(lhs.eq(&rhs));
    }

    #[test]
    fn iterated_delta_from_one_variable_base() {
        // delta_1^h(1) = (x_1 ... x_h)^{q^b - 1}
        for field in [f2(), f3()] {
            let q = field.q();
            for (b, h) in [(1u32, 2usize), (2, 2), (1, 3)] {
                let it = delta_pow(&field, 1, b, h, &rf(MPoly::one(&field, 0)))
                    .unwrap()
                    .as_poly()
                    .unwrap();
                let e = exp_u32(q_pow(q, b) - 1);
                let expected = MPoly::from_terms(&field, h, vec![(vec![e; h], field.one())]);
                assert_eq!(it, expected, "q={q} b={b} h={h}");
            }
        }
    }

    #[test]
    fn v_product_expansion_identity() {
        // sum_T beta_T(x) alpha_T(y) = prod_j V(x_1..x_s, y_j)
        for field in [f2(), f3()] {
            for s in 0..=2usize {
                for h in 0..=2usize {
                    let n = s + h;
                    let mut direct = MPoly::one(&field, n);
                    for j in 0..h {
                        direct = direct.mul(&v_poly(&field, &(0..s).collect::<Vec<_>>(), s + j, n));
                    }
                    let mut expanded = MPoly::zero(&field, n);
                    for term in expand_v_product(&field, s, h) {
                        let beta = term.beta.extend_vars(n);
                        let alpha_map: Vec<usize> = (s..s + h).collect();
                        let alpha = term.alpha.remap_vars(&alpha_map, n).unwrap();
                        expanded = expanded.add(&beta.mul(&alpha));
                    }
                    assert_eq!(direct, expanded, "q={} s={s} h={h}", field.q());
                }
            }
        }
    }

    #[test]
    fn expansion_terms_small() {
        let k = f2();
        // (s,h) = (0,1): single term, alpha = y_1, beta = 1
        let terms = expand_v_product(&k, 0, 1);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].alpha, MPoly::var(&k, 1, 0));
        assert_eq!(terms[0].beta, MPoly::one(&k, 0));
        // (s,h) = (1,1): V(x1,y) = y^q - x1^{q-1} y
        let terms = expand_v_product(&k, 1, 1);
        assert_eq!(terms.len(), 2);
        for t in &terms {
            match t.parts.as_slice() {
                [0, 1] => {
                    assert_eq!(t.beta, MPoly::one(&k, 1));
                    assert_eq!(t.alpha, MPoly::var_pow(&k, 1, 0, 2));
                }
                [1, 0] => {
                    // -Q_{1,0} = Q_{1,0} in characteristic 2
                    assert_eq!(t.beta, dickson(&k, 1, 0).unwrap().neg());
                    assert_eq!(t.alpha, MPoly::var(&k, 1, 0));
                }
                other => panic!("unexpected composition {other:?}"),
            }
        }
        // h = 0: alpha = beta = 1
        let terms = expand_v_product(&k, 2, 0);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].beta, MPoly::one(&k, 2));
        assert_eq!(terms[0].alpha, MPoly::one(&k, 0));
    }

    #[test]
    fn a_operator_specializations() {
        for field in [f2(), f3()] {
            // tau with all weight at position b <= s: A_{r;tau}(g) = delta_{r+1}^h(g)
            let (s, h, r) = (2usize, 2usize, 2usize);
            let g = MPoly::var_pow(&field, r, 0, (field.q() - 1) as u32);
            for b in 0..=s {
                let mut parts = vec![0; s + 1];
                parts[b] = h;
                let term = expand_v_product(&field, s, h)
                    .into_iter()
                    .find(|t| t.parts == parts)
                    .unwrap();
                let lhs = a_operator(&field, r, &term, &rf(g.clone())).unwrap();
                let rhs = delta_pow(&field, r + 1, b as u32, h, &rf(g.clone())).unwrap();
                assert!(lhs.eq(&rhs), "q={} b={b}", field.q());
            }
        }
    }

    #[test]
    fn a_operator_kills_low_frobenius_weights() {
        // A_{r;T_j}(1) = 0 for j <= r-1 (duplicated Moore row)
        for field in [f2(), f3()] {
            for s in 0..=1usize {
                let r = s + 1;
                for (j, term) in expand_v_product(&field, s, 1).iter().enumerate() {
                    let res = a_operator(&field, r, term, &rf(MPoly::one(&field, r))).unwrap();
                    assert!(
                        res.is_zero(),
                        "q={} s={s} j={j}: expected zero, got {res}",
                        field.q()
                    );
                }
            }
        }
    }

    #[test]
    fn shuffle_edges() {
        let k = f2();
        let one0 = rf(MPoly::one(&k, 0));
        let x = rf(MPoly::var(&k, 1, 0));
        // empty shuffle returns the other factor
        let s = shuffle(&k, &x, &one0, 1, 0, true).unwrap();
        assert!(s.eq(&x));
        // delta as a shuffle against the Frobenius weight
        let w = rf(MPoly::var_pow(&k, 1, 0, 4));
        let via_shuffle = shuffle(&k, &x, &w, 1, 1, false).unwrap();
        let via_delta = delta(&k, 2, 2, &x).unwrap();
        assert!(via_shuffle.eq(&via_delta));
        // symmetry check trips on an asymmetric input
        let asym = rf(MPoly::var(&k, 2, 0));
        assert!(matches!(
            shuffle(&k, &asym, &one0, 2, 0, true),
            Err(InvError::SymmetryViolation)
        ));
    }

    #[test]
    fn composite_rule_examples() {
        let k = f2();
        // h = 0: both sides are literally the same expression
        let chk = composite_delta_check(&k, 1, 1, 1, 0, 1, &MPoly::one(&k, 1), &MPoly::one(&k, 1))
            .unwrap();
        assert!(chk.holds);
        // (q,r,s,k,h) = (2,1,1,1,1), f = g = 1
        let chk = composite_delta_check(&k, 1, 1, 1, 1, 1, &MPoly::one(&k, 1), &MPoly::one(&k, 1))
            .unwrap();
        assert!(chk.holds, "lhs={} rhs={}", chk.lhs, chk.rhs);
        // (q,r,s,k,h) = (2,2,1,1,1), g = Q_{1,0}
        let g = dickson(&k, 1, 0).unwrap().extend_vars(2);
        let chk = composite_delta_check(&k, 2, 1, 1, 1, 1, &MPoly::one(&k, 1), &g).unwrap();
        assert!(chk.holds, "lhs={} rhs={}", chk.lhs, chk.rhs);
        // precondition r <= s + k
        assert!(matches!(
            composite_delta_check(&k, 3, 1, 1, 1, 1, &MPoly::one(&k, 1), &MPoly::one(&k, 3)),
            Err(InvError::ArityViolation(_))
        ));
    }

    #[test]
    fn consecutive_deltas_vanish() {
        // delta_{s+2} delta_{s+1}(f) = 0
        for field in [f2(), f3()] {
            for s in 0..=1usize {
                let f = if s == 0 {
                    MPoly::one(&field, 0)
                } else {
                    MPoly::var_pow(&field, s, 0, 3)
                };
                let first = delta(&field, s + 1, 2, &rf(f)).unwrap();
                let second = delta(&field, s + 2, 2, &first).unwrap();
                assert!(second.is_zero(), "q={} s={s}", field.q());
            }
        }
    }

    #[test]
    fn schur_examples() {
        for field in [f2(), f3()] {
            let q = field.q();
            // empty partition: 1
            assert_eq!(schur(&field, 2, &[]).unwrap(), MPoly::one(&field, 2));
            // columns recover Dickson invariants: S_{1^{s-i}} = Q_{s,i}
            for s in 1..=3usize {
                for i in 0..s {
                    let lambda = vec![1u32; s - i];
                    assert_eq!(
                        schur(&field, s, &lambda).unwrap(),
                        dickson(&field, s, i).unwrap(),
                        "q={q} s={s} i={i}"
                    );
                }
            }
            // single variable: S_{(b)} = x^{q^b - 1}
            for b in 0..=3u32 {
                assert_eq!(
                    schur(&field, 1, &[b]).unwrap(),
                    MPoly::var_pow(&field, 1, 0, exp_u32(q_pow(q, b) - 1))
                );
            }
        }
        assert!(matches!(
            schur(&f2(), 2, &[1, 2]),
            Err(InvError::InvalidPartition)
        ));
    }

    #[test]
    fn schur_determinant_matches_inductive() {
        for field in [f2(), f3()] {
            for s in 1..=3usize {
                for l1 in 0..=2u32 {
                    for l2 in 0..=l1.min(2) {
                        let lambda = if s == 1 { vec![l1] } else { vec![l1, l2] };
                        let a = schur(&field, s, &lambda).unwrap();
                        let b = schur_inductive(&field, s, &lambda).unwrap();
                        assert_eq!(a, b, "q={} s={s} lambda={lambda:?}", field.q());
                    }
                }
            }
        }
    }

    #[test]
    fn y_values_small() {
        let k = f2();
        // Y_b((0),(j)) = D_1^j = x^{j(q-1)}
        for b in 0..=2u32 {
            for j in 0..=3u64 {
                assert_eq!(
                    eval_y(&k, b, &[0], &[j]).unwrap(),
                    MPoly::var_pow(&k, 1, 0, j as u32)
                );
            }
        }
        // q=2, b=1: Y((1),(0)) = x1, Y((1),(1)) = x1 x2
        assert_eq!(eval_y(&k, 1, &[1], &[0]).unwrap(), MPoly::var(&k, 2, 0));
        assert_eq!(
            eval_y(&k, 1, &[1], &[1]).unwrap(),
            MPoly::var(&k, 2, 0).mul(&MPoly::var(&k, 2, 1))
        );
        // q=2, b=m: Y_m((0,1),(0,j2)) = delta_{2;m}(D_2^{j2})
        let y = eval_y(&k, 2, &[0, 1], &[0, 0]).unwrap();
        let expect = delta(&k, 2, 2, &rf(MPoly::one(&k, 2)))
            .unwrap()
            .as_poly()
            .unwrap();
        assert_eq!(y, expect);
        // the evaluated Y is nonzero after truncation
        let spec = TruncationSpec::new(2, 2);
        assert!(!y.truncate(&spec).is_zero());
    }
}
