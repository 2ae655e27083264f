//! Matrix groups over `F_q` acting on the truncated polynomial ring:
//! generator sets for the Borel, parabolic and full linear groups, exact
//! invariance tests, a brute-force invariant-subspace oracle by row
//! reduction, and orbit counting on `F_{q^m}^n`.
//!
//! The action convention substitutes each variable by the matching matrix
//! column, `x_j -> sum_i sigma_{ij} x_i`, so upper-triangular matrices send
//! `x_j` to `x_j` plus earlier variables and `x_1` spans an invariant line.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::gf::{Field, FqElem};
use crate::mpoly::{MPoly, Monomial, TruncationSpec};
use crate::series::q_pow;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    SizeBound { cells: u128, bound: u64 },
    NotInvertible,
    CompositionInvalid,
}

impl fmt::Display for GroupError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupError::SizeBound { cells, bound } => {
                write!(f, "problem size {cells} exceeds configured bound {bound}")
            }
            GroupError::NotInvertible => write!(f, "matrix is not invertible"),
            GroupError::CompositionInvalid => write!(f, "composition does not sum to n"),
        }
    }
}

impl std::error::Error for GroupError {}

/// Square matrix over `F_q`, stored row-major.
#[derive(Clone)]
pub struct MatrixFq {
    field: Field,
    n: usize,
    entries: Vec<FqElem>,
}

impl PartialEq for MatrixFq {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for MatrixFq {}

impl Hash for MatrixFq {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        for e in &self.entries {
            self.field.index_of(e).hash(state);
        }
    }
}

impl fmt::Debug for MatrixFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.n)
            .map(|i| {
                let row: Vec<String> = (0..self.n)
                    .map(|j| self.field.fmt_elem(self.entry(i, j)))
                    .collect();
                format!("[{}]", row.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl MatrixFq {
    /// Group element constructor: rejects singular matrices.
    pub fn new(field: &Field, n: usize, entries: Vec<FqElem>) -> Result<MatrixFq, GroupError> {
        assert_eq!(entries.len(), n * n);
        let m = MatrixFq {
            field: field.clone(),
            n,
            entries,
        };
        if !m.is_invertible() {
            return Err(GroupError::NotInvertible);
        }
        Ok(m)
    }

    pub fn identity(field: &Field, n: usize) -> MatrixFq {
        let mut entries = vec![field.zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = field.one();
        }
        MatrixFq {
            field: field.clone(),
            n,
            entries,
        }
    }

    /// `I + c E_{ij}` (row `i`, column `j`): the substitution
    /// `x_j -> x_j + c x_i`.
    pub fn transvection(field: &Field, n: usize, i: usize, j: usize, c: &FqElem) -> MatrixFq {
        assert!(i != j);
        let mut m = MatrixFq::identity(field, n);
        m.entries[i * n + j] = c.clone();
        m
    }

    /// Diagonal matrix with `lambda` at position `i`, ones elsewhere.
    pub fn torus_generator(field: &Field, n: usize, i: usize, lambda: &FqElem) -> MatrixFq {
        let mut m = MatrixFq::identity(field, n);
        m.entries[i * n + i] = lambda.clone();
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &FqElem {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &MatrixFq) -> MatrixFq {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        let mut entries = vec![f.zero(); self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = f.zero();
                for t in 0..self.n {
                    acc = f.add(&acc, &f.mul(self.entry(i, t), other.entry(t, j)));
                }
                entries[i * self.n + j] = acc;
            }
        }
        MatrixFq {
            field: f.clone(),
            n: self.n,
            entries,
        }
    }

    pub fn is_invertible(&self) -> bool {
        let mut m = MatFq {
            field: self.field.clone(),
            rows: self.n,
            cols: self.n,
            data: self.entries.clone(),
        };
        m.rref().len() == self.n
    }

    /// Action on polynomials by linear substitution of each variable by the
    /// matching matrix column.
    pub fn act_on_poly(&self, f: &MPoly) -> MPoly {
        assert_eq!(f.nvars(), self.n, "matrix size must equal variable count");
        let subs: Vec<MPoly> = (0..self.n)
            .map(|j| {
                let mut form = MPoly::zero(&self.field, self.n);
                for i in 0..self.n {
                    let c = self.entry(i, j);
                    if !self.field.is_zero(c) {
                        form = form.add(&MPoly::var(&self.field, self.n, i).scalar_mul(c));
                    }
                }
                form
            })
            .collect();
        f.substitute_linear(&subs)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum GroupKind {
    Gl,
    Borel,
    Parabolic(Vec<u32>),
}

impl GroupKind {
    /// Short label used in reports and cache keys.
    pub fn label(&self) -> String {
        match self {
            GroupKind::Gl => "gl".to_string(),
            GroupKind::Borel => "borel".to_string(),
            GroupKind::Parabolic(alpha) => {
                let parts: Vec<String> = alpha.iter().map(|a| a.to_string()).collect();
                format!("para_{}", parts.join("_"))
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct GroupSpec {
    pub field: Field,
    pub n: u32,
    pub kind: GroupKind,
}

impl GroupSpec {
    pub fn new(field: &Field, n: u32, kind: GroupKind) -> Result<GroupSpec, GroupError> {
        if let GroupKind::Parabolic(alpha) = &kind {
            if alpha.is_empty() || alpha.contains(&0) || alpha.iter().sum::<u32>() != n {
                return Err(GroupError::CompositionInvalid);
            }
        }
        Ok(GroupSpec {
            field: field.clone(),
            n,
            kind,
        })
    }

    fn block_ranges(&self) -> Vec<(usize, usize)> {
        let alpha: Vec<u32> = match &self.kind {
            GroupKind::Borel => vec![1; self.n as usize],
            GroupKind::Gl => vec![self.n],
            GroupKind::Parabolic(alpha) => alpha.clone(),
        };
        let mut out = Vec::new();
        let mut lo = 0usize;
        for a in alpha {
            out.push((lo, lo + a as usize));
            lo += a as usize;
        }
        out
    }

    /// Generators: the diagonal torus (one primitive scalar per position,
    /// absent over F_2), all upper transvections `x_j -> x_j + x_i` for
    /// `i < j`, and within each diagonal block the reversed transvections
    /// `x_i -> x_i + x_j`.
    pub fn generators(&self) -> Vec<MatrixFq> {
        let n = self.n as usize;
        let f = &self.field;
        let mut gens = Vec::new();
        if f.q() > 2 {
            let lambda = f.primitive_element();
            for i in 0..n {
                gens.push(MatrixFq::torus_generator(f, n, i, &lambda));
            }
        }
        let one = f.one();
        for i in 0..n {
            for j in i + 1..n {
                gens.push(MatrixFq::transvection(f, n, i, j, &one));
            }
        }
        for (lo, hi) in self.block_ranges() {
            for i in lo..hi {
                for j in i + 1..hi {
                    gens.push(MatrixFq::transvection(f, n, j, i, &one));
                }
            }
        }
        gens
    }
}

/// Order of the group generated by `gens`, by breadth-first closure.
/// Panics if the closure exceeds `limit` elements.
pub fn group_order(field: &Field, n: usize, gens: &[MatrixFq], limit: usize) -> usize {
    let mut seen: HashSet<MatrixFq> = HashSet::new();
    let mut queue = VecDeque::new();
    let id = MatrixFq::identity(field, n);
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for g in gens {
            let next = m.mul(g);
            if seen.insert(next.clone()) {
                assert!(seen.len() <= limit, "group closure exceeded {limit}");
                queue.push_back(next);
            }
        }
    }
    seen.len()
}

/// Whether `f` is fixed by every generator of the group, modulo the
/// truncation ideal.
pub fn is_invariant(f: &MPoly, spec: &GroupSpec, trunc: &TruncationSpec) -> bool {
    let reference = f.truncate(trunc);
    spec.generators()
        .iter()
        .all(|g| g.act_on_poly(f).truncate(trunc) == reference)
}

/// Dense matrix over `F_q` with exact row reduction.
pub struct MatFq {
    pub field: Field,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<FqElem>,
}

impl MatFq {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> MatFq {
        MatFq {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &FqElem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FqElem) {
        self.data[i * self.cols + j] = v;
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0usize;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !f.is_zero(self.at(r, col))) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(row * self.cols + j, p * self.cols + j);
            }
            let inv = f.inv(self.at(row, col)).unwrap();
            for j in col..self.cols {
                let v = f.mul(self.at(row, j), &inv);
                self.set(row, j, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.at(r, col)) {
                    let factor = self.at(r, col).clone();
                    for j in col..self.cols {
                        let v = f.sub(self.at(r, j), &f.mul(&factor, self.at(row, j)));
                        self.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Echelonized basis of the right kernel.
    pub fn kernel_basis(&mut self) -> Vec<Vec<FqElem>> {
        let f = self.field.clone();
        let pivots = self.rref();
        let pivot_set: HashSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(self.at(r, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Monomials with all exponents `< cap` and total degree `d`, in a canonical
/// (lexicographic) order.
pub fn monomials_of_degree(nvars: usize, cap: u64, d: u64) -> Vec<Monomial> {
    fn rec(nvars: usize, cap: u64, d: u64, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial::new(prefix.clone()));
            }
            return;
        }
        let top = d.min(cap - 1);
        for e in 0..=top {
            prefix.push(e as u32);
            rec(nvars - 1, cap, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(nvars, cap, d, &mut Vec::new(), &mut out);
    out
}

/// Invariant subspace of one graded piece, as a dimension plus an
/// echelonized polynomial basis.
#[derive(Clone, Debug)]
pub struct DegreeData {
    pub dim: usize,
    pub basis: Vec<MPoly>,
}

/// Brute-force oracle: for every degree of the truncated ring, the exact
/// dimension and a basis of the subspace fixed by all group generators,
/// by stacking `(action - identity)` matrices and row-reducing over `F_q`.
pub fn invariant_dims(
    spec: &GroupSpec,
    m: u32,
    max_cells: u64,
) -> Result<BTreeMap<u64, DegreeData>, GroupError> {
    let field = &spec.field;
    let n = spec.n as usize;
    let q = field.q();
    let cells = (q_pow(q, m) as u128).pow(n as u32);
    if cells > max_cells as u128 {
        return Err(GroupError::SizeBound {
            cells,
            bound: max_cells,
        });
    }
    let trunc = TruncationSpec::new(q, m);
    let gens = spec.generators();
    let top = n as u64 * (trunc.cap - 1);
    let mut out = BTreeMap::new();
    for d in 0..=top {
        let monos = monomials_of_degree(n, trunc.cap, d);
        let dim = monos.len();
        if dim == 0 {
            continue;
        }
        let index: BTreeMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mo)| (mo, i))
            .collect();
        let mut stacked = MatFq::zeros(field, gens.len().max(1) * dim, dim);
        for (gi, g) in gens.iter().enumerate() {
            for (j, mono) in monos.iter().enumerate() {
                let image = g
                    .act_on_poly(&MPoly::from_terms(
                        field,
                        n,
                        vec![(mono.exps().to_vec(), field.one())],
                    ))
                    .truncate(&trunc);
                for (mo, c) in image.terms() {
                    let i = index[mo];
                    stacked.set(gi * dim + i, j, c.clone());
                }
                // subtract the identity on the diagonal entry
                let v = field.sub(stacked.at(gi * dim + j, j), &field.one());
                stacked.set(gi * dim + j, j, v);
            }
        }
        let kernel = stacked.kernel_basis();
        let basis: Vec<MPoly> = kernel
            .iter()
            .map(|v| {
                MPoly::from_terms(
                    field,
                    n,
                    v.iter()
                        .enumerate()
                        .filter(|(_, c)| !field.is_zero(c))
                        .map(|(i, c)| (monos[i].exps().to_vec(), c.clone())),
                )
            })
            .collect();
        out.insert(
            d,
            DegreeData {
                dim: basis.len(),
                basis,
            },
        );
    }
    Ok(out)
}

/// Ranks of a family of truncated homogeneous polynomials: total rank and
/// the rank of each graded slice, by row reduction over the monomial basis.
pub fn rank_of_family(polys: &[MPoly], trunc: &TruncationSpec) -> (usize, BTreeMap<u64, usize>) {
    let mut by_degree: BTreeMap<u64, Vec<&MPoly>> = BTreeMap::new();
    for p in polys {
        if let Some(d) = p.degree() {
            by_degree.entry(d).or_default().push(p);
        }
    }
    let mut per_degree = BTreeMap::new();
    let mut total = 0usize;
    for (d, members) in by_degree {
        let field = members[0].field().clone();
        let n = members[0].nvars();
        let monos = monomials_of_degree(n, trunc.cap, d);
        let index: BTreeMap<Monomial, usize> = monos
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, mo)| (mo, i))
            .collect();
        let mut mat = MatFq::zeros(&field, members.len(), monos.len());
        for (r, p) in members.iter().enumerate() {
            for (mo, c) in p.terms() {
                mat.set(r, index[mo], c.clone());
            }
        }
        let rank = mat.rref().len();
        per_degree.insert(d, rank);
        total += rank;
    }
    (total, per_degree)
}

/// Number of orbits of the group generated by `gens` on `F_{q^m}^n`, where
/// each coordinate is an `F_q`-vector of length `m` and matrix entries act
/// coordinate-wise. Breadth-first search over generator moves.
pub fn orbit_count_with_generators(
    field: &Field,
    n: usize,
    m: u32,
    gens: &[MatrixFq],
    bound: u64,
) -> Result<u64, GroupError> {
    let q = field.q();
    let total_points = (q as u128).pow(m * n as u32);
    if total_points > bound as u128 {
        return Err(GroupError::SizeBound {
            cells: total_points,
            bound,
        });
    }
    let total = total_points as usize;
    let slots = n * m as usize;

    let decode = |idx: usize| -> Vec<FqElem> {
        let mut rest = idx as u64;
        (0..slots)
            .map(|_| {
                let e = field.element_from_index(rest % q);
                rest /= q;
                e
            })
            .collect()
    };
    let encode = |pt: &[FqElem]| -> usize {
        let mut idx = 0u64;
        for e in pt.iter().rev() {
            idx = idx * q + field.index_of(e);
        }
        idx as usize
    };
    let apply = |g: &MatrixFq, pt: &[FqElem]| -> Vec<FqElem> {
        let mut out = vec![field.zero(); slots];
        for i in 0..n {
            for t in 0..m as usize {
                let mut acc = field.zero();
                for j in 0..n {
                    acc = field.add(&acc, &field.mul(g.entry(i, j), &pt[j * m as usize + t]));
                }
                out[i * m as usize + t] = acc;
            }
        }
        out
    };

    let mut visited = vec![false; total];
    let mut orbits = 0u64;
    for start in 0..total {
        if visited[start] {
            continue;
        }
        orbits += 1;
        visited[start] = true;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(idx) = queue.pop_front() {
            let pt = decode(idx);
            for g in gens {
                let next = encode(&apply(g, &pt));
                if !visited[next] {
                    visited[next] = true;
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(orbits)
}

/// Orbit count for a group specification acting on `F_{q^m}^n`.
pub fn orbit_count(spec: &GroupSpec, m: u32, bound: u64) -> Result<u64, GroupError> {
    orbit_count_with_generators(&spec.field, spec.n as usize, m, &spec.generators(), bound)
}
