//! End-to-end verification pipelines: evaluate a candidate basis, test
//! invariance, compare ranks against the brute-force oracle, match Hilbert
//! series and counting formulas, and run the operator-identity suite.
//! Results are machine-readable reports; oracle runs can be cached on disk.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::basis::{borel_basis, gl_candidate_basis, parabolic_candidate_basis};
use crate::gf::Field;
use crate::groups::{
    invariant_dims, is_invariant, orbit_count, rank_of_family, DegreeData, GroupKind, GroupSpec,
};
use crate::invariants::{
    self, composite_delta_check, delta, delta_closed_form, delta_pow, dickson,
};
use crate::mpoly::{MPoly, RationalFn, TermDto, TruncationSpec};
use crate::series::{
    c_alpha_m, c_nm_gl, e_exponent, f_nm, first_mismatch, flag_count, hilbert_of_degrees,
    hilbert_of_family, q_pow, qt_multinomial, SeriesMode, TSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridPoint {
    pub p: u64,
    pub e: usize,
    pub m: u32,
    pub n: u32,
}

/// Desk-scale verification grid: q=2 up to (m,n) = (3,3), q=3 up to (2,2),
/// and the quartic extension field at m=1, n <= 2.
pub fn default_grid() -> Vec<GridPoint> {
    let mut out = Vec::new();
    for m in 0..=3 {
        for n in 1..=3 {
            out.push(GridPoint { p: 2, e: 1, m, n });
        }
    }
    for m in 0..=2 {
        for n in 1..=2 {
            out.push(GridPoint { p: 3, e: 1, m, n });
        }
    }
    for n in 1..=2 {
        out.push(GridPoint {
            p: 2,
            e: 2,
            m: 1,
            n,
        });
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    fn pass(name: &str) -> Check {
        Check {
            name: name.to_string(),
            status: CheckStatus::Pass,
            witness: None,
        }
    }

    fn fail(name: &str, witness: String) -> Check {
        Check {
            name: name.to_string(),
            status: CheckStatus::Fail,
            witness: Some(witness),
        }
    }

    fn from_result(name: &str, failures: Vec<String>) -> Check {
        if failures.is_empty() {
            Check::pass(name)
        } else {
            Check::fail(name, failures.join("; "))
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CaseLabel {
    pub p: u64,
    pub e: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    pub group: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeriesCmp {
    pub expected: Vec<i64>,
    pub computed: Vec<i64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Counts {
    pub basis: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub orbits: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flags: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub case: CaseLabel,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub series: Option<SeriesCmp>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counts: Option<Counts>,
    pub elapsed_ms: u128,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub cache_dir: Option<PathBuf>,
    pub max_cells: u64,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cache_dir: None,
            max_cells: 1_000_000,
            seed: 0,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct OracleDegreeFile {
    degree: u64,
    dim: usize,
    basis: Vec<Vec<TermDto>>,
}

#[derive(Serialize, Deserialize)]
struct OracleFile {
    degrees: Vec<OracleDegreeFile>,
}

fn cache_path(dir: &Path, spec: &GroupSpec, m: u32) -> PathBuf {
    dir.join(format!(
        "oracle_p{}_e{}_m{}_n{}_{}.json",
        spec.field.p(),
        spec.field.extension_degree(),
        m,
        spec.n,
        spec.kind.label()
    ))
}

/// Oracle dimensions with an optional JSON cache (written atomically via a
/// temporary file and rename).
pub fn oracle_dims(
    spec: &GroupSpec,
    m: u32,
    opts: &VerifyOptions,
) -> Result<BTreeMap<u64, DegreeData>, crate::groups::GroupError> {
    let nvars = spec.n as usize;
    if let Some(dir) = &opts.cache_dir {
        let path = cache_path(dir, spec, m);
        if let Ok(text) = fs::read_to_string(&path) {
            if let Ok(file) = serde_json::from_str::<OracleFile>(&text) {
                let mut out = BTreeMap::new();
                for d in file.degrees {
                    let basis: Vec<MPoly> = d
                        .basis
                        .iter()
                        .map(|dtos| MPoly::from_dtos(&spec.field, nvars, dtos))
                        .collect();
                    out.insert(d.degree, DegreeData { dim: d.dim, basis });
                }
                return Ok(out);
            }
        }
    }
    let dims = invariant_dims(spec, m, opts.max_cells)?;
    if let Some(dir) = &opts.cache_dir {
        let file = OracleFile {
            degrees: dims
                .iter()
                .map(|(&degree, data)| OracleDegreeFile {
                    degree,
                    dim: data.dim,
                    basis: data.basis.iter().map(|p| p.to_dtos()).collect(),
                })
                .collect(),
        };
        let _ = fs::create_dir_all(dir);
        let path = cache_path(dir, spec, m);
        let tmp = path.with_extension("json.tmp");
        if fs::write(&tmp, serde_json::to_string(&file).unwrap()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(dims)
}

struct EvaluatedFamily {
    truncated: Vec<MPoly>,
    exact: Vec<MPoly>,
    failures: Vec<String>,
}

fn evaluate_family<T, F>(items: &[T], trunc: &TruncationSpec, eval: F) -> EvaluatedFamily
where
    F: Fn(&T) -> Result<MPoly, invariants::InvError>,
    T: std::fmt::Debug,
{
    let mut truncated = Vec::new();
    let mut exact = Vec::new();
    let mut failures = Vec::new();
    for item in items {
        match eval(item) {
            Ok(p) => {
                let t = p.truncate(trunc);
                if t.is_zero() {
                    failures.push(format!("{item:?} vanishes after truncation"));
                }
                truncated.push(t);
                exact.push(p);
            }
            Err(e) => failures.push(format!("{item:?}: {e}")),
        }
    }
    EvaluatedFamily {
        truncated,
        exact,
        failures,
    }
}

/// Shared pipeline: invariance, independence, spanning against the oracle,
/// Hilbert-series match, and the orbit count.
#[allow(clippy::too_many_arguments)]
fn verify_candidates(
    label: CaseLabel,
    spec: &GroupSpec,
    m: u32,
    family: EvaluatedFamily,
    expected_series: TSeries,
    extra_series: Option<(&str, TSeries)>,
    flags: Option<u64>,
    opts: &VerifyOptions,
) -> VerifyReport {
    let start = Instant::now();
    let trunc = TruncationSpec::new(spec.field.q(), m);
    let mut checks = Vec::new();

    checks.push(Check::from_result(
        "polynomial-evaluation",
        family.failures.clone(),
    ));

    let invariance_failures: Vec<String> = family
        .truncated
        .iter()
        .filter(|p| !is_invariant(p, spec, &trunc))
        .map(|p| format!("not invariant: {p}"))
        .collect();
    checks.push(Check::from_result("invariance", invariance_failures));

    let (total_rank, rank_per_degree) = rank_of_family(&family.truncated, &trunc);
    let count = family.truncated.len();
    checks.push(if total_rank == count && family.failures.is_empty() {
        Check::pass("linear-independence")
    } else {
        Check::fail(
            "linear-independence",
            format!("family size {count}, rank {total_rank}"),
        )
    });

    let mut counts = Counts {
        basis: count as u64,
        orbits: None,
        flags,
    };

    match oracle_dims(spec, m, opts) {
        Ok(dims) => {
            let mut failures = Vec::new();
            for (d, data) in &dims {
                let r = rank_per_degree.get(d).copied().unwrap_or(0);
                if r != data.dim {
                    let witness = data
                        .basis
                        .iter()
                        .find(|v| {
                            let mut aug: Vec<MPoly> = family
                                .truncated
                                .iter()
                                .filter(|p| p.degree() == Some(*d))
                                .cloned()
                                .collect();
                            let before = rank_of_family(&aug, &trunc).0;
                            aug.push((*v).clone());
                            rank_of_family(&aug, &trunc).0 > before
                        })
                        .map(|v| format!(" unspanned invariant: {v}"))
                        .unwrap_or_default();
                    failures.push(format!(
                        "degree {d}: family rank {r}, invariant dimension {}{witness}",
                        data.dim
                    ));
                }
            }
            checks.push(Check::from_result("spanning", failures));
        }
        Err(e) => checks.push(Check::fail("spanning", format!("oracle unavailable: {e}"))),
    }

    let computed_series = hilbert_of_family(&family.truncated).unwrap_or_else(|_| TSeries::zero());
    let mut series_failures = Vec::new();
    if let Some(d) = first_mismatch(&computed_series, &expected_series) {
        series_failures.push(format!(
            "family series {computed_series} != expected {expected_series} (first mismatch at degree {d})"
        ));
    }
    if let Some((name, other)) = extra_series {
        if let Some(d) = first_mismatch(&other, &expected_series) {
            series_failures.push(format!(
                "{name} gives {other} != {expected_series} (first mismatch at degree {d})"
            ));
        }
    }
    checks.push(Check::from_result("hilbert-series", series_failures));

    match orbit_count(spec, m, opts.max_cells) {
        Ok(orbits) => {
            counts.orbits = Some(orbits);
            let mut failures = Vec::new();
            if orbits != count as u64 {
                failures.push(format!("orbits {orbits} != basis count {count}"));
            }
            if let Some(fl) = flags {
                if fl != count as u64 {
                    failures.push(format!("flags {fl} != basis count {count}"));
                }
            }
            checks.push(Check::from_result("counting", failures));
        }
        Err(e) => checks.push(Check {
            name: "counting".to_string(),
            status: CheckStatus::Skipped,
            witness: Some(format!("{e}")),
        }),
    }

    VerifyReport {
        case: label,
        checks,
        series: Some(SeriesCmp {
            expected: expected_series.coeffs().to_vec(),
            computed: computed_series.coeffs().to_vec(),
        }),
        counts: Some(counts),
        elapsed_ms: start.elapsed().as_millis(),
    }
}

/// Full verification of the Borel basis at one grid point: polynomiality,
/// invariance, independence, spanning, Hilbert series (three routes),
/// smallest monomials, and the counting bijection.
pub fn verify_borel(field: &Field, m: u32, n: u32, opts: &VerifyOptions) -> VerifyReport {
    let q = field.q();
    let spec = GroupSpec::new(field, n, GroupKind::Borel).unwrap();
    let trunc = TruncationSpec::new(q, m);
    let indices = borel_basis(q, m, n);
    let family = evaluate_family(&indices, &trunc, |idx| idx.evaluate(field));

    // smallest monomials: closed formula vs evaluated minimum, all distinct
    let mut sm_failures = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (idx, p) in indices.iter().zip(&family.exact) {
        match idx.smallest_monomial(q, m) {
            Ok(sm) => {
                if p.min_monomial().ok().as_ref() != Some(&sm) {
                    sm_failures.push(format!("{idx:?}: formula {sm:?} != evaluated minimum"));
                }
                if !seen.insert(sm.exps().to_vec()) {
                    sm_failures.push(format!("{idx:?}: duplicate smallest monomial"));
                }
            }
            Err(e) => sm_failures.push(format!("{idx:?}: {e}")),
        }
    }

    let expected = c_alpha_m(q, m, &vec![1; n as usize]);
    let recursive = f_nm(n, m, q, SeriesMode::Recursive);
    let flags = flag_count(q, m, n);
    let label = CaseLabel {
        p: field.p(),
        e: field.extension_degree(),
        m: Some(m),
        n: Some(n),
        group: "borel".to_string(),
        alpha: Some(vec![1; n as usize]),
    };
    let mut report = verify_candidates(
        label,
        &spec,
        m,
        family,
        expected,
        Some(("recursive series", recursive)),
        Some(flags),
        opts,
    );
    report
        .checks
        .push(Check::from_result("smallest-monomials", sm_failures));
    report
}

/// Conjecture-status verification of the GL_n candidate basis.
pub fn verify_gl(field: &Field, m: u32, n: u32, opts: &VerifyOptions) -> VerifyReport {
    let q = field.q();
    let spec = GroupSpec::new(field, n, GroupKind::Gl).unwrap();
    let trunc = TruncationSpec::new(q, m);
    let candidates = gl_candidate_basis(q, m, n);
    let family = evaluate_family(&candidates, &trunc, |c| c.evaluate(field, m));
    let expected = c_nm_gl(q, m, n);
    let label = CaseLabel {
        p: field.p(),
        e: field.extension_degree(),
        m: Some(m),
        n: Some(n),
        group: "gl".to_string(),
        alpha: Some(vec![n]),
    };
    verify_candidates(label, &spec, m, family, expected, None, None, opts)
}

/// Conjecture-status verification of the parabolic candidate basis for a
/// composition `alpha` of `n`.
pub fn verify_parabolic(
    field: &Field,
    m: u32,
    alpha: &[u32],
    opts: &VerifyOptions,
) -> VerifyReport {
    let q = field.q();
    let n: u32 = alpha.iter().sum();
    let spec = GroupSpec::new(field, n, GroupKind::Parabolic(alpha.to_vec())).unwrap();
    let trunc = TruncationSpec::new(q, m);
    let candidates = parabolic_candidate_basis(q, m, alpha).unwrap();
    let family = evaluate_family(&candidates, &trunc, |c| c.evaluate(field, m));
    let expected = c_alpha_m(q, m, alpha);
    let label = CaseLabel {
        p: field.p(),
        e: field.extension_degree(),
        m: Some(m),
        n: Some(n),
        group: spec.kind.label(),
        alpha: Some(alpha.to_vec()),
    };
    verify_candidates(label, &spec, m, family, expected, None, None, opts)
}

/// Decomposition of the Borel series by flag shape: the indices with a given
/// `beta` must have Hilbert series `t^{e(m,1^n,beta)} [m; beta, m-|beta|]`.
pub fn summand_decomposition_check(q: u64, m: u32, n: u32) -> Result<(), String> {
    let indices = borel_basis(q, m, n);
    let mut by_beta: BTreeMap<Vec<u8>, Vec<u64>> = BTreeMap::new();
    for idx in &indices {
        by_beta
            .entry(idx.beta_assignment(q, m))
            .or_default()
            .push(idx.degree(q));
    }
    let alpha = vec![1u32; n as usize];
    let mut total = TSeries::zero();
    for (beta, degrees) in &by_beta {
        let beta_u32: Vec<u32> = beta.iter().map(|&b| b as u32).collect();
        let size: u32 = beta_u32.iter().sum();
        if size > m {
            return Err(format!("beta {beta:?} exceeds budget m={m}"));
        }
        let mut parts = beta_u32.clone();
        parts.push(m - size);
        let expected = TSeries::monomial(1, e_exponent(q, m, &alpha, &beta_u32))
            .mul(&qt_multinomial(m, &parts, q).map_err(|e| e.to_string())?);
        let got = hilbert_of_degrees(degrees.iter().copied());
        if got != expected {
            return Err(format!(
                "beta {beta:?}: part series {got} != summand {expected}"
            ));
        }
        total = total.add(&expected);
    }
    let full = f_nm(n, m, q, SeriesMode::Direct);
    if total != full {
        return Err(format!("summand total {total} != full series {full}"));
    }
    Ok(())
}

/// Uniform sparse polynomial: at most 8 terms, total degree at most q^2.
fn random_poly(field: &Field, nvars: usize, rng: &mut ChaCha8Rng) -> MPoly {
    let q = field.q();
    let max_deg = (q * q).min(16) as u32;
    let terms = rng.gen_range(1..=8);
    let mut p = MPoly::zero(field, nvars);
    for _ in 0..terms {
        let mut budget = rng.gen_range(0..=max_deg);
        let mut exps = vec![0u32; nvars];
        for (i, e) in exps.iter_mut().enumerate() {
            let take = if i + 1 == nvars {
                budget
            } else {
                rng.gen_range(0..=budget)
            };
            *e = take;
            budget -= take;
        }
        let coeff = field.element_from_index(rng.gen_range(0..q));
        p = p.add(&MPoly::from_terms(field, nvars, vec![(exps, coeff)]));
    }
    p
}

/// Operator-identity suite for one field: the closed form of the iterated
/// operator, the composition rule, vanishing of consecutive applications,
/// the Frobenius-shift specialization on shifted basis elements, invariance
/// of raised Dickson monomials, and the q-th power structure of lowest
/// slices of oracle invariants.
pub fn verify_identities(field: &Field, opts: &VerifyOptions) -> VerifyReport {
    let start = Instant::now();
    let q = field.q();
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut checks = Vec::new();

    // iterated operator vs closed form on monomial inputs
    {
        let mut failures = Vec::new();
        for r in 0..=2usize {
            for h in 1..=2usize {
                for b in 0..=3u32 {
                    let inputs: Vec<MPoly> = if r == 0 {
                        vec![MPoly::one(field, 0)]
                    } else {
                        let mut v = vec![MPoly::var_pow(field, r, 0, (q - 1) as u32)];
                        if r == 2 {
                            v.push(
                                MPoly::var(field, 2, 0).mul(&MPoly::var_pow(field, 2, 1, q as u32)),
                            );
                        }
                        v
                    };
                    for f in inputs {
                        let rf = RationalFn::from_poly(f.clone());
                        let lhs = delta_pow(field, r + 1, b, h, &rf).unwrap();
                        let rhs = delta_closed_form(field, r, b, h, &rf).unwrap();
                        if !lhs.eq(&rhs) {
                            failures.push(format!("r={r} h={h} b={b} f={f}"));
                        }
                    }
                }
            }
        }
        checks.push(Check::from_result("iterated-closed-form", failures));
    }

    // composition rule: worked examples plus randomized small inputs
    {
        let mut failures = Vec::new();
        let one1 = MPoly::one(field, 1);
        let cases: Vec<(usize, usize, usize, usize, MPoly, MPoly)> = vec![
            (1, 1, 1, 1, one1.clone(), one1.clone()),
            (
                2,
                1,
                1,
                1,
                one1.clone(),
                dickson(field, 1, 0).unwrap().extend_vars(2),
            ),
        ];
        for (r, s, k, h, f, g) in cases {
            match composite_delta_check(field, r, s, k, h, 1, &f, &g) {
                Ok(chk) if chk.holds => {}
                Ok(chk) => failures.push(format!(
                    "(r,s,k,h)=({r},{s},{k},{h}): {} != {}",
                    chk.lhs, chk.rhs
                )),
                Err(e) => failures.push(format!("(r,s,k,h)=({r},{s},{k},{h}): {e}")),
            }
        }
        for (r, s, k, h) in [(1usize, 1usize, 1usize, 1usize), (2, 1, 1, 1)] {
            for _ in 0..2 {
                let f = random_poly(field, s, &mut rng);
                let g = random_poly(field, r, &mut rng);
                match composite_delta_check(field, r, s, k, h, 1, &f, &g) {
                    Ok(chk) if chk.holds => {}
                    Ok(_) => {
                        failures.push(format!("random (r,s,k,h)=({r},{s},{k},{h}) f={f} g={g}"))
                    }
                    Err(e) => failures.push(format!("{e}")),
                }
            }
        }
        checks.push(Check::from_result("composite-rule", failures));
    }

    // two consecutive applications vanish
    {
        let mut failures = Vec::new();
        for s in 0..=2usize {
            for trial in 0..10 {
                let f = random_poly(field, s, &mut rng);
                let first = delta(field, s + 1, 2, &RationalFn::from_poly(f.clone())).unwrap();
                let second = delta(field, s + 2, 2, &first).unwrap();
                if !second.is_zero() {
                    failures.push(format!("s={s} trial={trial} f={f}"));
                }
            }
        }
        checks.push(Check::from_result("consecutive-deltas-vanish", failures));
    }

    // Frobenius-shift specialization: shifted basis elements restrict to
    // q-th powers at x_1 = 0
    {
        let mut failures = Vec::new();
        for gp in default_grid() {
            if gp.p != field.p() || gp.e != field.extension_degree() {
                continue;
            }
            if gp.m < 1 || gp.n < 2 {
                continue;
            }
            for idx in borel_basis(q, gp.m - 1, gp.n - 1) {
                let shifted = idx.phi();
                let y = match idx.evaluate(field) {
                    Ok(p) => p,
                    Err(e) => {
                        failures.push(format!("{idx:?}: {e}"));
                        continue;
                    }
                };
                let py = match shifted.evaluate(field) {
                    Ok(p) => p,
                    Err(e) => {
                        failures.push(format!("{shifted:?}: {e}"));
                        continue;
                    }
                };
                if py.substitute_zero_drop(0) != y.pow(q) {
                    failures.push(format!("{idx:?} at (m,n)=({},{})", gp.m, gp.n));
                }
            }
        }
        checks.push(Check::from_result(
            "frobenius-shift-specialization",
            failures,
        ));
    }

    // raising a rank-s invariant gives a GL_n-invariant modulo truncation
    {
        let mut failures = Vec::new();
        let m = if q == 2 { 2 } else { 1 };
        let trunc = TruncationSpec::new(q, m);
        for s in 0..=2u32 {
            for n in (s + 1)..=3.min(s + 2) {
                let spec = GroupSpec::new(field, n, GroupKind::Gl).unwrap();
                let mut inputs = vec![MPoly::one(field, s as usize)];
                for i in 0..s as usize {
                    inputs.push(dickson(field, s as usize, i).unwrap());
                }
                for f in inputs {
                    let raised = delta_pow(
                        field,
                        s as usize + 1,
                        m,
                        (n - s) as usize,
                        &RationalFn::from_poly(f.clone()),
                    )
                    .and_then(|r| {
                        r.as_poly()
                            .map_err(|_| invariants::InvError::NotPolynomial {
                                context: format!("raised {f}"),
                            })
                    });
                    match raised {
                        Ok(p) => {
                            if !is_invariant(&p.truncate(&trunc), &spec, &trunc) {
                                failures.push(format!("s={s} n={n} f={f}"));
                            }
                        }
                        Err(e) => failures.push(format!("s={s} n={n} f={f}: {e}")),
                    }
                }
            }
        }
        checks.push(Check::from_result("raised-invariants", failures));
    }

    // lowest x_1-slice of an oracle invariant of small x_1-degree is a q-th
    // power (all slice exponents divisible by q)
    {
        let mut failures = Vec::new();
        for gp in default_grid() {
            if gp.p != field.p() || gp.e != field.extension_degree() {
                continue;
            }
            if gp.m < 1 || gp.n < 2 {
                continue;
            }
            let spec = GroupSpec::new(field, gp.n, GroupKind::Borel).unwrap();
            let dims = match oracle_dims(&spec, gp.m, opts) {
                Ok(d) => d,
                Err(e) => {
                    failures.push(format!("oracle at (m,n)=({},{}): {e}", gp.m, gp.n));
                    continue;
                }
            };
            let qm_minus_1 = q_pow(q, gp.m) - 1;
            for data in dims.values() {
                for inv in &data.basis {
                    let min_x1 = inv
                        .terms()
                        .map(|(mono, _)| mono.exps()[0] as u64)
                        .min()
                        .unwrap_or(0);
                    if min_x1 >= qm_minus_1 {
                        continue;
                    }
                    let divisible = inv
                        .terms()
                        .filter(|(mono, _)| mono.exps()[0] as u64 == min_x1)
                        .all(|(mono, _)| {
                            mono.exps()[1..]
                                .iter()
                                .all(|&e| (e as u64).is_multiple_of(q))
                        });
                    if !divisible {
                        failures.push(format!(
                            "(m,n)=({},{}) invariant {inv} has a non-q-power slice",
                            gp.m, gp.n
                        ));
                    }
                }
            }
        }
        checks.push(Check::from_result("qth-power-slices", failures));
    }

    VerifyReport {
        case: CaseLabel {
            p: field.p(),
            e: field.extension_degree(),
            m: None,
            n: None,
            group: "identities".to_string(),
            alpha: None,
        },
        checks,
        series: None,
        counts: None,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn borel_small_case_passes() {
        let field = Field::new(2, 1).unwrap();
        let report = verify_borel(&field, 1, 2, &VerifyOptions::default());
        assert!(report.passed(), "{}", report.to_json());
        let counts = report.counts.as_ref().unwrap();
        assert_eq!(counts.basis, 3);
        assert_eq!(counts.orbits, Some(3));
        assert_eq!(counts.flags, Some(3));
        let series = report.series.as_ref().unwrap();
        assert_eq!(series.expected, vec![1, 1, 1]);
        assert_eq!(series.computed, vec![1, 1, 1]);
    }

    #[test]
    fn borel_trivial_truncation_passes() {
        let field = Field::new(3, 1).unwrap();
        let report = verify_borel(&field, 0, 2, &VerifyOptions::default());
        assert!(report.passed(), "{}", report.to_json());
        assert_eq!(report.counts.as_ref().unwrap().basis, 1);
    }

    #[test]
    fn gl_small_case_passes() {
        let field = Field::new(2, 1).unwrap();
        let report = verify_gl(&field, 1, 2, &VerifyOptions::default());
        assert!(report.passed(), "{}", report.to_json());
    }

    #[test]
    fn parabolic_reduces_to_borel_and_gl() {
        let field = Field::new(2, 1).unwrap();
        let opts = VerifyOptions::default();
        let para_fine = verify_parabolic(&field, 1, &[1, 1], &opts);
        let borel = verify_borel(&field, 1, 2, &opts);
        assert_eq!(para_fine.passed(), borel.passed());
        let para_whole = verify_parabolic(&field, 1, &[2], &opts);
        let gl = verify_gl(&field, 1, 2, &opts);
        assert_eq!(para_whole.passed(), gl.passed());
    }

    #[test]
    fn summand_decomposition_small() {
        assert_eq!(summand_decomposition_check(2, 1, 2), Ok(()));
        assert_eq!(summand_decomposition_check(2, 2, 2), Ok(()));
    }

    #[test]
    fn identities_suite_passes_q2() {
        let field = Field::new(2, 1).unwrap();
        let report = verify_identities(&field, &VerifyOptions::default());
        assert!(report.passed(), "{}", report.to_json());
    }

    #[test]
    fn reports_deterministic_for_seed() {
        let field = Field::new(2, 1).unwrap();
        let opts = VerifyOptions {
            seed: 42,
            ..VerifyOptions::default()
        };
        let a = verify_identities(&field, &opts);
        let b = verify_identities(&field, &opts);
        let strip = |r: &VerifyReport| {
            r.checks
                .iter()
                .map(|c| (c.name.clone(), c.status, c.witness.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(strip(&a), strip(&b));
    }

    #[test]
    fn cache_roundtrip_stable() {
        let field = Field::new(2, 1).unwrap();
        let dir = std::env::temp_dir().join(format!("qmn-cache-test-{}", std::process::id()));
        let opts_cached = VerifyOptions {
            cache_dir: Some(dir.clone()),
            ..VerifyOptions::default()
        };
        let fresh = verify_borel(&field, 2, 2, &VerifyOptions::default());
        let first = verify_borel(&field, 2, 2, &opts_cached);
        let second = verify_borel(&field, 2, 2, &opts_cached);
        assert!(fresh.passed() && first.passed() && second.passed());
        let strip = |r: &VerifyReport| {
            (
                r.checks
                    .iter()
                    .map(|c| (c.name.clone(), c.status))
                    .collect::<Vec<_>>(),
                r.series.as_ref().map(|s| s.computed.clone()),
            )
        };
        assert_eq!(strip(&fresh), strip(&first));
        assert_eq!(strip(&first), strip(&second));
        let _ = fs::remove_dir_all(dir);
    }
}
