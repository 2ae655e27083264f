//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//! Everything is exact arithmetic; no tolerances anywhere.
//!
//! Grid: q=2 with m <= 3, n <= 3; q=3 with m <= 2, n <= 2; q=4 (the quartic
//! extension field) with m = 1, n <= 2.

use qmn::basis::{borel_basis, delta_compatible, dickson_monomial_degree, nabla};
use qmn::gf::Field;
use qmn::groups::{invariant_dims, GroupKind, GroupSpec};
use qmn::harness::{
    default_grid, summand_decomposition_check, verify_borel, verify_gl, verify_identities,
    verify_parabolic, CheckStatus, GridPoint, VerifyOptions, VerifyReport,
};
use qmn::invariants::{dickson, dickson_from_fundamental, dickson_from_product};
use qmn::mpoly::MPoly;
use qmn::series::{
    c_alpha_m, f_nm, hilbert_of_degrees, hilbert_of_dims, q_pow, qt_binomial, SeriesMode, TSeries,
};

fn field_of(gp: &GridPoint) -> Field {
    Field::new(gp.p, gp.e).unwrap()
}

fn criterion(n: u32, name: &str, ok: bool, detail: &str) {
    println!(
        "criterion {n} ({name}): {}{}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() {
            String::new()
        } else {
            format!(" — {detail}")
        }
    );
    assert!(ok, "criterion {n} ({name}) failed: {detail}");
}

fn check_status(report: &VerifyReport, name: &str) -> bool {
    report
        .checks
        .iter()
        .find(|c| c.name == name)
        .map(|c| c.status == CheckStatus::Pass)
        .unwrap_or(false)
}

#[test]
fn criterion_1_borel_theorem_on_grid() {
    let opts = VerifyOptions::default();
    let mut failures = Vec::new();
    for gp in default_grid() {
        let field = field_of(&gp);
        let report = verify_borel(&field, gp.m, gp.n, &opts);
        for name in [
            "polynomial-evaluation",
            "invariance",
            "linear-independence",
            "spanning",
        ] {
            if !check_status(&report, name) {
                failures.push(format!(
                    "q={} m={} n={}: {name}\n{}",
                    field.q(),
                    gp.m,
                    gp.n,
                    report.to_json()
                ));
            }
        }
    }
    criterion(
        1,
        "Borel basis: invariant, independent, spanning",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

#[test]
fn criterion_2_borel_hilbert_series() {
    let mut failures = Vec::new();
    for gp in default_grid() {
        let field = field_of(&gp);
        let q = field.q();
        let alpha = vec![1u32; gp.n as usize];
        let indices = borel_basis(q, gp.m, gp.n);
        let family = hilbert_of_degrees(indices.iter().map(|y| y.degree(q)));
        let direct = c_alpha_m(q, gp.m, &alpha);
        let recursive = f_nm(gp.n, gp.m, q, SeriesMode::Recursive);
        if family != direct || direct != recursive {
            failures.push(format!(
                "q={q} m={} n={}: family {family}, direct {direct}, recursive {recursive}",
                gp.m, gp.n
            ));
        }
    }
    // pinned values
    if c_alpha_m(2, 1, &[1, 1]).coeffs() != [1, 1, 1] {
        failures.push("q=2 m=1 n=2 is not 1 + t + t^2".to_string());
    }
    if c_alpha_m(2, 2, &[1]).coeffs() != [1, 1, 1, 1] {
        failures.push("q=2 m=2 n=1 is not 1 + t + t^2 + t^3".to_string());
    }
    criterion(
        2,
        "Hilbert series agreement on grid",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

#[test]
fn criterion_3_rank_two_display() {
    // the four-term series display for n=2 at q=2, m=2, against both the
    // composition formula and the oracle dimensions
    let q = 2u64;
    let m = 2u32;
    let qm = q_pow(q, m);
    let geom = TSeries::one_minus_t_pow(qm - 1)
        .exact_div(&TSeries::one_minus_t_pow(q - 1))
        .unwrap();
    let mut display = TSeries::monomial(1, 2 * (qm - 1));
    display = display.add(&TSeries::monomial(1, qm - 1).mul(&geom));
    display = display.add(&TSeries::monomial(1, qm - q).mul(&geom));
    let last = TSeries::one_minus_t_pow(qm - 1)
        .mul(&TSeries::one_minus_t_pow(qm - q))
        .exact_div(&TSeries::one_minus_t_pow(q - 1))
        .unwrap()
        .exact_div(&TSeries::one_minus_t_pow(q * q - q))
        .unwrap();
    display = display.add(&last);

    let formula = c_alpha_m(q, m, &[1, 1]);
    let field = Field::new(2, 1).unwrap();
    let spec = GroupSpec::new(&field, 2, GroupKind::Borel).unwrap();
    let dims = invariant_dims(&spec, m, 1_000_000).unwrap();
    let oracle = hilbert_of_dims(&dims.iter().map(|(&d, data)| (d, data.dim)).collect());

    let ok = display == formula && formula == oracle;
    criterion(
        3,
        "four-term display = composition formula = oracle",
        ok,
        &format!("display {display}, formula {formula}, oracle {oracle}"),
    );
}

#[test]
fn criterion_4_counting_bijection() {
    let opts = VerifyOptions::default();
    let mut failures = Vec::new();
    for gp in default_grid() {
        let field = field_of(&gp);
        let report = verify_borel(&field, gp.m, gp.n, &opts);
        let counts = report.counts.clone().unwrap();
        let ok = Some(counts.basis) == counts.orbits && Some(counts.basis) == counts.flags;
        if !ok {
            failures.push(format!(
                "q={} m={} n={}: basis={} orbits={:?} flags={:?}",
                field.q(),
                gp.m,
                gp.n,
                counts.basis,
                counts.orbits,
                counts.flags
            ));
        }
        if (gp.p, gp.e, gp.m, gp.n) == (2, 1, 1, 2) && counts.basis != 3 {
            failures.push(format!("(2,1,2) expected 3, got {}", counts.basis));
        }
    }
    criterion(
        4,
        "basis count = orbit count = flag count",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

#[test]
fn criterion_5_identity_suite() {
    let mut failures = Vec::new();
    // operator identities over the prime fields (closed form of the iterate,
    // composition rule, vanishing of consecutive applications, shift
    // specialization, q-th power slices)
    for q in [2u64, 3] {
        let field = Field::new(q, 1).unwrap();
        let report = verify_identities(&field, &VerifyOptions::default());
        if !report.passed() {
            failures.push(format!("identities over F_{q}:\n{}", report.to_json()));
        }
    }
    // smallest-monomial formula matches the evaluated graded-lex minimum for
    // every grid basis element, including the extension field, and the shift
    // specialization holds on the quartic-field grid points
    for gp in default_grid() {
        let field = field_of(&gp);
        let q = field.q();
        for idx in borel_basis(q, gp.m, gp.n) {
            let p = idx.evaluate(&field).unwrap();
            let lm = p.min_monomial().unwrap();
            let formula = idx.smallest_monomial(q, gp.m).unwrap();
            if lm != formula {
                failures.push(format!(
                    "q={q} m={} n={} {idx:?}: minimum {lm:?} != formula {formula:?}",
                    gp.m, gp.n
                ));
            }
        }
        if gp.e > 1 && gp.m >= 1 && gp.n >= 2 {
            for idx in borel_basis(q, gp.m - 1, gp.n - 1) {
                let y = idx.evaluate(&field).unwrap();
                let shifted = idx.phi().evaluate(&field).unwrap();
                if shifted.substitute_zero_drop(0) != y.pow(q) {
                    failures.push(format!("q={q} shift specialization at {idx:?}"));
                }
            }
        }
    }
    criterion(
        5,
        "operator identity suite",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

#[test]
fn criterion_6_dickson_cross_checks() {
    let mut failures = Vec::new();
    for q in [2u64, 3] {
        let field = Field::new(q, 1).unwrap();
        for k in 1..=3usize {
            for s in 0..k {
                let a = dickson(&field, k, s).unwrap();
                let b = dickson_from_fundamental(&field, k, s).unwrap();
                let c = dickson_from_product(&field, k, s).unwrap();
                if a != b || a != c {
                    failures.push(format!("q={q} k={k} s={s}: routes disagree"));
                }
            }
        }
    }
    let f2 = Field::new(2, 1).unwrap();
    let q21 = MPoly::from_terms(
        &f2,
        2,
        vec![
            (vec![2, 0], f2.one()),
            (vec![1, 1], f2.one()),
            (vec![0, 2], f2.one()),
        ],
    );
    let q20 = MPoly::from_terms(&f2, 2, vec![(vec![2, 1], f2.one()), (vec![1, 2], f2.one())]);
    if dickson(&f2, 2, 1).unwrap() != q21 {
        failures.push("q=2 Q_{2,1} mismatch".to_string());
    }
    if dickson(&f2, 2, 0).unwrap() != q20 {
        failures.push("q=2 Q_{2,0} mismatch".to_string());
    }
    criterion(
        6,
        "Dickson invariants by three routes",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

fn compositions_of(n: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions_of(n - first) {
            let mut v = vec![first];
            v.append(&mut rest);
            out.push(v);
        }
    }
    out
}

#[test]
fn criterion_7_conjectural_bases() {
    // conjecture-status reports: expected to pass at q=2 for all m <= 3 and
    // all compositions of n <= 3; a failure is a structured finding
    let field = Field::new(2, 1).unwrap();
    let opts = VerifyOptions::default();
    let mut failures = Vec::new();
    for m in 0..=3u32 {
        for n in 1..=3u32 {
            let gl = verify_gl(&field, m, n, &opts);
            if !gl.passed() {
                failures.push(format!("gl m={m} n={n} finding:\n{}", gl.to_json()));
            }
            for alpha in compositions_of(n) {
                let para = verify_parabolic(&field, m, &alpha, &opts);
                if !para.passed() {
                    failures.push(format!(
                        "parabolic alpha={alpha:?} m={m} finding:\n{}",
                        para.to_json()
                    ));
                }
            }
        }
    }
    // the finest and whole compositions must reproduce the proven and the
    // linear-group reports
    for m in 0..=3u32 {
        for n in 1..=3u32 {
            let borel = verify_borel(&field, m, n, &opts);
            let fine = verify_parabolic(&field, m, &vec![1; n as usize], &opts);
            if borel.passed() != fine.passed() {
                failures.push(format!("alpha=1^{n} m={m} disagrees with the Borel report"));
            }
            let whole = verify_parabolic(&field, m, &[n], &opts);
            let gl = verify_gl(&field, m, n, &opts);
            if whole.passed() != gl.passed() {
                failures.push(format!("alpha=({n}) m={m} disagrees with the GL report"));
            }
        }
    }
    // the graded refinement of the counting series also holds on the grid
    for gp in default_grid() {
        if let Err(e) = summand_decomposition_check(q_of(&gp), gp.m, gp.n) {
            failures.push(format!(
                "summand decomposition q={} m={} n={}: {e}",
                q_of(&gp),
                gp.m,
                gp.n
            ));
        }
    }
    criterion(
        7,
        "conjectural linear-group and parabolic bases",
        failures.is_empty(),
        &failures.join("\n"),
    );
}

fn q_of(gp: &GridPoint) -> u64 {
    gp.p.pow(gp.e as u32)
}

#[test]
fn criterion_8_box_slices_match_binomial() {
    let mut failures = Vec::new();
    for q in [2u64, 3] {
        for m in 0..=3u32 {
            for s in 0..=m.min(3) {
                let nab = nabla(q, m, s);
                let compat = delta_compatible(q, m, s);
                let mut dn: Vec<u64> = nab.iter().map(|e| e.degree(q)).collect();
                let mut dc: Vec<u64> = compat
                    .iter()
                    .map(|e| dickson_monomial_degree(q, s, e))
                    .collect();
                dn.sort();
                dc.sort();
                if dn != dc {
                    failures.push(format!("q={q} m={m} s={s}: degree multisets differ"));
                    continue;
                }
                let hs = hilbert_of_degrees(dn.into_iter());
                let expect = qt_binomial(m, s, q);
                if hs != expect {
                    failures.push(format!("q={q} m={m} s={s}: {hs} != {expect}"));
                }
            }
        }
    }
    criterion(
        8,
        "Schur-slice and compatible-slice Hilbert series",
        failures.is_empty(),
        &failures.join("\n"),
    );
}
