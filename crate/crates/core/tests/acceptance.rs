//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Some published statements disagree with the computation; those criteria
//! are evaluated as stated and listed in `KNOWN_FAILING` with the reason.
//! The process exits nonzero only on a failure outside that list.

mod common;

use std::process::ExitCode;

use common::*;
use lorentz_harmonic::algebra::einstein_factor;
use lorentz_harmonic::catalog::{
    claims_for, random_admissible, rational_witnesses, CaseParams, ClaimKind, ClaimRecord,
};
use lorentz_harmonic::harmonicity::{defines_harmonic_map, energy_density, is_parallel};
use lorentz_harmonic::linalg::Matrix;
use lorentz_harmonic::verifier::{
    brute_force_critical_scan, run_full_verification, verify_claim, GridSpec, Verdict, VerifyConfig,
};
use lorentz_harmonic::{InvariantVector, MetricLieAlgebra, Scalar, Tolerance};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const KNOWN_FAILING: &[(u8, &str)] = &[
    (
        2,
        "the published connection table omits nabla_{e2}e1 = -3e2 and nabla_{e2}e2 = 3e1",
    ),
    (
        3,
        "cases 1, 4, 8, 10, 11: the stated eigenvalue or eigenvector does not match the Laplacian",
    ),
    (
        5,
        "case (4): the Laplacian is -A^2 V, so no field in span(e1, e2) is harmonic at A = B",
    ),
    (
        6,
        "rows (4) and (16) of the energy tables disagree with the computed density",
    ),
    (
        7,
        "the grid scan finds critical directions outside the stated one-dimensional families",
    ),
];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(42 ^ (stream << 32))
}

fn claim(case: u8, kind: ClaimKind, source: Option<&str>) -> &'static ClaimRecord {
    claims_for(case)
        .unwrap()
        .iter()
        .find(|c| c.kind == kind && source.is_none_or(|s| c.source == s))
        .unwrap_or_else(|| panic!("case {case} has no {} claim", kind.name()))
}

fn einstein_certification() -> Outcome {
    let mut rng = rng(1);
    let mut failures = Vec::new();
    let mut count = 0;
    let mut worst = 0.0f64;
    for case in 1..=16u8 {
        let mut draws = rational_witnesses(case).unwrap();
        for _ in 0..10 {
            draws.push(random_admissible(case, &mut rng, &[]).unwrap());
        }
        for p in draws {
            let s = sample(&p);
            let e = einstein_factor(s.alg(), &s.conn, &tol());
            let scale = 1.0
                + lorentz_harmonic::algebra::ricci(s.alg(), &s.conn).max_abs()
                + s.alg().metric().max_abs();
            let rel = e.residual() / scale;
            worst = worst.max(rel);
            count += 1;
            if !e.is_einstein() || rel >= 1e-8 {
                failures.push(format!("{p} (relative residual {rel:e})"));
            }
        }
    }
    if failures.is_empty() {
        Outcome::new(
            true,
            format!("{count} algebras Einstein, worst relative residual {worst:e}"),
        )
    } else {
        Outcome::new(false, failures.join("; "))
    }
}

fn connection_regression() -> Outcome {
    let s = sample(&params(4, "A=5, B=3, eps=1"));
    if !s.built.exact {
        return Outcome::new(false, "not evaluated in rational mode");
    }
    // nabla_{e_i} e_j as printed; every other pair is printed as zero.
    let printed: [(usize, usize, [i64; 4]); 4] = [
        (0, 0, [0, -4, 0, 0]),
        (0, 1, [4, 0, 0, 0]),
        (2, 2, [0, 0, 0, 5]),
        (2, 3, [0, 0, 5, 0]),
    ];
    let gamma = s.conn.gamma();
    let mut mismatches = Vec::new();
    for i in 0..4 {
        for j in 0..4 {
            let expected = printed
                .iter()
                .find(|(a, b, _)| (*a, *b) == (i, j))
                .map_or([0; 4], |(_, _, v)| *v);
            let got = InvariantVector::new(gamma.fibre(i, j).to_vec());
            if got != InvariantVector::from_ints(&expected) {
                mismatches.push(format!(
                    "nabla_e{} e{} = {got}, printed {expected:?}",
                    i + 1,
                    j + 1
                ));
            }
        }
    }
    if mismatches.is_empty() {
        Outcome::new(true, "all 16 components match exactly")
    } else {
        Outcome::new(false, mismatches.join("; "))
    }
}

fn laplacian_eigenvalues() -> Outcome {
    let witnesses: &[(u8, &str)] = &[
        (1, "A=1, eps=1, del=1"),
        (2, "A=5, B=3, eps=-1, del=1"),
        (3, "A=5, B=3, eps=1"),
        (4, "A=5, B=3, eps=1"),
        (5, "A=3, B=5, eps=1"),
        (6, "A=1, eps=1"),
        (8, "A=1, B=2, eps=-1"),
        (9, "A=1, eps=1"),
        (10, "A=0, B=5, C=3, eps=1"),
        (11, "A=3, eps=-1, del=-1"),
    ];
    let mut ok = Vec::new();
    let mut bad = Vec::new();
    for &(case, p) in witnesses {
        let o = verify_claim(
            claim(case, ClaimKind::Eigenvalue, None),
            &params(case, p),
            &tol(),
        )
        .unwrap();
        if o.verdict == Verdict::Confirmed {
            ok.push(format!("({case})"));
        } else {
            bad.push(format!(
                "({case}) {}: {}",
                o.computed,
                o.detail.unwrap_or_default()
            ));
        }
    }
    let detail = format!("confirmed {}; refuted {}", ok.join(" "), bad.join("; "));
    Outcome::new(bad.is_empty(), detail)
}

fn case7_adjudication() -> Outcome {
    let c = claims_for(7)
        .unwrap()
        .iter()
        .find(|c| c.kind == ClaimKind::Eigenvalue && c.is_conflicting())
        .unwrap();
    let o = verify_claim(c, &params(7, "A=1, B=10"), &tol()).unwrap();
    let lambda_ok = o.computed == "lambda = 69" || o.computed == "lambda = 129";
    let pass = o.verdict == Verdict::ConflictingResolved && o.matched.len() == 1 && lambda_ok;
    Outcome::new(pass, format!("{}, matched {:?}", o.computed, o.matched))
}

fn harmonic_map_at(p: &CaseParams, v: &InvariantVector) -> bool {
    let s = sample(p);
    defines_harmonic_map(s.alg(), &s.conn, v, &tol())
        .unwrap()
        .holds
}

fn harmonic_map_thresholds() -> Outcome {
    let mut rng = rng(5);
    let mut notes = Vec::new();
    let mut pass = true;
    let mut record = |ok: bool, what: String| {
        pass &= ok;
        notes.push(format!("{what}: {}", if ok { "ok" } else { "FAIL" }));
    };

    for (case, on, off_family) in [
        (
            2u8,
            "A=1, B=-1, eps=-1, del=1",
            vec![[0i64, 1, 1, -1], [0, 2, 2, -2]],
        ),
        (4, "A=1, B=1, eps=1", vec![[1, 0, 0, 0], [1, 2, 0, 0]]),
    ] {
        let p = params(case, on);
        let at = off_family
            .iter()
            .all(|v| harmonic_map_at(&p, &InvariantVector::from_ints(v)));
        record(at, format!("({case}) true at {on}"));
        let pins = claim(case, ClaimKind::HarmonicMapThreshold, None).pins();
        let off = (0..5).all(|_| {
            let q = random_admissible(case, &mut rng, &pins).unwrap();
            off_family.iter().all(|v| {
                !harmonic_map_at(
                    &q,
                    &InvariantVector::from_ints(v).to_mode(lorentz_harmonic::Mode::Float),
                )
            })
        });
        record(off, format!("({case}) false off threshold"));
    }

    let p14 = rational_witnesses(14).unwrap().remove(0);
    let iff = (0..10).all(|k| {
        let [a, b, c] = [0; 3].map(|_| rng.random_range(-4i64..=4));
        let d = if k % 2 == 0 {
            -c
        } else {
            rng.random_range(-4i64..=4)
        };
        harmonic_map_at(&p14, &InvariantVector::from_ints(&[a, b, c, d])) == (c + d == 0)
    });
    record(iff, "(14) true iff c = -d".into());

    let all15 = (0..20).all(|_| {
        let q = random_admissible(15, &mut rng, &[]).unwrap();
        harmonic_map_at(&q, &random_vector(&mut rng, false))
    });
    record(all15, "(15) true for 20 random draws".into());
    Outcome::new(pass, notes.join("; "))
}

fn energy_tables() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    let mut rng = rng(6);
    for case in [4u8, 12, 14, 15, 16] {
        let c = claim(case, ClaimKind::EnergyFormula, Some("energy table"));
        let mut points = rational_witnesses(case).unwrap();
        points.push(random_admissible(case, &mut rng, &c.pins()).unwrap());
        let refuted: Vec<String> = points
            .iter()
            .map(|p| verify_claim(c, p, &tol()).unwrap())
            .filter(|o| o.verdict != Verdict::Confirmed)
            .map(|o| o.detail.unwrap_or(o.computed))
            .collect();
        pass &= refuted.is_empty();
        notes.push(match refuted.first() {
            None => format!("row ({case}) ok"),
            Some(d) => format!("row ({case}) FAIL: {d}"),
        });
    }
    let g = Matrix::diag(&[1, 1, 1, -1].map(Scalar::int));
    let flat = MetricLieAlgebra::abelian(g);
    let conn = lorentz_harmonic::algebra::koszul_connection(&flat).unwrap();
    let two = (0..5).all(|_| {
        energy_density(&flat, &conn, &random_vector(&mut rng, true)).unwrap() == Scalar::int(2)
    });
    pass &= two;
    notes.push(format!(
        "abelian baseline {}",
        if two { "exactly 2" } else { "FAIL" }
    ));
    Outcome::new(pass, notes.join("; "))
}

fn brute_force_agreement() -> Outcome {
    let mut notes = Vec::new();
    let mut pass = true;
    for case in [1u8, 6, 9, 11] {
        let p = rational_witnesses(case).unwrap().remove(0);
        let s = sample(&p);
        let scan =
            brute_force_critical_scan(s.alg(), &s.conn, &GridSpec::default(), &tol()).unwrap();
        let c = claim(case, ClaimKind::CriticalFamily, None);
        let gens: Vec<Vec<f64>> = c.variants[0]
            .family
            .generators(&p)
            .unwrap()
            .iter()
            .map(|g| g.iter().map(Scalar::to_f64).collect())
            .collect();
        let angle = scan.subspace.angle_to(&gens);
        let ok = scan.subspace.rank == 1 && angle.is_some_and(|a| a < 1e-6);
        pass &= ok;
        let clusters: Vec<String> = scan
            .clusters
            .iter()
            .map(|k| match k.lambda {
                Some(l) => format!("lambda {l}: rank {}", k.subspace.rank),
                None => format!("{:?}: rank {}", k.kind, k.subspace.rank),
            })
            .collect();
        notes.push(format!(
            "({case}) {} critical of {}, fitted rank {}, angle {} [{}]",
            scan.critical_count,
            scan.points_evaluated,
            scan.subspace.rank,
            angle.map_or("n/a".into(), |a| format!("{a:.2e}")),
            clusters.join(", ")
        ));
    }
    Outcome::new(pass, notes.join("; "))
}

fn property_suite() -> Outcome {
    const TRIALS: usize = 100;
    let mut rng = rng(8);
    let mut failures = Vec::new();
    let mut note = |name: &str, t: usize, r: Result<(), String>| {
        if let Err(e) = r {
            failures.push(format!("{name} trial {t}: {e}"));
        }
    };
    for t in 0..TRIALS {
        let p = trial_params(t, &mut rng);
        let s = sample(&p);
        let exact = s.built.exact;
        let [x, y, z, w] = [0; 4].map(|_| random_vector(&mut rng, exact));
        note("torsion", t, torsion_free(&s));
        note("metric compatibility", t, metric_compatible(&s));
        note(
            "curvature symmetries",
            t,
            curvature_symmetries(&s, &x, &y, &z, &w),
        );
        let k = Scalar::int(rng.random_range(-7..=7));
        note("Laplacian linearity", t, laplacian_linear(&s, &x, &y, &k));
        let change = random_basis_change(&mut rng);
        note("basis change", t, basis_invariant(&s, &change, &x));
        note("implication chain", t, implications_hold(&s, &x));
        note(
            "implication chain on u",
            t,
            implications_hold(&s, &null_u()),
        );
    }
    if failures.is_empty() {
        Outcome::new(
            true,
            format!("{TRIALS} trials x 7 properties, zero failures"),
        )
    } else {
        Outcome::new(false, failures.join("; "))
    }
}

fn parallel_null_field() -> Outcome {
    let s = sample(&rational_witnesses(14).unwrap().remove(0));
    let c = is_parallel(s.alg(), &s.conn, &null_u(), &tol()).unwrap();
    let pass = s.built.exact && c.holds && c.residual == 0.0;
    Outcome::new(
        pass,
        format!("rational mode {}, defect {}", s.built.exact, c.residual),
    )
}

fn determinism() -> Outcome {
    let config = VerifyConfig {
        seed: 42,
        ..VerifyConfig::default()
    };
    let a = run_full_verification(&config).unwrap().to_json();
    let b = run_full_verification(&config).unwrap().to_json();
    Outcome::new(a == b, format!("{} bytes, identical: {}", a.len(), a == b))
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 10] = [
        (1, einstein_certification),
        (2, connection_regression),
        (3, laplacian_eigenvalues),
        (4, case7_adjudication),
        (5, harmonic_map_thresholds),
        (6, energy_tables),
        (7, brute_force_agreement),
        (8, property_suite),
        (9, parallel_null_field),
        (10, determinism),
    ];
    let mut unexpected = 0;
    for (n, run) in criteria {
        let o = run();
        let known = KNOWN_FAILING.iter().find(|(k, _)| *k == n);
        println!(
            "criterion {n}: {} {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.detail
        );
        match (o.pass, known) {
            (false, Some((_, why))) => println!("  known disagreement: {why}"),
            (false, None) => unexpected += 1,
            (true, Some(_)) => println!("  note: listed as known-failing but passed"),
            (true, None) => {}
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
