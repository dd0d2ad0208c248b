//! Catalog integrity and the JSON interchange format.

mod common;

use common::*;
use lorentz_harmonic::algebra::{einstein_factor, koszul_connection};
use lorentz_harmonic::catalog::{
    build_case, build_case_as_printed, cases, claims_for, rational_witnesses,
};
use lorentz_harmonic::format::{algebra_to_json, catalog_json, parse_algebra};
use lorentz_harmonic::harmonicity::rough_laplacian;
use lorentz_harmonic::{Error, InvariantVector, Tolerance};

#[test]
fn every_case_has_claims_and_valid_witnesses() {
    let tol = Tolerance::default();
    assert_eq!(cases().len(), 16);
    for def in cases() {
        assert!(!claims_for(def.id).unwrap().is_empty(), "case {}", def.id);
        for w in rational_witnesses(def.id).unwrap() {
            let built = build_case(&w).unwrap();
            assert!(built.working.validate(&tol).is_empty(), "{w}");
            let conn = koszul_connection(&built.working).unwrap();
            assert!(
                einstein_factor(&built.working, &conn, &tol).is_einstein(),
                "{w}"
            );
        }
    }
}

#[test]
fn claim_ids_are_unique_and_numbered_by_case() {
    let mut seen = std::collections::HashSet::new();
    for def in cases() {
        for c in claims_for(def.id).unwrap() {
            assert!(c.id.starts_with(&format!("{}.", def.id)), "{}", c.id);
            assert!(seen.insert(c.id.clone()), "duplicate {}", c.id);
        }
    }
}

#[test]
fn corrected_cases_differ_from_the_printed_table_only_where_noted() {
    let tol = Tolerance::default();
    for def in cases() {
        let w = rational_witnesses(def.id).unwrap().remove(0);
        let printed = build_case_as_printed(&w).unwrap();
        if def.correction.is_some() {
            // The printed brackets fail Jacobi or the Einstein condition.
            let bad_jacobi = !printed.working.validate(&tol).is_empty();
            let bad_einstein = !bad_jacobi && {
                let conn = koszul_connection(&printed.working).unwrap();
                !einstein_factor(&printed.working, &conn, &tol).is_einstein()
            };
            assert!(bad_jacobi || bad_einstein, "case {}", def.id);
        } else {
            assert_eq!(
                printed.working,
                build_case(&w).unwrap().working,
                "case {}",
                def.id
            );
        }
    }
}

#[test]
fn algebra_json_round_trip() {
    let tol = Tolerance::default();
    for case in [4u8, 10, 14] {
        let s = sample(&rational_witnesses(case).unwrap().remove(0));
        let back = parse_algebra(&algebra_to_json(s.alg()), &tol).unwrap();
        assert_eq!(&back, s.alg(), "case {case}");
        let conn = koszul_connection(&back).unwrap();
        let v = InvariantVector::from_ints(&[1, -1, 2, 3]);
        assert_eq!(
            rough_laplacian(&back, &conn, &v).unwrap(),
            rough_laplacian(s.alg(), &s.conn, &v).unwrap()
        );
    }
}

#[test]
fn jacobi_violation_is_reported() {
    // [e1,e2] = e3, [e2,e3] = e2 and [e1,e3] = 0 break Jacobi.
    let src = r#"{ "dim": 3, "metric": [[1,0,0],[0,1,0],[0,0,-1]],
        "brackets": [{ "i": 1, "j": 2, "coeffs": [0, 0, 1] },
                     { "i": 2, "j": 3, "coeffs": [0, 1, 0] }] }"#;
    match parse_algebra(src, &Tolerance::default()) {
        Err(Error::MalformedAlgebra(msg)) => assert!(msg.to_lowercase().contains("jacobi"), "{msg}"),
        other => panic!("expected a Jacobi violation, got {other:?}"),
    }
}

#[test]
fn degenerate_metric_is_reported() {
    let src = r#"{ "dim": 2, "metric": [[1,1],[1,1]] }"#;
    assert!(matches!(
        parse_algebra(src, &Tolerance::default()),
        Err(Error::DegenerateMetric { .. })
    ));
}

#[test]
fn catalog_export_lists_every_claim() {
    let v = catalog_json().unwrap();
    let total: usize = cases()
        .iter()
        .map(|d| claims_for(d.id).unwrap().len())
        .sum();
    assert_eq!(v["claims"].as_array().unwrap().len(), total);
    assert_eq!(v["cases"].as_array().unwrap().len(), 16);
    let corrected: Vec<u64> = v["cases"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["correction"].is_null())
        .map(|c| c["case"].as_u64().unwrap())
        .collect();
    assert_eq!(corrected, [12, 15]);
}
