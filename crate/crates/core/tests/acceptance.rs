//! Acceptance suite: one test per verified claim, each printing a
//! pass/fail line (visible with `cargo test -- --nocapture`). All
//! comparisons are exact; the only tolerance is the 1e-10 bound on
//! matrix-realization residuals.

use minmod::algebra::Flavor;
use minmod::bsa::{bsa_ns, calibrate};
use minmod::rational::{rat, rat_int};
use minmod::verify::{
    all_pass, check_bsa_ns, check_bsa_vir, check_characters, check_fusion_ns,
    check_fusion_poly_law, check_fusion_vir, check_gram, check_reprings, check_singular,
    first_failure, Check,
};
use minmod::verma::{central_charge, degenerate_point};
use std::time::Instant;

fn report(criterion: &str, started: Instant, budget_secs: u64, checks: &[Check]) {
    let pass = all_pass(checks);
    let elapsed = started.elapsed();
    println!(
        "acceptance {criterion}: {} ({} checks, {:.2?})",
        if pass { "PASS" } else { "FAIL" },
        checks.len(),
        elapsed
    );
    if let Some(c) = first_failure(checks) {
        panic!("criterion {criterion} failed at {}: {}", c.name, c.detail);
    }
    assert!(
        elapsed.as_secs() < budget_secs,
        "criterion {criterion} exceeded its {budget_secs}s budget: {elapsed:.2?}"
    );
}

/// 1. Virasoro singular vectors: kernel dimension exactly 1 at h = m^2/4
/// for m = 1..8 (levels 2..9), dimension 0 at 20 generic weights per level.
#[test]
fn criterion_1_virasoro_singular_vectors() {
    let t = Instant::now();
    let labels: Vec<u32> = (1..=8).collect();
    let checks = check_singular(Flavor::Virasoro, &labels, 20).unwrap();
    report("1 (vir singular)", t, 10, &checks);
}

/// 2. BSA Virasoro calibration: bsa_vir_c1(q) matches the solver vector
/// projectively under L -> -L for q = 2..8.
#[test]
fn criterion_2_bsa_virasoro_calibration() {
    let t = Instant::now();
    let checks = check_bsa_vir(2..=8).unwrap();
    report("2 (bsa vir)", t, 10, &checks);
}

/// 3. Fusion-polynomial law for all m,n <= 6: exact root multisets and
/// projective agreement with the density-module oracle.
#[test]
fn criterion_3_fusion_polynomial_law() {
    let t = Instant::now();
    let checks = check_fusion_poly_law(6).unwrap();
    report("3 (fusion polys)", t, 30, &checks);
}

/// 4. Virasoro fusion theorem for all m,n <= 8, plus ring axioms and the
/// Rep(sl2) isomorphism.
#[test]
fn criterion_4_virasoro_fusion_theorem() {
    let t = Instant::now();
    let checks = check_fusion_vir(8).unwrap();
    report("4 (vir fusion ring)", t, 30, &checks);
}

/// 5. NS singular vectors: kernel dimension 1 at (3/2, (q-1)^2/8, q/2)
/// for odd q = 3,5,7,9.
#[test]
fn criterion_5_ns_singular_vectors() {
    let t = Instant::now();
    let checks = check_singular(Flavor::Ns, &[3, 5, 7, 9], 0).unwrap();
    report("5 (ns singular)", t, 60, &checks);
}

/// 6. NS fusion channels and parity split for all odd q,r <= 9, plus the
/// combined channel set and the Rep(osp(1|2)) isomorphism.
#[test]
fn criterion_6_ns_fusion_channels() {
    let t = Instant::now();
    let checks = check_fusion_ns(9).unwrap();
    report("6 (ns fusion ring)", t, 60, &checks);
}

/// 7. Character identities for V_L and V_{L+1/2} to order q^20, exact
/// integer equality, with the derived spot values.
#[test]
fn criterion_7_character_identities() {
    let t = Instant::now();
    let checks = check_characters(20).unwrap();
    report("7 (characters)", t, 5, &checks);
}

/// 8. Gram degeneracy: det = 0 at the degenerate weights (vir m = 1..4,
/// ns q = 3,5), nonzero at 10 generic weights per level.
#[test]
fn criterion_8_gram_degeneracy() {
    let t = Instant::now();
    let mut checks = check_gram(Flavor::Virasoro, &[1, 2, 3, 4], 10).unwrap();
    checks.extend(check_gram(Flavor::Ns, &[3, 5], 10).unwrap());
    report("8 (gram spots)", t, 60, &checks);
}

/// 9. Representation rings: osp_tensor equals the weight-peeling oracle
/// for i,j <= 3; relation residuals < 1e-10 for osp j <= 3 and sl2
/// labels <= 8; CG columns orthonormal.
#[test]
fn criterion_9_representation_rings() {
    let t = Instant::now();
    let checks = check_reprings().unwrap();
    report("9 (rep rings)", t, 5, &checks);
}

/// 10. NS BSA calibration is deterministic; when no convention map in the
/// fixed family matches (the q=3 situation), the suite still passes on
/// solver-derived results and the report flags the discrepancy.
#[test]
fn criterion_10_ns_bsa_calibration_report() {
    let t = Instant::now();
    let mut checks = check_bsa_ns(&[1, 3, 5, 7]).unwrap();

    // the q=3 report must actually flag the known mismatch
    let cand = bsa_ns(3).unwrap();
    let c = central_charge(Flavor::Ns);
    let (h, level2) = degenerate_point(Flavor::Ns, 3).unwrap();
    let rep = calibrate(&cand, Flavor::Ns, &c, &h, level2).unwrap();
    checks.push(Check {
        name: "bsa[ns] q=3 flags discrepancy".into(),
        pass: rep.matched_maps().is_empty() && rep.solver_dim == 1,
        detail: format!("matched maps: {:?}", rep.matched_maps()),
    });
    // and q=1 does match identically, so the report is not trivially empty
    let cand = bsa_ns(1).unwrap();
    let rep = calibrate(&cand, Flavor::Ns, &c, &rat_int(0), 1).unwrap();
    let id = rep.maps.iter().find(|m| m.name == "identity").unwrap();
    checks.push(Check {
        name: "bsa[ns] q=1 identity match".into(),
        pass: id.matched && id.ratio == Some(rat(1, 1)),
        detail: format!("ratio {:?}", id.ratio),
    });
    report("10 (bsa ns report)", t, 5, &checks);
}
