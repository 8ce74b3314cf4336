//! Decision-procedure properties: the per-element test on the witness
//! family over the rationals, certificate soundness hooks, and the
//! rejection behavior of each certificate obligation.

use cealg::ce::{
    ce_certificate_verify, ce_element_test, ce_exhaustive, ce_random_search, CeError, CeStatus,
    Obligation,
};
use cealg::construct;
use cealg::field::FieldSpec;
use cealg::mat::Mat;

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

#[test]
fn witness_generator_passes_over_the_rationals() {
    let q = FieldSpec::Rationals;
    let algebra = construct::witness_algebra(7, q).unwrap();
    // the element with leading parameter 1 and everything else 0
    let a = algebra
        .basis()
        .iter()
        .find(|b| b.get(0, 1).is_one())
        .expect("leading generator")
        .clone();
    let test = ce_element_test(&a, &algebra).unwrap();
    assert!(!test.central);
    assert!(test.passes);
    // the product against the matching central element is the corner unit
    assert!(test.image.contains(&Mat::unit(7, q, 0, 6)));
}

#[test]
fn accepted_certificate_means_no_witness_is_ever_found() {
    // soundness cross-check: after the certificate is accepted, a long
    // randomized search must come up empty
    let (algebra, cert) = construct::witness_certificate(7).unwrap();
    ce_certificate_verify(&algebra, &cert).expect("certificate accepted");
    let verdict = ce_random_search(&algebra, 10_000, 1);
    assert_eq!(verdict.status, CeStatus::Unknown);
    assert!(verdict.witness.is_none());
}

#[test]
fn certificate_rejects_non_central_target() {
    let (algebra, mut cert) = construct::witness_certificate(7).unwrap();
    // replace the corner target by a non-central family element
    cert.target = algebra
        .basis()
        .iter()
        .find(|b| b.get(0, 1).is_one())
        .expect("leading generator")
        .clone();
    match ce_certificate_verify(&algebra, &cert) {
        Err(CeError::CertificateRejected { obligation, .. }) => {
            assert_eq!(obligation, Obligation::TargetCentralNonzero);
        }
        other => panic!("expected a rejection at the target obligation, got {other:?}"),
    }
}

#[test]
fn certificate_rejects_dropped_form() {
    let (algebra, mut cert) = construct::witness_certificate(7).unwrap();
    // dropping the second form leaves a non-central common zero
    cert.forms.pop();
    match ce_certificate_verify(&algebra, &cert) {
        Err(CeError::CertificateRejected { obligation, .. }) => {
            assert_eq!(obligation, Obligation::FormKernelCentral);
        }
        other => panic!("expected a rejection at the kernel obligation, got {other:?}"),
    }
}

#[test]
fn certificate_rejects_zero_target_and_wrong_field() {
    let (algebra, mut cert) = construct::witness_certificate(7).unwrap();
    cert.target = Mat::zero(7, FieldSpec::Rationals);
    match ce_certificate_verify(&algebra, &cert) {
        Err(CeError::CertificateRejected { obligation, .. }) => {
            assert_eq!(obligation, Obligation::TargetCentralNonzero);
        }
        other => panic!("expected a rejection, got {other:?}"),
    }

    let finite = construct::witness_algebra(7, f3()).unwrap();
    let (_, cert) = construct::witness_certificate(7).unwrap();
    match ce_certificate_verify(&finite, &cert) {
        Err(CeError::CertificateRejected { obligation, .. }) => {
            assert_eq!(obligation, Obligation::RationalField);
        }
        other => panic!("expected a field rejection, got {other:?}"),
    }
}

#[test]
fn certificate_rejects_broken_quadratic_identity() {
    let (algebra, mut cert) = construct::witness_certificate(7).unwrap();
    // scaling the target breaks the polarized identity but keeps its
    // centrality, so the failure lands exactly on the quadratic check
    cert.target = cert.target.scale(&FieldSpec::Rationals.integer(2));
    match ce_certificate_verify(&algebra, &cert) {
        Err(CeError::CertificateRejected { obligation, .. }) => {
            assert_eq!(obligation, Obligation::QuadraticIdentity);
        }
        other => panic!("expected a rejection at the quadratic identity, got {other:?}"),
    }
}

#[test]
fn certificate_rejects_shape_mismatch() {
    let (_, cert) = construct::witness_certificate(8).unwrap();
    let algebra = construct::witness_algebra(7, FieldSpec::Rationals).unwrap();
    assert!(matches!(
        ce_certificate_verify(&algebra, &cert),
        Err(CeError::CertificateShape(_))
    ));
}

#[test]
fn certificates_accept_for_all_supported_sizes() {
    for n in 7..=10 {
        let (algebra, cert) = construct::witness_certificate(n).unwrap();
        ce_certificate_verify(&algebra, &cert)
            .unwrap_or_else(|e| panic!("size {n}: {e}"));
    }
}

#[test]
fn random_search_concludes_on_commutative_input() {
    let line = cealg::MatAlgebra::from_closed_span(&[Mat::unit(3, f3(), 0, 2)]).unwrap();
    let verdict = ce_random_search(&line, 5, 3);
    assert_eq!(verdict.status, CeStatus::CentrallyEssential);
}

#[test]
fn one_dimensional_exterior_algebra_is_centrally_essential() {
    let algebra = construct::exterior_regular(1, f3()).unwrap();
    assert!(algebra.is_commutative());
    let verdict = ce_exhaustive(&algebra, 1 << 20).unwrap();
    assert_eq!(verdict.status, CeStatus::CentrallyEssential);
}

#[test]
fn witness_verdict_over_odd_prime_matches_certificate_route() {
    // two independent routes to the same conclusion for size 8: full
    // enumeration over F3 and the rational certificate
    let finite = construct::witness_algebra(8, f3()).unwrap();
    let verdict = ce_exhaustive(&finite, 1 << 20).unwrap();
    assert_eq!(verdict.status, CeStatus::CentrallyEssential);
    let (rational, cert) = construct::witness_certificate(8).unwrap();
    ce_certificate_verify(&rational, &cert).expect("certificate accepted");
}
