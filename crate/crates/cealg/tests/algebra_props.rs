//! Structure-theory invariants on the constructed fixtures: closure
//! fixpoints, the center inclusion for unitalized nilpotent algebras,
//! the centralizer-equality commutativity criterion, and idempotent
//! centrality on every centrally essential fixture.

use cealg::algebra::{centralizer, MatAlgebra, NilIndexStrategy};
use cealg::ce::{ce_exhaustive, CeStatus};
use cealg::construct;
use cealg::field::FieldSpec;
use cealg::jordan::nilpotent_jordan;
use cealg::mat::Mat;
use cealg::subspace::Subspace;

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn fixtures() -> Vec<(&'static str, MatAlgebra)> {
    vec![
        ("strict upper 3 over F3", construct::strictly_upper(3, f3())),
        ("strict upper 4 over F3", construct::strictly_upper(4, f3())),
        ("upper 2 over F3", construct::upper_triangular(2, f3())),
        ("full 2 over F3", construct::full_matrix(2, f3())),
        ("witness 7 over F3", construct::witness_algebra(7, f3()).unwrap()),
        ("witness 8 over F3", construct::witness_algebra(8, f3()).unwrap()),
        ("7x7 instance over F3", construct::witness_algebra_7(f3())),
        ("exterior 2 over F3", construct::exterior_regular(2, f3()).unwrap()),
        ("exterior 3 over F3", construct::exterior_regular(3, f3()).unwrap()),
        ("quaternion group over F2", construct::quaternion_group_algebra(f2())),
    ]
}

#[test]
fn every_fixture_is_closed() {
    for (label, algebra) in fixtures() {
        assert!(algebra.verify_closed().is_ok(), "{label} failed the closure fixpoint");
    }
}

#[test]
fn center_elements_commute_with_the_whole_fixture() {
    for (label, algebra) in fixtures() {
        let center = algebra.center();
        for z in center.basis() {
            assert!(algebra.contains(z), "{label}: center must sit inside the algebra");
            for b in algebra.basis() {
                assert!(z.commutes_with(b), "{label}: center element fails to commute");
            }
        }
    }
}

#[test]
fn unitalization_pulls_the_radical_center_into_the_center() {
    // for a nilpotent N, the center of N embeds into the center of the
    // unitalization scalars + N
    for (label, nilpotent) in [
        ("strict upper 3", construct::strictly_upper(3, f3())),
        ("strict upper 4", construct::strictly_upper(4, f3())),
        ("witness 7", construct::witness_algebra(7, f3()).unwrap()),
        ("corner line", MatAlgebra::from_closed_span(&[Mat::unit(3, f3(), 0, 2)]).unwrap()),
    ] {
        let unital = nilpotent.adjoin_identity().unwrap();
        assert_eq!(unital.dim(), nilpotent.dim() + 1, "{label}");
        let inner = nilpotent.center();
        let outer = unital.center();
        for z in inner.basis() {
            assert!(outer.contains(z), "{label}: radical center must extend to the whole center");
        }
        // the split returns exactly the nilpotent part back
        let split = unital.local_split().unwrap();
        assert_eq!(split.radical.space(), nilpotent.space(), "{label}");
        assert_eq!(split.scalar_part.dim(), 1, "{label}");
    }
}

#[test]
fn witness_unitalization_is_local_of_dimension_n() {
    let unital = construct::witness_algebra(7, f3()).unwrap().adjoin_identity().unwrap();
    assert_eq!(unital.dim(), 7);
    assert!(unital.is_unital());
    let split = unital.local_split().unwrap();
    assert_eq!(split.radical.dim(), 6);
    assert_eq!(split.radical.power_chain().nilpotence_index, Some(3));
    let identity = Mat::identity(7, f3());
    assert_eq!(split.lambda(&identity), f3().one());
}

#[test]
fn centralizer_equality_with_jordan_generator_forces_commutativity() {
    // when the centralizer of a maximal-index element equals the center,
    // the algebra is commutative; exercised on algebras generated by a
    // single full Jordan block, where the equality holds
    for n in 3..=6 {
        let block = construct::jordan_block(n, f3());
        let algebra = MatAlgebra::closure_of(std::slice::from_ref(&block)).unwrap();
        let report = algebra
            .nil_index(NilIndexStrategy::Exhaustive, 1 << 20)
            .expect("nilpotent algebra");
        assert_eq!(report.value, n, "the block has nilpotence index n");
        let c = centralizer(&block, algebra.space());
        if &c == algebra.center() {
            assert!(algebra.is_commutative());
        } else {
            panic!("the powers of a single block commute, so equality must hold");
        }
    }
    // on the full strictly upper algebras the hypothesis fails and
    // nothing is claimed
    for n in 3..=4 {
        let block = construct::jordan_block(n, f3());
        let ambient = construct::strictly_upper(n, f3());
        let c = centralizer(&block, ambient.space());
        assert_ne!(&c, ambient.center());
        assert!(!ambient.is_commutative());
    }
}

#[test]
fn centrally_essential_fixtures_have_central_idempotents_only() {
    let budget = 1 << 20;
    for (label, algebra) in fixtures() {
        let Ok(verdict) = ce_exhaustive(&algebra, budget) else {
            continue;
        };
        if verdict.status != CeStatus::CentrallyEssential {
            continue;
        }
        let idems = algebra.idempotents(budget).expect("within budget");
        let center = algebra.center();
        for e in &idems {
            assert!(
                center.contains(e),
                "{label}: a centrally essential algebra cannot have a non-central idempotent"
            );
        }
    }
}

#[test]
fn power_chain_of_the_corner_line() {
    let line = MatAlgebra::from_closed_span(&[Mat::unit(3, f3(), 0, 2)]).unwrap();
    let chain = line.power_chain();
    assert_eq!(chain.nilpotence_index, Some(2));
    let dims: Vec<usize> = chain.powers.iter().map(Subspace::dim).collect();
    assert_eq!(dims, vec![1, 0]);
}

#[test]
fn witness_nilpotence_index_is_three_for_all_sizes() {
    for n in [7usize, 8, 9, 10] {
        let algebra = construct::witness_algebra(n, f3()).unwrap();
        assert_eq!(algebra.power_chain().nilpotence_index, Some(3));
    }
}

#[test]
fn jordan_of_every_witness_basis_element_is_consistent() {
    // every element of the witness family squares into the corner and
    // cubes to zero, so partitions only contain parts of size at most 3
    let algebra = construct::witness_algebra(7, FieldSpec::Rationals).unwrap();
    for b in algebra.basis() {
        let data = nilpotent_jordan(b).unwrap();
        assert!(data.partition.iter().all(|&part| part <= 3));
        assert_eq!(data.p_inv.mul(b).mul(&data.p), data.j);
    }
}
