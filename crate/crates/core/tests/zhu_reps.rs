use symfer::fock::AlgebraConfig;
use symfer::linalg::{algebra_closure, MatrixQ};
use symfer::linalg::{min_poly, Polynomial, Rational};
use symfer::zhu::{
    build_ad, build_rep_block, center_dim, coprimality_check, multiplicativity_check, oracle_rep_check, sp_invariants,
    symmetric_functionals_dim, verify_j4, ModuleId,
};

fn cfg(d: u32) -> AlgebraConfig {
    AlgebraConfig::new(d).unwrap()
}

#[test]
fn oracle_matches_tables() {
    for d in 1..=3 {
        for m in ModuleId::ALL {
            let r = oracle_rep_check(&cfg(d), m).unwrap();
            assert!(r.pass(), "d={d} {}: {:?}", m.name(), r.failures);
        }
    }
}

#[test]
fn multiplicative_on_untwisted_tops() {
    for d in 1..=2 {
        for m in ModuleId::UNTWISTED {
            let r = multiplicativity_check(&cfg(d), m).unwrap();
            assert!(r.pass(), "d={d} {}: {:?}", m.name(), r.failures);
        }
    }
}

#[test]
fn hat_omega_nilpotency() {
    for d in 1..=4 {
        let b = build_rep_block(&cfg(d), ModuleId::SfHatPlus);
        assert_eq!(min_poly(&b.omega).unwrap(), Polynomial::x_pow(d as usize + 1), "d={d}");
    }
}

#[test]
fn ad_dimension_and_polys() {
    for d in 1..=3 {
        let ad = build_ad(&cfg(d)).unwrap();
        assert_eq!(ad.dim() as u64, ad.expected_dim(), "d={d}");
        let c = coprimality_check(&ad).unwrap();
        assert!(c.pass(), "d={d} {c:?}");
    }
}

#[test]
fn d4_blocks_not_coprime() {
    let ad = build_ad(&cfg(4)).unwrap();
    let c = coprimality_check(&ad).unwrap();
    assert!(!c.pairwise_coprime);
}

#[test]
fn center_functionals_invariants() {
    for (d, expect) in [(1, 5), (2, 11), (3, 35)] {
        let ad = build_ad(&cfg(d)).unwrap();
        assert_eq!(center_dim(&ad).unwrap().0, expect, "center d={d}");
        assert_eq!(symmetric_functionals_dim(&ad.basis), expect, "functionals d={d}");
        let inv = sp_invariants(&cfg(d), &ad).unwrap();
        assert!(inv.pass(), "d={d} {inv:?}");
    }
}

#[test]
fn matrix_block_has_one_trace() {
    let gens: Vec<MatrixQ> = (0..2).flat_map(|i| (0..2).map(move |j| MatrixQ::unit(2, i, j))).collect();
    let basis = algebra_closure(&gens, &MatrixQ::identity(2)).unwrap();
    assert_eq!(symmetric_functionals_dim(&basis), 1);
}

#[test]
fn j4_differs_from_literal_polynomial_by_two_omega() {
    let r = verify_j4(&cfg(2), None).unwrap();
    assert!(!r.pass());
    assert_eq!(r.common_omega_correction(), Some(Rational::from_int(2)), "{r:?}");
    let one = |x: i64| Rational::from_int(x);
    assert_eq!(r.blocks[0].residual_omega_multiple, Some(one(2)));
    let bad = [Rational::new(-144, 5), one(30), Rational::new(29, 5)];
    let r = verify_j4(&cfg(2), Some(bad)).unwrap();
    assert!(!r.pass());
    assert_eq!(r.common_omega_correction(), None);
    assert!(verify_j4(&cfg(1), None).is_err());
}

#[test]
fn twisted_vacuum_weight() {
    let m = symfer::zhu::twisted_matrix(&cfg(2), false, &symfer::vertex::omega(&cfg(2))).unwrap();
    assert_eq!(m, MatrixQ::scalar(1, &Rational::new(-1, 4)));
    assert_eq!(symfer::zhu::propagator_correction(0, 0), Rational::new(1, 8));
}
