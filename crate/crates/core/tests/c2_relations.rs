use symfer::c2_poisson::{
    nilpotency_degree, omega_central_check, omega_power_identity, poisson_axioms_check, relation_suite,
    verify_bd_basis, BdSet, C2Context, RelationId,
};
use symfer::fock::{AlgebraConfig, ModeKey, Sector, State};
use symfer::linalg::Rational;

fn ctx(d: u32) -> C2Context {
    C2Context::new(AlgebraConfig::new(d).unwrap())
}

#[test]
fn relations_d1_d2() {
    for d in 1..=2 {
        let mut c = ctx(d);
        for id in RelationId::ALL {
            let out = relation_suite(&mut c, id, 6).unwrap();
            assert!(out.pass(), "d={d} {:?}: {:?}", id, out.failures);
        }
    }
}

#[test]
fn relations_d3() {
    let mut c = ctx(3);
    for id in RelationId::ALL {
        let out = relation_suite(&mut c, id, 6).unwrap();
        assert!(out.pass(), "{:?}: {:?}", id, out.failures);
    }
}

#[test]
fn eq_mod_c2_examples() {
    let cfg = AlgebraConfig::new(1).unwrap();
    let mut c = C2Context::new(cfg);
    let s = |a: u8, m: i64, b: u8| {
        State::from_modes(Sector::Untwisted, &[ModeKey::new(a, -m), ModeKey::new(b, -1)]).unwrap()
    };
    let zero = State::zero(Sector::Untwisted);
    assert!(c.eq_mod_c2(&s(1, 6, 1), &zero).unwrap());
    assert!(!c.eq_mod_c2(&s(1, 7, 2), &zero).unwrap());
    let mixed = s(1, 2, 2).plus(&s(1, 3, 2));
    assert!(c.eq_mod_c2(&mixed, &zero).is_err());
}

#[test]
fn bd_basis() {
    for d in 1..=3 {
        let mut c = ctx(d);
        let set = BdSet::new(c.cfg());
        assert_eq!(set.part1.len(), 1 << (2 * d - 1));
        assert_eq!(set.part2.len() as u32, 8 * d * d + 1);
        let r = verify_bd_basis(&mut c, &set).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.rank as u64, r.expected);
    }
}

#[test]
fn bd_drop_control() {
    let mut c = ctx(1);
    let mut set = BdSet::new(c.cfg());
    assert!(set.drop_named("e1_{-7} f1"));
    let r = verify_bd_basis(&mut c, &set).unwrap();
    assert_eq!(r.rank, 10);
    assert!(!r.pass());
}

#[test]
fn nilpotency() {
    for d in 1..=4 {
        let mut c = ctx(d);
        let r = nilpotency_degree(&mut c, 7).unwrap();
        assert_eq!(r.degree, Some(5), "d={d}");
        assert!(r.pass(), "d={d} {:?}", r.witness);
    }
}

#[test]
fn omega_power_d5() {
    let mut c = ctx(5);
    assert!(omega_power_identity(&mut c, &Rational::from_int(120)).unwrap().pass());
    assert!(!omega_power_identity(&mut c, &Rational::from_int(119)).unwrap().pass());
}

#[test]
fn poisson_axioms() {
    for d in 1..=2 {
        let mut c = ctx(d);
        for out in poisson_axioms_check(&mut c, 20, 4, 7).unwrap() {
            assert!(out.pass(), "d={d} {}: {:?}", out.id, out.failures);
        }
    }
    for d in 1..=3 {
        let mut c = ctx(d);
        let out = omega_central_check(&mut c, 50, 6, 11).unwrap();
        assert!(out.pass(), "d={d}: {:?}", out.failures);
    }
}
