use symfer::fock::AlgebraConfig;
use symfer::fock::{ModeKey, Sector, State};
use symfer::linalg::Rational;
use symfer::vertex::{omega, virasoro};
use symfer::zhu::{direct_zhu_dim, j4_relation_in_o_span, zhu_circ, OSpan, J4_COEFFS};

fn cfg(d: u32) -> AlgebraConfig {
    AlgebraConfig::new(d).unwrap()
}

#[test]
fn d1_cap12() {
    let (r, _) = direct_zhu_dim(&cfg(1), 12, 4_000_000).unwrap();
    println!("{r:?}");
    assert!(r.stabilized);
    assert_eq!(r.dim, Some(11));
}

#[test]
fn d2_cap14() {
    let (r, span) = direct_zhu_dim(&cfg(2), 14, 4_000_000).unwrap();
    println!("{r:?}");
    assert!(r.stabilized);
    assert_eq!(r.dim, Some(41));
    let span = span.unwrap();
    let coeffs = J4_COEFFS.map(|(n, d)| Rational::new(n, d));
    assert!(!j4_relation_in_o_span(&span, coeffs.clone(), &Rational::ZERO).unwrap());
    assert!(j4_relation_in_o_span(&span, coeffs.clone(), &Rational::from_int(2)).unwrap());
    let perturbed = [coeffs[0].clone(), Rational::from_int(30), coeffs[2].clone()];
    assert!(!j4_relation_in_o_span(&span, perturbed, &Rational::from_int(2)).unwrap());
}

#[test]
fn d2_cap6_not_stabilized() {
    let (r, _) = direct_zhu_dim(&cfg(2), 6, 4_000_000).unwrap();
    println!("{r:?}");
    assert!(!r.stabilized);
    assert_eq!(r.dim, None);
}

#[test]
fn o_span_contains_standard_elements() {
    let c = cfg(1);
    let span = OSpan::build(&c, 8, 4_000_000).unwrap();
    let w = omega(&c);
    let a = State::from_modes(Sector::Untwisted, &[ModeKey::new(1, -2), ModeKey::new(2, -1)]).unwrap();
    let l = |n: i64, s: &State| virasoro(&c, n, s).unwrap();
    assert!(span.contains(&l(-1, &a).plus(&l(0, &a))).unwrap());
    assert!(span.contains(&zhu_circ(&c, &w, &State::vacuum(Sector::Untwisted)).unwrap()).unwrap());
    assert!(span.contains(&zhu_circ(&c, &w, &w).unwrap()).unwrap());
    assert!(!span.contains(&w).unwrap());
    assert!(!span.contains(&State::vacuum(Sector::Untwisted)).unwrap());
}
