use symfer::c2_poisson::{c2_quotient_dims, expected_weights_d1, ResourceGuard, RowSource};

#[test]
fn d1_per_weight() {
    let r = c2_quotient_dims(1, 12, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    let mut expected = expected_weights_d1().to_vec();
    expected.extend([0, 0, 0, 0]);
    assert_eq!(r.quotient_dims(), expected);
    assert_eq!(r.total, 11);
    assert_eq!(r.stable_from, Some(9));
    assert!(r.pass());
}

#[test]
fn d1_definitional_agrees() {
    let a = c2_quotient_dims(1, 10, RowSource::Definitional, ResourceGuard::default()).unwrap();
    let b = c2_quotient_dims(1, 10, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    assert_eq!(a.quotient_dims(), b.quotient_dims());
}

#[test]
fn d2_total() {
    let r = c2_quotient_dims(2, 12, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    assert_eq!(r.total, 41, "{:?}", r.quotient_dims());
    assert!(r.pass());
}

#[test]
fn d2_definitional_agrees_low_weights() {
    let a = c2_quotient_dims(2, 7, RowSource::Definitional, ResourceGuard::default()).unwrap();
    let b = c2_quotient_dims(2, 7, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    assert_eq!(a.quotient_dims(), b.quotient_dims());
}

#[test]
fn d3_total() {
    let r = c2_quotient_dims(3, 12, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    assert_eq!(r.total, 105, "{:?}", r.quotient_dims());
    assert!(r.pass());
}

#[test]
fn d4_total() {
    let r = c2_quotient_dims(4, 10, RowSource::StrongGenerators, ResourceGuard::default()).unwrap();
    assert_eq!(r.total, 257, "{:?}", r.quotient_dims());
}
