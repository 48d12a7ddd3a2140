use proptest::prelude::*;
use symfer::fock::{
    enumerate_basis, enumerate_half, fermionic_character, AlgebraConfig, BasisCache, ModeKey, Parity, Sector, State,
};
use symfer::linalg::Rational;
use symfer::vertex::{
    commutator_check, lambda_bracket_check, nth_product, nth_product_iterate, omega, skew_symmetry_check,
    sp_derivation, virasoro_check, QuadraticGenerators, SpBasisElement,
};

fn cfg(d: u32) -> AlgebraConfig {
    AlgebraConfig::new(d).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn basis_counts_match_character(d in 1u32..=4, w in 0usize..=12) {
        let c = cfg(d);
        let all = enumerate_half(&c, Sector::Untwisted, 2 * w as i32, Parity::All).len() as u128;
        prop_assert_eq!(all, fermionic_character(d, 12)[w]);
    }
}

#[test]
fn even_and_odd_split_the_character() {
    let c = cfg(2);
    for w in 0..=8 {
        let even = enumerate_half(&c, Sector::Untwisted, 2 * w, Parity::Even).len();
        let odd = enumerate_half(&c, Sector::Untwisted, 2 * w, Parity::Odd).len();
        assert_eq!((even + odd) as u128, fermionic_character(2, 8)[w as usize]);
    }
}

#[test]
fn cache_round_trips_and_repairs() {
    let dir = tempfile::tempdir().unwrap();
    let cache = BasisCache::new(dir.path());
    let c = cfg(2);
    let w = Rational::from_int(5);
    let fresh = enumerate_basis(&c, Sector::Untwisted, &w, true).unwrap();
    assert_eq!(cache.load_or_compute(&c, Sector::Untwisted, &w, true).unwrap(), fresh);
    let path = cache.path_for(&c, Sector::Untwisted, &w, true);
    assert!(path.exists());
    assert_eq!(cache.load_or_compute(&c, Sector::Untwisted, &w, true).unwrap(), fresh);
    std::fs::write(&path, "garbage\n").unwrap();
    assert_eq!(cache.load_or_compute(&c, Sector::Untwisted, &w, true).unwrap(), fresh);
    let tw = Rational::new(-1, 4) + Rational::from_int(2);
    let twisted = cache.load_or_compute(&c, Sector::Twisted, &tw, false).unwrap();
    assert_eq!(twisted, enumerate_basis(&c, Sector::Twisted, &tw, false).unwrap());
}

#[test]
fn virasoro_relations() {
    for d in 1..=3 {
        let r = virasoro_check(&cfg(d), 6, 3).unwrap();
        assert!(r.pass(), "d={d}: {:?}", r.failures);
    }
    let c = cfg(2);
    let w = omega(&c);
    assert_eq!(nth_product(&c, &w, 3, &w).unwrap(), State::vacuum(Sector::Untwisted).scale(&Rational::from_int(-2)));
    assert_eq!(nth_product(&c, &w, 1, &w).unwrap(), w.scale(&Rational::from_int(2)));
}

#[test]
fn wick_matches_iterate() {
    let c = cfg(2);
    let st = |m: &[(u8, i64)]| {
        State::from_modes(Sector::Untwisted, &m.iter().map(|&(g, n)| ModeKey::new(g, n)).collect::<Vec<_>>()).unwrap()
    };
    let a = st(&[(1, -2), (3, -1)]);
    let b = st(&[(2, -1), (4, -3), (1, -1)]);
    for n in -3..=4 {
        assert_eq!(nth_product(&c, &a, n, &b).unwrap(), nth_product_iterate(&c, &a, n, &b).unwrap(), "n={n}");
    }
}

#[test]
fn commutator_skew_lambda() {
    let c = cfg(1);
    let gens = QuadraticGenerators::new(&c);
    let pairs: Vec<(String, State, State)> =
        gens.list.iter().take(3).map(|(q, s)| (q.to_string(), s.clone(), omega(&c))).collect();
    let r = commutator_check(&c, &pairs, 2, 3).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
    let r = skew_symmetry_check(&cfg(2), 40, 4, 7).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
    let r = lambda_bracket_check(&cfg(1), 3, 3).unwrap();
    assert!(r.pass(), "{:?}", r.failures);
}

#[test]
fn sp_kills_omega() {
    for d in 1..=3 {
        let c = cfg(d);
        let w = omega(&c);
        for x in SpBasisElement::all(&c) {
            assert!(sp_derivation(&c, x, &w).is_zero(), "d={d} {x:?}");
        }
    }
}
