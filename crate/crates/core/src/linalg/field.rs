//! Scalar fields used by the elimination routines.

use std::fmt::Debug;

use super::rational::Rational;

pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on zero.
    fn inv(&self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Rational::ZERO
    }
    fn one() -> Self {
        Rational::ONE
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
}

/// The Mersenne prime 2^61 - 1.
pub const MERSENNE_61: u64 = (1u64 << 61) - 1;

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat.
pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod p");
    pow_mod(a, p - 2, p)
}

/// Element of GF(2^61 - 1).
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp(pub u64);

impl Fp {
    pub const P: u64 = MERSENNE_61;

    #[inline]
    fn reduce(x: u128) -> u64 {
        // Mersenne reduction: x = hi * 2^61 + lo ≡ hi + lo.
        let lo = (x as u64) & Self::P;
        let hi = (x >> 61) as u64;
        let mut s = lo + (hi & Self::P) + (hi >> 61);
        while s >= Self::P {
            s -= Self::P;
        }
        s
    }

    pub fn from_rational(r: &Rational) -> Option<Fp> {
        super::rational::rational_mod_p(r, Self::P).map(Fp)
    }

    /// Rational reconstruction: the unique `n/d` with `|n|, d < sqrt(p/2)` reducing to `self`.
    pub fn reconstruct(&self) -> Option<Rational> {
        let bound = ((Self::P / 2) as f64).sqrt() as i128;
        let (mut r0, mut r1) = (Self::P as i128, self.0 as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 > bound {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if t1 == 0 || t1.abs() > bound {
            return None;
        }
        let (n, d) = if t1 < 0 { (-r1, -t1) } else { (r1, t1) };
        Some(Rational::new(n as i64, d as i64))
    }
}

impl Field for Fp {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= Self::P { s - Self::P } else { s })
    }
    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + Self::P - rhs.0 })
    }
    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Fp(Self::reduce(self.0 as u128 * rhs.0 as u128))
    }
    fn neg(&self) -> Self {
        Fp(if self.0 == 0 { 0 } else { Self::P - self.0 })
    }
    fn inv(&self) -> Self {
        Fp(inv_mod(self.0, Self::P))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reconstruction_round_trips() {
        for (n, d) in [(0, 1), (1, 1), (-144, 5), (29, 5), (7, 360), (-123456, 7919)] {
            let r = Rational::new(n, d);
            assert_eq!(Fp::from_rational(&r).unwrap().reconstruct(), Some(r));
        }
    }

    #[test]
    fn fp_arithmetic() {
        let a = Fp(Fp::P - 1);
        assert_eq!(a.add(&Fp(1)), Fp(0));
        assert_eq!(a.mul(&a), Fp(1));
        let x = Fp(123_456_789_012);
        assert_eq!(x.mul(&x.inv()), Fp(1));
        assert_eq!(Fp(3).sub(&Fp(5)), Fp(Fp::P - 2));
        assert_eq!(Fp::from_rational(&Rational::new(-1, 2)).unwrap().mul(&Fp(2)), Fp(Fp::P - 1));
    }
}
