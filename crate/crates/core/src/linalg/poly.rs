use std::fmt;

use serde::{Serialize, Serializer};

use super::echelon::Echelon;
use super::matrix::MatrixQ;
use super::rational::Rational;
use super::sparse::SparseVector;
use super::LinalgError;

/// Univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::new(vec![Rational::ZERO, Rational::ONE])
    }

    /// `x - root`.
    pub fn linear(root: Rational) -> Self {
        Self::new(vec![-root, Rational::ONE])
    }

    pub fn x_pow(n: usize) -> Self {
        let mut c = vec![Rational::ZERO; n + 1];
        c[n] = Rational::ONE;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or(Rational::ZERO)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading().recip();
        Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).cloned().unwrap_or_default() + other.coeffs.get(i).cloned().unwrap_or_default()
                })
                .collect(),
        )
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from_int(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let dd = divisor.degree().unwrap();
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Rational::ZERO; rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let q = &rem[k + dd] * &lead_inv;
            if !q.is_zero() {
                for (j, c) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &q * c;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.gcd(other).degree() == Some(0)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::ZERO, |acc, c| acc * x + c)
    }

    pub fn eval_matrix(&self, m: &MatrixQ) -> MatrixQ {
        assert!(m.is_square());
        let n = m.nrows();
        let mut acc = MatrixQ::zero(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m).add(&MatrixQ::scalar(n, c));
        }
        acc
    }

    pub fn product<'a, I: IntoIterator<Item = &'a Polynomial>>(factors: I) -> Self {
        factors.into_iter().fold(Self::constant(Rational::ONE), |acc, p| acc.mul(p))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.signum() < 0;
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Minimal polynomial by searching for the first linear dependence among
/// `I, m, m^2, ...` (flattened).
pub fn min_poly(m: &MatrixQ) -> Result<Polynomial, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NotSquare { rows: m.nrows(), cols: m.ncols() });
    }
    let n = m.nrows();
    let width = n * n;
    let mut powers: Vec<SparseVector> = Vec::new();
    let mut echelon = Echelon::new(width.max(1));
    let mut current = MatrixQ::identity(n);
    loop {
        let flat = current.flatten();
        if n == 0 || !echelon.insert(&flat) {
            if n == 0 {
                return Ok(Polynomial::constant(Rational::ONE));
            }
            // Solve sum_{i<k} c_i flat(m^i) = flat(m^k) via the kernel of the
            // matrix whose columns are the powers.
            let k = powers.len();
            let mut cols = powers.clone();
            cols.push(flat);
            let mut rows: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); width];
            for (j, v) in cols.iter().enumerate() {
                for (i, x) in v.entries() {
                    rows[*i as usize].push((j as u32, x.clone()));
                }
            }
            let a = MatrixQ::from_rows(k + 1, rows.into_iter().map(SparseVector::from_sorted_unchecked).collect())?;
            let ker = a.kernel();
            debug_assert_eq!(ker.len(), 1);
            let v = &ker[0];
            let lead = v.get(k as u32);
            let coeffs: Vec<Rational> = (0..=k).map(|i| v.get(i as u32) / &lead).collect();
            return Ok(Polynomial::new(coeffs));
        }
        powers.push(flat);
        current = current.mul(m);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn min_poly_examples() {
        assert_eq!(min_poly(&MatrixQ::zero(3, 3)).unwrap(), Polynomial::x());
        assert_eq!(min_poly(&MatrixQ::identity(2)).unwrap(), Polynomial::linear(Rational::ONE));
        let j = MatrixQ::from_ints(&[&[0, 1], &[0, 0]]);
        assert_eq!(min_poly(&j).unwrap(), Polynomial::x_pow(2));
        assert!(min_poly(&MatrixQ::zero(2, 3)).is_err());
    }

    #[test]
    fn min_poly_annihilates() {
        let m = MatrixQ::from_ints(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let p = min_poly(&m).unwrap();
        assert_eq!(p.degree(), Some(3));
        assert!(p.eval_matrix(&m).is_zero());
    }

    #[test]
    fn gcd_and_division() {
        let a = Polynomial::linear(r(1, 1)).mul(&Polynomial::linear(r(-1, 8)));
        let b = Polynomial::linear(r(1, 1)).mul(&Polynomial::x());
        assert_eq!(a.gcd(&b), Polynomial::linear(r(1, 1)));
        assert!(Polynomial::x_pow(3).is_coprime(&Polynomial::linear(r(3, 8))));
        assert!(Polynomial::x_pow(2).divides(&Polynomial::x_pow(3)));
        let (q, rem) = a.div_rem(&Polynomial::linear(r(1, 1)));
        assert!(rem.is_zero());
        assert_eq!(q, Polynomial::linear(r(-1, 8)));
        assert_eq!(a.to_string(), "x^2 - 7/8*x - 1/8");
    }
}
