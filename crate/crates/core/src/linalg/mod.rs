//! Exact rational arithmetic and sparse linear algebra.

pub mod closure;
pub mod echelon;
pub mod field;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod sparse;

pub use closure::{algebra_closure, AlgebraBasis};
pub use echelon::Echelon;
pub use field::{Field, Fp};
pub use matrix::{MatrixQ, Rref};
pub use poly::{min_poly, Polynomial};
pub use rational::Rational;
pub use sparse::{SparseVec, SparseVector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("expected {expected:?} matrix, found {found:?}")]
    ShapeMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("row {row} has column {col} outside width {cols}")]
    ColumnOutOfRange { row: usize, col: usize, cols: usize },
    #[error("vector width {found} exceeds matrix width {expected}")]
    WidthMismatch { expected: usize, found: usize },
    #[error("algebra closure did not stabilize after {rounds} rounds")]
    ClosureDidNotConverge { rounds: usize },
}

/// Binomial coefficient `C(n, k)` for any integer `n` and `k >= 0`.
pub fn binomial(n: i64, k: i64) -> Rational {
    if k < 0 {
        return Rational::ZERO;
    }
    let mut acc = Rational::ONE;
    for i in 0..k {
        acc = acc * Rational::from_int(n - i) / Rational::from_int(i + 1);
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    (1..=n as i64).map(Rational::from_int).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binomial(5, 2), Rational::from_int(10));
        assert_eq!(binomial(2, 3), Rational::ZERO);
        // C(-m, j) = (-1)^j C(m + j - 1, j)
        for m in 1..6 {
            for j in 0..6 {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                assert_eq!(binomial(-m, j), binomial(m + j - 1, j) * Rational::from_int(sign));
            }
        }
        assert_eq!(factorial(5), Rational::from_int(120));
    }
}
