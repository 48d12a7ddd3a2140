use super::echelon::Echelon;
use super::matrix::MatrixQ;
use super::rational::Rational;
use super::sparse::SparseVector;
use super::LinalgError;

/// Linear basis of a finite-dimensional matrix algebra.
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    size: usize,
    elements: Vec<MatrixQ>,
    span: Echelon<Rational>,
    rounds: usize,
}

impl AlgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> &[MatrixQ] {
        &self.elements
    }

    /// Number of product rounds the closure needed.
    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn contains(&self, m: &MatrixQ) -> bool {
        m.nrows() == self.size && m.ncols() == self.size && self.span.contains(&m.flatten())
    }

    /// Coordinates of the elements as flattened rows.
    pub fn as_rows(&self) -> Vec<SparseVector> {
        self.elements.iter().map(|m| m.flatten()).collect()
    }

    /// Checks that every pairwise product stays in the span.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|a| self.elements.iter().all(|b| self.contains(&a.mul(b))))
    }
}

/// Smallest unital subalgebra containing `gens`, grown by left-multiplying the
/// newest basis elements by every generator until the span stops growing.
pub fn algebra_closure(gens: &[MatrixQ], unit: &MatrixQ) -> Result<AlgebraBasis, LinalgError> {
    if !unit.is_square() {
        return Err(LinalgError::NotSquare { rows: unit.nrows(), cols: unit.ncols() });
    }
    let n = unit.nrows();
    for g in gens {
        if g.nrows() != n || g.ncols() != n {
            return Err(LinalgError::ShapeMismatch { expected: (n, n), found: (g.nrows(), g.ncols()) });
        }
    }
    let mut basis = AlgebraBasis { size: n, elements: Vec::new(), span: Echelon::new((n * n).max(1)), rounds: 0 };
    let mut frontier = Vec::new();
    for m in std::iter::once(unit).chain(gens.iter()) {
        if basis.span.insert(&m.flatten()) {
            basis.elements.push(m.clone());
            frontier.push(m.clone());
        }
    }
    let cap = (n * n).max(1);
    while !frontier.is_empty() {
        if basis.rounds >= cap {
            return Err(LinalgError::ClosureDidNotConverge { rounds: basis.rounds });
        }
        basis.rounds += 1;
        let mut next = Vec::new();
        for b in &frontier {
            for g in gens {
                let p = g.mul(b);
                if basis.span.insert(&p.flatten()) {
                    basis.elements.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_matrix_algebra_from_units() {
        let a = algebra_closure(&[MatrixQ::unit(2, 0, 1), MatrixQ::unit(2, 1, 0)], &MatrixQ::identity(2)).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(a.is_closed());
    }

    #[test]
    fn no_generators_gives_scalars() {
        let a = algebra_closure(&[], &MatrixQ::identity(3)).unwrap();
        assert_eq!(a.dim(), 1);
    }

    #[test]
    fn diagonal_generator() {
        // Brute force: span{I, D, D^2, ...} with D = diag(1, 2) has dim 2.
        let d = MatrixQ::diagonal(&[Rational::from_int(1), Rational::from_int(2)]);
        let mut e = Echelon::new(4);
        let mut p = MatrixQ::identity(2);
        for _ in 0..4 {
            e.insert(&p.flatten());
            p = p.mul(&d);
        }
        let a = algebra_closure(&[d], &MatrixQ::identity(2)).unwrap();
        assert_eq!(a.dim(), e.rank());
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn rejects_mismatched_sizes() {
        assert!(algebra_closure(&[MatrixQ::identity(3)], &MatrixQ::identity(2)).is_err());
    }
}
