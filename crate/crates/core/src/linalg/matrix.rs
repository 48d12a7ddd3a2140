use std::fmt;

use super::echelon::Echelon;
use super::rational::Rational;
use super::sparse::SparseVector;
use super::LinalgError;

/// Exact rational matrix stored as sparse rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<SparseVector>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub rank: usize,
    pub pivot_cols: Vec<usize>,
    pub reduced: MatrixQ,
}

impl MatrixQ {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![SparseVector::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| SparseVector::unit(i as u32)).collect() }
    }

    pub fn scalar(n: usize, k: &Rational) -> Self {
        Self::identity(n).scale(k)
    }

    pub fn from_rows(cols: usize, data: Vec<SparseVector>) -> Result<Self, LinalgError> {
        for (i, r) in data.iter().enumerate() {
            if let Some(c) = r.max_col() {
                if c as usize >= cols {
                    return Err(LinalgError::ColumnOutOfRange { row: i, col: c as usize, cols });
                }
            }
        }
        Ok(Self { rows: data.len(), cols, data })
    }

    pub fn from_dense(values: &[Vec<Rational>]) -> Self {
        let cols = values.first().map_or(0, |r| r.len());
        assert!(values.iter().all(|r| r.len() == cols), "ragged matrix");
        Self { rows: values.len(), cols, data: values.iter().map(|r| SparseVector::from_dense(r)).collect() }
    }

    pub fn from_ints(values: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            values.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    /// Matrix unit `E_{ij}`.
    pub fn unit(n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(n, n);
        m.set(i, j, Rational::ONE);
        m
    }

    pub fn diagonal(values: &[Rational]) -> Self {
        let mut m = Self::zero(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m.set(i, i, v.clone());
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &SparseVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[SparseVector] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.data[i].get(j as u32)
    }

    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        let row = &self.data[i];
        let mut entries: Vec<(u32, Rational)> =
            row.entries().iter().filter(|(c, _)| *c as usize != j).cloned().collect();
        entries.push((j as u32, x));
        self.data[i] = SparseVector::from_pairs(entries);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(|r| r.nnz()).sum()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|r| r.scale(k)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn add_scaled(&self, k: &Rational, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_scaled(k, b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let data = self
            .data
            .iter()
            .map(|r| {
                let mut acc: Vec<(u32, Rational)> = Vec::new();
                for (k, x) in r.entries() {
                    for (j, y) in other.data[*k as usize].entries() {
                        acc.push((*j, x * y));
                    }
                }
                SparseVector::from_pairs(acc)
            })
            .collect();
        Self { rows: self.rows, cols: other.cols, data }
    }

    pub fn apply(&self, v: &SparseVector) -> SparseVector {
        SparseVector::from_pairs(
            self.data.iter().enumerate().map(|(i, r)| (i as u32, r.dot(v))).filter(|(_, x)| !x.is_zero()),
        )
    }

    pub fn pow(&self, exp: u32) -> Self {
        assert!(self.is_square());
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut cols: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); self.cols];
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.entries() {
                cols[*j as usize].push((i as u32, x.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data: cols.into_iter().map(SparseVector::from_sorted_unchecked).collect(),
        }
    }

    /// Row-major flattening into a vector of length `rows * cols`.
    pub fn flatten(&self) -> SparseVector {
        let mut out = Vec::with_capacity(self.nnz());
        for (i, r) in self.data.iter().enumerate() {
            for (j, x) in r.entries() {
                out.push(((i * self.cols) as u32 + j, x.clone()));
            }
        }
        SparseVector::from_sorted_unchecked(out)
    }

    pub fn unflatten(rows: usize, cols: usize, v: &SparseVector) -> Self {
        let mut data: Vec<Vec<(u32, Rational)>> = vec![Vec::new(); rows];
        for (k, x) in v.entries() {
            let (i, j) = (*k as usize / cols, *k as usize % cols);
            data[i].push((j as u32, x.clone()));
        }
        Self { rows, cols, data: data.into_iter().map(SparseVector::from_sorted_unchecked).collect() }
    }

    /// Block-diagonal sum in the given order.
    pub fn block_diagonal(blocks: &[&MatrixQ]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(n);
        let mut off = 0u32;
        for b in blocks {
            for r in &b.data {
                data.push(SparseVector::from_sorted_unchecked(
                    r.entries().iter().map(|(c, x)| (c + off, x.clone())).collect(),
                ));
            }
            off += b.cols as u32;
        }
        Self { rows: n, cols: m, data }
    }

    /// Square sub-block `[start, start + len)` on both axes.
    pub fn sub_block(&self, start: usize, len: usize) -> Self {
        let data = self.data[start..start + len]
            .iter()
            .map(|r| {
                SparseVector::from_sorted_unchecked(
                    r.entries()
                        .iter()
                        .filter(|(c, _)| (*c as usize) >= start && (*c as usize) < start + len)
                        .map(|(c, x)| (c - start as u32, x.clone()))
                        .collect(),
                )
            })
            .collect();
        Self { rows: len, cols: len, data }
    }

    pub fn rref(&self) -> Rref {
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r);
            if e.is_full() {
                break;
            }
        }
        let e = e.into_rref();
        let pivot_cols: Vec<usize> = e.rows().iter().map(|r| r.leading().unwrap().0 as usize).collect();
        let rank = pivot_cols.len();
        let mut data: Vec<SparseVector> = e.rows().to_vec();
        data.resize(self.rows.max(rank), SparseVector::new());
        Rref { rank, pivot_cols, reduced: Self { rows: self.rows.max(rank), cols: self.cols, data } }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel(&self) -> Vec<SparseVector> {
        let rref = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &rref.pivot_cols {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut entries = vec![(f as u32, Rational::ONE)];
                for (i, &p) in rref.pivot_cols.iter().enumerate() {
                    let x = rref.reduced.data[i].get(f as u32);
                    if !x.is_zero() {
                        entries.push((p as u32, -x));
                    }
                }
                SparseVector::from_pairs(entries)
            })
            .collect()
    }

    /// True iff `v` lies in the row space.
    pub fn span_contains(&self, v: &SparseVector) -> Result<bool, LinalgError> {
        if let Some(c) = v.max_col() {
            if c as usize >= self.cols {
                return Err(LinalgError::WidthMismatch { expected: self.cols, found: c as usize + 1 });
            }
        }
        let mut e = Echelon::new(self.cols);
        for r in &self.data {
            e.insert(r);
        }
        Ok(e.contains(v))
    }

    /// Exact `p/q` CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_fraction_string()).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for MatrixQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "MatrixQ {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", line.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> SparseVector {
        SparseVector::from_dense(&x.iter().map(|&a| Rational::from_int(a)).collect::<Vec<_>>())
    }

    #[test]
    fn rref_identity_and_zero() {
        let r = MatrixQ::identity(3).rref();
        assert_eq!((r.rank, r.pivot_cols.clone()), (3, vec![0, 1, 2]));
        let r = MatrixQ::zero(2, 4).rref();
        assert_eq!((r.rank, r.pivot_cols.len()), (0, 0));
        assert_eq!(MatrixQ::zero(0, 0).rank(), 0);
    }

    #[test]
    fn rref_proportional_rows() {
        let m = MatrixQ::from_ints(&[&[1, 2], &[2, 4]]);
        let r = m.rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.reduced.rref().reduced, r.reduced);
    }

    #[test]
    fn kernel_examples() {
        let k = MatrixQ::from_ints(&[&[1, 1]]).kernel();
        assert_eq!(k, vec![v(&[-1, 1])]);
        assert!(MatrixQ::identity(4).kernel().is_empty());
        let k = MatrixQ::from_ints(&[&[1, 2], &[2, 4]]).kernel();
        assert_eq!(k.len(), 1);
        // (2, -1) up to scale
        assert_eq!(k[0].scale(&Rational::from_int(-1)), v(&[2, -1]));
    }

    #[test]
    fn span_contains_examples() {
        let m = MatrixQ::from_ints(&[&[1, 0]]);
        assert!(m.span_contains(&v(&[3, 0])).unwrap());
        assert!(!m.span_contains(&v(&[0, 1])).unwrap());
        let empty = MatrixQ::zero(0, 2);
        assert!(empty.span_contains(&SparseVector::new()).unwrap());
        assert!(m.span_contains(&v(&[0, 0, 1])).is_err());
    }

    #[test]
    fn flatten_round_trip_and_blocks() {
        let a = MatrixQ::from_ints(&[&[1, 2], &[0, 3]]);
        assert_eq!(MatrixQ::unflatten(2, 2, &a.flatten()), a);
        let b = MatrixQ::block_diagonal(&[&a, &MatrixQ::identity(1)]);
        assert_eq!(b.get(2, 2), Rational::ONE);
        assert_eq!(b.sub_block(0, 2), a);
        assert_eq!(a.transpose().get(0, 1), Rational::ZERO);
        assert_eq!(a.mul(&MatrixQ::identity(2)), a);
    }
}
