//! Incremental row-echelon form over any [`Field`].
//!
//! Rows are kept with a unit leading coefficient, so reducing a vector against
//! the echelon yields the unique representative supported on non-pivot columns.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::field::Field;
use super::sparse::SparseVec;

const NO_ROW: u32 = u32::MAX;

/// Sparse accumulator reused across reductions.
#[derive(Clone, Debug)]
pub struct Scratch<F> {
    values: Vec<F>,
    occupied: Vec<bool>,
    touched: Vec<u32>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<F: Field> Scratch<F> {
    pub fn new(width: usize) -> Self {
        Self {
            values: vec![F::zero(); width],
            occupied: vec![false; width],
            touched: Vec::new(),
            heap: BinaryHeap::new(),
        }
    }

    fn ensure(&mut self, width: usize) {
        if self.values.len() < width {
            self.values.resize(width, F::zero());
            self.occupied.resize(width, false);
        }
    }

    fn accumulate(&mut self, col: u32, x: &F) {
        let c = col as usize;
        if !self.occupied[c] {
            self.occupied[c] = true;
            self.values[c] = x.clone();
            self.touched.push(col);
            self.heap.push(Reverse(col));
        } else {
            self.values[c] = self.values[c].add(x);
        }
    }

    fn reset(&mut self) {
        for &c in &self.touched {
            self.occupied[c as usize] = false;
            self.values[c as usize] = F::zero();
        }
        self.touched.clear();
        self.heap.clear();
    }
}

#[derive(Clone, Debug)]
pub struct Echelon<F> {
    width: usize,
    rows: Vec<SparseVec<F>>,
    pivot_row: Vec<u32>,
    scratch: Scratch<F>,
}

impl<F: Field> Echelon<F> {
    pub fn new(width: usize) -> Self {
        Self { width, rows: Vec::new(), pivot_row: vec![NO_ROW; width], scratch: Scratch::new(width) }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.width
    }

    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: u32) -> bool {
        self.pivot_row[col as usize] != NO_ROW
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<u32> {
        (0..self.width as u32).filter(|&c| self.is_pivot(c)).collect()
    }

    pub fn free_columns(&self) -> Vec<u32> {
        (0..self.width as u32).filter(|&c| !self.is_pivot(c)).collect()
    }

    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut scratch = Scratch::new(self.width);
        self.reduce_with(v, &mut scratch)
    }

    /// Reduces `v`; the result has no entries in pivot columns.
    pub fn reduce_with(&self, v: &SparseVec<F>, scratch: &mut Scratch<F>) -> SparseVec<F> {
        if self.rows.is_empty() {
            return v.clone();
        }
        scratch.ensure(self.width);
        for (c, x) in v.entries() {
            scratch.accumulate(*c, x);
        }
        let mut out = Vec::new();
        while let Some(Reverse(c)) = scratch.heap.pop() {
            let x = scratch.values[c as usize].clone();
            if x.is_zero() {
                continue;
            }
            let r = self.pivot_row[c as usize];
            if r == NO_ROW {
                out.push((c, x));
                continue;
            }
            let row = &self.rows[r as usize];
            let k = x.neg();
            for (rc, rx) in row.entries() {
                if *rc == c {
                    scratch.values[c as usize] = F::zero();
                    continue;
                }
                scratch.accumulate(*rc, &rx.mul(&k));
            }
        }
        scratch.reset();
        SparseVec::from_sorted_unchecked(out)
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns `true` if the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        let mut scratch = std::mem::replace(&mut self.scratch, Scratch::new(0));
        let r = self.reduce_with(v, &mut scratch);
        self.scratch = scratch;
        self.push_reduced(r)
    }

    fn push_reduced(&mut self, r: SparseVec<F>) -> bool {
        let Some((lead, lx)) = r.leading() else {
            return false;
        };
        let inv = lx.inv();
        let row = r.scale(&inv);
        self.pivot_row[lead as usize] = self.rows.len() as u32;
        self.rows.push(row);
        true
    }

    /// Basis of the right null space of the rows, one vector per free column.
    pub fn kernel(self) -> Vec<SparseVec<F>> {
        let rref = self.into_rref();
        let mut cols: Vec<Vec<(u32, F)>> = vec![Vec::new(); rref.width];
        for r in &rref.rows {
            let lead = r.leading().unwrap().0;
            for (c, x) in r.entries() {
                if *c != lead {
                    cols[*c as usize].push((lead, x.neg()));
                }
            }
        }
        (0..rref.width as u32)
            .filter(|&c| !rref.is_pivot(c))
            .map(|c| {
                let mut e = std::mem::take(&mut cols[c as usize]);
                e.push((c, F::one()));
                SparseVec::from_pairs(e)
            })
            .collect()
    }

    /// Converts to reduced row-echelon form with rows sorted by pivot column.
    pub fn into_rref(mut self) -> Self {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| self.rows[i].leading().map(|(c, _)| c));
        let mut rows: Vec<SparseVec<F>> = order.into_iter().map(|i| self.rows[i].clone()).collect();
        let mut pivot_row = vec![NO_ROW; self.width];
        for (i, r) in rows.iter().enumerate() {
            pivot_row[r.leading().unwrap().0 as usize] = i as u32;
        }
        for i in (0..rows.len()).rev() {
            let lead = rows[i].leading().unwrap().0;
            let mut acc = rows[i].clone();
            for (c, x) in rows[i].entries().iter() {
                if *c == lead {
                    continue;
                }
                let j = pivot_row[*c as usize];
                if j != NO_ROW {
                    acc = acc.add_scaled(&x.neg(), &rows[j as usize]);
                }
            }
            rows[i] = acc;
        }
        self.rows = rows;
        self.pivot_row = pivot_row;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::field::Fp;
    use crate::linalg::rational::Rational;

    fn q(v: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&v.iter().map(|&x| Rational::from_int(x)).collect::<Vec<_>>())
    }

    #[test]
    fn rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&q(&[1, 2, 3])));
        assert!(e.insert(&q(&[0, 1, 1])));
        assert!(!e.insert(&q(&[2, 5, 7])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&q(&[1, 3, 4])));
        assert!(!e.contains(&q(&[0, 0, 1])));
        assert_eq!(e.pivots(), vec![0, 1]);
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(3);
        e.insert(&q(&[1, 2, 3]));
        e.insert(&q(&[0, 1, 1]));
        let e = e.into_rref();
        assert_eq!(e.rows()[0], q(&[1, 0, 1]));
        assert_eq!(e.rows()[1], q(&[0, 1, 1]));
        assert_eq!(e.reduce(&q(&[3, 1, 5])), q(&[0, 0, 1]));
    }

    #[test]
    fn works_mod_p() {
        let mut e: Echelon<Fp> = Echelon::new(2);
        assert!(e.insert(&SparseVec::from_dense(&[Fp(2), Fp(4)])));
        assert!(!e.insert(&SparseVec::from_dense(&[Fp(1), Fp(2)])));
        assert!(e.insert(&SparseVec::from_dense(&[Fp(0), Fp(3)])));
        assert!(e.is_full());
    }
}
