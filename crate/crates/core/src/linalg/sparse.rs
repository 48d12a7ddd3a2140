use serde::{Deserialize, Serialize};

use super::field::Field;
use super::rational::Rational;

/// Sparse vector as a column-sorted list of nonzero entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SparseVec<F> {
    entries: Vec<(u32, F)>,
}

pub type SparseVector = SparseVec<Rational>;

impl<F: Field> Default for SparseVec<F> {
    fn default() -> Self {
        Self::new()
    }
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        Self { entries: Vec::new() }
    }

    /// Builds from arbitrary `(col, value)` pairs; duplicates are summed and zeros dropped.
    pub fn from_pairs<I: IntoIterator<Item = (u32, F)>>(pairs: I) -> Self {
        let mut v: Vec<(u32, F)> = pairs.into_iter().collect();
        v.sort_by_key(|(c, _)| *c);
        let mut out: Vec<(u32, F)> = Vec::with_capacity(v.len());
        for (c, x) in v {
            match out.last_mut() {
                Some((lc, lx)) if *lc == c => *lx = lx.add(&x),
                _ => out.push((c, x)),
            }
        }
        out.retain(|(_, x)| !x.is_zero());
        Self { entries: out }
    }

    /// Caller guarantees strictly increasing columns and no zeros.
    pub fn from_sorted_unchecked(entries: Vec<(u32, F)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|(_, x)| !x.is_zero()));
        Self { entries }
    }

    pub fn from_dense(values: &[F]) -> Self {
        Self {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i as u32, x.clone()))
                .collect(),
        }
    }

    pub fn unit(col: u32) -> Self {
        Self { entries: vec![(col, F::one())] }
    }

    pub fn entries(&self) -> &[(u32, F)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(u32, F)> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(u32, &F)> {
        self.entries.first().map(|(c, x)| (*c, x))
    }

    pub fn get(&self, col: u32) -> F {
        match self.entries.binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.entries[i].1.clone(),
            Err(_) => F::zero(),
        }
    }

    pub fn max_col(&self) -> Option<u32> {
        self.entries.last().map(|(c, _)| *c)
    }

    pub fn scale(&self, k: &F) -> Self {
        if k.is_zero() {
            return Self::new();
        }
        Self { entries: self.entries.iter().map(|(c, x)| (*c, x.mul(k))).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { entries: self.entries.iter().map(|(c, x)| (*c, x.neg())).collect() }
    }

    /// `self + k * other`, merged in one pass.
    pub fn add_scaled(&self, k: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i == a.len() || b[j].0 < a[i].0 {
                out.push((b[j].0, b[j].1.mul(k)));
                j += 1;
            } else {
                let s = a[i].1.add(&b[j].1.mul(k));
                if !s.is_zero() {
                    out.push((a[i].0, s));
                }
                i += 1;
                j += 1;
            }
        }
        Self { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_scaled(&F::one(), other)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_scaled(&F::one().neg(), other)
    }

    pub fn dot(&self, other: &Self) -> F {
        let (a, b) = (&self.entries, &other.entries);
        let (mut i, mut j) = (0, 0);
        let mut acc = F::zero();
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    acc = acc.add(&a[i].1.mul(&b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        acc
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> Option<G>) -> Option<SparseVec<G>> {
        let mut out = Vec::with_capacity(self.entries.len());
        for (c, x) in &self.entries {
            let y = f(x)?;
            if !y.is_zero() {
                out.push((*c, y));
            }
        }
        Some(SparseVec { entries: out })
    }

    pub fn to_dense(&self, width: usize) -> Vec<F> {
        let mut v = vec![F::zero(); width];
        for (c, x) in &self.entries {
            v[*c as usize] = x.clone();
        }
        v
    }
}
