//! Sparse row echelon forms over an exact field.
//!
//! Rows are kept with a unit pivot in their leading (smallest) column.
//! A vector is reduced by walking a dense scratch copy left to right and
//! subtracting pivot rows, which is linear in the row length and the
//! number of pivots met. Optionally every row remembers the combination of
//! inserted vectors that produced it, which turns the echelon into a
//! solver and a kernel finder.

use std::collections::HashMap;

use crate::scalar::Field;

/// Sparse vector: `(column, value)` pairs, sorted by column, no zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

#[derive(Debug, Clone)]
struct Row<E> {
    entries: SparseVec<E>,
    combo: SparseVec<E>,
}

#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    track: bool,
    ninputs: usize,
    rows: Vec<Row<F::Elem>>,
    pivot_of: HashMap<usize, usize>,
}

/// Outcome of [`Echelon::insert`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Inserted<E> {
    /// The vector was independent; the index of its new pivot row.
    Pivot(usize),
    /// The vector was dependent; with tracking, the relation among inputs
    /// (as a combination of input ids summing to zero).
    Dependent(SparseVec<E>),
}

impl<F: Field> Echelon<F> {
    pub fn new(field: &F, ncols: usize) -> Self {
        Self::build(field, ncols, false)
    }

    /// An echelon that records, for each row, the combination of inserted
    /// vectors it equals.
    pub fn tracking(field: &F, ncols: usize) -> Self {
        Self::build(field, ncols, true)
    }

    fn build(field: &F, ncols: usize, track: bool) -> Self {
        Echelon {
            field: field.clone(),
            ncols,
            track,
            ninputs: 0,
            rows: Vec::new(),
            pivot_of: HashMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Number of vectors inserted so far; the next one gets this id.
    pub fn num_inputs(&self) -> usize {
        self.ninputs
    }

    fn dense(&self, v: &[(usize, F::Elem)]) -> Vec<F::Elem> {
        let mut d = vec![self.field.zero(); self.ncols];
        for (c, x) in v {
            d[*c] = x.clone();
        }
        d
    }

    /// Reduces `scratch` in place; with `combo`, tracks the subtracted rows.
    fn reduce_dense(&self, scratch: &mut [F::Elem], mut combo: Option<&mut Vec<F::Elem>>) {
        let f = &self.field;
        for c in 0..self.ncols {
            if f.is_zero(&scratch[c]) {
                continue;
            }
            let Some(&r) = self.pivot_of.get(&c) else {
                continue;
            };
            let row = &self.rows[r];
            let factor = f.neg(&scratch[c]);
            for (col, x) in &row.entries {
                scratch[*col] = f.add(&scratch[*col], &f.mul(&factor, x));
            }
            if let Some(cb) = combo.as_deref_mut() {
                for (id, x) in &row.combo {
                    cb[*id] = f.add(&cb[*id], &f.mul(&factor, x));
                }
            }
        }
    }

    fn sparse(&self, d: Vec<F::Elem>) -> SparseVec<F::Elem> {
        d.into_iter()
            .enumerate()
            .filter(|(_, x)| !self.field.is_zero(x))
            .collect()
    }

    /// Reduced form of `v` against the current rows.
    pub fn reduce(&self, v: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
        let mut d = self.dense(v);
        self.reduce_dense(&mut d, None);
        self.sparse(d)
    }

    pub fn contains(&self, v: &[(usize, F::Elem)]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v` as input number [`Self::num_inputs`].
    pub fn insert(&mut self, v: &[(usize, F::Elem)]) -> Inserted<F::Elem> {
        let f = self.field.clone();
        let id = self.ninputs;
        self.ninputs += 1;
        let mut d = self.dense(v);
        let mut combo = if self.track {
            let mut cb = vec![f.zero(); id + 1];
            cb[id] = f.one();
            Some(cb)
        } else {
            None
        };
        self.reduce_dense(&mut d, combo.as_mut());
        let Some(lead) = d.iter().position(|x| !f.is_zero(x)) else {
            return Inserted::Dependent(combo.map(|c| self.sparse(c)).unwrap_or_default());
        };
        let inv = f.inv(&d[lead]).expect("pivot is nonzero");
        let entries: SparseVec<F::Elem> = d
            .into_iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, x)| !f.is_zero(x))
            .map(|(c, x)| (c, f.mul(&inv, &x)))
            .collect();
        let combo = combo
            .map(|c| {
                c.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !f.is_zero(x))
                    .map(|(i, x)| (i, f.mul(&inv, &x)))
                    .collect()
            })
            .unwrap_or_default();
        let r = self.rows.len();
        self.rows.push(Row { entries, combo });
        self.pivot_of.insert(lead, r);
        Inserted::Pivot(r)
    }

    /// With tracking: a combination of inputs equal to `target`, if any.
    pub fn solve(&self, target: &[(usize, F::Elem)]) -> Option<SparseVec<F::Elem>> {
        assert!(self.track, "solve needs a tracking echelon");
        let f = &self.field;
        let mut d = self.dense(target);
        let mut combo = vec![f.zero(); self.ninputs];
        self.reduce_dense(&mut d, Some(&mut combo));
        if d.iter().any(|x| !f.is_zero(x)) {
            return None;
        }
        // target - sum(rows used) = 0, and combo holds minus that sum
        Some(
            combo
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !f.is_zero(x))
                .map(|(i, x)| (i, f.neg(&x)))
                .collect(),
        )
    }

    /// Pivot columns in row order.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.entries[0].0).collect()
    }

    pub fn row(&self, r: usize) -> &[(usize, F::Elem)] {
        &self.rows[r].entries
    }
}

/// Basis of `{x : sum_i x_i v_i = 0}` for the given vectors.
pub fn kernel<F: Field>(field: &F, ncols: usize, vectors: &[SparseVec<F::Elem>]) -> Vec<SparseVec<F::Elem>> {
    let mut e = Echelon::tracking(field, ncols);
    let mut out = Vec::new();
    for v in vectors {
        if let Inserted::Dependent(rel) = e.insert(v) {
            out.push(rel);
        }
    }
    out
}

pub fn rank<F: Field>(field: &F, ncols: usize, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn kernel_of_dependent_rows() {
        let f = PrimeField::new(7).unwrap();
        // v2 = v0 + 2 v1
        let v = vec![
            vec![(0, 1), (2, 3)],
            vec![(1, 1), (2, 1)],
            vec![(0, 1), (1, 2), (2, 5)],
        ];
        let k = kernel(&f, 3, &v);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0], vec![(0, 6), (1, 5), (2, 1)]);
        assert_eq!(rank(&f, 3, &v), 2);
    }

    #[test]
    fn solve_over_rationals() {
        let q = Rationals;
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let mut e = Echelon::tracking(&q, 2);
        e.insert(&[(0, r(2, 1)), (1, r(1, 1))]);
        e.insert(&[(1, r(3, 1))]);
        let x = e.solve(&[(0, r(1, 1))]).unwrap();
        // 1/2 v0 - 1/6 v1 = (1, 0)
        assert_eq!(x, vec![(0, r(1, 2)), (1, r(-1, 6))]);
        assert!(e.solve(&[(0, r(1, 1)), (1, r(1, 1))]).is_some());
    }

    proptest! {
        #[test]
        fn kernel_vectors_annihilate(rows in proptest::collection::vec(
            proptest::collection::vec(0u32..5, 4), 1..7)) {
            let f = PrimeField::new(5).unwrap();
            let vs: Vec<SparseVec<u32>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(_, &x)| x != 0).map(|(c, &x)| (c, x)).collect())
                .collect();
            let k = kernel(&f, 4, &vs);
            prop_assert_eq!(k.len() + rank(&f, 4, &vs), vs.len());
            for rel in &k {
                let mut acc = [0u32; 4];
                for (i, c) in rel {
                    for (col, x) in &vs[*i] {
                        acc[*col] = f.add(&acc[*col], &f.mul(c, x));
                    }
                }
                prop_assert!(acc.iter().all(|&x| x == 0));
            }
        }
    }
}
