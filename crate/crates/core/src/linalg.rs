//! Exact sparse linear algebra over a cyclotomic field: incremental reduced
//! row echelon forms and kernels of linear maps given by column images.

use std::collections::BTreeMap;

use crate::scalars::{CyclotomicField, Scalar};

/// Sparse vector keyed by coordinate; zero entries are never stored.
pub type SparseVec = BTreeMap<u64, Scalar>;

/// `v -= c * w`
fn axpy(field: &CyclotomicField, v: &mut SparseVec, c: &Scalar, w: &SparseVec) {
    for (k, x) in w {
        let delta = field.mul(c, x);
        match v.get_mut(k) {
            Some(y) => {
                *y = field.sub(y, &delta);
                if y.is_zero() {
                    v.remove(k);
                }
            }
            None => {
                v.insert(*k, field.neg(&delta));
            }
        }
    }
}

fn normalize(field: &CyclotomicField, v: &mut SparseVec) {
    let Some((_, lead)) = v.iter().next() else { return };
    let inv = field.inv(lead).expect("stored entries are nonzero");
    for x in v.values_mut() {
        *x = field.mul(x, &inv);
    }
}

/// Reduced row echelon form built one vector at a time. Every row has its
/// pivot at its smallest key, with coefficient one, and no other row has a
/// nonzero entry in a pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: CyclotomicField,
    rows: BTreeMap<u64, SparseVec>,
}

impl Echelon {
    pub fn new(field: CyclotomicField) -> Self {
        Echelon { field, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Rows in ascending pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Remainder of `v` after eliminating every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let pivots: Vec<u64> = self.rows.keys().copied().filter(|k| v.contains_key(k)).collect();
        for p in pivots {
            if let Some(c) = v.get(&p).cloned() {
                axpy(&self.field, &mut v, &c, &self.rows[&p]);
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut r = self.reduce(v);
        if r.is_empty() {
            return false;
        }
        normalize(&self.field, &mut r);
        let pivot = *r.keys().next().expect("nonempty");
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&pivot).cloned() {
                axpy(&self.field, row, &c, &r);
            }
        }
        self.rows.insert(pivot, r);
        true
    }
}

/// Basis of the kernel of the linear map sending the `j`-th standard basis
/// vector to `images[j]`; kernel vectors are expressed in those coordinates.
pub fn kernel(field: &CyclotomicField, images: &[SparseVec]) -> Vec<SparseVec> {
    // pivot key of the image part -> (image, combination of inputs)
    let mut pivots: BTreeMap<u64, (SparseVec, SparseVec)> = BTreeMap::new();
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut combo = SparseVec::from([(j as u64, field.one())]);
        let mut cursor = 0u64;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| pivots.contains_key(k));
            let Some(p) = next else { break };
            let c = v[&p].clone();
            let (row, row_combo) = &pivots[&p];
            axpy(field, &mut v, &c, row);
            axpy(field, &mut combo, &c, row_combo);
            cursor = p + 1;
        }
        if v.is_empty() {
            out.push(combo);
        } else {
            let lead = v.values().next().expect("nonempty").clone();
            let inv = field.inv(&lead).expect("nonzero");
            for x in v.values_mut().chain(combo.values_mut()) {
                *x = field.mul(x, &inv);
            }
            pivots.insert(*v.keys().next().expect("nonempty"), (v, combo));
        }
    }
    out
}
