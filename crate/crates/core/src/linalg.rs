//! Exact sparse row reduction over a [`FieldSpec`].

use std::collections::{BTreeMap, HashMap};

use crate::algebra::SparseVec;
use crate::field::{FieldSpec, Scalar};

/// Rows in semi-echelon form: each row has a distinct leading index and a
/// leading coefficient of one.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    rows: Vec<SparseVec>,
    pivots: HashMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new(field: FieldSpec) -> Self {
        EchelonBasis {
            field,
            rows: Vec::new(),
            pivots: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Eliminates every pivot column from `v`.
    pub fn reduce(&self, v: &[(usize, Scalar)]) -> SparseVec {
        let f = &self.field;
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut cursor = 0usize;
        loop {
            let next = acc
                .range(cursor..)
                .find(|(k, _)| self.pivots.contains_key(k))
                .map(|(k, c)| (*k, c.clone()));
            let Some((col, c)) = next else { break };
            let row = &self.rows[self.pivots[&col]];
            for (k, r) in row {
                let delta = f.mul(&c, r);
                let cur = acc.remove(k).unwrap_or_else(|| f.zero());
                let val = f.sub(&cur, &delta);
                if !f.is_zero(&val) {
                    acc.insert(*k, val);
                }
            }
            cursor = col + 1;
        }
        acc.into_iter().collect()
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.first().cloned() else {
            return false;
        };
        let inv = self.field.inv(&c).expect("leading coefficient is nonzero");
        let row: SparseVec = r.into_iter().map(|(k, a)| (k, self.field.mul(&a, &inv))).collect();
        self.pivots.insert(lead, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).is_empty()
    }
}

/// Kernel of the linear map sending domain basis vector `j` to `images[j]`.
///
/// Returned vectors are expressed in domain coordinates `0..images.len()`.
pub fn kernel(field: FieldSpec, images: &[SparseVec]) -> Vec<SparseVec> {
    // Augment each image with its domain unit vector, shifted past every
    // codomain index, and reduce on the codomain part only.
    let offset = images
        .iter()
        .flat_map(|w| w.iter().map(|(k, _)| k + 1))
        .max()
        .unwrap_or(0);
    let mut basis = EchelonBasis::new(field);
    let mut out = Vec::new();
    for (j, w) in images.iter().enumerate() {
        let mut aug = w.clone();
        aug.push((offset + j, field.one()));
        let r = basis.reduce(&aug);
        match r.first() {
            Some((lead, _)) if *lead < offset => {
                basis.insert(&r);
            }
            _ => out.push(r.into_iter().map(|(k, c)| (k - offset, c)).collect()),
        }
    }
    out
}
