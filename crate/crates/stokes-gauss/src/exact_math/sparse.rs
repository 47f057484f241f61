use std::collections::BTreeMap;

use super::scalar::GaussRational;

pub type SparseVec = BTreeMap<usize, GaussRational>;

/// Incremental row echelon form for sparse rows; each stored row has leading entry 1.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseVec>,
}

pub fn axpy(row: &mut SparseVec, f: &GaussRational, x: &SparseVec) {
    for (&k, v) in x {
        let t = f * v;
        match row.get_mut(&k) {
            Some(e) => {
                *e = &*e + &t;
                if e.is_zero() {
                    row.remove(&k);
                }
            }
            None => {
                if !t.is_zero() {
                    row.insert(k, t);
                }
            }
        }
    }
}

pub fn from_dense(v: &[GaussRational]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k, x.clone())).collect()
}

pub fn to_dense(v: &SparseVec, n: usize) -> Vec<GaussRational> {
    let mut out = vec![GaussRational::zero(); n];
    for (&k, x) in v {
        out[k] = x.clone();
    }
    out
}

impl SparseEchelon {
    pub fn new(ncols: usize) -> Self {
        SparseEchelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Residual with zero entries at every pivot column.
    pub fn reduce(&self, mut row: SparseVec) -> SparseVec {
        let mut cursor = 0;
        loop {
            let next = row.range(cursor..).map(|(&k, _)| k).find(|k| self.pivots.contains_key(k));
            let Some(k) = next else { break };
            let f = -&row[&k];
            axpy(&mut row, &f, &self.pivots[&k]);
            cursor = k + 1;
        }
        row
    }

    /// Adds a row; returns true when it raised the rank.
    pub fn insert(&mut self, row: SparseVec) -> bool {
        let row = self.reduce(row);
        let Some((&lead, x)) = row.iter().next() else { return false };
        let inv = x.inv().expect("nonzero lead");
        let row: SparseVec = row.into_iter().map(|(k, v)| (k, &v * &inv)).collect();
        self.pivots.insert(lead, row);
        true
    }

    /// Basis of {x : row·x = 0 for every stored row}.
    pub fn kernel(&self) -> Vec<SparseVec> {
        // back-reduce so every pivot row is zero at the other pivot columns
        let keys: Vec<usize> = self.pivots.keys().copied().collect();
        let mut full: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for &k in keys.iter().rev() {
            let mut row = self.pivots[&k].clone();
            let later: Vec<usize> = row.keys().copied().filter(|c| *c > k && full.contains_key(c)).collect();
            for c in later {
                if let Some(f) = row.get(&c).cloned() {
                    axpy(&mut row, &(-&f), &full[&c]);
                }
            }
            full.insert(k, row);
        }
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivots.contains_key(c)) {
            let mut v = SparseVec::new();
            v.insert(free, GaussRational::one());
            for (&p, row) in &full {
                if let Some(x) = row.get(&free) {
                    v.insert(p, -x);
                }
            }
            out.push(v);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::linalg::Matrix;

    #[test]
    fn matches_dense_rank_and_kernel() {
        let m = Matrix::from_ints(&[&[1, 2, 0, 1], &[2, 4, 1, 0], &[3, 6, 1, 1], &[0, 0, 1, -2]]);
        let mut e = SparseEchelon::new(4);
        for i in 0..4 {
            e.insert(from_dense(m.row_slice(i)));
        }
        assert_eq!(e.rank(), m.rank());
        let k = e.kernel();
        assert_eq!(k.len(), 4 - m.rank());
        for v in &k {
            let d = to_dense(v, 4);
            assert!(m.apply(&d).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn residual_is_class_invariant() {
        let mut e = SparseEchelon::new(3);
        e.insert(from_dense(&Matrix::from_ints(&[&[1, 1, 0]]).row(0)));
        let a = e.reduce(from_dense(&Matrix::from_ints(&[&[0, 1, 1]]).row(0)));
        let b = e.reduce(from_dense(&Matrix::from_ints(&[&[3, 4, 1]]).row(0)));
        assert_eq!(a, b);
    }
}
