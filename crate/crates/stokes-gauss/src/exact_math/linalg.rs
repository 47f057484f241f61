use std::fmt;

use super::scalar::{GaussRational, Rational};
use crate::error::{Error, Result};

pub type Vector = Vec<GaussRational>;

/// Dense row-major matrix over ℚ(i).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussRational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![GaussRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GaussRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| GaussRational::from_ints(x, 0)).collect()).collect();
        Matrix::from_rows(rows).expect("ragged integer matrix")
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>) -> Self {
        let rows = rows.into_iter().map(|r| r.into_iter().map(GaussRational::real).collect()).collect();
        Matrix::from_rows(rows).expect("ragged rational matrix")
    }

    /// Matrix whose columns are the given vectors of length `n`.
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = Matrix::zeros(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn diag_blocks(blocks: &[Matrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let m: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(n, m);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GaussRational) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn row_slice(&self, i: usize) -> &[GaussRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &GaussRational> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| {
                let x = self.get(i, j);
                if i == j { x.is_one() } else { x.is_zero() }
            }))
    }

    pub fn block(&self, r0: usize, rn: usize, c0: usize, cn: usize) -> Matrix {
        let mut out = Matrix::zeros(rn, cn);
        for i in 0..rn {
            for j in 0..cn {
                out.set(i, j, self.get(r0 + i, c0 + j).clone());
            }
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(r0 + i, c0 + j, b.get(i, j).clone());
            }
        }
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut out = Matrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.set(i, k, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let rows: Vec<Vector> = rows.iter().map(|&i| self.row(i)).collect();
        let mut m = Matrix::from_rows(rows).expect("rows have equal length");
        m.cols = self.cols;
        m
    }

    pub fn hstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.rows != o.rows {
            return Err(Error::DimensionMismatch("hstack row counts".into()));
        }
        let mut out = Matrix::zeros(self.rows, self.cols + o.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, o);
        Ok(out)
    }

    pub fn vstack(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.cols {
            return Err(Error::DimensionMismatch("vstack column counts".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Matrix { rows: self.rows + o.rows, cols: self.cols, data })
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn mul(&self, o: &Matrix) -> Result<Matrix> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "product {}x{} by {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Product where the shapes are known to agree.
    pub fn dot(&self, o: &Matrix) -> Matrix {
        self.mul(o).expect("matrix shapes agree")
    }

    pub fn apply(&self, v: &[GaussRational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| {
                let mut s = GaussRational::zero();
                for (a, b) in self.row_slice(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        s = s + a * b;
                    }
                }
                s
            })
            .collect()
    }

    fn zip_with(&self, o: &Matrix, f: impl Fn(&GaussRational, &GaussRational) -> GaussRational) -> Result<Matrix> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(Error::DimensionMismatch("entrywise shapes".into()));
        }
        let data = self.data.iter().zip(&o.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, o: &Matrix) -> Result<Matrix> {
        self.zip_with(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Matrix) -> Result<Matrix> {
        self.zip_with(o, |a, b| a - b)
    }

    pub fn scale(&self, k: &GaussRational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * k).collect() }
    }

    pub fn neg(&self) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Kronecker product.
    pub fn kron(&self, o: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * o.rows, self.cols * o.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..o.rows {
                    for l in 0..o.cols {
                        out.set(i * o.rows + k, j * o.cols + l, a * o.get(k, l));
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).inv().expect("pivot is nonzero");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let rj = m.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * rj);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn kernel(&self) -> Subspace {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![GaussRational::zero(); self.cols];
            v[f] = GaussRational::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(k, f);
            }
            basis.push(v);
        }
        Subspace::from_vectors(self.cols, basis)
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, (0..self.cols).map(|j| self.column(j)).collect())
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(n))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Some x with M x = b.
    pub fn solve(&self, b: &[GaussRational]) -> Result<Vector> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch("right-hand side length".into()));
        }
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]))?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![GaussRational::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r.get(k, self.cols).clone();
        }
        Ok(x)
    }

    pub fn all_real(&self) -> bool {
        self.data.iter().all(|x| x.is_real())
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row_slice(i).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Subspace of k^n stored by its reduced row echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vector>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { ambient: n, basis: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace::from_vectors(n, Matrix::identity(n).to_rows())
    }

    /// Span of the coordinate vectors e_k for k in `range`.
    pub fn coordinate(n: usize, range: std::ops::Range<usize>) -> Self {
        let basis = range
            .map(|k| {
                let mut v = vec![GaussRational::zero(); n];
                v[k] = GaussRational::one();
                v
            })
            .collect();
        Subspace { ambient: n, basis }
    }

    pub fn from_vectors(n: usize, vectors: Vec<Vector>) -> Self {
        let vectors: Vec<Vector> = vectors.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect();
        if vectors.is_empty() {
            return Subspace::zero(n);
        }
        assert!(vectors.iter().all(|v| v.len() == n), "vector length");
        let m = Matrix::from_rows(vectors).expect("equal lengths");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i)).collect();
        Subspace { ambient: n, basis }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    /// Basis vectors as columns of an n×dim matrix.
    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.basis)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn sum(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "ambient dimensions");
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Subspace::from_vectors(self.ambient, v)
    }

    /// Vectors orthogonal (bilinear pairing, no conjugation) to the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.basis.is_empty() {
            return Subspace::full(self.ambient);
        }
        Matrix::from_rows(self.basis.clone()).expect("equal lengths").kernel()
    }

    /// Matrix whose kernel is this subspace.
    pub fn equations(&self) -> Matrix {
        let ann = self.annihilator();
        if ann.basis.is_empty() {
            return Matrix::zeros(0, self.ambient);
        }
        Matrix::from_rows(ann.basis).expect("equal lengths")
    }

    pub fn intersect(&self, o: &Subspace) -> Subspace {
        assert_eq!(self.ambient, o.ambient, "ambient dimensions");
        let eq = self.equations().vstack(&o.equations()).expect("same ambient");
        if eq.rows() == 0 {
            return Subspace::full(self.ambient);
        }
        eq.kernel()
    }

    pub fn contains(&self, v: &[GaussRational]) -> bool {
        let eq = self.equations();
        eq.apply(v).iter().all(|x| x.is_zero())
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        o.basis.iter().all(|v| self.contains(v))
    }

    /// Image under a linear map.
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map domain");
        Subspace::from_vectors(m.rows(), self.basis.iter().map(|v| m.apply(v)).collect())
    }

    /// {x : M x ∈ self}.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "map codomain");
        let eq = self.equations();
        if eq.rows() == 0 {
            return Subspace::full(m.cols());
        }
        eq.dot(m).kernel()
    }

    /// A complement spanned by coordinate vectors.
    pub fn coordinate_complement(&self) -> Vec<usize> {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero basis vector"))
            .collect();
        (0..self.ambient).filter(|k| !pivots.contains(k)).collect()
    }

    /// Coordinates of v ∈ self in the echelon basis.
    pub fn coordinates(&self, v: &[GaussRational]) -> Option<Vector> {
        let mut out = Vec::with_capacity(self.dim());
        let mut rest = v.to_vec();
        for b in &self.basis {
            let p = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
            let f = rest[p].clone();
            if !f.is_zero() {
                for (r, x) in rest.iter_mut().zip(b) {
                    *r = &*r - &(&f * x);
                }
            }
            out.push(f);
        }
        if rest.iter().all(|x| x.is_zero()) {
            Some(out)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| GaussRational::from_ints(a, 0)).collect()
    }

    #[test]
    fn kernel_example() {
        let m = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel(), Subspace::from_vectors(2, vec![v(&[1, -1])]));
        assert_eq!(Matrix::identity(3).rank(), 3);
    }

    #[test]
    fn intersect_and_sum() {
        let a = Subspace::from_vectors(2, vec![v(&[1, 0])]);
        let b = Subspace::from_vectors(2, vec![v(&[0, 1])]);
        assert!(a.intersect(&b).is_zero());
        assert!(a.sum(&b).is_full());
        let c = Subspace::from_vectors(3, vec![v(&[1, 2, 0]), v(&[0, 1, 1])]);
        let d = Subspace::from_vectors(3, vec![v(&[1, 3, 1]), v(&[0, 0, 1])]);
        let i = c.intersect(&d);
        assert_eq!(i.dim(), 1);
        assert!(c.contains(&v(&[1, 3, 1])));
        assert_eq!(c.dim() + d.dim(), i.dim() + c.sum(&d).dim());
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_ints(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, Matrix::from_ints(&[&[1, -1], &[-1, 2]]));
        assert!(m.dot(&inv).is_identity());
        let x = m.solve(&v(&[3, 2])).unwrap();
        assert_eq!(x, v(&[1, 1]));
        let s = Matrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert_eq!(s.inverse(), Err(Error::Singular));
        assert_eq!(s.solve(&v(&[1, 0])), Err(Error::NoSolution));
    }

    #[test]
    fn preimage_and_coordinates() {
        let m = Matrix::from_ints(&[&[1, 1], &[0, 0]]);
        let w = Subspace::zero(2);
        assert_eq!(w.preimage(&m), Subspace::from_vectors(2, vec![v(&[1, -1])]));
        let s = Subspace::from_vectors(3, vec![v(&[1, 0, 2]), v(&[0, 1, 1])]);
        assert_eq!(s.coordinates(&v(&[2, 3, 7])), Some(v(&[2, 3])));
        assert_eq!(s.coordinates(&v(&[0, 0, 1])), None);
        assert_eq!(s.coordinate_complement(), vec![2]);
    }
}
