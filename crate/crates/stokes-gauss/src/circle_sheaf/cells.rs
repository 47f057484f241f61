use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exact_math::sparse::{SparseEchelon, SparseVec};
use crate::exact_math::{GaussRational, Matrix, Subspace};
use crate::stokes_core::morphism::quotient_projection;

/// Finite regular cell complex: cell dimensions and signed boundary incidences.
#[derive(Clone, Debug, Default)]
pub struct CellComplex {
    pub dims: Vec<u8>,
    pub boundary: Vec<Vec<(usize, i8)>>,
}

impl CellComplex {
    pub fn add_cell(&mut self, dim: u8, boundary: Vec<(usize, i8)>) -> usize {
        self.dims.push(dim);
        self.boundary.push(boundary);
        self.dims.len() - 1
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn max_dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn count(&self, d: u8) -> usize {
        self.dims.iter().filter(|&&x| x == d).count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }
}

/// Stalks and restriction maps stalk(face) → stalk(cell) on a cell complex.
#[derive(Clone, Debug)]
pub struct CellSheaf {
    pub complex: CellComplex,
    pub stalk: Vec<usize>,
    pub maps: HashMap<(usize, usize), Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    /// dims h^0, h^1, …, up to the top cell dimension
    pub h: Vec<usize>,
    /// alternating sum of cochain dimensions
    pub cochain_chi: i64,
}

impl CohomologyResult {
    pub fn chi(&self) -> i64 {
        self.h.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
    }

    pub fn get(&self, k: usize) -> usize {
        self.h.get(k).copied().unwrap_or(0)
    }
}

impl CellSheaf {
    /// Coordinates of the degree-k cochains: start offset per cell (None for other degrees) and total.
    pub fn offsets(&self, k: u8) -> (Vec<Option<usize>>, usize) {
        let mut off = vec![None; self.complex.len()];
        let mut total = 0;
        for (c, &d) in self.complex.dims.iter().enumerate() {
            if d == k {
                off[c] = Some(total);
                total += self.stalk[c];
            }
        }
        (off, total)
    }

    /// Rows of the coboundary C^k → C^{k+1}, indexed by the coordinates of C^{k+1}.
    pub fn coboundary_rows(&self, k: u8) -> Vec<SparseVec> {
        let (dom, _) = self.offsets(k);
        let mut rows = Vec::new();
        for (c, &d) in self.complex.dims.iter().enumerate() {
            if d != k + 1 {
                continue;
            }
            let mut block: Vec<SparseVec> = vec![SparseVec::new(); self.stalk[c]];
            for &(f, sign) in &self.complex.boundary[c] {
                let Some(o) = dom[f] else { continue };
                let m = &self.maps[&(f, c)];
                for (i, row) in block.iter_mut().enumerate() {
                    for j in 0..m.cols() {
                        let x = m.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        let x = if sign < 0 { -x } else { x.clone() };
                        let e = row.entry(o + j).or_insert_with(GaussRational::zero);
                        *e = &*e + &x;
                        if e.is_zero() {
                            row.remove(&(o + j));
                        }
                    }
                }
            }
            rows.extend(block);
        }
        rows
    }

    pub fn coboundary_echelon(&self, k: u8) -> SparseEchelon {
        let (_, n) = self.offsets(k);
        let mut e = SparseEchelon::new(n);
        for row in self.coboundary_rows(k) {
            e.insert(row);
        }
        e
    }

    pub fn cohomology(&self) -> CohomologyResult {
        let top = self.complex.max_dim() as u8;
        let sizes: Vec<usize> = (0..=top).map(|k| self.offsets(k).1).collect();
        let ranks: Vec<usize> = (0..top).map(|k| self.coboundary_echelon(k).rank()).collect();
        let h = (0..=top as usize)
            .map(|k| {
                let out = if k < ranks.len() { ranks[k] } else { 0 };
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                sizes[k] - out - inc
            })
            .collect();
        let cochain_chi = sizes.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        CohomologyResult { h, cochain_chi }
    }

    pub fn check_complex(&self) -> Result<()> {
        // δ∘δ = 0 on every degree
        let top = self.complex.max_dim() as u8;
        for k in 0..top.saturating_sub(1) {
            let d0 = self.coboundary_rows(k);
            let d1 = self.coboundary_rows(k + 1);
            for row in &d1 {
                let mut acc = SparseVec::new();
                for (&j, x) in row {
                    crate::exact_math::sparse::axpy(&mut acc, x, &d0[j]);
                }
                if !acc.is_empty() {
                    return Err(Error::GluingViolation("coboundary does not square to zero".into()));
                }
            }
        }
        Ok(())
    }
}

/// Cells whose stalks are subspaces of chart coordinates, charts related by frames.
pub struct FramedStalks<'a> {
    pub complex: &'a CellComplex,
    /// per chart: global → chart coordinates
    pub frames: &'a [Matrix],
    pub chart: Vec<usize>,
    pub stalks: Vec<Subspace>,
}

impl FramedStalks<'_> {
    fn transitions(&self) -> Result<HashMap<(usize, usize), Matrix>> {
        let inv: Vec<Matrix> = self.frames.iter().map(|f| f.inverse()).collect::<Result<_>>()?;
        let mut out = HashMap::new();
        for a in 0..self.frames.len() {
            for b in 0..self.frames.len() {
                out.insert((a, b), self.frames[b].dot(&inv[a]));
            }
        }
        Ok(out)
    }

    /// Restriction maps in the echelon bases of the stalks.
    pub fn sheaf(&self) -> Result<CellSheaf> {
        let tr = self.transitions()?;
        let mut maps = HashMap::new();
        for (c, bd) in self.complex.boundary.iter().enumerate() {
            for &(f, _) in bd {
                let t = &tr[&(self.chart[f], self.chart[c])];
                let cols: Vec<_> = self.stalks[f]
                    .basis()
                    .iter()
                    .map(|b| {
                        self.stalks[c].coordinates(&t.apply(b)).ok_or_else(|| {
                            Error::GluingViolation(format!("stalk of cell {} does not restrict into cell {}", f, c))
                        })
                    })
                    .collect::<Result<_>>()?;
                maps.insert((f, c), Matrix::from_columns(self.stalks[c].dim(), &cols));
            }
        }
        let stalk = self.stalks.iter().map(|s| s.dim()).collect();
        Ok(CellSheaf { complex: self.complex.clone(), stalk, maps })
    }

    /// Quotient sheaf self / sub; `sub` must be a subsheaf in the same charts.
    pub fn quotient(&self, sub: &FramedStalks) -> Result<CellSheaf> {
        Ok(self.quotient_with_projections(sub)?.0)
    }

    /// Quotient sheaf with the per-cell projections from the stalks of `self`.
    pub fn quotient_with_projections(&self, sub: &FramedStalks) -> Result<(CellSheaf, Vec<Matrix>)> {
        let big = self.sheaf()?;
        let n = self.complex.len();
        let mut proj = Vec::with_capacity(n);
        let mut lift = Vec::with_capacity(n);
        for c in 0..n {
            let coords: Vec<_> = sub.stalks[c]
                .basis()
                .iter()
                .map(|v| self.stalks[c].coordinates(v).ok_or_else(|| Error::GluingViolation(format!("cell {} is not a subsheaf stalk", c))))
                .collect::<Result<_>>()?;
            let w = Subspace::from_vectors(self.stalks[c].dim(), coords);
            let keep = w.coordinate_complement();
            let mut l = Matrix::zeros(self.stalks[c].dim(), keep.len());
            for (j, &k) in keep.iter().enumerate() {
                l.set(k, j, GaussRational::one());
            }
            proj.push(quotient_projection(&w));
            lift.push(l);
        }
        let mut maps = HashMap::new();
        for (&(f, c), m) in &big.maps {
            maps.insert((f, c), proj[c].dot(m).dot(&lift[f]));
        }
        let stalk = proj.iter().map(|p| p.rows()).collect();
        Ok((CellSheaf { complex: self.complex.clone(), stalk, maps }, proj))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // circle with k vertices and k edges, constant stalks of dim r
    fn constant_circle(k: usize, r: usize) -> CellSheaf {
        let mut cx = CellComplex::default();
        for _ in 0..k {
            cx.add_cell(0, vec![]);
        }
        for i in 0..k {
            cx.add_cell(1, vec![(i, -1), ((i + 1) % k, 1)]);
        }
        let mut maps = HashMap::new();
        for e in k..2 * k {
            for &(v, _) in &cx.boundary[e].clone() {
                maps.insert((v, e), Matrix::identity(r));
            }
        }
        CellSheaf { complex: cx, stalk: vec![r; 2 * k], maps }
    }

    #[test]
    fn constant_sheaf_on_circle() {
        let h = constant_circle(5, 3).cohomology();
        assert_eq!(h.h, vec![3, 3]);
        assert_eq!(h.chi(), h.cochain_chi);
    }

    #[test]
    fn extension_by_zero_on_open_arc() {
        let mut s = constant_circle(4, 2);
        // kill vertex 0: the open arc complement of a point
        s.stalk[0] = 0;
        for e in 4..8 {
            if s.maps.contains_key(&(0, e)) {
                s.maps.insert((0, e), Matrix::zeros(2, 0));
            }
        }
        assert_eq!(s.cohomology().h, vec![0, 2]);
    }
}
