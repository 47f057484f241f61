use crate::error::{Error, Result};
use crate::exact_math::circle::first_incomparable;
use crate::exact_math::{leq_at, sign_on_cell_after, stokes_directions, CirclePoint, GaussRational, Matrix, Order, Subspace};
use crate::stokes_core::{ExponentLayout, StokesMatrices};

use super::cells::{CellComplex, CellSheaf, FramedStalks};

/// The circle cut at the four base points and at Stokes directions; vertex k has cell id k, edge k has cell id V + k.
#[derive(Clone, Debug)]
pub struct CircleModel {
    pub vertices: Vec<CirclePoint>,
    /// vertex index of θ_o^{(ν)}
    pub base: [usize; 4],
    pub vertex_chart: Vec<usize>,
    pub edge_chart: Vec<usize>,
    pub complex: CellComplex,
}

impl CircleModel {
    /// Vertices: base points, Stokes directions of all pairs in C ∪ {c0}, and `extra` points.
    /// With `strict`, θ_o must be generic for C ∪ {c0}.
    pub fn build(layout: &ExponentLayout, c0: Option<&GaussRational>, extra: &[CirclePoint], strict: bool) -> Result<CircleModel> {
        let mut exps = layout.exponents.clone();
        if let Some(c) = c0 {
            if !exps.contains(c) {
                exps.push(c.clone());
            }
        }
        let check = if strict { exps.clone() } else { layout.exponents.clone() };
        if let Some((i, j)) = first_incomparable(&layout.theta0, &check) {
            return Err(Error::NonGenericDirection(check[i].to_string(), check[j].to_string()));
        }
        let bases: Vec<CirclePoint> = (0..4).map(|nu| layout.theta(nu)).collect();
        let mut vertices = bases.clone();
        for i in 0..exps.len() {
            for j in i + 1..exps.len() {
                vertices.extend(stokes_directions(&exps[i], &exps[j])?);
            }
        }
        vertices.extend(extra.iter().cloned());
        vertices.sort();
        vertices.dedup();
        let nv = vertices.len();
        let pos = |p: &CirclePoint| vertices.iter().position(|v| v == p).expect("base point is a vertex");
        let base = [pos(&bases[0]), pos(&bases[1]), pos(&bases[2]), pos(&bases[3])];
        let mut vertex_chart = vec![0; nv];
        let mut edge_chart = vec![0; nv];
        let mut chart = 0;
        for step in 0..nv {
            let k = (base[0] + step) % nv;
            if let Some(nu) = base.iter().position(|&b| b == k) {
                chart = nu;
            }
            vertex_chart[k] = chart;
            edge_chart[k] = chart;
        }
        let mut complex = CellComplex::default();
        for _ in 0..nv {
            complex.add_cell(0, vec![]);
        }
        for k in 0..nv {
            complex.add_cell(1, vec![(k, -1), ((k + 1) % nv, 1)]);
        }
        Ok(CircleModel { vertices, base, vertex_chart, edge_chart, complex })
    }

    pub fn nv(&self) -> usize {
        self.vertices.len()
    }

    pub fn chart(&self, cell: usize) -> usize {
        let nv = self.nv();
        if cell < nv { self.vertex_chart[cell] } else { self.edge_chart[cell - nv] }
    }

    /// Order of c against c0 on a cell.
    pub fn order_on_cell(&self, cell: usize, c: &GaussRational, c0: &GaussRational) -> Order {
        let nv = self.nv();
        if cell < nv {
            return leq_at(c, c0, &self.vertices[cell]);
        }
        let d = c - c0;
        if d.is_zero() {
            return Order::Equal;
        }
        if sign_on_cell_after(&self.vertices[cell - nv], &d) < 0 { Order::LessStrict } else { Order::GreaterStrict }
    }

    /// Cells of the closed interval I^{(ν)}: its vertices and edges.
    pub fn interval_cells(&self, nu: usize) -> Vec<usize> {
        let nv = self.nv();
        let (a, b) = (self.base[nu % 4], self.base[(nu + 1) % 4]);
        let mut out = Vec::new();
        let mut k = a;
        loop {
            out.push(k);
            if k == b {
                break;
            }
            out.push(nv + k);
            k = (k + 1) % nv;
        }
        out
    }
}

/// global → chart ν coordinates, ν = 0..3.
pub fn frames(data: &StokesMatrices) -> Vec<Matrix> {
    (0..4).map(|nu| data.iso(nu)).collect()
}

/// Span of the coordinate blocks of the selected exponents.
pub fn block_subspace(layout: &ExponentLayout, select: impl Fn(usize) -> bool) -> Subspace {
    let r = layout.total_rank();
    let vecs = (0..layout.n())
        .filter(|&i| select(i))
        .flat_map(|i| layout.block(i))
        .map(|k| {
            let mut v = vec![GaussRational::zero(); r];
            v[k] = GaussRational::one();
            v
        })
        .collect();
    Subspace::from_vectors(r, vecs)
}

/// Stalks ⊕_{c ≤ c0} G_c (or strict) per cell, in chart coordinates.
pub fn stalks_leq(data: &StokesMatrices, model: &CircleModel, c0: &GaussRational, strict: bool) -> Vec<Subspace> {
    let layout = &data.layout;
    (0..model.complex.len())
        .map(|cell| {
            block_subspace(layout, |i| match model.order_on_cell(cell, &layout.exponents[i], c0) {
                Order::LessStrict => true,
                Order::Equal => !strict,
                _ => false,
            })
        })
        .collect()
}

pub fn stalks_full(data: &StokesMatrices, model: &CircleModel) -> Vec<Subspace> {
    vec![Subspace::full(data.total_rank()); model.complex.len()]
}

pub struct CircleSheaves<'a> {
    pub data: &'a StokesMatrices,
    pub model: CircleModel,
    pub frames: Vec<Matrix>,
}

impl<'a> CircleSheaves<'a> {
    pub fn new(data: &'a StokesMatrices, c0: Option<&GaussRational>, strict_model: bool) -> Result<Self> {
        let model = CircleModel::build(&data.layout, c0, &[], strict_model)?;
        Ok(CircleSheaves { data, model, frames: frames(data) })
    }

    pub fn with_model(data: &'a StokesMatrices, model: CircleModel) -> Self {
        CircleSheaves { data, model, frames: frames(data) }
    }

    pub fn framed(&self, stalks: Vec<Subspace>) -> FramedStalks<'_> {
        let chart = (0..self.model.complex.len()).map(|c| self.model.chart(c)).collect();
        FramedStalks { complex: &self.model.complex, frames: &self.frames, chart, stalks }
    }

    pub fn leq(&self, c0: &GaussRational) -> Result<CellSheaf> {
        self.framed(stalks_leq(self.data, &self.model, c0, false)).sheaf()
    }

    pub fn lt(&self, c0: &GaussRational) -> Result<CellSheaf> {
        self.framed(stalks_leq(self.data, &self.model, c0, true)).sheaf()
    }

    pub fn local_system(&self) -> Result<CellSheaf> {
        self.framed(stalks_full(self.data, &self.model)).sheaf()
    }

    /// gr_c = L_{≤c} / L_{<c}.
    pub fn graded(&self, c: &GaussRational) -> Result<CellSheaf> {
        let big = self.framed(stalks_leq(self.data, &self.model, c, false));
        let small = self.framed(stalks_leq(self.data, &self.model, c, true));
        big.quotient(&small)
    }
}

/// L_{≤c0} on the circle model for (C, c0); θ_o must be generic for C ∪ {c0}.
pub fn sheaf_leq(data: &StokesMatrices, c0: &GaussRational) -> Result<CellSheaf> {
    CircleSheaves::new(data, Some(c0), true)?.leq(c0)
}

/// L_{<c0}.
pub fn sheaf_lt(data: &StokesMatrices, c0: &GaussRational) -> Result<CellSheaf> {
    CircleSheaves::new(data, Some(c0), true)?.lt(c0)
}

pub fn build_circle_model(layout: &ExponentLayout, c0: &GaussRational) -> Result<CircleModel> {
    CircleModel::build(layout, Some(c0), &[], true)
}
