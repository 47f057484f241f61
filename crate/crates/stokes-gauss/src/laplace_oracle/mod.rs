//! Brute-force check of the transformation rule: the sheaves G and G_{<γ} on a disc model, their
//! cohomology, and the filtration read off from H¹.

pub mod disc;
pub mod halfline;

pub use disc::{build_disc_model, Carrier, DiscModel, VertexKind};
pub use halfline::{halfline_filtration, halfline_trace, HalfLineTrace};

use num_traits::One;

use crate::circle_sheaf::circle::{block_subspace, frames};
use crate::circle_sheaf::{CellSheaf, CohomologyResult, FramedStalks};
use crate::error::{Error, Result};
use crate::exact_math::sparse::SparseVec;
use crate::exact_math::{leq_at, GaussRational, Matrix, Order, Rational, Subspace};
use crate::laplace::{laplace_exponents, laplace_transform};
use crate::stokes_core::{to_filtrations, StokesFiltrations, StokesMatrices};
use halfline::modulus;

/// Stalks of G_{<γ}: ⊕ G_c over the exponents whose region contains the cell, in the cell's chart.
pub fn stalks_lt_gamma(data: &StokesMatrices, model: &DiscModel) -> Vec<Subspace> {
    (0..model.complex.len()).map(|cell| block_subspace(&data.layout, |i| model.member(cell, i))).collect()
}

/// Stalks of G: everything inside the disc, the same rule as G_{<γ} on the circle at infinity.
pub fn stalks_g(data: &StokesMatrices, model: &DiscModel) -> Vec<Subspace> {
    (0..model.complex.len())
        .map(|cell| {
            if model.on_boundary(cell) {
                block_subspace(&data.layout, |i| model.member(cell, i))
            } else {
                Subspace::full(data.total_rank())
            }
        })
        .collect()
}

fn framed_sheaf(data: &StokesMatrices, model: &DiscModel, stalks: Vec<Subspace>) -> Result<CellSheaf> {
    let fr = frames(data);
    FramedStalks { complex: &model.complex, frames: &fr, chart: model.chart.clone(), stalks }.sheaf()
}

pub fn sheaf_g_lt_gamma(data: &StokesMatrices, model: &DiscModel) -> Result<CellSheaf> {
    framed_sheaf(data, model, stalks_lt_gamma(data, model))
}

pub fn sheaf_g(data: &StokesMatrices, model: &DiscModel) -> Result<CellSheaf> {
    framed_sheaf(data, model, stalks_g(data, model))
}

/// Cohomology and the image of H¹ in L: a 1-cocycle is sent to the sum of its values along the
/// model's path, read in global coordinates.
pub struct DiscCohomology {
    pub h: CohomologyResult,
    pub image: Subspace,
}

pub fn h1_image(data: &StokesMatrices, model: &DiscModel, stalks: Vec<Subspace>) -> Result<DiscCohomology> {
    let r = data.total_rank();
    let fr = frames(data);
    let inv: Vec<Matrix> = fr.iter().map(|f| f.inverse()).collect::<Result<_>>()?;
    let sheaf = FramedStalks { complex: &model.complex, frames: &fr, chart: model.chart.clone(), stalks: stalks.clone() }.sheaf()?;
    let h = sheaf.cohomology();
    let ech = sheaf.coboundary_echelon(1);
    let (off, _) = sheaf.offsets(1);
    let mut rows = vec![SparseVec::new(); r];
    for &(e, s) in &model.path {
        let cell = model.edge_cell(e);
        let o = off[cell].expect("edge cell");
        for (j, b) in stalks[cell].basis().iter().enumerate() {
            let v = inv[model.chart[cell]].apply(b);
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    rows[i].insert(o + j, if s > 0 { x.clone() } else { -x });
                }
            }
        }
    }
    // ι ≡ ι − Xδ¹ on cocycles; after reduction the columns span ι(ker δ¹)
    let residual: Vec<SparseVec> = rows.into_iter().map(|row| ech.reduce(row)).collect();
    let mut cols: std::collections::BTreeMap<usize, Vec<GaussRational>> = Default::default();
    for (i, row) in residual.iter().enumerate() {
        for (&k, x) in row {
            cols.entry(k).or_insert_with(|| vec![GaussRational::zero(); r])[i] = x.clone();
        }
    }
    Ok(DiscCohomology { h, image: Subspace::from_vectors(r, cols.into_values().collect()) })
}

/// Σ_{j : ĉ_j <_ν γ} L_{≤ν j} on transformed data.
pub fn predicted_subspace(transformed: &StokesFiltrations, gamma: &GaussRational, nu: usize) -> Subspace {
    let layout = &transformed.layout;
    let theta = layout.theta(nu % 4);
    let mut out = Subspace::zero(transformed.dim);
    for (j, c) in layout.exponents.iter().enumerate() {
        if leq_at(c, gamma, &theta) == Order::LessStrict {
            out = out.sum(transformed.step(nu % 4, j));
        }
    }
    out
}

/// Moduli below, between and above the moduli of −1/C.
pub fn default_samples(data: &StokesMatrices) -> Result<Vec<Rational>> {
    let hat = laplace_exponents(&data.layout.exponents)?;
    let mut m: Vec<Rational> = hat.iter().map(modulus).collect::<Result<_>>()?;
    m.sort();
    m.dedup();
    let two = Rational::from_integer(2.into());
    let mut out = vec![&m[0] / &two];
    for w in m.windows(2) {
        out.push((&w[0] + &w[1]) / &two);
    }
    out.push(m.last().unwrap() + Rational::one());
    Ok(out)
}

/// Point of modulus ρ on the ray of −1/c₁.
pub fn gamma_on_ray(data: &StokesMatrices, rho: &Rational) -> Result<GaussRational> {
    let c = &data.layout.exponents[0];
    let m = modulus(c)?;
    Ok((-c.conj()).scale(&(rho / m)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyCase {
    pub nu: usize,
    pub gamma: GaussRational,
    pub oracle_dim: usize,
    pub predicted_dim: usize,
    pub equal: bool,
    /// h⁰, h¹, h² of G_{<γ}
    pub h: Vec<usize>,
    /// odd ν: half-line computation agrees with the disc model
    pub fast_path: Option<bool>,
    /// first sample per ν: G has cohomology (0, r, 0) and H¹(G) maps onto L
    pub full_sheaf: Option<bool>,
}

impl VerifyCase {
    pub fn passed(&self) -> bool {
        self.equal
            && self.h.first() == Some(&0)
            && self.h.get(2).copied().unwrap_or(0) == 0
            && self.fast_path != Some(false)
            && self.full_sheaf != Some(false)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub mode: &'static str,
    pub cases: Vec<VerifyCase>,
    pub pass: bool,
}

/// Compares, for every ν and every sample modulus, the filtration read off from H¹(G_{<γ}) with the
/// one predicted by `laplace_transform`.
pub fn verify_theorem(data: &StokesMatrices, samples: Option<&[Rational]>) -> Result<VerifyReport> {
    if !data.is_valid() {
        return Err(Error::Invalid(data.validate().join("; ")));
    }
    let transformed = laplace_transform(&to_filtrations(data)?)?;
    let samples = match samples {
        Some(s) => s.to_vec(),
        None => default_samples(data)?,
    };
    let r = data.total_rank();
    let mut cases = Vec::new();
    for nu in 0..4 {
        for (k, rho) in samples.iter().enumerate() {
            let gamma = gamma_on_ray(data, rho)?;
            let model = build_disc_model(&data.layout, &gamma, nu)?;
            let oracle = h1_image(data, &model, stalks_lt_gamma(data, &model))?;
            let predicted = predicted_subspace(&transformed, &gamma, nu);
            let fast_path = if nu % 2 == 1 { Some(halfline_filtration(data, &gamma, nu)? == oracle.image) } else { None };
            let full_sheaf = if k == 0 {
                let full = h1_image(data, &model, stalks_g(data, &model))?;
                Some(full.h.h == vec![0, r, 0] && full.image.is_full())
            } else {
                None
            };
            cases.push(VerifyCase {
                nu,
                gamma,
                oracle_dim: oracle.image.dim(),
                predicted_dim: predicted.dim(),
                equal: oracle.image == predicted,
                h: oracle.h.h.clone(),
                fast_path,
                full_sheaf,
            });
        }
    }
    let pass = cases.iter().all(|c| c.passed());
    Ok(VerifyReport { mode: "modulus-rational", cases, pass })
}
