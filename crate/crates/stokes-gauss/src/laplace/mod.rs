//! The Laplace transformation rule: exponents c ↦ −1/c, base direction θ ↦ π − θ, filtrations unchanged.

use crate::error::{Error, Result};
use crate::exact_math::{cyclic_strictly_between, stokes_directions, CirclePoint, GaussRational};
use crate::exact_math::scalar::sign;
use num_traits::Zero;
use crate::stokes_core::{to_filtrations, to_matrices, ExponentLayout, StokesFiltrations, StokesMatrices, StokesMorphism};

/// Every ratio c/c′ is a positive real.
pub fn is_aligned(exps: &[GaussRational]) -> bool {
    exps.iter().all(|c| {
        exps.iter().all(|d| {
            let p = c * &d.conj();
            p.im.is_zero() && sign(&p.re) > 0
        })
    })
}

/// doubled positively proportional to `dir`.
fn points_along(doubled: &GaussRational, dir: &GaussRational) -> bool {
    let p = doubled * &dir.conj();
    p.im.is_zero() && sign(&p.re) > 0
}

/// θ = ½ arg C, in [0, π).
pub fn canonical_theta(exps: &[GaussRational]) -> CirclePoint {
    CirclePoint::new(exps[0].clone(), 0)
}

/// θ = π/2 + ½ arg C, in (0, π]; the base direction produced by a transform.
pub fn dual_canonical_theta(exps: &[GaussRational]) -> CirclePoint {
    canonical_theta(exps).rotate_quarter()
}

pub fn is_canonical_theta(theta: &CirclePoint, exps: &[GaussRational]) -> bool {
    theta.branch == 0 && points_along(&theta.doubled, &exps[0])
}

pub fn laplace_exponents(exps: &[GaussRational]) -> Result<Vec<GaussRational>> {
    exps.iter()
        .map(|c| c.inv().map(|x| -x).ok_or(Error::ZeroExponent))
        .collect()
}

/// π − θ.
pub fn hat_theta(theta: &CirclePoint) -> CirclePoint {
    theta.pi_minus()
}

/// Transformed layout with the induced numbering; checks that it is the numbering at θ̂.
pub fn laplace_layout(layout: &ExponentLayout) -> Result<ExponentLayout> {
    check_preconditions(layout)?;
    let exponents = laplace_exponents(&layout.exponents)?;
    let theta = hat_theta(&layout.theta0);
    // ExponentLayout::new rejects a non-generic θ̂ or a numbering that is not increasing at θ̂
    ExponentLayout::new(exponents, layout.ranks.clone(), theta, true)
}

fn check_preconditions(layout: &ExponentLayout) -> Result<()> {
    if !layout.pure || layout.exponents.is_empty() {
        return Err(Error::NotPure("the transform needs pure data".into()));
    }
    if layout.exponents.iter().any(|c| c.is_zero()) {
        return Err(Error::ZeroExponent);
    }
    if !is_aligned(&layout.exponents) {
        return Err(Error::NotAligned("exponents do not share one argument".into()));
    }
    let exps = &layout.exponents;
    if !is_canonical_theta(&layout.theta0, exps) && layout.theta0 != dual_canonical_theta(exps) {
        return Err(Error::NotCanonicalTheta);
    }
    Ok(())
}

fn relabel(data: &StokesFiltrations) -> Result<StokesFiltrations> {
    if !data.is_valid() {
        return Err(Error::Invalid(data.validate().join("; ")));
    }
    let layout = laplace_layout(&data.layout)?;
    Ok(StokesFiltrations { layout, ..data.clone() })
}

/// The transform on filtration data: same L, same filtrations, layout (−1/C, π − θ_o).
pub fn laplace_transform(data: &StokesFiltrations) -> Result<StokesFiltrations> {
    relabel(data)
}

/// The inverse transform, given by the same rule; composing with `laplace_transform` is the identity.
pub fn inverse_laplace_transform(data: &StokesFiltrations) -> Result<StokesFiltrations> {
    relabel(data)
}

/// Matrix-form input goes through the filtrations.
pub fn laplace_transform_matrices(data: &StokesMatrices) -> Result<StokesMatrices> {
    to_matrices(&laplace_transform(&to_filtrations(data)?)?)
}

pub fn inverse_laplace_transform_matrices(data: &StokesMatrices) -> Result<StokesMatrices> {
    to_matrices(&inverse_laplace_transform(&to_filtrations(data)?)?)
}

/// A morphism between transformed data: the same linear map.
pub fn laplace_morphism(m: &StokesMorphism) -> Result<StokesMorphism> {
    StokesMorphism::new(laplace_transform(&m.source)?, laplace_transform(&m.target)?, m.map.clone())
}

/// Moves θ_o to ½ arg C when no Stokes direction lies between them; the numbering is unchanged.
pub fn canonicalize_theta(data: &StokesFiltrations) -> Result<StokesFiltrations> {
    let exps = &data.layout.exponents;
    if exps.is_empty() || !is_aligned(exps) {
        return Err(Error::NotAligned("exponents do not share one argument".into()));
    }
    let target = canonical_theta(exps);
    if data.layout.theta0 == target {
        return Ok(data.clone());
    }
    if exps.len() > 1 {
        let dirs = stokes_directions(&exps[0], &exps[1])?;
        // the chamber of `target` is the open arc between consecutive Stokes directions around it
        let k = dirs.iter().position(|d| d > &target).unwrap_or(0);
        let (a, b) = (&dirs[(k + 3) % 4], &dirs[k]);
        if !cyclic_strictly_between(a, &data.layout.theta0, b) {
            return Err(Error::NotCanonicalTheta);
        }
    }
    let layout = ExponentLayout::new(exps.clone(), data.layout.ranks.clone(), target, data.layout.pure)?;
    Ok(StokesFiltrations { layout, ..data.clone() })
}
