use num_traits::One;

use crate::circle_sheaf::circle::block_subspace;
use crate::error::{Error, Result};
use crate::exact_math::scalar::{rational_sqrt, sign};
use crate::exact_math::{GaussRational, QuadReal, Rational, Subspace};
use crate::stokes_core::StokesMatrices;

/// Where (−1)^ν(|c|s² − 2s + |γ|) < 0 holds on the half-line s ∈ [0, ∞].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HalfLineTrace {
    FullLine,
    Empty,
    /// [0, s₋) ∪ (s₊, ∞]
    TwoComponents(QuadReal, QuadReal),
    /// (s₋, s₊)
    OneLens(QuadReal, QuadReal),
}

/// γ lies on the ray of −1/c (γ = 0 allowed).
pub fn check_aligned(c: &GaussRational, gamma: &GaussRational) -> Result<()> {
    if gamma.is_zero() {
        return Ok(());
    }
    let p = c * gamma;
    if p.is_real() && sign(&p.re) < 0 {
        Ok(())
    } else {
        Err(Error::NotAligned(format!("γ = {} is not on the ray of −1/{}", gamma, c)))
    }
}

pub fn modulus(x: &GaussRational) -> Result<Rational> {
    rational_sqrt(&x.norm2()).ok_or_else(|| Error::IrrationalModulus(x.to_string()))
}

/// (−1)^ν·q(s) with q(s) = |c|s² − 2s + |γ|, as a sign.
pub fn halfline_sign(cm: &Rational, g: &Rational, s: &QuadReal, nu: usize) -> i8 {
    let q = s.mul(s).scale(cm).sub(&s.scale(&Rational::from_integer(2.into()))).add_rational(g);
    if nu % 2 == 1 {
        -q.sign()
    } else {
        q.sign()
    }
}

pub fn halfline_trace(c: &GaussRational, gamma: &GaussRational, nu: usize) -> Result<HalfLineTrace> {
    check_aligned(c, gamma)?;
    let cm = modulus(c)?;
    let g = modulus(gamma)?;
    let odd = nu % 2 == 1;
    let p = &cm * &g;
    if p > Rational::one() {
        return Ok(if odd { HalfLineTrace::FullLine } else { HalfLineTrace::Empty });
    }
    // roots (1 ± √(1 − |c||γ|))/|c|, equal when |c||γ| = 1
    let d = Rational::one() - p;
    let a = cm.recip();
    let lo = QuadReal::new(a.clone(), -&a, d.clone());
    let hi = QuadReal::new(a.clone(), a, d);
    Ok(if odd { HalfLineTrace::TwoComponents(lo, hi) } else { HalfLineTrace::OneLens(lo, hi) })
}

/// Odd ν only: span in L of the G_c with |c||γ| > 1, read off on the half-line.
pub fn halfline_filtration(data: &StokesMatrices, gamma: &GaussRational, nu: usize) -> Result<Subspace> {
    if nu % 2 == 0 {
        return Err(Error::EvenParity);
    }
    let layout = &data.layout;
    for c in &layout.exponents {
        check_aligned(c, gamma)?;
    }
    let g2 = gamma.norm2();
    let one = Rational::one();
    let blocks = block_subspace(layout, |i| layout.exponents[i].norm2() * &g2 > one);
    Ok(blocks.map(&data.iso(nu % 4).inverse()?))
}
