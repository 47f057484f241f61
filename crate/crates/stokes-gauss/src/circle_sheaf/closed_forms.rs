use crate::error::{Error, Result};
use crate::exact_math::{GaussRational, Matrix, Subspace};
use crate::stokes_core::StokesMatrices;

use super::circle::{stalks_full, stalks_leq, CircleSheaves};

/// dim of ⋂_ν ⋂_{c ≠ c0} ker S^{(ν,ν−1)}_{c,c0} inside G_{c0}, from the variant blocks.
pub fn h0_leq_closed_form(data: &StokesMatrices, c0: &GaussRational) -> Result<usize> {
    let v = data.normalize()?;
    let k = v.layout.index_of(c0).ok_or_else(|| Error::ExponentNotInC(c0.to_string()))?;
    let rk = v.layout.ranks[k];
    let mut rows: Option<Matrix> = None;
    for nu in 0..4 {
        for i in 0..v.layout.n() {
            if i == k {
                continue;
            }
            let b = v.block(nu, i, k);
            rows = Some(match rows {
                None => b,
                Some(m) => m.vstack(&b)?,
            });
        }
    }
    Ok(match rows {
        None => rk,
        Some(m) => m.kernel().dim(),
    })
}

/// χ(L_{≤c0}) from the cellular complex; for c0 ∈ C the two-term count gives 2r_{c0} − 2r.
pub fn euler_characteristic_leq(data: &StokesMatrices, c0: &GaussRational) -> Result<EulerCheck> {
    let sh = CircleSheaves::new(data, Some(c0), true)?;
    let h = sh.leq(c0)?.cohomology();
    let r = data.total_rank() as i64;
    let rc = data.layout.index_of(c0).map_or(0, |k| data.layout.ranks[k]) as i64;
    let expected = 2 * rc - 2 * r;
    Ok(EulerCheck { chi: h.chi(), cochain_chi: h.cochain_chi, expected, h0: h.get(0), h1: h.get(1) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerCheck {
    pub chi: i64,
    pub cochain_chi: i64,
    /// 2 r_{c0} − 2 r
    pub expected: i64,
    pub h0: usize,
    pub h1: usize,
}

impl EulerCheck {
    pub fn holds(&self) -> bool {
        self.chi == self.expected && self.chi == self.cochain_chi
    }
}

/// (h⁰, h¹, h²) of F_{≤0} on the disc from 0 → F_{≤0} → F → i_*(L/L_{≤0}) → 0 with H(F) = (r, 0, 0).
pub fn disc_cohomology_fleq0(data: &StokesMatrices) -> Result<(usize, usize, usize)> {
    if !data.layout.pure {
        return Err(Error::NotPure("disc cohomology of F_{≤0} needs pure data".into()));
    }
    let zero = GaussRational::zero();
    // θ_o need not be generic for C ∪ {0}; the order at a base point is still a down-set
    let sh = CircleSheaves::new(data, Some(&zero), false)?;
    let big = sh.framed(stalks_full(data, &sh.model));
    let small = sh.framed(stalks_leq(data, &sh.model, &zero, false));
    let (q, proj) = big.quotient_with_projections(&small)?;
    let hq = q.cohomology();
    let r = data.total_rank();
    // L → C⁰(Q): z ↦ (P_v · frame_v · z)_v lands in H⁰(Q)
    let (off, total) = q.offsets(0);
    let mut image = Vec::with_capacity(r);
    for j in 0..r {
        let mut z = vec![GaussRational::zero(); r];
        z[j] = GaussRational::one();
        let mut col = vec![GaussRational::zero(); total];
        for v in 0..sh.model.nv() {
            let o = off[v].expect("vertex cochain");
            let local = sh.frames[sh.model.chart(v)].apply(&z);
            for (k, x) in proj[v].apply(&local).into_iter().enumerate() {
                col[o + k] = x;
            }
        }
        image.push(col);
    }
    let rank = Subspace::from_vectors(total, image).dim();
    Ok((r - rank, hq.get(0) - rank, hq.get(1)))
}
