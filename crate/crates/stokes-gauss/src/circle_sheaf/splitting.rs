use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_math::Subspace;
use crate::stokes_core::{StokesMatrices, StokesMorphism};

use super::circle::{stalks_leq, CircleModel, CircleSheaves};

/// Γ(I^{(ν)}, L_{≤c}) for every c, as subspaces of L (global coordinates).
pub fn good_interval_splitting(data: &StokesMatrices, nu: usize) -> Result<Vec<Subspace>> {
    splitting_in_order(data, nu, None)
}

/// Same computation with the cells of the interval visited in a seeded random order.
pub fn good_interval_splitting_shuffled(data: &StokesMatrices, nu: usize, seed: u64) -> Result<Vec<Subspace>> {
    splitting_in_order(data, nu, Some(seed))
}

fn splitting_in_order(data: &StokesMatrices, nu: usize, seed: Option<u64>) -> Result<Vec<Subspace>> {
    let model = CircleModel::build(&data.layout, None, &[], true)?;
    let sh = CircleSheaves::with_model(data, model);
    let mut cells = sh.model.interval_cells(nu);
    if let Some(s) = seed {
        cells.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let r = data.total_rank();
    let inv: Vec<_> = sh.frames.iter().map(|f| f.inverse()).collect::<Result<_>>()?;
    let mut pieces = Vec::with_capacity(data.layout.n());
    for c in &data.layout.exponents {
        let stalks = stalks_leq(data, &sh.model, c, false);
        let mut sections = Subspace::full(r);
        for &cell in &cells {
            let global = stalks[cell].map(&inv[sh.model.chart(cell)]);
            sections = sections.intersect(&global);
        }
        pieces.push(sections);
    }
    let mut total = Subspace::zero(r);
    for (i, p) in pieces.iter().enumerate() {
        if p.dim() != data.layout.ranks[i] {
            return Err(Error::Invalid(format!("piece {} has dim {}, expected {}", i + 1, p.dim(), data.layout.ranks[i])));
        }
        total = total.sum(p);
    }
    if !total.is_full() {
        return Err(Error::Invalid("pieces do not span L".into()));
    }
    Ok(pieces)
}

/// True when λ maps each piece of the splitting into the same piece.
pub fn is_graded(morphism: &StokesMorphism, pieces: &[Subspace]) -> bool {
    pieces.iter().all(|p| p.contains_subspace(&p.map(&morphism.map)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::Matrix;
    use crate::stokes_core::samples::e1;
    use crate::stokes_core::{random_endomorphism, to_filtrations};

    #[test]
    fn block_diagonal_data_splits_by_coordinates() {
        let mut d = e1().normalize().unwrap();
        for nu in 0..4 {
            d.s[nu] = Matrix::identity(2);
        }
        d.t = vec![Matrix::identity(1), Matrix::identity(1)];
        let pieces = good_interval_splitting(&d, 0).unwrap();
        assert_eq!(pieces[0], Subspace::coordinate(2, 0..1));
        assert_eq!(pieces[1], Subspace::coordinate(2, 1..2));
    }

    #[test]
    fn e1_splitting_matches_graded_pieces() {
        let d = e1();
        let f = to_filtrations(&d).unwrap();
        for nu in 0..4 {
            let pieces = good_interval_splitting(&d, nu).unwrap();
            for (i, p) in pieces.iter().enumerate() {
                assert_eq!(p, &f.graded(nu, i));
            }
            assert_eq!(pieces, good_interval_splitting_shuffled(&d, nu, 11).unwrap());
            let lam = random_endomorphism(&f, nu as u64);
            assert!(is_graded(&lam, &pieces));
        }
    }
}
