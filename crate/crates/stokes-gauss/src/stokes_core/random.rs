use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_math::{CirclePoint, Field, GaussRational, Matrix, Rational};

use super::layout::{sort_exponents, ExponentLayout};
use super::matrices::{block_diag, block_of, StokesMatrices};

pub const MAX_ATTEMPTS: usize = 32;

fn random_entry(rng: &mut ChaCha8Rng) -> GaussRational {
    GaussRational::from_ints(rng.gen_range(-3..=3), 0)
}

// unit-diagonal block-triangular matrix with random off-diagonal blocks
fn random_unit_triangular(layout: &ExponentLayout, upper: bool, rng: &mut ChaCha8Rng) -> Matrix {
    let r = layout.total_rank();
    let mut m = Matrix::identity(r);
    for i in 0..layout.n() {
        for j in 0..layout.n() {
            if i == j || (upper && i > j) || (!upper && i < j) {
                continue;
            }
            for a in layout.block(i) {
                for b in layout.block(j) {
                    m.set(a, b, random_entry(rng));
                }
            }
        }
    }
    m
}

/// N = U·L with U block-upper and L block-lower unit-diagonal, when the trailing minors allow it.
pub fn block_ul(layout: &ExponentLayout, nmat: &Matrix) -> Option<(Matrix, Matrix)> {
    let n = layout.n();
    let nb = |i: usize, j: usize| block_of(layout, nmat, i, j);
    let mut u: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
    let mut l: Vec<Vec<Option<Matrix>>> = vec![vec![None; n]; n];
    for k in (0..n).rev() {
        for i in 0..=k {
            let mut acc = nb(i, k);
            for m in k + 1..n {
                let um = u[i][m].as_ref().expect("computed");
                let lm = l[m][k].as_ref().expect("computed");
                acc = acc.sub(&um.dot(lm)).ok()?;
            }
            u[i][k] = Some(acc);
        }
        let ukk_inv = u[k][k].as_ref().expect("computed").inverse().ok()?;
        l[k][k] = Some(Matrix::identity(layout.ranks[k]));
        for j in 0..k {
            let mut acc = nb(k, j);
            for m in k + 1..n {
                let um = u[k][m].as_ref().expect("computed");
                let lm = l[m][j].as_ref().expect("computed");
                acc = acc.sub(&um.dot(lm)).ok()?;
            }
            l[k][j] = Some(ukk_inv.dot(&acc));
        }
    }
    let r = layout.total_rank();
    let (mut um, mut lm) = (Matrix::zeros(r, r), Matrix::zeros(r, r));
    for i in 0..n {
        for j in 0..n {
            if let Some(b) = &u[i][j] {
                um.set_block(layout.offset(i), layout.offset(j), b);
            }
            if let Some(b) = &l[i][j] {
                lm.set_block(layout.offset(i), layout.offset(j), b);
            }
        }
    }
    Some((um, lm))
}

/// Seeded pure variant data: random S10, S21; S32, S03 and T solved from N = (S21·S10)^{-1}.
pub fn random_data(layout: &ExponentLayout, seed: u64) -> Result<StokesMatrices> {
    if !layout.pure {
        return Err(Error::NotPure("random generation needs a pure layout".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let s10 = random_unit_triangular(layout, false, &mut rng);
        let s21 = random_unit_triangular(layout, true, &mut rng);
        let nmat = s21.dot(&s10).inverse()?;
        let Some((u, l)) = block_ul(layout, &nmat) else { continue };
        let t: Vec<Matrix> = (0..layout.n()).map(|i| block_of(layout, &u, i, i)).collect();
        let Ok(tinv) = block_diag(&t).inverse() else { continue };
        let s03 = tinv.dot(&u);
        let data = StokesMatrices::variant(layout.clone(), [s03, s10, s21, l], t, Field::Q)?;
        if data.is_valid() {
            return Ok(data);
        }
    }
    Err(Error::GenerationFailed(MAX_ATTEMPTS))
}

/// Distinct nonzero Gaussian integers with distinct real parts, numbered at θ_o = 0.
pub fn random_layout(ranks: &[usize], seed: u64) -> Result<ExponentLayout> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_1a70);
    let mut items: Vec<(GaussRational, usize)> = Vec::new();
    let mut used: Vec<i64> = Vec::new();
    for &r in ranks {
        loop {
            let re: i64 = rng.gen_range(-6..=6);
            let im: i64 = rng.gen_range(-3..=3);
            if used.contains(&re) || (re == 0 && im == 0) {
                continue;
            }
            used.push(re);
            items.push((GaussRational::from_ints(re, im), r));
            break;
        }
    }
    sort_exponents(&items, &CirclePoint::zero(), true)
}

/// The fixed Pythagorean direction of the aligned corpus.
pub fn aligned_direction() -> GaussRational {
    GaussRational::from_ints(3, 4)
}

/// Exponents m·(3+4i) for distinct positive rationals m, with the canonical θ_o.
pub fn random_aligned_layout(ranks: &[usize], seed: u64) -> Result<ExponentLayout> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa119_7ed0);
    let u = aligned_direction();
    let mut ms: Vec<Rational> = Vec::new();
    while ms.len() < ranks.len() {
        let p: i64 = rng.gen_range(1..=9);
        let q: i64 = rng.gen_range(1..=4);
        let m = Rational::new(p.into(), q.into());
        if !ms.contains(&m) {
            ms.push(m);
        }
    }
    let items: Vec<_> = ms.iter().zip(ranks).map(|(m, &r)| (u.scale(m), r)).collect();
    sort_exponents(&items, &CirclePoint::new(u, 0), true)
}

/// Seeded ranks in 1..=max_rank for n exponents.
pub fn random_ranks(n: usize, max_rank: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a2c);
    (0..n).map(|_| rng.gen_range(1..=max_rank)).collect()
}

