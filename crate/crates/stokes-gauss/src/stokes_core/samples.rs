use crate::exact_math::{rat, CirclePoint, Field, GaussRational, Matrix};

use super::layout::ExponentLayout;
use super::matrices::StokesMatrices;

/// Rank-2 data on C = {1, 2} at θ_o = 0, general form, total monodromy the identity.
pub fn e1() -> StokesMatrices {
    let layout = ExponentLayout::new(
        vec![GaussRational::from_ints(1, 0), GaussRational::from_ints(2, 0)],
        vec![1, 1],
        CirclePoint::zero(),
        true,
    )
    .expect("sorted layout");
    let s10 = Matrix::from_ints(&[&[1, 0], &[1, 1]]);
    let s21 = Matrix::from_ints(&[&[1, 1], &[0, 1]]);
    let s32 = Matrix::from_rationals(vec![vec![rat(1, 1), rat(0, 1)], vec![rat(-1, 2), rat(1, 1)]]);
    let s03 = Matrix::from_rationals(vec![vec![rat(1, 2), rat(-1, 1)], vec![rat(0, 1), rat(2, 1)]]);
    StokesMatrices::general(layout, [s03, s10, s21, s32], Field::Q).expect("square blocks")
}

/// Rank-1 data with all transitions 1 at a single exponent.
pub fn rank_one(c: GaussRational, theta0: CirclePoint) -> StokesMatrices {
    let layout = ExponentLayout::new(vec![c], vec![1], theta0, true).expect("single exponent");
    let id = Matrix::identity(1);
    StokesMatrices::variant(layout, [id.clone(), id.clone(), id.clone(), id.clone()], vec![id], Field::Q).expect("1x1")
}
