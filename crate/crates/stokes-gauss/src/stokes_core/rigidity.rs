use crate::error::Result;
use crate::exact_math::Matrix;

use super::matrices::StokesMatrices;

/// Rigidity index and whether it equals 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rigidity {
    pub index: usize,
    pub eta: usize,
    pub sum_squares: usize,
    pub rigid: bool,
}

/// dim {φ : Tφ = φT}.
pub fn centralizer_dim(t: &Matrix) -> usize {
    let k = t.rows();
    let id = Matrix::identity(k);
    let op = t.kron(&id).sub(&id.kron(&t.transpose())).expect("same shape");
    op.kernel().dim()
}

/// η + Σ r_c², with η the sum of the centralizer dimensions of the formal monodromies.
pub fn rigidity_index(data: &StokesMatrices) -> Result<Rigidity> {
    let t = data.normalize()?.t;
    let eta = t.iter().map(centralizer_dim).sum();
    let sum_squares = data.layout.ranks.iter().map(|r| r * r).sum();
    let index = eta + sum_squares;
    Ok(Rigidity { index, eta, sum_squares, rigid: index == 2 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn centralizers() {
        assert_eq!(centralizer_dim(&Matrix::identity(2)), 4);
        assert_eq!(centralizer_dim(&Matrix::from_ints(&[&[1, 1], &[0, 1]])), 2);
        assert_eq!(centralizer_dim(&Matrix::from_ints(&[&[1, 0], &[0, 2]])), 2);
        assert_eq!(centralizer_dim(&Matrix::from_ints(&[&[5]])), 1);
    }
}

#[cfg(test)]
mod examples {
    use super::*;
    use crate::exact_math::{CirclePoint, Field, GaussRational};
    use crate::stokes_core::layout::ExponentLayout;
    use crate::stokes_core::samples::{e1, rank_one};

    #[test]
    fn spec_rigidity_examples() {
        let r = rigidity_index(&rank_one(GaussRational::from_ints(2, -1), CirclePoint::zero())).unwrap();
        assert_eq!((r.index, r.rigid), (2, true));
        let r = rigidity_index(&e1()).unwrap();
        assert_eq!((r.eta, r.index, r.rigid), (2, 4, false));
        let layout = ExponentLayout::new(vec![GaussRational::from_ints(1, 0)], vec![2], CirclePoint::zero(), true).unwrap();
        let id = Matrix::identity(2);
        let d = StokesMatrices::variant(layout, [id.clone(), id.clone(), id.clone(), id.clone()], vec![id], Field::Q).unwrap();
        assert_eq!(rigidity_index(&d).unwrap().index, 8);
    }
}
