use crate::error::{Error, Result};
use crate::exact_math::{Field, Matrix, Subspace};

use super::layout::ExponentLayout;
use super::matrices::StokesMatrices;

/// One space L with four filtrations; `steps[ν][i]` is L_{≤ν i}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesFiltrations {
    pub layout: ExponentLayout,
    pub dim: usize,
    pub steps: [Vec<Subspace>; 4],
    pub field: Field,
}

impl StokesFiltrations {
    pub fn step(&self, nu: usize, i: usize) -> &Subspace {
        &self.steps[nu % 4][i]
    }

    /// L_{<ν i}: sum of the steps strictly below i in the ν-order.
    pub fn step_strict(&self, nu: usize, i: usize) -> Subspace {
        let n = self.layout.n();
        let mut out = Subspace::zero(self.dim);
        for j in 0..n {
            if j != i && ExponentLayout::nu_leq(nu, j, i) {
                out = out.sum(self.step(nu, j));
            }
        }
        out
    }

    /// G_i^{(ν)} = L_{≤ν i} ∩ L_{≤ν+1 i}.
    pub fn graded(&self, nu: usize, i: usize) -> Subspace {
        self.step(nu, i).intersect(self.step(nu + 1, i))
    }

    /// Every violated invariant, with indices.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.layout.check() {
            out.push(format!("layout: {}", e));
        }
        let n = self.layout.n();
        for nu in 0..4 {
            if self.steps[nu].len() != n {
                out.push(format!("shape: filtration {} has {} steps, expected {}", nu, self.steps[nu].len(), n));
                return out;
            }
            if self.steps[nu].iter().any(|s| s.ambient() != self.dim) {
                out.push(format!("shape: filtration {} lives in the wrong ambient space", nu));
                return out;
            }
        }
        if self.field == Field::Q && self.steps.iter().flatten().any(|s| s.basis().iter().flatten().any(|x| !x.is_real())) {
            out.push("field: basis entries outside Q for a Q dataset".into());
        }
        if self.layout.total_rank() != self.dim {
            out.push(format!("rank: ranks sum to {} but dim L = {}", self.layout.total_rank(), self.dim));
        }
        for nu in 0..4 {
            if n > 0 && !self.step(nu, self.layout.nu_max(nu)).is_full() {
                out.push(format!("exhaustive: filtration {} does not reach L", nu));
            }
            for i in 0..n {
                for j in 0..n {
                    if i != j && ExponentLayout::nu_leq(nu, i, j) && !self.step(nu, j).contains_subspace(self.step(nu, i)) {
                        out.push(format!("monotone: filtration {} step {} is not inside step {}", nu, i + 1, j + 1));
                    }
                }
            }
        }
        for nu in 0..4 {
            let mut total = Subspace::zero(self.dim);
            let mut dims = 0;
            for i in 0..n {
                let g = self.graded(nu, i);
                if g.dim() != self.layout.ranks[i] {
                    out.push(format!("graded: dim G_{}^({}) = {}, expected rank {}", i + 1, nu, g.dim(), self.layout.ranks[i]));
                }
                dims += g.dim();
                total = total.sum(&g);
            }
            if !total.is_full() || dims != self.dim {
                out.push(format!("opposite: filtrations {} and {} are not opposite (sum has dim {}, pieces {}, dim L = {})", nu, (nu + 1) % 4, total.dim(), dims, self.dim));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Concatenated echelon bases of the G_i^{(ν)}, as columns.
    pub fn graded_basis(&self, nu: usize) -> Matrix {
        let cols: Vec<_> = (0..self.layout.n()).flat_map(|i| self.graded(nu, i).basis().to_vec()).collect();
        Matrix::from_columns(self.dim, &cols)
    }

    /// The same filtrations transported by an isomorphism g: L → L′.
    pub fn transport(&self, g: &Matrix) -> StokesFiltrations {
        let steps = std::array::from_fn(|nu| self.steps[nu].iter().map(|s| s.map(g)).collect());
        StokesFiltrations { layout: self.layout.clone(), dim: g.rows(), steps, field: self.field }
    }
}

/// Filtrations on L = ⊕G^{(0)}: level ν is the coordinate filtration of ⊕G^{(ν)} pulled back by S^{(ν,ν−1)}⋯S^{(1,0)}.
pub fn to_filtrations(data: &StokesMatrices) -> Result<StokesFiltrations> {
    if !data.monodromy().is_identity() {
        return Err(Error::MonodromyNotIdentity);
    }
    let layout = &data.layout;
    let r = layout.total_rank();
    let n = layout.n();
    let coordinate_step = |nu: usize, i: usize| {
        if nu % 2 == 0 {
            Subspace::coordinate(r, 0..layout.block(i).end)
        } else {
            Subspace::coordinate(r, layout.block(i).start..r)
        }
    };
    let mut steps: [Vec<Subspace>; 4] = Default::default();
    for nu in 0..4 {
        let iso = data.iso(nu);
        steps[nu] = (0..n).map(|i| coordinate_step(nu, i).preimage(&iso)).collect();
    }
    // the other transport, S03·S32 for level 2 and S03 for level 3, must agree
    for nu in [2usize, 3] {
        let mut other = Matrix::identity(r);
        for k in (nu + 1..=4).rev() {
            other = other.dot(&data.general_s(k));
        }
        for i in 0..n {
            let alt = coordinate_step(nu, i).map(&other);
            if alt != steps[nu][i] {
                return Err(Error::MonodromyNotIdentity);
            }
        }
    }
    Ok(StokesFiltrations { layout: layout.clone(), dim: r, steps, field: data.field })
}

/// Matrices from the gradings G^{(ν)}, normalized to variant form.
pub fn to_matrices(data: &StokesFiltrations) -> Result<StokesMatrices> {
    let v = data.validate();
    if let Some(bad) = v.iter().find(|m| m.starts_with("opposite") || m.starts_with("graded")) {
        return Err(Error::NotOpposite(bad.clone()));
    }
    if !v.is_empty() {
        return Err(Error::Invalid(v.join("; ")));
    }
    let bases: Vec<Matrix> = (0..4).map(|nu| data.graded_basis(nu)).collect();
    let mut s: Vec<Matrix> = Vec::with_capacity(4);
    for nu in 0..4 {
        let prev = &bases[(nu + 3) % 4];
        s.push(bases[nu].inverse()?.dot(prev));
    }
    let s: [Matrix; 4] = s.try_into().expect("four levels");
    let general = StokesMatrices::general(data.layout.clone(), s, data.field)?;
    let out = general.normalize()?;
    let bad = out.validate();
    if !bad.is_empty() {
        return Err(Error::Invalid(bad.join("; ")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{GaussRational, Vector};
    use crate::stokes_core::random::{random_data, random_layout};
    use crate::stokes_core::samples::e1;

    fn v(x: &[i64]) -> Vector {
        x.iter().map(|&a| GaussRational::from_ints(a, 0)).collect()
    }

    fn span(x: &[i64]) -> Subspace {
        Subspace::from_vectors(x.len(), vec![v(x)])
    }

    #[test]
    fn e1_filtrations() {
        let f = to_filtrations(&e1()).unwrap();
        let full = Subspace::full(2);
        assert_eq!(f.steps[0], vec![span(&[1, 0]), full.clone()]);
        assert_eq!(f.steps[1], vec![full.clone(), span(&[0, 1])]);
        assert_eq!(f.steps[2], vec![span(&[1, -1]), full.clone()]);
        assert_eq!(f.steps[3], vec![full.clone(), span(&[-1, 2])]);
        assert!(f.is_valid(), "{:?}", f.validate());
        assert_eq!(e1().iso(2), Matrix::from_ints(&[&[2, 1], &[1, 1]]));
    }

    #[test]
    fn e1_round_trip() {
        let f = to_filtrations(&e1()).unwrap();
        let m = to_matrices(&f).unwrap();
        assert_eq!(m, e1().normalize().unwrap());
        assert_eq!(to_filtrations(&m).unwrap(), f);
    }

    #[test]
    fn non_opposite_filtrations_are_reported() {
        let mut f = to_filtrations(&e1()).unwrap();
        f.steps[1] = vec![Subspace::full(2), span(&[1, 0])];
        let report = f.validate();
        assert!(report.iter().any(|m| m.starts_with("opposite: filtrations 0 and 1")), "{:?}", report);
        assert!(matches!(to_matrices(&f), Err(Error::NotOpposite(_))));
    }

    #[test]
    fn monodromy_must_be_identity() {
        let mut d = e1();
        d.s[0].set(0, 1, GaussRational::zero());
        assert_eq!(to_filtrations(&d), Err(Error::MonodromyNotIdentity));
    }

    #[test]
    fn random_round_trips() {
        for seed in 0..10 {
            let layout = random_layout(&[1, 2, 1], seed).unwrap();
            let d = random_data(&layout, seed).unwrap();
            let f = to_filtrations(&d).unwrap();
            assert!(f.is_valid());
            let m = to_matrices(&f).unwrap();
            assert_eq!(m, d.normalize().unwrap());
            assert_eq!(to_filtrations(&m).unwrap(), f);
        }
    }
}
