use crate::error::{Error, Result};
use crate::exact_math::{Field, Matrix};

use super::layout::ExponentLayout;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Form {
    /// Invertible diagonal blocks, formal monodromies derived from them.
    General,
    /// Identity diagonal blocks, formal monodromies stored separately.
    Variant,
}

impl Form {
    pub fn name(self) -> &'static str {
        match self {
            Form::General => "general",
            Form::Variant => "variant",
        }
    }
}

/// Stokes data in matrix form. `s[ν]` is the transition from level ν−1 to level ν,
/// so `s[1]` = S10, `s[2]` = S21, `s[3]` = S32 and `s[0]` = S03.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesMatrices {
    pub layout: ExponentLayout,
    pub s: [Matrix; 4],
    pub t: Vec<Matrix>,
    pub form: Form,
    pub field: Field,
}

/// Block-diagonal matrix from the given blocks.
pub fn block_diag(blocks: &[Matrix]) -> Matrix {
    Matrix::diag_blocks(blocks)
}

/// Block (i, j) of a matrix split by the layout.
pub fn block_of(layout: &ExponentLayout, m: &Matrix, i: usize, j: usize) -> Matrix {
    let (ri, rj) = (layout.block(i), layout.block(j));
    m.block(ri.start, ri.len(), rj.start, rj.len())
}

fn block_upper(nu: usize) -> bool {
    nu % 2 == 0
}

impl StokesMatrices {
    /// General-form data; T is the product of diagonal blocks.
    pub fn general(layout: ExponentLayout, s: [Matrix; 4], field: Field) -> Result<Self> {
        let mut m = StokesMatrices { layout, s, t: Vec::new(), form: Form::General, field };
        m.check_shapes()?;
        m.t = m.formal_monodromies();
        Ok(m)
    }

    pub fn variant(layout: ExponentLayout, s: [Matrix; 4], t: Vec<Matrix>, field: Field) -> Result<Self> {
        let m = StokesMatrices { layout, s, t, form: Form::Variant, field };
        m.check_shapes()?;
        Ok(m)
    }

    /// Shapes only; the rest is reported by `validate`.
    pub fn check_shapes(&self) -> Result<()> {
        let r = self.layout.total_rank();
        for (nu, m) in self.s.iter().enumerate() {
            if m.rows() != r || m.cols() != r {
                return Err(Error::DimensionMismatch(format!("S at level {} is {}x{}, expected {}x{}", nu, m.rows(), m.cols(), r, r)));
            }
        }
        if self.form == Form::Variant {
            if self.t.len() != self.layout.n() {
                return Err(Error::DimensionMismatch("one formal monodromy per exponent".into()));
            }
            for (i, t) in self.t.iter().enumerate() {
                let k = self.layout.ranks[i];
                if t.rows() != k || t.cols() != k {
                    return Err(Error::DimensionMismatch(format!("T_{} is {}x{}, expected {}x{}", i + 1, t.rows(), t.cols(), k, k)));
                }
            }
        }
        Ok(())
    }

    pub fn total_rank(&self) -> usize {
        self.layout.total_rank()
    }

    pub fn block(&self, nu: usize, i: usize, j: usize) -> Matrix {
        block_of(&self.layout, &self.s[nu % 4], i, j)
    }

    /// The S03 of the general form: diag(T)·S03 for variant data.
    pub fn general_s(&self, nu: usize) -> Matrix {
        let nu = nu % 4;
        if nu == 0 && self.form == Form::Variant {
            block_diag(&self.t).dot(&self.s[0])
        } else {
            self.s[nu].clone()
        }
    }

    pub fn to_general(&self) -> StokesMatrices {
        let s = [self.general_s(0), self.s[1].clone(), self.s[2].clone(), self.s[3].clone()];
        StokesMatrices { layout: self.layout.clone(), s, t: self.formal_monodromies(), form: Form::General, field: self.field }
    }

    /// S03·S32·S21·S10 in general form.
    pub fn monodromy(&self) -> Matrix {
        self.general_s(0).dot(&self.s[3]).dot(&self.s[2]).dot(&self.s[1])
    }

    pub fn formal_monodromies(&self) -> Vec<Matrix> {
        if self.form == Form::Variant {
            return self.t.clone();
        }
        (0..self.layout.n())
            .map(|i| self.block(0, i, i).dot(&self.block(3, i, i)).dot(&self.block(2, i, i)).dot(&self.block(1, i, i)))
            .collect()
    }

    /// Transport L = ⊕G^{(0)} → ⊕G^{(ν)}, i.e. S^{(ν,ν−1)}⋯S^{(1,0)}; level 4 is the monodromy.
    pub fn iso(&self, nu: usize) -> Matrix {
        let r = self.total_rank();
        let mut m = Matrix::identity(r);
        for k in 1..=nu {
            m = self.general_s(k).dot(&m);
        }
        m
    }

    /// Every violated invariant, with indices.
    pub fn validate(&self) -> Vec<String> {
        let mut out = Vec::new();
        if let Err(e) = self.layout.check() {
            out.push(format!("layout: {}", e));
        }
        if let Err(e) = self.check_shapes() {
            out.push(format!("shape: {}", e));
            return out;
        }
        for (i, &k) in self.layout.ranks.iter().enumerate() {
            if k == 0 {
                out.push(format!("rank: block {} has rank 0", i + 1));
            }
        }
        let n = self.layout.n();
        let labels = ["S03", "S10", "S21", "S32"];
        for nu in 0..4 {
            for i in 0..n {
                for j in 0..n {
                    let allowed = if block_upper(nu) { i <= j } else { i >= j };
                    let b = self.block(nu, i, j);
                    if !allowed && !b.is_zero() {
                        let kind = if block_upper(nu) { "block-upper" } else { "block-lower" };
                        out.push(format!("triangularity: {} block ({},{}) is nonzero but {} must be {}", labels[nu], i + 1, j + 1, labels[nu], kind));
                    }
                    if i == j {
                        match self.form {
                            Form::General if !b.is_invertible() => {
                                out.push(format!("diagonal: {} block ({},{}) is not invertible", labels[nu], i + 1, i + 1))
                            }
                            Form::Variant if !b.is_identity() => {
                                out.push(format!("diagonal: {} block ({},{}) is not the identity", labels[nu], i + 1, i + 1))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
        if self.form == Form::Variant {
            for (i, t) in self.t.iter().enumerate() {
                if !t.is_invertible() {
                    out.push(format!("formal monodromy: T_{} is not invertible", i + 1));
                }
            }
        }
        let all = self.s.iter().chain(self.t.iter());
        if self.field == Field::Q && !all.clone().all(|m| m.all_real()) {
            out.push("field: entries outside Q for a Q dataset".into());
        }
        if self.layout.pure && out.is_empty() && !self.monodromy().is_identity() {
            out.push("monodromy: total monodromy is not the identity".into());
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Equivalent variant data with Λ^{(0)} = id.
    pub fn normalize(&self) -> Result<StokesMatrices> {
        let g = self.to_general();
        let n = self.layout.n();
        // lambda[ν][i]: block-diagonal change of basis at level ν
        let mut lambda: Vec<Vec<Matrix>> = vec![(0..n).map(|i| Matrix::identity(self.layout.ranks[i])).collect()];
        for nu in 1..4 {
            let prev = &lambda[nu - 1];
            let cur: Vec<Matrix> = (0..n)
                .map(|i| {
                    let d = g.block(nu, i, i).inverse()?;
                    Ok(prev[i].dot(&d))
                })
                .collect::<Result<_>>()?;
            lambda.push(cur);
        }
        // Σ′ = Λ^{(ν)} Σ (Λ^{(ν−1)})^{-1}
        let mut s: Vec<Matrix> = Vec::with_capacity(4);
        for nu in 0..4 {
            let to = block_diag(&lambda[nu]);
            let from = block_diag(&lambda[(nu + 3) % 4]).inverse()?;
            s.push(to.dot(&g.s[nu]).dot(&from));
        }
        let t: Vec<Matrix> = (0..n).map(|i| block_of(&self.layout, &s[0], i, i)).collect();
        s[0] = block_diag(&t).inverse()?.dot(&s[0]);
        let s: [Matrix; 4] = s.try_into().expect("four levels");
        StokesMatrices::variant(self.layout.clone(), s, t, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{rat, CirclePoint, GaussRational};
    use crate::stokes_core::samples::e1;

    #[test]
    fn e1_is_valid_with_identity_monodromy() {
        let d = e1();
        assert!(d.is_valid(), "{:?}", d.validate());
        assert!(d.monodromy().is_identity());
        let t = d.formal_monodromies();
        assert_eq!(t[0], Matrix::from_rationals(vec![vec![rat(1, 2)]]));
        assert_eq!(t[1], Matrix::from_ints(&[&[2]]));
    }

    #[test]
    fn triangularity_violation_is_reported() {
        let mut d = e1();
        d.s[1].set(0, 1, GaussRational::one());
        let v = d.validate();
        assert!(v.iter().any(|m| m.contains("triangularity") && m.contains("S10")), "{:?}", v);
    }

    #[test]
    fn normalize_e1() {
        let v = e1().normalize().unwrap();
        assert_eq!(v.form, Form::Variant);
        assert_eq!(v.t, vec![Matrix::from_rationals(vec![vec![rat(1, 2)]]), Matrix::from_ints(&[&[2]])]);
        assert_eq!(v.s[0], Matrix::from_ints(&[&[1, -2], &[0, 1]]));
        assert!(v.is_valid());
        assert_eq!(v.normalize().unwrap(), v);
    }

    #[test]
    fn rank_one_normalizes_to_trivial_monodromy() {
        let layout = ExponentLayout::new(vec![GaussRational::from_ints(1, 1)], vec![1], CirclePoint::zero(), true).unwrap();
        let s = |x: i64, y: i64| Matrix::from_rationals(vec![vec![rat(x, y)]]);
        let d = StokesMatrices::general(layout, [s(1, 6), s(2, 1), s(3, 1), s(1, 1)], Field::Q).unwrap();
        assert!(d.is_valid());
        let v = d.normalize().unwrap();
        assert!(v.t[0].is_identity());
    }
}
