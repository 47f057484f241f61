use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact_math::sparse::{to_dense, SparseEchelon, SparseVec};
use crate::exact_math::{leq_at, CirclePoint, Field, GaussRational, Matrix, Order, Subspace};

use super::filtrations::StokesFiltrations;
use super::layout::{sort_exponents, ExponentLayout};
use super::matrices::StokesMatrices;

/// A linear map L → L′ compatible with all four filtrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StokesMorphism {
    pub source: StokesFiltrations,
    pub target: StokesFiltrations,
    pub map: Matrix,
}

fn same_type(a: &ExponentLayout, b: &ExponentLayout) -> bool {
    a.exponents == b.exponents && a.theta0 == b.theta0
}

fn join_field(a: Field, b: Field) -> Field {
    if a == Field::Q && b == Field::Q { Field::Q } else { Field::QI }
}

impl StokesMorphism {
    pub fn new(source: StokesFiltrations, target: StokesFiltrations, map: Matrix) -> Result<Self> {
        if !same_type(&source.layout, &target.layout) {
            return Err(Error::IncompatibleLayouts("source and target have different exponents or base direction".into()));
        }
        if map.rows() != target.dim || map.cols() != source.dim {
            return Err(Error::DimensionMismatch(format!("map is {}x{}, expected {}x{}", map.rows(), map.cols(), target.dim, source.dim)));
        }
        let m = StokesMorphism { source, target, map };
        if let Some((nu, i)) = m.first_incompatibility() {
            return Err(Error::IncompatibleLayouts(format!("map does not send step {} of filtration {} into the target step", i + 1, nu)));
        }
        Ok(m)
    }

    fn first_incompatibility(&self) -> Option<(usize, usize)> {
        for nu in 0..4 {
            for i in 0..self.source.layout.n() {
                let img = self.source.step(nu, i).map(&self.map);
                if !self.target.step(nu, i).contains_subspace(&img) {
                    return Some((nu, i));
                }
            }
        }
        None
    }

    pub fn identity(data: &StokesFiltrations) -> Self {
        StokesMorphism { source: data.clone(), target: data.clone(), map: Matrix::identity(data.dim) }
    }

    pub fn zero(source: &StokesFiltrations, target: &StokesFiltrations) -> Result<Self> {
        StokesMorphism::new(source.clone(), target.clone(), Matrix::zeros(target.dim, source.dim))
    }

    pub fn compose(&self, after: &StokesMorphism) -> Result<StokesMorphism> {
        if self.target != after.source {
            return Err(Error::IncompatibleLayouts("composition through different data".into()));
        }
        Ok(StokesMorphism { source: self.source.clone(), target: after.target.clone(), map: after.map.dot(&self.map) })
    }

    /// λ_c^{(ν)} in the echelon bases of the graded pieces.
    pub fn blocks(&self, nu: usize) -> Vec<Matrix> {
        (0..self.source.layout.n())
            .map(|i| {
                let src = self.source.graded(nu, i);
                let dst = self.target.graded(nu, i);
                let cols: Vec<_> = src
                    .basis()
                    .iter()
                    .map(|b| dst.coordinates(&self.map.apply(b)).expect("strict morphism preserves graded pieces"))
                    .collect();
                Matrix::from_columns(dst.dim(), &cols)
            })
            .collect()
    }

    /// Kernel data and its inclusion.
    pub fn kernel(&self) -> Result<(StokesFiltrations, StokesMorphism)> {
        let k = self.map.kernel();
        let b = k.basis_matrix();
        let steps = std::array::from_fn(|nu| self.source.steps[nu].iter().map(|s| s.preimage(&b)).collect());
        let data = with_graded_ranks(&self.source.layout, k.dim(), steps, self.source.field);
        check_valid(&data)?;
        let incl = StokesMorphism::new(data.clone(), self.source.clone(), b)?;
        Ok((data, incl))
    }

    /// Cokernel data and the projection onto it.
    pub fn cokernel(&self) -> Result<(StokesFiltrations, StokesMorphism)> {
        let im = self.map.image();
        let p = quotient_projection(&im);
        let steps = std::array::from_fn(|nu| self.target.steps[nu].iter().map(|s| s.map(&p)).collect());
        let data = with_graded_ranks(&self.target.layout, p.rows(), steps, self.target.field);
        check_valid(&data)?;
        let proj = StokesMorphism::new(self.target.clone(), data.clone(), p)?;
        Ok((data, proj))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_zero()
    }
}

fn check_valid(data: &StokesFiltrations) -> Result<()> {
    let v = data.validate();
    if v.is_empty() { Ok(()) } else { Err(Error::NotOpposite(v.join("; "))) }
}

fn with_graded_ranks(layout: &ExponentLayout, dim: usize, steps: [Vec<Subspace>; 4], field: Field) -> StokesFiltrations {
    let mut data = StokesFiltrations { layout: layout.clone(), dim, steps, field };
    let ranks = (0..layout.n()).map(|i| data.graded(0, i).dim()).collect();
    data.layout = layout.with_ranks(ranks);
    data
}

/// Projection k^n → k^n / W in coordinates complementary to the echelon pivots of W.
pub fn quotient_projection(w: &Subspace) -> Matrix {
    let n = w.ambient();
    let keep = w.coordinate_complement();
    let mut p = Matrix::zeros(keep.len(), n);
    for j in 0..n {
        let mut v = vec![GaussRational::zero(); n];
        v[j] = GaussRational::one();
        for b in w.basis() {
            let piv = b.iter().position(|x| !x.is_zero()).expect("nonzero basis vector");
            let f = v[piv].clone();
            if !f.is_zero() {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = &*x - &(&f * y);
                }
            }
        }
        for (row, &k) in keep.iter().enumerate() {
            p.set(row, j, v[k].clone());
        }
    }
    p
}

/// Trivial data of one exponent: every step is L.
pub fn trivial(c0: GaussRational, dim: usize, theta0: CirclePoint, field: Field) -> Result<StokesFiltrations> {
    let pure = !c0.is_zero();
    let layout = ExponentLayout::new(vec![c0], vec![dim], theta0, pure)?;
    let steps = std::array::from_fn(|_| vec![Subspace::full(dim)]);
    Ok(StokesFiltrations { layout, dim, steps, field })
}

/// Trivial data in matrix form.
pub fn trivial_matrices(c0: GaussRational, dim: usize, theta0: CirclePoint, field: Field) -> Result<StokesMatrices> {
    let layout = ExponentLayout::new(vec![c0], vec![dim], theta0, true)?;
    let id = Matrix::identity(dim);
    StokesMatrices::variant(layout, [id.clone(), id.clone(), id.clone(), id.clone()], vec![id], field)
}

/// The same filtered space over a larger layout, with rank 0 at the new exponents.
pub fn extend_layout(data: &StokesFiltrations, layout: &ExponentLayout) -> Result<StokesFiltrations> {
    let pos: Vec<usize> = data
        .layout
        .exponents
        .iter()
        .map(|c| layout.index_of(c).ok_or_else(|| Error::IncompatibleLayouts(format!("{} missing from the larger layout", c))))
        .collect::<Result<_>>()?;
    let n = layout.n();
    let mut steps: [Vec<Subspace>; 4] = Default::default();
    for nu in 0..4 {
        steps[nu] = (0..n)
            .map(|k| {
                // largest old exponent below k in the ν-order
                let mut best: Option<usize> = None;
                for (a, &p) in pos.iter().enumerate() {
                    if ExponentLayout::nu_leq(nu, p, k) && best.map_or(true, |b| ExponentLayout::nu_leq(nu, pos[b], p)) {
                        best = Some(a);
                    }
                }
                best.map_or_else(|| Subspace::zero(data.dim), |a| data.step(nu, a).clone())
            })
            .collect();
    }
    let ranks = (0..n).map(|k| pos.iter().position(|&p| p == k).map_or(0, |a| data.layout.ranks[a])).collect();
    Ok(StokesFiltrations { layout: layout.with_ranks(ranks), dim: data.dim, steps, field: data.field })
}

fn embed(s: &Subspace, total: usize, offset: usize) -> Vec<Vec<GaussRational>> {
    s.basis()
        .iter()
        .map(|b| {
            let mut v = vec![GaussRational::zero(); total];
            v[offset..offset + b.len()].clone_from_slice(b);
            v
        })
        .collect()
}

/// L ⊕ L′ over the union of the exponents.
pub fn direct_sum(a: &StokesFiltrations, b: &StokesFiltrations) -> Result<StokesFiltrations> {
    if a.layout.theta0 != b.layout.theta0 {
        return Err(Error::IncompatibleLayouts("different base directions".into()));
    }
    let mut items: Vec<(GaussRational, usize)> = a.layout.exponents.iter().cloned().zip(a.layout.ranks.iter().cloned()).collect();
    for (c, &r) in b.layout.exponents.iter().zip(&b.layout.ranks) {
        match items.iter_mut().find(|(x, _)| x == c) {
            Some(e) => e.1 += r,
            None => items.push((c.clone(), r)),
        }
    }
    let layout = sort_exponents(&items, &a.layout.theta0, a.layout.pure && b.layout.pure)?;
    let ea = extend_layout(a, &layout)?;
    let eb = extend_layout(b, &layout)?;
    let dim = a.dim + b.dim;
    let steps = std::array::from_fn(|nu| {
        (0..layout.n())
            .map(|k| {
                let mut v = embed(ea.step(nu, k), dim, 0);
                v.extend(embed(eb.step(nu, k), dim, a.dim));
                Subspace::from_vectors(dim, v)
            })
            .collect()
    });
    Ok(StokesFiltrations { layout, dim, steps, field: join_field(a.field, b.field) })
}

/// Short exact sequence 0 → data → data ⊕ trivial → trivial → 0.
pub struct TrivialExtension {
    pub data: StokesFiltrations,
    pub inclusion: StokesMorphism,
    pub projection: StokesMorphism,
}

/// Adds trivial data at an exponent that is minimal at θ_o (hence maximal at odd levels).
pub fn add_trivial(data: &StokesFiltrations, c0: GaussRational, dim: usize) -> Result<TrivialExtension> {
    let theta = &data.layout.theta0;
    for c in &data.layout.exponents {
        if leq_at(&c0, c, theta) != Order::LessStrict {
            return Err(Error::NotExtreme(c0.to_string()));
        }
    }
    let triv = trivial(c0, dim, theta.clone(), data.field)?;
    let sum = direct_sum(data, &triv)?;
    let r = data.dim;
    let mut incl = Matrix::zeros(r + dim, r);
    incl.set_block(0, 0, &Matrix::identity(r));
    let mut proj = Matrix::zeros(dim, r + dim);
    proj.set_block(0, r, &Matrix::identity(dim));
    let inclusion = StokesMorphism::new(extend_layout(data, &sum.layout)?, sum.clone(), incl)?;
    let projection = StokesMorphism::new(sum.clone(), extend_layout(&triv, &sum.layout)?, proj)?;
    Ok(TrivialExtension { data: sum, inclusion, projection })
}

/// Basis of the endomorphisms of filtered data, as r×r matrices.
pub fn endomorphism_basis(data: &StokesFiltrations) -> Vec<Matrix> {
    let r = data.dim;
    let mut ech = SparseEchelon::new(r * r);
    for nu in 0..4 {
        for step in &data.steps[nu] {
            let eq = step.equations();
            for e in eq.to_rows() {
                for v in step.basis() {
                    let mut row = SparseVec::new();
                    for (a, ea) in e.iter().enumerate() {
                        if ea.is_zero() {
                            continue;
                        }
                        for (b, vb) in v.iter().enumerate() {
                            if !vb.is_zero() {
                                row.insert(a * r + b, ea * vb);
                            }
                        }
                    }
                    ech.insert(row);
                }
            }
        }
    }
    ech.kernel()
        .iter()
        .map(|k| {
            let d = to_dense(k, r * r);
            Matrix::from_rows(d.chunks(r).map(|c| c.to_vec()).collect()).expect("square")
        })
        .collect()
}

/// Seeded integer combination of the endomorphism basis.
pub fn random_endomorphism(data: &StokesFiltrations, seed: u64) -> StokesMorphism {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = Matrix::zeros(data.dim, data.dim);
    for b in endomorphism_basis(data) {
        let k: i64 = rng.gen_range(-3..=3);
        m = m.add(&b.scale(&GaussRational::from_ints(k, 0))).expect("same shape");
    }
    StokesMorphism { source: data.clone(), target: data.clone(), map: m }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::rat;
    use crate::stokes_core::filtrations::{to_filtrations, to_matrices};
    use crate::stokes_core::samples::e1;

    fn e1f() -> StokesFiltrations {
        to_filtrations(&e1()).unwrap()
    }

    #[test]
    fn identity_and_zero() {
        let f = e1f();
        let id = StokesMorphism::identity(&f);
        assert_eq!(id.kernel().unwrap().0.dim, 0);
        assert_eq!(id.cokernel().unwrap().0.dim, 0);
        let z = StokesMorphism::zero(&f, &f).unwrap();
        let (k, incl) = z.kernel().unwrap();
        assert_eq!(k, f);
        assert!(incl.map.is_identity());
        let (c, _) = z.cokernel().unwrap();
        assert_eq!(c, f);
    }

    #[test]
    fn add_trivial_examples() {
        let f = e1f();
        let ext = add_trivial(&f, GaussRational::real(rat(1, 2)), 1).unwrap();
        assert!(ext.data.is_valid(), "{:?}", ext.data.validate());
        assert_eq!(ext.data.dim, 3);
        let exps: Vec<_> = ext.data.layout.exponents.iter().map(|c| c.re.clone()).collect();
        assert_eq!(exps, vec![rat(1, 2), rat(1, 1), rat(2, 1)]);
        assert!(ext.inclusion.compose(&ext.projection).unwrap().is_zero());
        let (k, _) = ext.projection.kernel().unwrap();
        assert_eq!(k, ext.inclusion.source);
        let (c, _) = ext.inclusion.cokernel().unwrap();
        assert_eq!(c, ext.projection.target);
        assert!(matches!(add_trivial(&f, GaussRational::from_ints(3, 0), 1), Err(Error::NotExtreme(_))));
        assert!(to_matrices(&ext.data).unwrap().is_valid());
    }

    #[test]
    fn trivial_data_steps() {
        let t = trivial(GaussRational::from_ints(1, 0), 2, CirclePoint::zero(), Field::Q).unwrap();
        assert!(t.is_valid());
        assert!(t.steps.iter().all(|s| s[0].is_full()));
        let m = to_matrices(&t).unwrap();
        assert!(m.s.iter().all(|x| x.is_identity()) && m.t[0].is_identity());
    }

    #[test]
    fn direct_sum_is_componentwise() {
        let f = e1f();
        let s = direct_sum(&f, &f).unwrap();
        assert!(s.is_valid());
        assert_eq!(s.layout.ranks, vec![2, 2]);
        assert_eq!(s.step(2, 0).dim(), 2);
    }

    #[test]
    fn endomorphisms_of_e1_are_scalars() {
        let f = e1f();
        let basis = endomorphism_basis(&f);
        assert_eq!(basis.len(), 1);
        assert!(basis[0].is_identity());
        let e = random_endomorphism(&f, 3);
        assert!(StokesMorphism::new(f.clone(), f.clone(), e.map).is_ok());
    }
}
