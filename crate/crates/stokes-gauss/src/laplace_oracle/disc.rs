//! Cell decomposition of the closed disc in the rotated coordinate ζ = x + iy, refined by the
//! conics Q_c(x, y) = |c|(x² − y²) − 2x + |γ| = 0. The inner disc is collapsed to the origin and the
//! circle at infinity is the boundary.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::{One, Zero};

use super::halfline::{check_aligned, modulus};
use crate::circle_sheaf::CellComplex;
use crate::error::{Error, Result};
use crate::exact_math::circle::cmp_arg;
use crate::exact_math::scalar::sign;
use crate::exact_math::{GaussRational, QuadReal, Rational};
use crate::laplace::{is_aligned, is_canonical_theta};
use crate::stokes_core::ExponentLayout;

#[derive(Clone, Debug)]
pub enum VertexKind {
    Origin,
    /// boundary point at direction jπ/4
    Boundary(usize),
    /// common point (|γ|/2, ±|γ|/2) of all conics
    Pinch { upper: bool },
    /// crossing of conic `conic` with the axis ray at direction kπ/2, at distance t from the origin
    Axis { ray: usize, t: QuadReal, conic: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Carrier {
    Axis(usize),
    Conic(usize),
    Arc(usize),
}

#[derive(Clone, Debug)]
pub struct DiscEdge {
    pub tail: usize,
    pub head: usize,
    pub carrier: Carrier,
}

#[derive(Clone, Debug)]
pub struct DiscModel {
    pub nu: usize,
    pub moduli: Vec<Rational>,
    pub gamma_modulus: Rational,
    pub vertices: Vec<VertexKind>,
    pub edges: Vec<DiscEdge>,
    /// boundary cycles, counterclockwise: (edge, +1 when traversed tail → head)
    pub faces: Vec<Vec<(usize, i8)>>,
    /// cells: vertices, then edges, then faces
    pub complex: CellComplex,
    pub chart: Vec<usize>,
    /// sign of Q_c on each cell, per exponent index
    pub qsign: Vec<Vec<i8>>,
    /// edges from the boundary point of ray ν+2 through the origin to that of ray ν, with traversal signs
    pub path: Vec<(usize, i8)>,
}

const ORIGIN: usize = 0;

fn bnd(j: usize) -> usize {
    1 + j % 8
}

const PINCH_UP: usize = 9;
const PINCH_DOWN: usize = 10;

fn q(re: Rational, im: Rational) -> GaussRational {
    GaussRational::new(re, im)
}

fn qi(re: i64, im: i64) -> GaussRational {
    GaussRational::from_ints(re, im)
}

// sign of cos 2φ on the open arc (jπ/4, (j+1)π/4)
fn arc_sign(j: usize) -> i8 {
    if matches!(j % 8, 0 | 3 | 4 | 7) {
        1
    } else {
        -1
    }
}

// sign of x² − y² along a conic near a vertex that is not a pinch point
fn diag_sign_at(v: &VertexKind) -> Option<i8> {
    match v {
        VertexKind::Axis { ray: 0, .. } => Some(1),
        VertexKind::Axis { .. } => Some(-1),
        VertexKind::Boundary(j) if j % 2 == 1 => Some(if matches!(j, 1 | 7) { 1 } else { -1 }),
        _ => None,
    }
}

/// Q_c along the axis ray k at distance t.
fn q_on_ray(cm: &Rational, g: &Rational, ray: usize, t: &QuadReal) -> i8 {
    let two = Rational::from_integer(2.into());
    let t2 = t.mul(t).scale(cm);
    let v = match ray {
        0 => t2.sub(&t.scale(&two)).add_rational(g),
        2 => t2.add(&t.scale(&two)).add_rational(g),
        _ => t2.neg().add_rational(g),
    };
    v.sign()
}

fn quadrants_of(v: &VertexKind) -> Vec<usize> {
    match v {
        VertexKind::Origin => (0..4).collect(),
        VertexKind::Boundary(j) if j % 2 == 0 => vec![(j / 2 + 3) % 4, j / 2],
        VertexKind::Boundary(j) => vec![(j - 1) / 2],
        VertexKind::Pinch { upper: true } => vec![0],
        VertexKind::Pinch { upper: false } => vec![3],
        VertexKind::Axis { ray, .. } => vec![(ray + 3) % 4, *ray],
    }
}

struct Builder {
    vertices: Vec<VertexKind>,
    edges: Vec<DiscEdge>,
    // per vertex: outgoing directions (non-boundary) or asymptotic offsets (boundary)
    dirs: Vec<Vec<(GaussRational, usize)>>,
    offsets: Vec<Vec<(Rational, usize)>>,
}

impl Builder {
    fn add_vertex(&mut self, v: VertexKind) -> usize {
        self.vertices.push(v);
        self.dirs.push(Vec::new());
        self.offsets.push(Vec::new());
        self.vertices.len() - 1
    }

    // `fwd[k]`: direction leaving seq[k] towards seq[k+1] (None at boundary ends); `h`: offsets at boundary ends
    fn add_chain(&mut self, seq: &[usize], fwd: &[Option<GaussRational>], carrier: Carrier, h: &Rational) {
        for k in 0..seq.len() - 1 {
            let e = self.edges.len();
            self.edges.push(DiscEdge { tail: seq[k], head: seq[k + 1], carrier });
            for (v, dir) in [(seq[k], fwd[k].clone()), (seq[k + 1], fwd[k + 1].clone().map(|d| -d))] {
                match dir {
                    Some(d) => self.dirs[v].push((d, e)),
                    None => self.offsets[v].push((h.clone(), e)),
                }
            }
        }
    }
}

/// Builds the model for exponents `layout` (aligned, base direction ½ arg C) and γ on the ray of −1/C.
pub fn build_disc_model(layout: &ExponentLayout, gamma: &GaussRational, nu: usize) -> Result<DiscModel> {
    let exps = &layout.exponents;
    if exps.is_empty() || !is_aligned(exps) {
        return Err(Error::NotAligned("exponents do not share one argument".into()));
    }
    if !is_canonical_theta(&layout.theta0, exps) {
        return Err(Error::NotCanonicalTheta);
    }
    if gamma.is_zero() {
        return Err(Error::DegeneratePencil("γ = 0".into()));
    }
    for c in exps {
        check_aligned(c, gamma)?;
    }
    let nu = nu % 4;
    let moduli: Vec<Rational> = exps.iter().map(modulus).collect::<Result<_>>()?;
    let g = modulus(gamma)?;
    let n = exps.len();
    // K > 0: the conic meets the positive real axis
    let mut wide = Vec::with_capacity(n);
    for m in &moduli {
        let k = m.recip() - &g;
        if k.is_zero() {
            return Err(Error::DegeneratePencil(format!("|γ| = 1/{}", m)));
        }
        wide.push(sign(&k) > 0);
    }

    let mut b = Builder { vertices: Vec::new(), edges: Vec::new(), dirs: Vec::new(), offsets: Vec::new() };
    b.add_vertex(VertexKind::Origin);
    for j in 0..8 {
        b.add_vertex(VertexKind::Boundary(j));
    }
    b.add_vertex(VertexKind::Pinch { upper: true });
    b.add_vertex(VertexKind::Pinch { upper: false });

    let mut on_ray: Vec<Vec<usize>> = vec![Vec::new(); 4];
    let mut y_up = Vec::with_capacity(n);
    let mut y_down = Vec::with_capacity(n);
    let mut s_pair = Vec::with_capacity(n);
    for i in 0..n {
        let m = &moduli[i];
        let y = QuadReal::new(Rational::zero(), Rational::one(), &g / m);
        let up = b.add_vertex(VertexKind::Axis { ray: 1, t: y.clone(), conic: i });
        let down = b.add_vertex(VertexKind::Axis { ray: 3, t: y, conic: i });
        on_ray[1].push(up);
        on_ray[3].push(down);
        y_up.push(up);
        y_down.push(down);
        if wide[i] {
            let a = m.recip();
            let d = Rational::one() - m * &g;
            let lo = b.add_vertex(VertexKind::Axis { ray: 0, t: QuadReal::new(a.clone(), -&a, d.clone()), conic: i });
            let hi = b.add_vertex(VertexKind::Axis { ray: 0, t: QuadReal::new(a.clone(), a, d), conic: i });
            on_ray[0].push(lo);
            on_ray[0].push(hi);
            s_pair.push(Some((lo, hi)));
        } else {
            s_pair.push(None);
        }
    }

    let zero = Rational::zero();
    let unit = [qi(1, 0), qi(0, 1), qi(-1, 0), qi(0, -1)];
    for k in 0..4 {
        let mut pts = on_ray[k].clone();
        pts.sort_by(|&u, &v| match (&b.vertices[u], &b.vertices[v]) {
            (VertexKind::Axis { t: a, .. }, VertexKind::Axis { t: c, .. }) => a.cmp_exact(c),
            _ => Ordering::Equal,
        });
        let mut seq = vec![ORIGIN];
        seq.extend(pts);
        seq.push(bnd(2 * k));
        let mut fwd: Vec<Option<GaussRational>> = vec![Some(unit[k].clone()); seq.len()];
        *fwd.last_mut().unwrap() = None;
        b.add_chain(&seq, &fwd, Carrier::Axis(k), &zero);
    }

    for i in 0..n {
        let mg = &moduli[i] * &g;
        let two = Rational::from_integer(2.into());
        let carrier = Carrier::Conic(i);
        // asymptotic offsets: −1/|c| at π/4 and 3π/4, +1/|c| at 5π/4 and 7π/4
        let h_top = -moduli[i].recip();
        let h_bottom = moduli[i].recip();
        let tan_up_fwd;
        let tan_down_fwd = q(mg.clone(), &two - &mg);
        if let Some((lo, hi)) = s_pair[i] {
            tan_up_fwd = q(-&mg, &two - &mg);
            // left branch by increasing y, split so each end gets its own offset
            let lower = [bnd(5), y_down[i], PINCH_DOWN, lo];
            b.add_chain(&lower, &[None, Some(qi(1, 1)), Some(tan_down_fwd.clone()), Some(qi(0, 1))], carrier, &h_bottom);
            let upper = [lo, PINCH_UP, y_up[i], bnd(3)];
            b.add_chain(&upper, &[Some(qi(0, 1)), Some(tan_up_fwd), Some(qi(-1, 1)), None], carrier, &h_top);
            b.add_chain(&[bnd(7), hi], &[None, Some(qi(0, 1))], carrier, &h_bottom);
            b.add_chain(&[hi, bnd(1)], &[Some(qi(0, 1)), None], carrier, &h_top);
        } else {
            tan_up_fwd = q(mg.clone(), &mg - &two);
            b.add_chain(&[bnd(3), y_up[i]], &[None, Some(qi(1, -1))], carrier, &h_top);
            b.add_chain(&[y_up[i], PINCH_UP, bnd(1)], &[Some(qi(1, -1)), Some(tan_up_fwd), None], carrier, &h_top);
            b.add_chain(&[bnd(5), y_down[i]], &[None, Some(qi(1, 1))], carrier, &h_bottom);
            b.add_chain(&[y_down[i], PINCH_DOWN, bnd(7)], &[Some(qi(1, 1)), Some(tan_down_fwd), None], carrier, &h_bottom);
        }
    }

    // boundary arcs j → j+1 are added last so they are easy to find in the rotation
    let first_arc = b.edges.len();
    for j in 0..8 {
        b.edges.push(DiscEdge { tail: bnd(j), head: bnd(j + 1), carrier: Carrier::Arc(j) });
    }

    // counterclockwise rotation system
    let nv = b.vertices.len();
    let mut rot: Vec<Vec<usize>> = Vec::with_capacity(nv);
    for v in 0..nv {
        if let VertexKind::Boundary(j) = b.vertices[v] {
            let mut inner = b.offsets[v].clone();
            inner.sort_by(|a, c| c.0.cmp(&a.0));
            let mut r = vec![first_arc + j];
            r.extend(inner.into_iter().map(|(_, e)| e));
            r.push(first_arc + (j + 7) % 8);
            rot.push(r);
        } else {
            let mut d = b.dirs[v].clone();
            d.sort_by(|a, c| cmp_arg(&a.0, &c.0));
            for w in d.windows(2) {
                if cmp_arg(&w[0].0, &w[1].0) == Ordering::Equal {
                    return Err(Error::Invalid(format!("two edges leave vertex {} in the same direction", v)));
                }
            }
            rot.push(d.into_iter().map(|(_, e)| e).collect());
        }
    }

    let edges = b.edges;
    let ne = edges.len();
    let mut seen = vec![[false; 2]; ne];
    let mut faces = Vec::new();
    for e0 in 0..ne {
        for f0 in [true, false] {
            if seen[e0][f0 as usize] {
                continue;
            }
            let mut cycle = Vec::new();
            let (mut e, mut fwd) = (e0, f0);
            while !seen[e][fwd as usize] {
                seen[e][fwd as usize] = true;
                cycle.push((e, if fwd { 1i8 } else { -1 }));
                let to = if fwd { edges[e].head } else { edges[e].tail };
                let r = &rot[to];
                let pos = r.iter().position(|&x| x == e).expect("edge missing from rotation");
                let next = r[(pos + r.len() - 1) % r.len()];
                fwd = edges[next].tail == to;
                e = next;
            }
            faces.push(cycle);
        }
    }
    let outer: Vec<usize> = faces
        .iter()
        .enumerate()
        .filter(|(_, f)| f.iter().all(|&(e, s)| matches!(edges[e].carrier, Carrier::Arc(_)) && s < 0))
        .map(|(k, _)| k)
        .collect();
    if outer.len() != 1 {
        return Err(Error::Invalid("boundary circle is not a single face".into()));
    }
    faces.remove(outer[0]);

    let mut complex = CellComplex::default();
    for _ in 0..nv {
        complex.add_cell(0, vec![]);
    }
    for e in &edges {
        complex.add_cell(1, vec![(e.tail, -1), (e.head, 1)]);
    }
    for f in &faces {
        complex.add_cell(2, f.iter().map(|&(e, s)| (nv + e, s)).collect());
    }
    if complex.euler_characteristic() != 1 {
        return Err(Error::Invalid(format!("disc model has Euler characteristic {}", complex.euler_characteristic())));
    }

    let vertices = b.vertices;
    let chart_of_quadrant = |qd: usize| (nu + 8 - qd - 1) % 4;
    let chart_of_ray = |k: usize| (nu + 4 - k) % 4;
    let mut chart = Vec::with_capacity(complex.len());
    let mut qsign: Vec<Vec<i8>> = Vec::with_capacity(complex.len());

    for v in &vertices {
        let (ch, s) = match v {
            VertexKind::Origin => (0, vec![1; n]),
            VertexKind::Boundary(j) if j % 2 == 0 => (chart_of_ray(j / 2), vec![if j % 4 == 0 { 1 } else { -1 }; n]),
            VertexKind::Boundary(j) => (chart_of_quadrant((j - 1) / 2), vec![0; n]),
            VertexKind::Pinch { upper } => (chart_of_quadrant(if *upper { 0 } else { 3 }), vec![0; n]),
            VertexKind::Axis { ray, t, conic } => (
                chart_of_ray(*ray),
                (0..n).map(|i| if i == *conic { 0 } else { q_on_ray(&moduli[i], &g, *ray, t) }).collect(),
            ),
        };
        chart.push(ch);
        qsign.push(s);
    }

    let mut edge_quadrant = Vec::with_capacity(ne);
    for e in &edges {
        let (ch, s, quad) = match e.carrier {
            Carrier::Arc(j) => (chart_of_quadrant(j / 2), vec![arc_sign(j); n], Some(j / 2)),
            Carrier::Axis(k) => {
                let t0 = match &vertices[e.tail] {
                    VertexKind::Axis { t, .. } => t.clone(),
                    _ => QuadReal::rational(Rational::zero()),
                };
                let w = match &vertices[e.head] {
                    VertexKind::Axis { t, .. } => t0.rational_between(t),
                    _ => t0.enclosure(8).1 + Rational::one(),
                };
                let w = QuadReal::rational(w);
                let s: Vec<i8> = (0..n).map(|i| q_on_ray(&moduli[i], &g, k, &w)).collect();
                if s.contains(&0) {
                    return Err(Error::Invalid("axis witness lies on a conic".into()));
                }
                (chart_of_ray(k), s, None)
            }
            Carrier::Conic(c0) => {
                let a = diag_sign_at(&vertices[e.tail])
                    .or_else(|| diag_sign_at(&vertices[e.head]))
                    .ok_or_else(|| Error::Invalid("conic edge between two pinch points".into()))?;
                let s = (0..n)
                    .map(|i| if i == c0 { 0 } else { sign(&(&moduli[i] - &moduli[c0])) * a })
                    .collect();
                let qa: BTreeSet<usize> = quadrants_of(&vertices[e.tail]).into_iter().collect();
                let qb: BTreeSet<usize> = quadrants_of(&vertices[e.head]).into_iter().collect();
                let common: Vec<usize> = qa.intersection(&qb).copied().collect();
                if common.len() != 1 {
                    return Err(Error::Invalid("conic edge in no single quadrant".into()));
                }
                (chart_of_quadrant(common[0]), s, Some(common[0]))
            }
        };
        chart.push(ch);
        qsign.push(s);
        edge_quadrant.push(quad);
    }

    for f in &faces {
        let mut quad = None;
        for &(e, _) in f {
            if let Some(qd) = edge_quadrant[e] {
                if quad.is_some_and(|x| x != qd) {
                    return Err(Error::Invalid("face spans two quadrants".into()));
                }
                quad = Some(qd);
            }
        }
        let quad = quad.ok_or_else(|| Error::Invalid("face bounded by axis edges only".into()))?;
        let mut s = vec![0i8; n];
        for (i, si) in s.iter_mut().enumerate() {
            for &(e, _) in f {
                let x = qsign[nv + e][i];
                if x == 0 {
                    continue;
                }
                if *si != 0 && *si != x {
                    return Err(Error::Invalid(format!("sign of conic {} changes around a face", i)));
                }
                *si = x;
            }
            if *si == 0 {
                return Err(Error::Invalid(format!("face bounded by conic {} only", i)));
            }
        }
        chart.push(chart_of_quadrant(quad));
        qsign.push(s);
    }

    let mut path = Vec::new();
    let (ka, kb) = (nu, (nu + 2) % 4);
    let mut inward: Vec<usize> = (0..ne).filter(|&e| edges[e].carrier == Carrier::Axis(kb)).collect();
    inward.reverse();
    path.extend(inward.into_iter().map(|e| (e, -1i8)));
    path.extend((0..ne).filter(|&e| edges[e].carrier == Carrier::Axis(ka)).map(|e| (e, 1i8)));

    Ok(DiscModel { nu, moduli, gamma_modulus: g, vertices, edges, faces, complex, chart, qsign, path })
}

impl DiscModel {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_cell(&self, e: usize) -> usize {
        self.vertices.len() + e
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.complex.euler_characteristic()
    }

    /// Exponent i is present on `cell` in G_{<γ}: (−1)^ν Q_c < 0.
    pub fn member(&self, cell: usize, i: usize) -> bool {
        let s = self.qsign[cell][i];
        if self.nu % 2 == 1 {
            s > 0
        } else {
            s < 0
        }
    }

    /// Cells on the circle at infinity.
    pub fn on_boundary(&self, cell: usize) -> bool {
        let nv = self.vertices.len();
        if cell < nv {
            matches!(self.vertices[cell], VertexKind::Boundary(_))
        } else if cell < nv + self.edges.len() {
            matches!(self.edges[cell - nv].carrier, Carrier::Arc(_))
        } else {
            false
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::{rat, CirclePoint};

    fn real_layout(c: &[i64]) -> ExponentLayout {
        let exps = c.iter().map(|&x| GaussRational::from_ints(x, 0)).collect();
        ExponentLayout::new(exps, vec![1; c.len()], CirclePoint::zero(), true).unwrap()
    }

    #[test]
    fn disc_models_have_euler_characteristic_one() {
        let layout = real_layout(&[1, 2]);
        for (gn, gd) in [(1, 4), (3, 4), (2, 1)] {
            for nu in 0..4 {
                let m = build_disc_model(&layout, &GaussRational::real(rat(-gn, gd)), nu).unwrap();
                assert_eq!(m.euler_characteristic(), 1);
            }
        }
    }

    #[test]
    fn single_conic_without_axis_roots() {
        let m = build_disc_model(&real_layout(&[1]), &GaussRational::real(rat(-2, 1)), 1).unwrap();
        // the positive real axis is a single edge from the origin to the boundary, all in the region
        let axis: Vec<_> = (0..m.edges.len()).filter(|&e| m.edges[e].carrier == Carrier::Axis(0)).collect();
        assert_eq!(axis.len(), 1);
        assert!(m.member(m.edge_cell(axis[0]), 0));
    }

    #[test]
    fn lens_on_axis_only_for_small_gamma() {
        // |γ| = 3/4: the conic of c = 1 crosses the axis, that of c = 2 does not
        let m = build_disc_model(&real_layout(&[1, 2]), &GaussRational::real(rat(-3, 4)), 0).unwrap();
        let crossings: Vec<usize> = m
            .vertices
            .iter()
            .filter_map(|v| match v {
                VertexKind::Axis { ray: 0, conic, .. } => Some(*conic),
                _ => None,
            })
            .collect();
        assert_eq!(crossings, vec![0, 0]);
        // some face off the axis lies inside the region of c = 2
        let nv = m.vertices.len() + m.edges.len();
        assert!((nv..m.complex.len()).any(|f| m.member(f, 1)));
    }

    #[test]
    fn rejects_bad_input() {
        let layout = real_layout(&[1, 2]);
        assert!(matches!(build_disc_model(&layout, &GaussRational::zero(), 0), Err(Error::DegeneratePencil(_))));
        assert!(matches!(build_disc_model(&layout, &GaussRational::real(rat(-1, 2)), 0), Err(Error::DegeneratePencil(_))));
        assert!(matches!(build_disc_model(&layout, &GaussRational::real(rat(1, 2)), 0), Err(Error::NotAligned(_))));
    }
}
