use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use super::scalar::{rat, sign, GaussRational, Rational};
use crate::error::{Error, Result};

/// Outcome of comparing two exponents at a direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    LessStrict,
    Equal,
    GreaterStrict,
    Incomparable,
}

/// Point of the circle: θ = arg(doubled)/2 + branch·π, with arg in [0, 2π).
#[derive(Clone, Debug)]
pub struct CirclePoint {
    pub doubled: GaussRational,
    pub branch: u8,
}

// 0 for arg in [0, π), 1 for arg in [π, 2π)
fn half(q: &GaussRational) -> u8 {
    let s = sign(&q.im);
    if s > 0 || (s == 0 && sign(&q.re) > 0) {
        0
    } else {
        1
    }
}

fn cross(q1: &GaussRational, q2: &GaussRational) -> Rational {
    &q1.re * &q2.im - &q1.im * &q2.re
}

fn dot(q1: &GaussRational, q2: &GaussRational) -> Rational {
    &q1.re * &q2.re + &q1.im * &q2.im
}

/// Compares arg(q1) with arg(q2) in [0, 2π).
pub fn cmp_arg(q1: &GaussRational, q2: &GaussRational) -> Ordering {
    let (h1, h2) = (half(q1), half(q2));
    if h1 != h2 {
        return h1.cmp(&h2);
    }
    match sign(&cross(q1, q2)) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

impl CirclePoint {
    pub fn new(doubled: GaussRational, branch: u8) -> Self {
        assert!(!doubled.is_zero(), "doubled angle must be nonzero");
        assert!(branch < 2);
        CirclePoint { doubled, branch }
    }

    /// θ = 0.
    pub fn zero() -> Self {
        CirclePoint::new(GaussRational::one(), 0)
    }

    pub fn rotate_quarter(&self) -> Self {
        let branch = if half(&self.doubled) == 0 { self.branch } else { 1 - self.branch };
        CirclePoint::new(-&self.doubled, branch)
    }

    /// θ + ν·π/2.
    pub fn rotate_quarters(&self, nu: usize) -> Self {
        let mut p = self.clone();
        for _ in 0..nu % 4 {
            p = p.rotate_quarter();
        }
        p
    }

    pub fn half_turn(&self) -> Self {
        CirclePoint::new(self.doubled.clone(), 1 - self.branch)
    }

    /// π − θ.
    pub fn pi_minus(&self) -> Self {
        let q = &self.doubled;
        let positive_real = q.im.is_zero() && sign(&q.re) > 0;
        let branch = if positive_real { 1 - self.branch } else { self.branch };
        CirclePoint::new(q.conj(), branch)
    }

    /// A point strictly inside the counterclockwise arc (self, next).
    pub fn point_between(&self, next: &CirclePoint) -> CirclePoint {
        let mut t = Rational::from_integer(1.into());
        let half_t = rat(1, 2);
        loop {
            let q = &self.doubled * &GaussRational::new(Rational::from_integer(1.into()), t.clone());
            let wrapped = half(&self.doubled) == 1 && half(&q) == 0;
            let branch = if wrapped { 1 - self.branch } else { self.branch };
            let cand = CirclePoint::new(q, branch);
            if cyclic_strictly_between(self, &cand, next) {
                return cand;
            }
            t = t * &half_t;
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let re = self.doubled.re.to_f64().unwrap_or(0.0);
        let im = self.doubled.im.to_f64().unwrap_or(0.0);
        let mut a = im.atan2(re);
        if a < 0.0 {
            a += 2.0 * std::f64::consts::PI;
        }
        a / 2.0 + self.branch as f64 * std::f64::consts::PI
    }
}

/// True when x lies in the open counterclockwise arc from a to b (the full circle minus a when a = b).
pub fn cyclic_strictly_between(a: &CirclePoint, x: &CirclePoint, b: &CirclePoint) -> bool {
    match a.cmp(b) {
        Ordering::Less => a < x && x < b,
        _ => x > a || x < b,
    }
}

impl PartialEq for CirclePoint {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}

impl Eq for CirclePoint {}

impl PartialOrd for CirclePoint {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for CirclePoint {
    fn cmp(&self, o: &Self) -> Ordering {
        self.branch.cmp(&o.branch).then_with(|| cmp_arg(&self.doubled, &o.doubled))
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, branch {})", self.doubled, self.branch)
    }
}

/// Order of c and c′ at θ: c <_θ c′ iff Re((c − c′)·conj(doubled)) < 0.
pub fn leq_at(c: &GaussRational, c2: &GaussRational, theta: &CirclePoint) -> Order {
    let d = c - c2;
    if d.is_zero() {
        return Order::Equal;
    }
    match sign(&dot(&d, &theta.doubled)) {
        -1 => Order::LessStrict,
        1 => Order::GreaterStrict,
        _ => Order::Incomparable,
    }
}

/// c ≤_θ c′ (equality included).
pub fn is_leq(c: &GaussRational, c2: &GaussRational, theta: &CirclePoint) -> bool {
    matches!(leq_at(c, c2, theta), Order::LessStrict | Order::Equal)
}

/// The four directions where c and c′ are incomparable, sorted.
pub fn stokes_directions(c: &GaussRational, c2: &GaussRational) -> Result<Vec<CirclePoint>> {
    let d = c - c2;
    if d.is_zero() {
        return Err(Error::DegeneratePair);
    }
    let q = &GaussRational::i() * &d;
    let mut out = vec![
        CirclePoint::new(q.clone(), 0),
        CirclePoint::new(q.clone(), 1),
        CirclePoint::new(-&q, 0),
        CirclePoint::new(-&q, 1),
    ];
    out.sort();
    Ok(out)
}

pub fn is_generic(theta: &CirclePoint, exps: &[GaussRational]) -> bool {
    first_incomparable(theta, exps).is_none()
}

pub(crate) fn first_incomparable(theta: &CirclePoint, exps: &[GaussRational]) -> Option<(usize, usize)> {
    for i in 0..exps.len() {
        for j in i + 1..exps.len() {
            if leq_at(&exps[i], &exps[j], theta) == Order::Incomparable {
                return Some((i, j));
            }
        }
    }
    None
}

/// Sign of Re(d·e^{−2iθ}) just counterclockwise of v.
pub fn sign_on_cell_after(v: &CirclePoint, d: &GaussRational) -> i8 {
    assert!(!d.is_zero(), "sign_on_cell_after needs d ≠ 0");
    let q = &v.doubled;
    let re = sign(&dot(d, q));
    if re != 0 {
        return re;
    }
    // Im(d·conj q)
    let im = sign(&cross(q, d));
    assert!(im != 0);
    im
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::scalar::int;

    fn g(re: i64, im: i64) -> GaussRational {
        GaussRational::from_ints(re, im)
    }

    fn pt(re: i64, im: i64, b: u8) -> CirclePoint {
        CirclePoint::new(g(re, im), b)
    }

    #[test]
    fn leq_examples() {
        assert_eq!(leq_at(&g(-1, 0), &g(0, 0), &pt(1, 0, 0)), Order::LessStrict);
        assert_eq!(leq_at(&g(1, 0), &g(0, 0), &pt(1, 0, 0)), Order::GreaterStrict);
        assert_eq!(leq_at(&g(0, 1), &g(0, 0), &pt(0, 1, 0)), Order::GreaterStrict);
        assert_eq!(leq_at(&g(1, 0), &g(0, 0), &pt(0, 1, 0)), Order::Incomparable);
        assert_eq!(leq_at(&g(2, 3), &g(2, 3), &pt(0, 1, 0)), Order::Equal);
    }

    #[test]
    fn stokes_directions_examples() {
        // (1, 2): π/4, 3π/4, 5π/4, 7π/4
        let dirs = stokes_directions(&g(1, 0), &g(2, 0)).unwrap();
        let want = vec![pt(0, 1, 0), pt(0, -1, 0), pt(0, 1, 1), pt(0, -1, 1)];
        assert_eq!(dirs, want);
        let angles: Vec<f64> = dirs.iter().map(|p| p.to_f64()).collect();
        for (k, a) in angles.iter().enumerate() {
            let expect = std::f64::consts::PI * (2 * k + 1) as f64 / 4.0;
            assert!((a - expect).abs() < 1e-12);
        }
        // (i, 0): 0, π/2, π, 3π/2
        let dirs = stokes_directions(&g(0, 1), &g(0, 0)).unwrap();
        assert_eq!(dirs, vec![pt(1, 0, 0), pt(-1, 0, 0), pt(1, 0, 1), pt(-1, 0, 1)]);
        let dirs = stokes_directions(&g(3, 4), &g(0, 0)).unwrap();
        assert!(dirs.iter().all(|p| p.doubled == g(-4, 3) || p.doubled == g(4, -3)));
        assert_eq!(stokes_directions(&g(1, 1), &g(1, 1)).unwrap_err(), Error::DegeneratePair);
    }

    #[test]
    fn consecutive_stokes_directions_are_quarter_turns() {
        let dirs = stokes_directions(&g(3, 4), &g(-1, 2)).unwrap();
        for k in 0..4 {
            assert_eq!(dirs[k].rotate_quarter(), dirs[(k + 1) % 4]);
        }
    }

    #[test]
    fn genericity() {
        assert!(is_generic(&pt(1, 0, 0), &[g(1, 0), g(2, 0)]));
        assert!(!is_generic(&pt(0, 1, 0), &[g(1, 0), g(2, 0)]));
        assert!(is_generic(&pt(1, 0, 0), &[g(1, 0)]));
    }

    // numeric derivative of Re(d e^{-2iθ}) just after θ
    fn numeric_sign_after(theta: f64, d: (f64, f64)) -> i8 {
        let f = |t: f64| d.0 * (2.0 * t).cos() + d.1 * (2.0 * t).sin();
        let v = f(theta + 1e-6);
        if v > 0.0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn sign_after_matches_numeric_oracle() {
        assert_eq!(sign_on_cell_after(&pt(1, 0, 0), &g(-1, 0)), -1);
        assert_eq!(sign_on_cell_after(&pt(0, 1, 0), &g(1, 0)), -1);
        assert_eq!(sign_on_cell_after(&pt(0, -1, 0), &g(1, 0)), 1);
        let cases = [(pt(0, 1, 0), (1.0, 0.0)), (pt(0, -1, 0), (1.0, 0.0)), (pt(1, 0, 0), (-1.0, 0.0))];
        for (p, d) in cases {
            let exact = sign_on_cell_after(&p, &g(d.0 as i64, d.1 as i64));
            assert_eq!(exact, numeric_sign_after(p.to_f64(), d));
        }
    }

    #[test]
    fn rotation_and_reflection() {
        let p = pt(3, 4, 0);
        let mut q = p.clone();
        for _ in 0..4 {
            let r = q.rotate_quarter();
            let diff = (r.to_f64() - q.to_f64()).rem_euclid(2.0 * std::f64::consts::PI);
            assert!((diff - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
            q = r;
        }
        assert_eq!(q, p);
        assert_eq!(pt(1, 0, 0).pi_minus(), pt(1, 0, 1));
        assert_eq!(pt(0, 1, 0).pi_minus(), pt(0, -1, 0));
        assert!((pt(0, 1, 0).pi_minus().to_f64() - 3.0 * std::f64::consts::FRAC_PI_4).abs() < 1e-12);
        for p in [pt(1, 0, 0), pt(1, 0, 1), pt(-3, 4, 1), pt(5, -2, 0)] {
            assert_eq!(p.pi_minus().pi_minus(), p);
        }
        assert_eq!(CirclePoint::new(GaussRational::real(int(2)), 0), pt(1, 0, 0));
    }

    #[test]
    fn between_points() {
        let a = pt(0, 1, 1);
        let b = pt(1, 0, 0);
        let m = a.point_between(&b);
        assert!(cyclic_strictly_between(&a, &m, &b));
    }
}
