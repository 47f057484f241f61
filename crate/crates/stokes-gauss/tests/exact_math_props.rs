use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

use stokes_gauss::exact_math::circle::cmp_arg;
use stokes_gauss::exact_math::{leq_at, rat, CirclePoint, GaussRational, Matrix, Order, QuadReal, Rational, Subspace};

const BITS: u32 = 200;

// [lo, hi] ∋ a + b√(p/q) with integer square roots at 2^-200 resolution
fn interval(a: &Rational, b: &Rational, p: i64, q: i64) -> (Rational, Rational) {
    let scale = BigInt::from(1) << BITS;
    let n = BigInt::from(p) * BigInt::from(q) * &scale * &scale;
    let s = n.sqrt();
    let den = BigInt::from(q) * &scale;
    let lo_root = Rational::new(s.clone(), den.clone());
    let hi_root = Rational::new(s + 1, den);
    let (x, y) = (b * &lo_root, b * &hi_root);
    let (lo, hi) = if b.is_negative() { (y, x) } else { (x, y) };
    (a + lo, a + hi)
}

fn small_rat() -> impl Strategy<Value = Rational> {
    (-40i64..=40, 1i64..=12).prop_map(|(n, d)| rat(n, d))
}

fn gauss() -> impl Strategy<Value = GaussRational> {
    (small_rat(), small_rat()).prop_map(|(a, b)| GaussRational::new(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn quad_comparison_matches_intervals(a1 in small_rat(), b1 in small_rat(), p1 in 0i64..50, q1 in 1i64..8,
                                         a2 in small_rat(), b2 in small_rat(), p2 in 0i64..50, q2 in 1i64..8) {
        let x = QuadReal::new(a1.clone(), b1.clone(), rat(p1, q1));
        let y = QuadReal::new(a2.clone(), b2.clone(), rat(p2, q2));
        let (xl, xh) = interval(&a1, &b1, p1, q1);
        let (yl, yh) = interval(&a2, &b2, p2, q2);
        let ord = x.cmp_exact(&y);
        if xh < yl {
            prop_assert_eq!(ord, Ordering::Less);
        } else if yh < xl {
            prop_assert_eq!(ord, Ordering::Greater);
        } else {
            // overlapping enclosures of width 2^-200 only happen for equal values here
            prop_assert_eq!(ord, Ordering::Equal);
        }
        prop_assert_eq!(y.cmp_exact(&x), ord.reverse());
    }

    #[test]
    fn quad_sign_matches_interval(a in small_rat(), b in small_rat(), p in 0i64..50, q in 1i64..8) {
        let x = QuadReal::new(a.clone(), b.clone(), rat(p, q));
        let (lo, hi) = interval(&a, &b, p, q);
        let s = x.sign();
        if lo.is_positive() {
            prop_assert_eq!(s, 1);
        } else if hi.is_negative() {
            prop_assert_eq!(s, -1);
        } else {
            prop_assert_eq!(s, 0);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn gauss_field_identities(x in gauss(), y in gauss(), z in gauss()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
        prop_assert_eq!((&x * &x.conj()).re, x.norm2());
    }

    #[test]
    fn arg_order_is_total_and_matches_atan2(x in gauss(), y in gauss()) {
        prop_assume!(!x.is_zero() && !y.is_zero());
        let arg = |g: &GaussRational| {
            let t = g.im.to_f64().unwrap().atan2(g.re.to_f64().unwrap());
            if t < 0.0 { t + std::f64::consts::TAU } else { t }
        };
        let ord = cmp_arg(&x, &y);
        prop_assert_eq!(cmp_arg(&y, &x), ord.reverse());
        let (ax, ay) = (arg(&x), arg(&y));
        if (ax - ay).abs() > 1e-9 {
            prop_assert_eq!(ord, ax.partial_cmp(&ay).unwrap());
        }
    }

    #[test]
    fn circle_order_is_antisymmetric(c in gauss(), d in gauss(), t in gauss(), branch in 0u8..2) {
        prop_assume!(!t.is_zero());
        let theta = CirclePoint::new(t, branch);
        let (a, b) = (leq_at(&c, &d, &theta), leq_at(&d, &c, &theta));
        let expected = match a {
            Order::LessStrict => Order::GreaterStrict,
            Order::GreaterStrict => Order::LessStrict,
            other => other,
        };
        prop_assert_eq!(b, expected);
        prop_assert_eq!(a == Order::Equal, c == d);
    }

    #[test]
    fn quarter_turns_cycle(t in gauss(), branch in 0u8..2) {
        prop_assume!(!t.is_zero());
        let p = CirclePoint::new(t, branch);
        prop_assert_eq!(p.rotate_quarters(4), p.clone());
        prop_assert_eq!(p.pi_minus().pi_minus(), p);
    }

    #[test]
    fn subspace_dimension_formula(rows in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 1..4),
                                  rows2 in proptest::collection::vec(proptest::collection::vec(-2i64..=2, 4), 1..4)) {
        let v = |r: &Vec<Vec<i64>>| Subspace::from_vectors(4, r.iter().map(|x| x.iter().map(|&k| GaussRational::from_ints(k, 0)).collect()).collect());
        let (a, b) = (v(&rows), v(&rows2));
        prop_assert_eq!(a.sum(&b).dim() + a.intersect(&b).dim(), a.dim() + b.dim());
        prop_assert!(a.sum(&b).contains_subspace(&a));
        prop_assert!(a.contains_subspace(&a.intersect(&b)));
    }

    #[test]
    fn rank_nullity(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 3), 1..5)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_ints(&refs);
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
        for k in m.kernel().basis() {
            prop_assert!(m.apply(k).iter().all(|x| x.is_zero()));
        }
    }
}
