use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::scalar::{sign, Rational};

/// Real number a + b·√d with rational a, b and rational d ≥ 0.
#[derive(Clone, Debug)]
pub struct QuadReal {
    pub a: Rational,
    pub b: Rational,
    pub d: Rational,
}

fn sign_with_radical(a: &Rational, b: &Rational, d: &Rational) -> i8 {
    let sa = sign(a);
    if b.is_zero() || d.is_zero() {
        return sa;
    }
    let sb = sign(b);
    if sa == 0 || sa == sb {
        return sb;
    }
    match (a * a).cmp(&(b * b * d)) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

impl QuadReal {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Self {
        assert!(!d.is_negative(), "negative radicand");
        QuadReal { a, b, d }
    }

    pub fn rational(a: Rational) -> Self {
        QuadReal { a, b: Rational::zero(), d: Rational::zero() }
    }

    pub fn sign(&self) -> i8 {
        sign_with_radical(&self.a, &self.b, &self.d)
    }

    fn radical_free(&self) -> bool {
        self.b.is_zero() || self.d.is_zero()
    }

    pub fn neg(&self) -> Self {
        QuadReal { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        QuadReal { a: &self.a * k, b: &self.b * k, d: self.d.clone() }
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        QuadReal { a: &self.a + k, b: self.b.clone(), d: self.d.clone() }
    }

    // coefficient of √d, zero when d = 0
    fn radical_coeff(&self) -> Rational {
        if self.radical_free() {
            Rational::zero()
        } else {
            self.b.clone()
        }
    }

    fn common_radicand(&self, o: &Self) -> Option<Rational> {
        if self.radical_free() {
            Some(o.d.clone())
        } else if o.radical_free() || self.d == o.d {
            Some(self.d.clone())
        } else {
            None
        }
    }

    /// Sum of two values; both must share the radicand unless one is rational.
    pub fn add(&self, o: &Self) -> Self {
        let d = self.common_radicand(o).expect("radicands differ");
        QuadReal { a: &self.a + &o.a, b: self.radical_coeff() + o.radical_coeff(), d }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.common_radicand(o).expect("radicands differ");
        let (b1, b2) = (self.radical_coeff(), o.radical_coeff());
        QuadReal {
            a: &self.a * &o.a + &b1 * &b2 * &d,
            b: &self.a * &b2 + &b1 * &o.a,
            d,
        }
    }

    /// Exact comparison; radicands may differ.
    pub fn cmp_exact(&self, o: &Self) -> Ordering {
        let s = if self.common_radicand(o).is_some() {
            self.sub(o).sign()
        } else {
            let u = &self.a - &o.a;
            let (b1, d1) = (&self.b, &self.d);
            let b2 = -&o.b;
            let d2 = &o.d;
            // sign of p + q with p = b1√d1, q = b2√d2
            let sp = sign(b1);
            let sq = sign(&b2);
            let spq = if sp == 0 || sq == 0 || sp == sq {
                if sp != 0 { sp } else { sq }
            } else {
                match (b1 * b1 * d1).cmp(&(&b2 * &b2 * d2)) {
                    Ordering::Greater => sp,
                    Ordering::Less => sq,
                    Ordering::Equal => 0,
                }
            };
            let su = sign(&u);
            if spq == 0 {
                su
            } else if su == 0 || su == spq {
                spq
            } else {
                let rest = &u * &u - b1 * b1 * d1 - &b2 * &b2 * d2;
                let cross = Rational::from_integer(BigInt::from(-2)) * b1 * &b2;
                su * sign_with_radical(&rest, &cross, &(d1 * d2))
            }
        };
        s.cmp(&0)
    }

    /// Rational enclosure [lo, hi] of the value with √d known to precision 2^-bits relative to the denominator.
    pub fn enclosure(&self, bits: u32) -> (Rational, Rational) {
        if self.radical_free() {
            return (self.a.clone(), self.a.clone());
        }
        let (lo, hi) = sqrt_enclosure(&self.d, bits);
        let x = &self.a + &self.b * &lo;
        let y = &self.a + &self.b * &hi;
        if x <= y { (x, y) } else { (y, x) }
    }

    /// A rational strictly between `self` and `o`, which must differ.
    pub fn rational_between(&self, o: &Self) -> Rational {
        let (lo, hi) = match self.cmp_exact(o) {
            Ordering::Less => (self, o),
            Ordering::Greater => (o, self),
            Ordering::Equal => panic!("rational_between on equal values"),
        };
        let mut bits = 16;
        loop {
            let (_, lo_hi) = lo.enclosure(bits);
            let (hi_lo, _) = hi.enclosure(bits);
            if lo_hi < hi_lo {
                let two = Rational::from_integer(BigInt::from(2));
                return (lo_hi + hi_lo) / two;
            }
            bits *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        a + b * d.sqrt()
    }
}

/// Rationals lo ≤ √d ≤ hi with hi − lo ≤ 1/(q·2^bits), q the denominator of d.
pub fn sqrt_enclosure(d: &Rational, bits: u32) -> (Rational, Rational) {
    let q = d.denom().clone();
    let pq: BigInt = d.numer() * &q;
    let scale = BigInt::one() << (2 * bits as usize);
    let root = (&pq * &scale).sqrt();
    let den = &q * (BigInt::one() << bits as usize);
    let lo = Rational::new(root.clone(), den.clone());
    let exact = &root * &root == &pq * &scale;
    let hi = if exact { lo.clone() } else { Rational::new(root + 1, den) };
    (lo, hi)
}

impl PartialEq for QuadReal {
    fn eq(&self, o: &Self) -> bool {
        self.cmp_exact(o) == Ordering::Equal
    }
}

impl Eq for QuadReal {}

impl PartialOrd for QuadReal {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp_exact(o))
    }
}

impl Ord for QuadReal {
    fn cmp(&self, o: &Self) -> Ordering {
        self.cmp_exact(o)
    }
}

impl fmt::Display for QuadReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radical_free() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_math::scalar::{int, rat};

    fn q(a: Rational, b: Rational, d: Rational) -> QuadReal {
        QuadReal::new(a, b, d)
    }

    #[test]
    fn spec_comparisons() {
        let one = q(int(1), int(0), int(2));
        let root2 = q(int(0), int(1), int(2));
        assert_eq!(one.cmp(&root2), Ordering::Less);
        assert_eq!(q(int(0), int(2), int(2)).cmp(&q(int(0), int(1), int(8))), Ordering::Equal);
        let plus = q(int(1), int(1), rat(1, 2));
        let minus = q(int(1), int(-1), rat(1, 2));
        assert_eq!(plus.cmp(&minus), Ordering::Greater);
    }

    #[test]
    fn zero_radicand_ignores_coefficient() {
        let x = q(int(0), int(4), int(4));
        let zero = q(int(0), int(8), int(0));
        assert_eq!(x.cmp_exact(&zero), Ordering::Greater);
        assert_eq!(zero.cmp_exact(&x), Ordering::Less);
        assert_eq!(x.mul(&zero).sign(), 0);
    }

    #[test]
    fn mixed_radicands() {
        // √2 + √3 vs 3.14...: √2+√3 ≈ 3.146
        let x = q(int(0), int(1), int(2)).add(&q(int(0), int(0), int(2)));
        let lhs_minus = q(rat(157, 50), int(-1), int(3));
        // √2 > 157/50 − √3 ⟺ √2 + √3 > 3.14
        assert_eq!(x.cmp(&lhs_minus), Ordering::Greater);
        let t = q(rat(315, 100), int(-1), int(3));
        assert_eq!(x.cmp(&t), Ordering::Less);
    }

    #[test]
    fn between_is_strict() {
        let x = q(int(1), int(1), int(2));
        let y = q(int(0), int(2), int(3));
        let m = x.rational_between(&y);
        let mq = QuadReal::rational(m);
        assert!(x < mq && mq < y || y < mq && mq < x);
    }
}
