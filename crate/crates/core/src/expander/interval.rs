//! Outward-rounded intervals over fixed-point dyadics.
//!
//! A value is stored as `[lo, hi] · 2^-PREC`. Transcendental functions sum
//! their series exactly in rationals and add an explicit bound on the tail
//! before rounding outward, so every interval is a guaranteed enclosure.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::{ratio, Rational};

pub const PREC: u32 = 192;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
}

fn scale() -> BigInt {
    BigInt::one() << PREC
}

fn floor_scaled(r: &Rational) -> BigInt {
    (r.numer() << PREC).div_floor(r.denom())
}

fn ceil_scaled(r: &Rational) -> BigInt {
    -((-(r.numer() << PREC)).div_floor(r.denom()))
}

impl Interval {
    pub fn exact(r: &Rational) -> Self {
        Interval { lo: floor_scaled(r), hi: ceil_scaled(r) }
    }

    /// Smallest enclosure of `[a, b]`.
    pub fn hull(a: &Rational, b: &Rational) -> Self {
        Interval { lo: floor_scaled(a), hi: ceil_scaled(b) }
    }

    pub fn zero() -> Self {
        Interval { lo: BigInt::zero(), hi: BigInt::zero() }
    }

    pub fn lo(&self) -> Rational {
        Rational::new(self.lo.clone(), scale())
    }

    pub fn hi(&self) -> Rational {
        Rational::new(self.hi.clone(), scale())
    }

    pub fn width(&self) -> Rational {
        self.hi() - self.lo()
    }

    pub fn mid_f64(&self) -> f64 {
        let s: BigInt = (&self.lo + &self.hi) >> 1u32;
        let shift = s.bits().saturating_sub(62) as u32;
        let top = (&s >> shift).to_f64().unwrap_or(0.0);
        top * 2f64.powi(shift as i32 - PREC as i32)
    }

    /// Strictly below `other` for every pair of points.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let ps = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let min = ps.iter().min().expect("four products");
        let max = ps.iter().max().expect("four products");
        let s = scale();
        Interval { lo: min.div_floor(&s), hi: -((-max).div_floor(&s)) }
    }

    pub fn mul_rational(&self, r: &Rational) -> Interval {
        let (a, b) = (&self.lo * r.numer(), &self.hi * r.numer());
        let (lo, hi) = if r.is_negative() { (b, a) } else { (a, b) };
        let d = r.denom();
        Interval { lo: lo.div_floor(d), hi: -((-hi).div_floor(d)) }
    }

    /// Encloses `exp` over the interval.
    pub fn exp(&self) -> Interval {
        let lo = exp_enclosure(&Rational::new(self.lo.clone(), scale())).lo;
        let hi = exp_enclosure(&Rational::new(self.hi.clone(), scale())).hi;
        Interval { lo, hi }
    }
}

/// Encloses `e^x` for an exact rational `x`.
fn exp_enclosure(x: &Rational) -> Interval {
    // Halve until |y| <= 1/2, sum the Taylor series, then square back.
    let mut s = 0u32;
    let half = ratio(1, 2);
    let mut y = x.clone();
    while y.abs() > half {
        y /= Rational::from_integer(BigInt::from(2));
        s += 1;
    }
    let target = Rational::new(BigInt::one(), BigInt::one() << (PREC + 8 + s));
    let mut sum = Rational::zero();
    let mut term = Rational::one();
    let mut j = 0u32;
    loop {
        sum += &term;
        j += 1;
        term = term * &y / Rational::from_integer(BigInt::from(j));
        // Remaining terms are bounded by 2·|term| since |y| <= 1/2.
        let tail = term.abs() * Rational::from_integer(BigInt::from(2));
        if tail < target {
            let mut iv = Interval::hull(&(&sum - &tail), &(&sum + &tail));
            for _ in 0..s {
                iv = iv.mul(&iv);
            }
            return iv;
        }
    }
}

/// `2·atanh(z) = 2·Σ z^(2j+1)/(2j+1)` for `|z| <= 1/3`, enclosed.
fn two_atanh(z: &Rational) -> Interval {
    let target = Rational::new(BigInt::one(), BigInt::one() << (PREC + 8));
    let z2 = z * z;
    let mut pow = z.clone();
    let mut sum = Rational::zero();
    let mut j = 0i64;
    loop {
        sum += &pow / Rational::from_integer(BigInt::from(2 * j + 1));
        pow *= &z2;
        j += 1;
        // Tail: 2·|z|^(2j+1)/(2j+1) · 1/(1 − z²), with 1/(1 − z²) <= 9/8.
        let tail = pow.abs() / Rational::from_integer(BigInt::from(2 * j + 1)) * ratio(9, 8);
        if tail < target {
            let two = Rational::from_integer(BigInt::from(2));
            return Interval::hull(&(two.clone() * (&sum - &tail)), &(two * (&sum + &tail)));
        }
    }
}

fn ln2() -> &'static Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| two_atanh(&ratio(1, 3)))
}

/// Encloses `ln x` for an exact rational `x > 0`. Panics otherwise.
pub fn ln(x: &Rational) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let pow2 = |e: i64| {
        if e >= 0 {
            Rational::from_integer(BigInt::one() << e as u64)
        } else {
            Rational::new(BigInt::one(), BigInt::one() << (-e) as u64)
        }
    };
    let mut y = x / pow2(k);
    while y > ratio(4, 3) {
        y /= Rational::from_integer(BigInt::from(2));
        k += 1;
    }
    while y < ratio(2, 3) {
        y *= Rational::from_integer(BigInt::from(2));
        k -= 1;
    }
    let z = (&y - Rational::one()) / (&y + Rational::one());
    two_atanh(&z).add(&ln2().mul_rational(&Rational::from_integer(BigInt::from(k))))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(iv: &Interval, v: f64) {
        assert!((iv.mid_f64() - v).abs() < 1e-14, "{} vs {v}", iv.mid_f64());
        assert!(iv.width() < ratio(1, 1 << 40));
    }

    #[test]
    fn logs() {
        close(ln2(), std::f64::consts::LN_2);
        close(&ln(&ratio(1, 1)), 0.0);
        close(&ln(&ratio(481, 1000)), (0.481f64).ln());
        close(&ln(&ratio(10, 1)), (10f64).ln());
        close(&ln(&ratio(1, 1_000_000)), (1e-6f64).ln());
        // ln 2 lies in the enclosure
        assert!(ln2().lo() < ratio(693_147_181, 1_000_000_000) && ln2().hi() > ratio(693_147_180, 1_000_000_000));
    }

    #[test]
    fn exps() {
        close(&Interval::exact(&ratio(0, 1)).exp(), 1.0);
        close(&Interval::exact(&ratio(1, 1)).exp(), std::f64::consts::E);
        close(&Interval::exact(&ratio(-7, 3)).exp(), (-7f64 / 3.0).exp());
        close(&ln(&ratio(5, 7)).exp(), 5.0 / 7.0);
    }

    #[test]
    fn arithmetic_is_outward() {
        let third = Interval::exact(&ratio(1, 3));
        let one = third.mul_rational(&ratio(3, 1));
        assert!(one.lo() <= ratio(1, 1) && one.hi() >= ratio(1, 1));
        let sq = third.mul(&third);
        assert!(sq.lo() <= ratio(1, 9) && sq.hi() >= ratio(1, 9));
        let d = third.sub(&third);
        assert!(d.lo() <= ratio(0, 1) && d.hi() >= ratio(0, 1));
        assert!(Interval::exact(&ratio(1, 3)).certainly_lt(&Interval::exact(&ratio(1, 2))));
    }
}
