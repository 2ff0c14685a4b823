//! Verified `atan` enclosures.
//!
//! Arguments are reduced to `[0, tan(pi/16))` by sign symmetry, the
//! reciprocal identity `atan(x) = pi/2 - atan(1/x)`, and angle halving
//! `atan(x) = 2 atan(x / (1 + sqrt(1 + x^2)))`, all performed in interval
//! arithmetic. On the reduced range the alternating Taylor series is summed
//! with an explicit next-term remainder bound. `atan(1)` is special-cased to
//! `pi/4` from the stored `pi` literal, which keeps that enclosure at one
//! ulp.

use super::consts;
use super::Interval;

/// Monotone elementwise enclosure.
pub fn atan_interval(v: &Interval) -> Interval {
    let lo = atan_point(v.lo());
    let hi = atan_point(v.hi());
    Interval::raw(lo.lo(), hi.hi())
}

/// Enclosure of `atan` of one exactly-represented argument.
pub fn atan_point(x: f64) -> Interval {
    debug_assert!(x.is_finite());
    if x < 0.0 {
        return atan_point(-x).neg();
    }
    if x == 0.0 {
        return Interval::point(0.0);
    }
    if x == 1.0 {
        return consts::pi_quarter();
    }
    if x > 1.0 {
        // atan(x) = pi/2 - atan(1/x)
        let inv = Interval::point(1.0)
            .div(&Interval::point(x))
            .expect("x > 1 cannot contain zero");
        let inner = atan_unit(&inv);
        return consts::pi_half()
            .sub(&inner)
            .expect("no overflow in [0, pi/2]");
    }
    atan_unit(&Interval::point(x))
}

/// `atan` on an interval argument inside `[0, 1]`.
fn atan_unit(v: &Interval) -> Interval {
    debug_assert!(v.lo() >= 0.0 && v.hi() <= 1.0);
    let one = Interval::point(1.0);
    let two = Interval::point(2.0);
    // two halvings bring the argument under tan(pi/16) ~ 0.1989
    let mut t = *v;
    for _ in 0..2 {
        let denom = one
            .add(&one.add(&t.square().unwrap()).unwrap().sqrt().unwrap())
            .unwrap();
        t = t.div(&denom).unwrap();
    }
    let series = atan_series(&t);
    series.mul(&two).unwrap().mul(&two).unwrap()
}

/// Alternating Taylor series on `|t| <= 0.2` with next-term remainder.
fn atan_series(t: &Interval) -> Interval {
    debug_assert!(t.lo() >= 0.0 && t.hi() <= 0.21);
    const K: i64 = 11; // 0.2^(2*11+1) / 23 < 2e-18
    let s = t.square().unwrap();
    // Horner over s: P = 1/1 - s/3 + s^2/5 - ...
    let mut acc = Interval::point(0.0);
    let mut k = K;
    while k >= 0 {
        let coeff = Interval::from_rational(if k % 2 == 0 { 1 } else { -1 }, 2 * k + 1);
        acc = coeff.add(&acc.mul(&s).unwrap()).unwrap();
        k -= 1;
    }
    // remainder of the alternating series: |R| <= t^(2K+3) / (2K+3)
    let mut tpow = *t;
    for _ in 0..(K + 1) {
        tpow = tpow.mul(&s).unwrap();
    }
    let rem_mag = tpow
        .div(&Interval::point((2 * K + 3) as f64))
        .unwrap()
        .hi();
    let rem = Interval::raw(-rem_mag, rem_mag);
    t.mul(&acc).unwrap().add(&rem).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atan_zero_is_exact() {
        let r = atan_point(0.0);
        assert_eq!((r.lo(), r.hi()), (0.0, 0.0));
    }

    #[test]
    fn atan_one_is_quarter_pi() {
        let r = atan_point(1.0);
        assert!(r.contains(std::f64::consts::FRAC_PI_4));
        assert!(r.width() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn atan_matches_libm_within_enclosure() {
        for &x in &[1e-9, 0.1, 0.3, 0.5, 0.9, 1.5, 5.0, 239.0, 1e9, -0.7, -42.0] {
            let r = atan_point(x);
            let reference = x.atan();
            assert!(
                r.lo() - 1e-15 <= reference && reference <= r.hi() + 1e-15,
                "atan({x}): {r} vs {reference}"
            );
            assert!(r.width() < 1e-14, "atan({x}) too wide: {}", r.width());
        }
    }

    #[test]
    fn machin_identity_validates_pi_literal() {
        // pi = 16 atan(1/5) - 4 atan(1/239), evaluated without the pi literal
        let a5 = atan_unit(&Interval::from_rational(1, 5));
        let a239 = atan_unit(&Interval::from_rational(1, 239));
        let sixteen = Interval::point(16.0);
        let four = Interval::point(4.0);
        let pi_est = a5.mul(&sixteen).unwrap().sub(&a239.mul(&four).unwrap()).unwrap();
        let pi_lit = consts::pi();
        assert!(pi_est.contains_interval(&pi_lit), "{pi_est} should contain {pi_lit}");
    }
}
