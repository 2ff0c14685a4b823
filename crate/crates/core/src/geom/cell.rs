//! Caps, quoins, and the `phi`/`A` conversion functions of the truncated
//! cell.

use super::{Error, Result};
use crate::ival::{consts, Interval};
use crate::scalar::{Scalar, Trilean};

/// Coefficient pair `(lambda_v, lambda_s)` weighting volume against solid
/// angle.
#[derive(Debug, Clone)]
pub struct LambdaPair<T> {
    pub v: T,
    pub s: T,
}

impl<T: Scalar> LambdaPair<T> {
    pub fn new(v: T, s: T) -> Self {
        LambdaPair { v, s }
    }

    /// `(1, 0)`: pure volume.
    pub fn volume() -> Self {
        LambdaPair::new(T::from_f64(1.0), T::from_f64(0.0))
    }

    /// `(0, 1)`: pure solid angle.
    pub fn solid() -> Self {
        LambdaPair::new(T::from_f64(0.0), T::from_f64(1.0))
    }
}

/// `phi(h, t, lambda) = lambda_v t h (t + h) / 6 + lambda_s`.
pub fn phi<T: Scalar>(h: &T, t: &T, l: &LambdaPair<T>) -> Result<T> {
    let six = T::from_f64(6.0);
    let vol = l.v.mul(t)?.mul(h)?.mul(&t.add(h)?)?.div(&six)?;
    Ok(vol.add(&l.s)?)
}

/// `A(h, t, lambda) = (1 - h/t)(phi(h,t,lambda) - phi(t,t,lambda))`.
pub fn a_fun<T: Scalar>(h: &T, t: &T, l: &LambdaPair<T>) -> Result<T> {
    let one = T::from_f64(1.0);
    let factor = one.sub(&h.div(t)?)?;
    let diff = phi(h, t, l)?.sub(&phi(t, t, l)?)?;
    Ok(factor.mul(&diff)?)
}

/// Solid angle of the cap cone: `2 pi (1 - h/t)`. Requires `0 < h <= t`.
pub fn cap_sol<T: Scalar>(h: &T, t: &T) -> Result<T> {
    check_h_range(h, t)?;
    let one = T::from_f64(1.0);
    Ok(T::two_pi().mul(&one.sub(&h.div(t)?)?)?)
}

/// Volume of the spherical cap `C(v, t)` cut from `B(0, t)` by the bisector
/// at height `h = |v|/2`: the cone-sector volume minus the interior cone,
/// written in terms of `phi` as `(phi(t,t,(1,0)) - phi(h,t,(1,0))) cap_sol`.
pub fn cap_vol<T: Scalar>(h: &T, t: &T) -> Result<T> {
    check_h_range(h, t)?;
    let l = LambdaPair::volume();
    let diff = phi(t, t, &l)?.sub(&phi(h, t, &l)?)?;
    Ok(diff.mul(&cap_sol(h, t)?)?)
}

fn check_h_range<T: Scalar>(h: &T, t: &T) -> Result<()> {
    if h.gt_zero().is_false() || t.cmp_scalar(h).is_false() {
        return Err(Error::HOutOfRange);
    }
    Ok(())
}

/// Scalar kinds that support the piecewise quoin volume. Plain `f64`
/// evaluates the branch directly; intervals clamp the branch quantities
/// to the ordered region (the clamp plays the role of splitting a `b`
/// range that straddles `a` or `c`) and hull with zero when the ordering
/// is undecided.
pub trait CellScalar: Scalar {
    /// Volume `quo(a, b, c)` of a quoin; zero unless `a <= b <= c`.
    fn quo(a: &Self, b: &Self, c: &Self) -> Result<Self>;
}

impl CellScalar for f64 {
    fn quo(a: &f64, b: &f64, c: &f64) -> Result<f64> {
        let (a, b, c) = (*a, *b, *c);
        if !(a <= b && b <= c) {
            return Ok(0.0);
        }
        let u = b * b - a * a; // >= 0
        let v = c * c - b * b; // >= 0
        let atan_e = if u > 0.0 {
            (v / u).sqrt().atan()
        } else {
            std::f64::consts::FRAC_PI_2
        };
        let term1 = (a + 2.0 * c) * (c - a) * (c - a) * atan_e;
        let term2 = a * (u * v).max(0.0).sqrt();
        let w = v * (b - a) / (b + a);
        let term3 = 4.0 * c * c * c * (w.max(0.0).sqrt() / (b + c)).atan();
        Ok(((term1 + term2 - term3) / 6.0).max(0.0))
    }
}

impl CellScalar for Interval {
    fn quo(a: &Interval, b: &Interval, c: &Interval) -> Result<Interval> {
        let zero = Interval::point(0.0);
        let ord1 = b.cmp_scalar(a); // b >= a ?
        let ord2 = c.cmp_scalar(b); // c >= b ?
        if ord1.is_false() || ord2.is_false() {
            return Ok(zero);
        }
        let formula = quo_formula(a, b, c)?;
        let definite = ord1 == Trilean::True && ord2 == Trilean::True;
        let out = if definite { formula } else { formula.hull(&zero) };
        // a quoin volume is never negative
        Ok(out.intersect(&Interval::new(0.0, f64::MAX).unwrap()).unwrap_or(zero))
    }
}

/// Quoin closed form on (an enclosure of) the ordered region, with the
/// singular factors rewritten so that both limits `b -> a` (atan(e) ->
/// pi/2) and `b -> c` (e -> 0) stay finite.
fn quo_formula(a: &Interval, b: &Interval, c: &Interval) -> Result<Interval> {
    let max_zero = |x: Interval| {
        Interval::new(x.lo().max(0.0), x.hi().max(0.0)).expect("clamped endpoints are finite")
    };
    let u = max_zero(b.square()?.sub(&a.square()?)?); // b^2 - a^2 on the ordered region
    let v = max_zero(c.square()?.sub(&b.square()?)?); // c^2 - b^2
    let atan_e = atan_sqrt_ratio(&v, &u)?;
    let ca = max_zero(c.sub(a)?);
    let term1 = a
        .add(&Interval::point(2.0).mul(c)?)?
        .mul(&ca.square()?)?
        .mul(&atan_e)?;
    let term2 = a.mul(&u.mul(&v)?.sqrt_clamped()?)?;
    let w = v.mul(&max_zero(b.sub(a)?))?.div(&b.add(a)?)?;
    let arg3 = w.sqrt_clamped()?.div(&b.add(c)?)?;
    let c3 = c.mul(c)?.mul(c)?;
    let term3 = Interval::point(4.0).mul(&c3)?.mul(&arg3.atan())?;
    Ok(term1.add(&term2)?.sub(&term3)?.div(&Interval::point(6.0))?)
}

/// Enclosure of `atan(sqrt(v/u))` for `u, v >= 0`, finite even when `u`
/// reaches zero (the value saturates at `pi/2`).
fn atan_sqrt_ratio(v: &Interval, u: &Interval) -> Result<Interval> {
    debug_assert!(v.lo() >= 0.0 && u.lo() >= 0.0);
    let hi = if u.lo() > 0.0 {
        Interval::point(v.hi())
            .div(&Interval::point(u.lo()))?
            .sqrt_clamped()?
            .atan()
            .hi()
    } else {
        consts::pi_half().hi()
    };
    let lo = if u.hi() > 0.0 && v.lo() > 0.0 {
        Interval::point(v.lo())
            .div(&Interval::point(u.hi()))?
            .sqrt_clamped()?
            .atan()
            .lo()
    } else if u.hi() == 0.0 && v.lo() > 0.0 {
        // u identically zero with v positive: exactly pi/2
        consts::pi_half().lo()
    } else {
        0.0
    };
    Ok(Interval::new(lo.min(hi), hi).expect("atan range is finite"))
}

/// Generic quoin entry point.
pub fn quo<T: CellScalar>(a: &T, b: &T, c: &T) -> Result<T> {
    T::quo(a, b, c)
}
