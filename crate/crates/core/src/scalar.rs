//! The scalar abstraction behind the generic geometry.
//!
//! Every geometric formula in [`crate::geom`] is written once against this
//! trait and instantiated either with plain `f64` (fast, for search and
//! testing) or with [`Interval`] (rigorous bounds). The Taylor scalar used
//! by the prover implements the smooth subset as well. Keeping a single
//! code path prevents the search semantics and the verification semantics
//! from drifting apart.

use crate::ival::{consts, Interval, IvalError};

/// Three-valued comparison outcome: intervals cannot always decide.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trilean {
    True,
    False,
    Unknown,
}

impl Trilean {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Trilean::True
        } else {
            Trilean::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Trilean::True
    }

    pub fn is_false(self) -> bool {
        self == Trilean::False
    }
}

/// Numeric kind over which the cell geometry is generic.
///
/// Operations that can fail (division by an interval containing zero,
/// overflow, square root of a negative enclosure) return `Result`; the
/// `f64` instance only fails on non-finite results.
pub trait Scalar: Clone + std::fmt::Debug {
    fn from_f64(x: f64) -> Self;
    fn from_rational(p: i64, q: i64) -> Self;

    fn add(&self, o: &Self) -> Result<Self, IvalError>;
    fn sub(&self, o: &Self) -> Result<Self, IvalError>;
    fn mul(&self, o: &Self) -> Result<Self, IvalError>;
    fn div(&self, o: &Self) -> Result<Self, IvalError>;
    fn neg(&self) -> Self;
    fn sqrt(&self) -> Result<Self, IvalError>;
    /// Square root tolerant of enclosures that dip below zero; the plain
    /// kind clamps tiny negative arguments to zero the same way.
    fn sqrt_clamped(&self) -> Result<Self, IvalError>;
    fn atan(&self) -> Result<Self, IvalError>;
    fn square(&self) -> Result<Self, IvalError> {
        self.mul(self)
    }

    fn pi() -> Self;
    fn two_pi() -> Self;
    fn pi_half() -> Self;

    /// Sign of `self - o`, when decidable.
    fn cmp_scalar(&self, o: &Self) -> Trilean;
    fn ge_zero(&self) -> Trilean;
    fn gt_zero(&self) -> Trilean;

    /// Join of two alternatives when a branch cannot be decided. The plain
    /// kind never reaches this (its comparisons are total).
    fn join(&self, o: &Self) -> Self;

    /// Best point estimate (identity for `f64`, midpoint for intervals).
    fn approx(&self) -> f64;
}

impl Scalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn from_rational(p: i64, q: i64) -> Self {
        p as f64 / q as f64
    }

    fn add(&self, o: &Self) -> Result<Self, IvalError> {
        finite(self + o)
    }

    fn sub(&self, o: &Self) -> Result<Self, IvalError> {
        finite(self - o)
    }

    fn mul(&self, o: &Self) -> Result<Self, IvalError> {
        finite(self * o)
    }

    fn div(&self, o: &Self) -> Result<Self, IvalError> {
        if *o == 0.0 {
            return Err(IvalError::DivisionByIntervalContainingZero);
        }
        finite(self / o)
    }

    fn neg(&self) -> Self {
        -self
    }

    fn sqrt(&self) -> Result<Self, IvalError> {
        if *self < 0.0 {
            return Err(IvalError::NegativeSqrtDomain);
        }
        Ok(f64::sqrt(*self))
    }

    fn sqrt_clamped(&self) -> Result<Self, IvalError> {
        // tolerate rounding dust below zero
        if *self < -1e-9 {
            return Err(IvalError::NegativeSqrtDomain);
        }
        Ok(f64::sqrt(self.max(0.0)))
    }

    fn atan(&self) -> Result<Self, IvalError> {
        Ok(f64::atan(*self))
    }

    fn pi() -> Self {
        std::f64::consts::PI
    }

    fn two_pi() -> Self {
        2.0 * std::f64::consts::PI
    }

    fn pi_half() -> Self {
        std::f64::consts::FRAC_PI_2
    }

    fn cmp_scalar(&self, o: &Self) -> Trilean {
        Trilean::from_bool(self >= o)
    }

    fn ge_zero(&self) -> Trilean {
        Trilean::from_bool(*self >= 0.0)
    }

    fn gt_zero(&self) -> Trilean {
        Trilean::from_bool(*self > 0.0)
    }

    fn join(&self, _o: &Self) -> Self {
        unreachable!("f64 comparisons are total; join is never needed")
    }

    fn approx(&self) -> f64 {
        *self
    }
}

fn finite(x: f64) -> Result<f64, IvalError> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(IvalError::OverflowToInfinity)
    }
}

impl Scalar for Interval {
    fn from_f64(x: f64) -> Self {
        Interval::point(x)
    }

    fn from_rational(p: i64, q: i64) -> Self {
        Interval::from_rational(p, q)
    }

    fn add(&self, o: &Self) -> Result<Self, IvalError> {
        Interval::add(self, o)
    }

    fn sub(&self, o: &Self) -> Result<Self, IvalError> {
        Interval::sub(self, o)
    }

    fn mul(&self, o: &Self) -> Result<Self, IvalError> {
        Interval::mul(self, o)
    }

    fn div(&self, o: &Self) -> Result<Self, IvalError> {
        Interval::div(self, o)
    }

    fn neg(&self) -> Self {
        Interval::neg(self)
    }

    fn sqrt(&self) -> Result<Self, IvalError> {
        Interval::sqrt(self)
    }

    fn sqrt_clamped(&self) -> Result<Self, IvalError> {
        Interval::sqrt_clamped(self)
    }

    fn atan(&self) -> Result<Self, IvalError> {
        Ok(Interval::atan(self))
    }

    fn square(&self) -> Result<Self, IvalError> {
        Interval::square(self)
    }

    fn pi() -> Self {
        consts::pi()
    }

    fn two_pi() -> Self {
        consts::two_pi()
    }

    fn pi_half() -> Self {
        consts::pi_half()
    }

    fn cmp_scalar(&self, o: &Self) -> Trilean {
        if self.lo() >= o.hi() {
            Trilean::True
        } else if self.hi() < o.lo() {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    }

    fn ge_zero(&self) -> Trilean {
        if self.lo() >= 0.0 {
            Trilean::True
        } else if self.hi() < 0.0 {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    }

    fn gt_zero(&self) -> Trilean {
        if self.lo() > 0.0 {
            Trilean::True
        } else if self.hi() <= 0.0 {
            Trilean::False
        } else {
            Trilean::Unknown
        }
    }

    fn join(&self, o: &Self) -> Self {
        self.hull(o)
    }

    fn approx(&self) -> f64 {
        self.midpoint()
    }
}
