//! Outward-rounded interval arithmetic over `f64`.
//!
//! Every operation returns an interval that provably contains the exact
//! mathematical result for all points of its inputs. Directed rounding is
//! implemented by residual correction: each primitive computes the
//! round-to-nearest result together with the exact sign of the rounding
//! residual (TwoSum for addition, FMA for multiplication, division and
//! square root) and steps one ulp outward only when the rounded result is
//! inexact in the unfavorable direction. The mechanism is confined to
//! [`round`]; swapping in hardware rounding-mode control would only touch
//! that module.

mod atan;
pub mod consts;
mod round;

pub use consts::{const_enclosure, Constant};

use std::fmt;
use std::str::FromStr;

/// Errors from interval construction and arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IvalError {
    #[error("interval endpoints must be finite and ordered (lo <= hi)")]
    Malformed,
    #[error("division by an interval containing zero")]
    DivisionByIntervalContainingZero,
    #[error("operation overflowed to infinity")]
    OverflowToInfinity,
    #[error("sqrt of an interval extending below zero")]
    NegativeSqrtDomain,
    #[error("unknown constant name `{0}`")]
    UnknownConstant(String),
    #[error("cannot parse interval from `{0}`")]
    Parse(String),
    #[error("box must have at least one dimension")]
    EmptyBox,
    #[error("cannot subdivide a zero-width box")]
    ZeroWidthBox,
}

pub type Result<T> = std::result::Result<T, IvalError>;

/// A closed real interval `[lo, hi]` with finite machine endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    /// New interval from ordered finite endpoints.
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_finite() && hi.is_finite() && lo <= hi {
            Ok(Interval { lo, hi })
        } else {
            Err(IvalError::Malformed)
        }
    }

    /// Degenerate interval `[x, x]`.
    pub fn point(x: f64) -> Self {
        debug_assert!(x.is_finite());
        Interval { lo: x, hi: x }
    }

    /// Unchecked constructor for endpoints already known to be valid.
    pub(crate) fn raw(lo: f64, hi: f64) -> Self {
        debug_assert!(lo.is_finite() && hi.is_finite() && lo <= hi, "bad raw interval [{lo}, {hi}]");
        Interval { lo, hi }
    }

    /// Enclosure of the exact rational `p / q` (`q != 0`).
    pub fn from_rational(p: i64, q: i64) -> Self {
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let lo = round::div_dir(p as f64, q as f64, round::Dir::Down);
        let hi = round::div_dir(p as f64, q as f64, round::Dir::Up);
        Interval::raw(lo, hi)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        // rounded up so the reported width is itself an upper bound
        round::sub_dir(self.hi, self.lo, round::Dir::Up)
    }

    pub fn midpoint(&self) -> f64 {
        let m = 0.5 * (self.lo + self.hi);
        if m.is_finite() {
            m.clamp(self.lo, self.hi)
        } else {
            self.lo
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    /// Smallest interval containing both inputs.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::raw(self.lo.min(other.lo), self.hi.max(other.hi))
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then(|| Interval::raw(lo, hi))
    }

    pub fn neg(&self) -> Interval {
        Interval::raw(-self.hi, -self.lo)
    }

    pub fn abs(&self) -> Interval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            self.neg()
        } else {
            Interval::raw(0.0, self.hi.max(-self.lo))
        }
    }

    pub fn add(&self, other: &Interval) -> Result<Interval> {
        let lo = round::add_dir(self.lo, other.lo, round::Dir::Down);
        let hi = round::add_dir(self.hi, other.hi, round::Dir::Up);
        Self::checked(lo, hi)
    }

    pub fn sub(&self, other: &Interval) -> Result<Interval> {
        let lo = round::sub_dir(self.lo, other.hi, round::Dir::Down);
        let hi = round::sub_dir(self.hi, other.lo, round::Dir::Up);
        Self::checked(lo, hi)
    }

    pub fn mul(&self, other: &Interval) -> Result<Interval> {
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = min4(
            round::mul_dir(a, c, round::Dir::Down),
            round::mul_dir(a, d, round::Dir::Down),
            round::mul_dir(b, c, round::Dir::Down),
            round::mul_dir(b, d, round::Dir::Down),
        );
        let hi = max4(
            round::mul_dir(a, c, round::Dir::Up),
            round::mul_dir(a, d, round::Dir::Up),
            round::mul_dir(b, c, round::Dir::Up),
            round::mul_dir(b, d, round::Dir::Up),
        );
        Self::checked(lo, hi)
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        if other.lo <= 0.0 && other.hi >= 0.0 {
            return Err(IvalError::DivisionByIntervalContainingZero);
        }
        let (a, b, c, d) = (self.lo, self.hi, other.lo, other.hi);
        let lo = min4(
            round::div_dir(a, c, round::Dir::Down),
            round::div_dir(a, d, round::Dir::Down),
            round::div_dir(b, c, round::Dir::Down),
            round::div_dir(b, d, round::Dir::Down),
        );
        let hi = max4(
            round::div_dir(a, c, round::Dir::Up),
            round::div_dir(a, d, round::Dir::Up),
            round::div_dir(b, c, round::Dir::Up),
            round::div_dir(b, d, round::Dir::Up),
        );
        Self::checked(lo, hi)
    }

    /// Tight enclosure of `x^2`; never dips below zero on sign-mixed inputs.
    pub fn square(&self) -> Result<Interval> {
        let m = self.abs();
        let lo = round::mul_dir(m.lo, m.lo, round::Dir::Down);
        let hi = round::mul_dir(m.hi, m.hi, round::Dir::Up);
        Self::checked(lo.max(0.0), hi)
    }

    pub fn sqrt(&self) -> Result<Interval> {
        if self.lo < 0.0 {
            return Err(IvalError::NegativeSqrtDomain);
        }
        let lo = round::sqrt_dir(self.lo, round::Dir::Down).max(0.0);
        let hi = round::sqrt_dir(self.hi, round::Dir::Up);
        Self::checked(lo, hi)
    }

    /// `sqrt` after clamping the negative part away. Sound whenever the
    /// true argument is known to be nonnegative but its enclosure has
    /// drifted slightly below zero. Errors only if the whole interval is
    /// negative.
    pub fn sqrt_clamped(&self) -> Result<Interval> {
        if self.hi < 0.0 {
            return Err(IvalError::NegativeSqrtDomain);
        }
        Interval::raw(self.lo.max(0.0), self.hi).sqrt()
    }

    /// Enclosure of `atan` (elementwise, monotone).
    pub fn atan(&self) -> Interval {
        atan::atan_interval(self)
    }

    fn checked(lo: f64, hi: f64) -> Result<Interval> {
        if lo.is_finite() && hi.is_finite() {
            debug_assert!(lo <= hi);
            Ok(Interval { lo, hi })
        } else {
            Err(IvalError::OverflowToInfinity)
        }
    }
}

fn min4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a.min(b).min(c.min(d))
}

fn max4(a: f64, b: f64, c: f64, d: f64) -> f64 {
    a.max(b).max(c.max(d))
}

impl fmt::Display for Interval {
    /// Serializes as `[lo, hi]` using shortest round-trip decimals, so
    /// `parse(print(x))` reproduces `x` exactly.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = IvalError;

    /// Parses `[lo, hi]`. Decimal endpoints that are not exactly
    /// representable are rounded outward, so the parsed interval always
    /// contains the written one.
    fn from_str(s: &str) -> Result<Interval> {
        let body = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| IvalError::Parse(s.to_string()))?;
        let mut parts = body.split(',');
        let lo_s = parts.next().ok_or_else(|| IvalError::Parse(s.to_string()))?.trim();
        let hi_s = parts.next().ok_or_else(|| IvalError::Parse(s.to_string()))?.trim();
        if parts.next().is_some() {
            return Err(IvalError::Parse(s.to_string()));
        }
        let lo = parse_directed(lo_s, round::Dir::Down).ok_or_else(|| IvalError::Parse(s.to_string()))?;
        let hi = parse_directed(hi_s, round::Dir::Up).ok_or_else(|| IvalError::Parse(s.to_string()))?;
        Interval::new(lo, hi)
    }
}

/// Parse a decimal literal with directed rounding (`up = false` rounds
/// down). Used wherever text constants must become sound interval
/// endpoints.
pub fn parse_dec_directed(s: &str, up: bool) -> Option<f64> {
    parse_directed(s, if up { round::Dir::Up } else { round::Dir::Down })
}

/// Parse a decimal literal, rounding outward unless the parse is exact.
/// Exactness is detected by re-printing: Rust's shortest round-trip
/// formatting reproduces the input string exactly iff the value is that
/// string's nearest float and the string is canonical.
pub(crate) fn parse_directed(s: &str, dir: round::Dir) -> Option<f64> {
    let v: f64 = s.parse().ok()?;
    if !v.is_finite() {
        return None;
    }
    if format!("{v}") == s || format!("{v:e}") == s {
        return Some(v);
    }
    Some(match dir {
        round::Dir::Down => v.next_down(),
        round::Dir::Up => v.next_up(),
    })
}

/// An axis-aligned box: a nonempty product of intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    dims: Vec<Interval>,
}

impl IntervalBox {
    pub fn new(dims: Vec<Interval>) -> Result<Self> {
        if dims.is_empty() {
            return Err(IvalError::EmptyBox);
        }
        Ok(IntervalBox { dims })
    }

    pub fn dims(&self) -> &[Interval] {
        &self.dims
    }

    pub fn dim(&self, i: usize) -> &Interval {
        &self.dims[i]
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Largest per-dimension width.
    pub fn width(&self) -> f64 {
        self.dims.iter().map(|d| d.width()).fold(0.0, f64::max)
    }

    /// Index of the widest dimension, ties broken by lowest index.
    pub fn widest_dim(&self) -> usize {
        let mut best = 0;
        let mut w = self.dims[0].width();
        for (i, d) in self.dims.iter().enumerate().skip(1) {
            let wi = d.width();
            if wi > w {
                w = wi;
                best = i;
            }
        }
        best
    }

    pub fn contains_point(&self, x: &[f64]) -> bool {
        x.len() == self.dims.len() && x.iter().zip(&self.dims).all(|(xi, d)| d.contains(*xi))
    }

    /// Bisect dimension `i` at its midpoint; pieces cover the box exactly.
    pub fn bisect(&self, i: usize) -> (IntervalBox, IntervalBox) {
        let d = &self.dims[i];
        let m = d.midpoint();
        let mut left = self.clone();
        let mut right = self.clone();
        left.dims[i] = Interval::raw(d.lo, m);
        right.dims[i] = Interval::raw(m, d.hi);
        (left, right)
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.dims.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
