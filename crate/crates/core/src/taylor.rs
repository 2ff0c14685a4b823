//! Second-order forward automatic differentiation over intervals.
//!
//! A [`TaylorScalar`] carries an enclosure of a function value together
//! with enclosures of its gradient and Hessian (upper triangle) with
//! respect to a fixed set of variables, all evaluated over a box. The
//! prover combines a center-point evaluation with a whole-box Hessian to
//! form the Lagrange-remainder Taylor bound.
//!
//! Piecewise operations poison the result when a branch cannot be decided
//! (the function is then not C^2 on the cell); the prover detects this and
//! falls back to plain interval evaluation.

use crate::geom::CellScalar;
use crate::ival::{consts, Interval, IvalError};
use crate::scalar::{Scalar, Trilean};
use std::cell::Cell;

thread_local! {
    static TAYLOR_DIMS: Cell<usize> = const { Cell::new(0) };
}

/// Runs `f` with the ambient Taylor dimension set to `m`, so that the
/// dimension-less `Scalar` constructors (`from_f64`, `pi`, ...) can build
/// constants inside generic geometry code.
pub fn with_dims<R>(m: usize, f: impl FnOnce() -> R) -> R {
    let prev = TAYLOR_DIMS.with(|d| d.replace(m));
    let out = f();
    TAYLOR_DIMS.with(|d| d.set(prev));
    out
}

fn ambient_dims() -> usize {
    let m = TAYLOR_DIMS.with(|d| d.get());
    assert!(m > 0, "TaylorScalar constants need with_dims(..) in scope");
    m
}

#[derive(Debug, Clone)]
pub struct TaylorScalar {
    pub val: Interval,
    pub grad: Vec<Interval>,
    /// Upper-triangle Hessian enclosures, packed row-major:
    /// `hess[idx(i,j)] = d^2 f / dx_i dx_j` for `i <= j`.
    pub hess: Vec<Interval>,
    /// Cleared when a non-smooth branch join has been taken; the value
    /// enclosure stays sound but the derivatives do not.
    pub smooth: bool,
}

fn tri_len(m: usize) -> usize {
    m * (m + 1) / 2
}

fn tri_idx(m: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * m - i * (i + 1) / 2 + j
}

impl TaylorScalar {
    pub fn dims(&self) -> usize {
        self.grad.len()
    }

    pub fn constant(m: usize, v: Interval) -> Self {
        TaylorScalar {
            val: v,
            grad: vec![Interval::point(0.0); m],
            hess: vec![Interval::point(0.0); tri_len(m)],
            smooth: true,
        }
    }

    pub fn variable(m: usize, i: usize, range: Interval) -> Self {
        let mut grad = vec![Interval::point(0.0); m];
        grad[i] = Interval::point(1.0);
        TaylorScalar {
            val: range,
            grad,
            hess: vec![Interval::point(0.0); tri_len(m)],
            smooth: true,
        }
    }

    pub fn hess_at(&self, i: usize, j: usize) -> &Interval {
        &self.hess[tri_idx(self.dims(), i, j)]
    }

    /// Chain rule for a scalar function with value `f0`, derivative `f1`
    /// and second derivative `f2` over the range of `self`.
    fn chain(&self, f0: Interval, f1: Interval, f2: Interval) -> Result<Self, IvalError> {
        let m = self.dims();
        let mut grad = Vec::with_capacity(m);
        for i in 0..m {
            grad.push(f1.mul(&self.grad[i])?);
        }
        let mut hess = Vec::with_capacity(tri_len(m));
        for i in 0..m {
            for j in i..m {
                let a = f2.mul(&self.grad[i])?.mul(&self.grad[j])?;
                let b = f1.mul(self.hess_at(i, j))?;
                hess.push(a.add(&b)?);
            }
        }
        Ok(TaylorScalar {
            val: f0,
            grad,
            hess,
            smooth: self.smooth,
        })
    }
}

impl Scalar for TaylorScalar {
    fn from_f64(x: f64) -> Self {
        TaylorScalar::constant(ambient_dims(), Interval::point(x))
    }

    fn from_rational(p: i64, q: i64) -> Self {
        TaylorScalar::constant(ambient_dims(), Interval::from_rational(p, q))
    }

    fn add(&self, o: &Self) -> Result<Self, IvalError> {
        let m = self.dims();
        let mut grad = Vec::with_capacity(m);
        for i in 0..m {
            grad.push(self.grad[i].add(&o.grad[i])?);
        }
        let mut hess = Vec::with_capacity(self.hess.len());
        for k in 0..self.hess.len() {
            hess.push(self.hess[k].add(&o.hess[k])?);
        }
        Ok(TaylorScalar {
            val: self.val.add(&o.val)?,
            grad,
            hess,
            smooth: self.smooth && o.smooth,
        })
    }

    fn sub(&self, o: &Self) -> Result<Self, IvalError> {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Result<Self, IvalError> {
        let m = self.dims();
        let mut grad = Vec::with_capacity(m);
        for i in 0..m {
            grad.push(
                self.grad[i]
                    .mul(&o.val)?
                    .add(&self.val.mul(&o.grad[i])?)?,
            );
        }
        let mut hess = Vec::with_capacity(self.hess.len());
        for i in 0..m {
            for j in i..m {
                let h = self
                    .hess_at(i, j)
                    .mul(&o.val)?
                    .add(&self.grad[i].mul(&o.grad[j])?)?
                    .add(&self.grad[j].mul(&o.grad[i])?)?
                    .add(&self.val.mul(o.hess_at(i, j))?)?;
                hess.push(h);
            }
        }
        Ok(TaylorScalar {
            val: self.val.mul(&o.val)?,
            grad,
            hess,
            smooth: self.smooth && o.smooth,
        })
    }

    fn div(&self, o: &Self) -> Result<Self, IvalError> {
        // self * (1/o)
        let one = Interval::point(1.0);
        let f0 = one.div(&o.val)?;
        let f1 = f0.square()?.neg();
        let f2 = Interval::point(2.0).div(&o.val.square()?.mul(&o.val)?)?;
        let recip = o.chain(f0, f1, f2)?;
        self.mul(&recip)
    }

    fn neg(&self) -> Self {
        TaylorScalar {
            val: self.val.neg(),
            grad: self.grad.iter().map(Interval::neg).collect(),
            hess: self.hess.iter().map(Interval::neg).collect(),
            smooth: self.smooth,
        }
    }

    fn sqrt(&self) -> Result<Self, IvalError> {
        if self.val.lo() <= 0.0 {
            // derivative unbounded at zero: not C^2 on this enclosure
            return Err(IvalError::NegativeSqrtDomain);
        }
        let f0 = self.val.sqrt()?;
        let half = Interval::from_rational(1, 2);
        let f1 = half.div(&f0)?;
        let quarter = Interval::from_rational(-1, 4);
        let f2 = quarter.div(&f0.mul(&self.val)?)?;
        self.chain(f0, f1, f2)
    }

    fn sqrt_clamped(&self) -> Result<Self, IvalError> {
        self.sqrt()
    }

    fn atan(&self) -> Result<Self, IvalError> {
        let f0 = self.val.atan();
        let one = Interval::point(1.0);
        let denom = one.add(&self.val.square()?)?;
        let f1 = one.div(&denom)?;
        let f2 = Interval::point(-2.0)
            .mul(&self.val)?
            .div(&denom.square()?)?;
        self.chain(f0, f1, f2)
    }

    fn pi() -> Self {
        TaylorScalar::constant(ambient_dims(), consts::pi())
    }

    fn two_pi() -> Self {
        TaylorScalar::constant(ambient_dims(), consts::two_pi())
    }

    fn pi_half() -> Self {
        TaylorScalar::constant(ambient_dims(), consts::pi_half())
    }

    fn cmp_scalar(&self, o: &Self) -> Trilean {
        self.val.cmp_scalar(&o.val)
    }

    fn ge_zero(&self) -> Trilean {
        self.val.ge_zero()
    }

    fn gt_zero(&self) -> Trilean {
        self.val.gt_zero()
    }

    fn join(&self, o: &Self) -> Self {
        // a branch could not be decided: the value hull is a sound
        // enclosure but differentiability is lost
        let m = self.dims();
        TaylorScalar {
            val: self.val.hull(&o.val),
            grad: (0..m).map(|i| self.grad[i].hull(&o.grad[i])).collect(),
            hess: (0..self.hess.len())
                .map(|k| self.hess[k].hull(&o.hess[k]))
                .collect(),
            smooth: false,
        }
    }

    fn approx(&self) -> f64 {
        self.val.midpoint()
    }
}

/// Taylor scalars support the quoin only strictly inside the ordered
/// branch, where the closed form is smooth; at branch boundaries the
/// evaluation reports non-smoothness instead.
impl CellScalar for TaylorScalar {
    fn quo(a: &Self, b: &Self, c: &Self) -> crate::geom::Result<Self> {
        let m = a.dims();
        let in1 = b.val.cmp_scalar(&a.val);
        let in2 = c.val.cmp_scalar(&b.val);
        if in1.is_false() || in2.is_false() {
            return Ok(TaylorScalar::constant(m, Interval::point(0.0)));
        }
        if !(in1.is_true() && in2.is_true()) {
            return Err(crate::geom::Error::NotC2);
        }
        // strict interior is required for smoothness
        let u = b.square()?.sub(&a.square()?)?;
        let v = c.square()?.sub(&b.square()?)?;
        if !u.gt_zero().is_true() || !v.gt_zero().is_true() {
            return Err(crate::geom::Error::NotC2);
        }
        let e = v.div(&u)?.sqrt()?;
        let two = TaylorScalar::constant(m, Interval::point(2.0));
        let four = TaylorScalar::constant(m, Interval::point(4.0));
        let six = TaylorScalar::constant(m, Interval::point(6.0));
        let term1 = a
            .add(&two.mul(c)?)?
            .mul(&c.sub(a)?.square()?)?
            .mul(&e.atan()?)?;
        let term2 = a.mul(&u.mul(&v)?.sqrt()?)?;
        let w = v.mul(&b.sub(a)?)?.div(&b.add(a)?)?;
        let arg3 = w.sqrt()?.div(&b.add(c)?)?;
        let c3 = c.mul(c)?.mul(c)?;
        let term3 = four.mul(&c3)?.mul(&arg3.atan()?)?;
        Ok(term1.add(&term2)?.sub(&term3)?.div(&six)?)
    }
}

/// `pi` as a Taylor constant of the given dimension.
pub fn taylor_pi(m: usize) -> TaylorScalar {
    TaylorScalar::constant(m, consts::pi())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(m: usize, i: usize, lo: f64, hi: f64) -> TaylorScalar {
        TaylorScalar::variable(m, i, Interval::new(lo, hi).unwrap())
    }

    #[test]
    fn product_rule() {
        let x = var(2, 0, 1.0, 1.0);
        let y = var(2, 1, 2.0, 2.0);
        let f = x.mul(&y).unwrap();
        assert!(f.val.contains(2.0));
        assert!(f.grad[0].contains(2.0) && f.grad[0].width() < 1e-14);
        assert!(f.grad[1].contains(1.0));
        assert!(f.hess_at(0, 1).contains(1.0));
        assert!(f.hess_at(0, 0).contains(0.0));
    }

    #[test]
    fn chain_rule_sqrt_atan() {
        // f = atan(sqrt(x)) at x = 4: f' = 1/(2 sqrt(x) (1+x)) = 1/20
        let x = var(1, 0, 4.0, 4.0);
        let f = x.sqrt().unwrap().atan().unwrap();
        assert!(f.val.contains(2.0f64.atan()));
        assert!(f.grad[0].contains(0.05), "grad {:?}", f.grad[0]);
        assert!(f.grad[0].width() < 1e-12);
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let eval = |x: f64, y: f64| x * y + (x / (1.0 + y * y)).atan() - (x + y).sqrt();
        let (x0, y0) = (1.3, 0.7);
        let x = var(2, 0, x0, x0);
        let y = var(2, 1, y0, y0);
        let one = TaylorScalar::constant(2, Interval::point(1.0));
        let f = x
            .mul(&y)
            .unwrap()
            .add(
                &x.div(&one.add(&y.mul(&y).unwrap()).unwrap())
                    .unwrap()
                    .atan()
                    .unwrap(),
            )
            .unwrap()
            .sub(&x.add(&y).unwrap().sqrt().unwrap())
            .unwrap();
        let h = 1e-6;
        let dx = (eval(x0 + h, y0) - eval(x0 - h, y0)) / (2.0 * h);
        let dy = (eval(x0, y0 + h) - eval(x0, y0 - h)) / (2.0 * h);
        assert!((f.grad[0].midpoint() - dx).abs() < 1e-6, "{:?} vs {dx}", f.grad[0]);
        assert!((f.grad[1].midpoint() - dy).abs() < 1e-6, "{:?} vs {dy}", f.grad[1]);
        let dxx = (eval(x0 + h, y0) - 2.0 * eval(x0, y0) + eval(x0 - h, y0)) / (h * h);
        assert!((f.hess_at(0, 0).midpoint() - dxx).abs() < 1e-3);
    }

    #[test]
    fn join_poisons_smoothness() {
        let x = var(1, 0, -1.0, 1.0);
        let y = var(1, 0, 0.0, 2.0);
        let j = x.join(&y);
        assert!(!j.smooth);
        assert!(j.val.contains(-1.0) && j.val.contains(2.0));
    }
}
