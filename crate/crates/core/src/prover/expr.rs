//! Expression trees over box variables, with interval, plain and Taylor
//! evaluation, plus the line-oriented prefix-notation task format.

use crate::geom::{self, CellScalar, FaceCycle, LambdaPair, Simplex, Triangle};
use crate::ival::{Interval, IntervalBox, IvalError};
use crate::scalar::Scalar;
use crate::taylor::{with_dims, TaylorScalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Prim {
    /// Circumradius of a triangle from its three side lengths.
    Eta,
    /// Cayley-Menger polynomial of six squared edge lengths.
    Delta,
    /// Quoin volume `quo(a, b, c)`.
    Quo,
    /// `phi(h, t, (1,0))`.
    Phi,
    /// `A(h, t, (1,0))`.
    AFun,
    /// Dihedral angle along the leading edge, from six edge lengths
    /// (simplex order `|01|, |02|, |03|, |23|, |13|, |12|`).
    Azim,
    /// Solid angle at the origin of the simplex `{0, v1, v2, v3}` from its
    /// six edge lengths.
    Sol3,
    /// Truncated-cell volume of the triangle-face component, regime-routed,
    /// from six edge lengths.
    Omega3,
    /// `omega3 - M_dod * sol3`.
    Mu3,
}

impl Prim {
    pub fn arity(self) -> usize {
        match self {
            Prim::Eta | Prim::Quo => 3,
            Prim::Phi | Prim::AFun => 2,
            Prim::Delta | Prim::Azim | Prim::Sol3 | Prim::Omega3 | Prim::Mu3 => 6,
        }
    }

    pub fn token(self) -> &'static str {
        match self {
            Prim::Eta => "eta",
            Prim::Delta => "delta",
            Prim::Quo => "quo",
            Prim::Phi => "phi",
            Prim::AFun => "afun",
            Prim::Azim => "azim",
            Prim::Sol3 => "sol3",
            Prim::Omega3 => "omega3",
            Prim::Mu3 => "mu3",
        }
    }

    fn from_token(t: &str) -> Option<Prim> {
        Some(match t {
            "eta" => Prim::Eta,
            "delta" => Prim::Delta,
            "quo" => Prim::Quo,
            "phi" => Prim::Phi,
            "afun" => Prim::AFun,
            "azim" => Prim::Azim,
            "sol3" => Prim::Sol3,
            "omega3" => Prim::Omega3,
            "mu3" => Prim::Mu3,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone)]
pub enum FnExpr {
    Var(usize),
    Const(Interval),
    Add(Box<FnExpr>, Box<FnExpr>),
    Sub(Box<FnExpr>, Box<FnExpr>),
    Mul(Box<FnExpr>, Box<FnExpr>),
    Div(Box<FnExpr>, Box<FnExpr>),
    Sqrt(Box<FnExpr>),
    Atan(Box<FnExpr>),
    Prim(Prim, Vec<FnExpr>),
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExprError {
    #[error("variable index {0} out of range (m = {1})")]
    VarOutOfRange(usize, usize),
    #[error("wrong arity for {0}: expected {1}")]
    Arity(&'static str, usize),
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("unexpected end of expression")]
    UnexpectedEnd,
    #[error("trailing tokens after expression")]
    Trailing,
    #[error("bad literal `{0}`")]
    BadLiteral(String),
}

impl FnExpr {
    pub fn var(i: usize) -> FnExpr {
        FnExpr::Var(i)
    }

    pub fn constant(x: f64) -> FnExpr {
        FnExpr::Const(Interval::point(x))
    }

    pub fn constant_interval(iv: Interval) -> FnExpr {
        FnExpr::Const(iv)
    }

    pub fn add(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn div(a: FnExpr, b: FnExpr) -> FnExpr {
        FnExpr::Div(Box::new(a), Box::new(b))
    }

    pub fn sqrt(a: FnExpr) -> FnExpr {
        FnExpr::Sqrt(Box::new(a))
    }

    pub fn atan(a: FnExpr) -> FnExpr {
        FnExpr::Atan(Box::new(a))
    }

    pub fn prim(p: Prim, args: Vec<FnExpr>) -> Result<FnExpr, ExprError> {
        if args.len() != p.arity() {
            return Err(ExprError::Arity(p.token(), p.arity()));
        }
        Ok(FnExpr::Prim(p, args))
    }

    /// Number of nodes, used for cheapest-first disjunct ordering.
    pub fn size(&self) -> usize {
        match self {
            FnExpr::Var(_) | FnExpr::Const(_) => 1,
            FnExpr::Add(a, b) | FnExpr::Sub(a, b) | FnExpr::Mul(a, b) | FnExpr::Div(a, b) => {
                1 + a.size() + b.size()
            }
            FnExpr::Sqrt(a) | FnExpr::Atan(a) => 1 + a.size(),
            FnExpr::Prim(_, args) => 10 + args.iter().map(FnExpr::size).sum::<usize>(),
        }
    }

    pub fn max_var(&self) -> Option<usize> {
        match self {
            FnExpr::Var(i) => Some(*i),
            FnExpr::Const(_) => None,
            FnExpr::Add(a, b) | FnExpr::Sub(a, b) | FnExpr::Mul(a, b) | FnExpr::Div(a, b) => {
                a.max_var().into_iter().chain(b.max_var()).max()
            }
            FnExpr::Sqrt(a) | FnExpr::Atan(a) => a.max_var(),
            FnExpr::Prim(_, args) => args.iter().filter_map(FnExpr::max_var).max(),
        }
    }

    /// Generic evaluation against an environment of scalars.
    pub fn eval<T: CellScalar + FromConst>(&self, env: &[T]) -> geom::Result<T> {
        match self {
            FnExpr::Var(i) => Ok(env[*i].clone()),
            FnExpr::Const(iv) => Ok(T::from_const(iv)),
            FnExpr::Add(a, b) => Ok(a.eval(env)?.add(&b.eval(env)?)?),
            FnExpr::Sub(a, b) => Ok(a.eval(env)?.sub(&b.eval(env)?)?),
            FnExpr::Mul(a, b) => Ok(a.eval(env)?.mul(&b.eval(env)?)?),
            FnExpr::Div(a, b) => Ok(a.eval(env)?.div(&b.eval(env)?)?),
            FnExpr::Sqrt(a) => Ok(a.eval(env)?.sqrt_clamped()?),
            FnExpr::Atan(a) => Ok(a.eval(env)?.atan()?),
            FnExpr::Prim(p, args) => {
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(a.eval(env)?);
                }
                eval_prim(*p, &vals)
            }
        }
    }
}

/// Conversion of stored literal enclosures into each scalar kind.
pub trait FromConst: Sized {
    fn from_const(iv: &Interval) -> Self;
}

impl FromConst for f64 {
    fn from_const(iv: &Interval) -> f64 {
        iv.midpoint()
    }
}

impl FromConst for Interval {
    fn from_const(iv: &Interval) -> Interval {
        *iv
    }
}

impl FromConst for TaylorScalar {
    fn from_const(iv: &Interval) -> TaylorScalar {
        // inherits the ambient dimension set by the evaluator
        let probe = TaylorScalar::from_f64(0.0);
        TaylorScalar::constant(probe.dims(), *iv)
    }
}

fn t_dod_generic<T: Scalar>() -> geom::Result<T> {
    // sqrt(15 - 6 sqrt 5)
    let five = T::from_f64(5.0);
    let s5 = five.sqrt()?;
    let v = T::from_f64(15.0).sub(&T::from_f64(6.0).mul(&s5)?)?;
    Ok(v.sqrt()?)
}

fn m_dod_generic<T: Scalar>() -> T {
    T::from_rational(42755, 100000)
}

fn eval_prim<T: CellScalar + FromConst>(p: Prim, args: &[T]) -> geom::Result<T> {
    match p {
        Prim::Eta => geom::eta(&Triangle::new(
            args[0].clone(),
            args[1].clone(),
            args[2].clone(),
        )),
        Prim::Delta => geom::delta_cm(&Simplex::new([
            args[0].clone(),
            args[1].clone(),
            args[2].clone(),
            args[3].clone(),
            args[4].clone(),
            args[5].clone(),
        ])),
        Prim::Quo => geom::quo(&args[0], &args[1], &args[2]),
        Prim::Phi => geom::phi(&args[0], &args[1], &LambdaPair::volume()),
        Prim::AFun => geom::a_fun(&args[0], &args[1], &LambdaPair::volume()),
        Prim::Azim => {
            let s = simplex_from_lengths(args)?;
            geom::azim(&s)
        }
        Prim::Sol3 => {
            let s = simplex_from_lengths(args)?;
            sol3(&s)
        }
        Prim::Omega3 => {
            let face = embed_face(args)?;
            geom::omega_auto(&face, &t_dod_generic::<T>()?)
        }
        Prim::Mu3 => {
            let face = embed_face(args)?;
            geom::mu_face(&face, &t_dod_generic::<T>()?, &m_dod_generic::<T>())
        }
    }
}

fn simplex_from_lengths<T: Scalar>(args: &[T]) -> geom::Result<Simplex<T>> {
    Simplex::from_lengths(&[
        args[0].clone(),
        args[1].clone(),
        args[2].clone(),
        args[3].clone(),
        args[4].clone(),
        args[5].clone(),
    ])
    .map_err(Into::into)
}

/// Solid angle at the origin: Girard over the three radial dihedrals.
fn sol3<T: Scalar>(s: &Simplex<T>) -> geom::Result<T> {
    let a1 = geom::azim_edge(s, 0, 1)?;
    let a2 = geom::azim_edge(s, 0, 2)?;
    let a3 = geom::azim_edge(s, 0, 3)?;
    Ok(a1.add(&a2)?.add(&a3)?.sub(&T::pi())?)
}

/// Coordinate embedding of the simplex as a counterclockwise face cycle.
fn embed_face<T: Scalar>(args: &[T]) -> geom::Result<FaceCycle<T>> {
    let s = simplex_from_lengths(args)?;
    let p = geom::embed(&s)?;
    FaceCycle::new(vec![p[1].clone(), p[2].clone(), p[3].clone()])
}

/// Interval evaluation over a box.
pub fn eval_interval(f: &FnExpr, b: &IntervalBox) -> geom::Result<Interval> {
    f.eval(b.dims())
}

/// Plain evaluation at a point.
pub fn eval_point(f: &FnExpr, x: &[f64]) -> geom::Result<f64> {
    f.eval(x)
}

/// First-order Taylor data: value and gradient at the box center, Hessian
/// magnitude bounds over the whole box.
#[derive(Debug, Clone)]
pub struct TaylorBound {
    pub center: Interval,
    pub gradient: Vec<Interval>,
    /// Upper-triangle packed `sup |d^2 f / dx_i dx_j|` over the box.
    pub hess_mag: Vec<f64>,
}

impl TaylorBound {
    /// Enclosure of `f` over the box via the Lagrange form:
    /// `f(m) + grad(m) . (x - m) + (x-m)^T H(B) (x-m) / 2`.
    pub fn enclosure(&self, b: &IntervalBox) -> Result<Interval, IvalError> {
        let m = self.gradient.len();
        let radii: Vec<f64> = (0..m).map(|i| b.dim(i).width() / 2.0).collect();
        let mut acc = self.center;
        for i in 0..m {
            let r = Interval::new(-radii[i], radii[i]).unwrap();
            acc = acc.add(&self.gradient[i].mul(&r)?)?;
        }
        let mut k = 0;
        for i in 0..m {
            for j in i..m {
                let h = self.hess_mag[k];
                k += 1;
                if h == 0.0 {
                    continue;
                }
                let w = if i == j {
                    // (x_i - m_i)^2 in [0, r^2]
                    Interval::new(0.0, radii[i] * radii[i]).unwrap()
                } else {
                    let rr = radii[i] * radii[j];
                    Interval::new(-rr, rr).unwrap()
                };
                let hb = Interval::new(-h, h).unwrap();
                let factor = if i == j { 0.5 } else { 1.0 };
                acc = acc.add(&hb.mul(&w)?.mul(&Interval::point(factor))?)?;
            }
        }
        Ok(acc)
    }
}

/// Taylor evaluation over a box: a center pass for the value and gradient,
/// a box pass for the Hessian bound. Fails (for fallback) when the
/// expression is not provably C^2 on the cell.
pub fn eval_taylor_bound(f: &FnExpr, b: &IntervalBox) -> geom::Result<TaylorBound> {
    let m = b.len();
    with_dims(m, || {
        let center_env: Vec<TaylorScalar> = (0..m)
            .map(|i| TaylorScalar::variable(m, i, Interval::point(b.dim(i).midpoint())))
            .collect();
        let center = f.eval(&center_env)?;
        if !center.smooth {
            return Err(geom::Error::NotC2);
        }
        let box_env: Vec<TaylorScalar> = (0..m)
            .map(|i| TaylorScalar::variable(m, i, *b.dim(i)))
            .collect();
        let over_box = f.eval(&box_env)?;
        if !over_box.smooth {
            return Err(geom::Error::NotC2);
        }
        let hess_mag = over_box
            .hess
            .iter()
            .map(|h| h.lo().abs().max(h.hi().abs()))
            .collect();
        Ok(TaylorBound {
            center: center.val,
            gradient: center.grad,
            hess_mag,
        })
    })
}

/// Taylor enclosure of `f` over the box (see [`eval_taylor_bound`]).
pub fn eval_taylor(f: &FnExpr, b: &IntervalBox) -> geom::Result<Interval> {
    let tb = eval_taylor_bound(f, b)?;
    Ok(tb.enclosure(b)?)
}

/// Parse a prefix-notation expression: tokens `+ - * / sqrt atan`,
/// `const <decimal>`, `var_<i>`, and the primitive names.
pub fn parse_expr(tokens: &mut std::slice::Iter<'_, &str>) -> Result<FnExpr, ExprError> {
    let tok = tokens.next().ok_or(ExprError::UnexpectedEnd)?;
    match *tok {
        "+" => Ok(FnExpr::add(parse_expr(tokens)?, parse_expr(tokens)?)),
        "-" => Ok(FnExpr::sub(parse_expr(tokens)?, parse_expr(tokens)?)),
        "*" => Ok(FnExpr::mul(parse_expr(tokens)?, parse_expr(tokens)?)),
        "/" => Ok(FnExpr::div(parse_expr(tokens)?, parse_expr(tokens)?)),
        "sqrt" => Ok(FnExpr::sqrt(parse_expr(tokens)?)),
        "atan" => Ok(FnExpr::atan(parse_expr(tokens)?)),
        "const" => {
            let lit = tokens.next().ok_or(ExprError::UnexpectedEnd)?;
            let lo = crate::ival::parse_dec_directed(lit, false)
                .ok_or_else(|| ExprError::BadLiteral(lit.to_string()))?;
            let hi = crate::ival::parse_dec_directed(lit, true)
                .ok_or_else(|| ExprError::BadLiteral(lit.to_string()))?;
            Ok(FnExpr::Const(Interval::new(lo, hi).map_err(|_| {
                ExprError::BadLiteral(lit.to_string())
            })?))
        }
        t if t.starts_with("var_") => {
            let i: usize = t[4..]
                .parse()
                .map_err(|_| ExprError::UnknownToken(t.to_string()))?;
            Ok(FnExpr::Var(i))
        }
        t => {
            let p = Prim::from_token(t).ok_or_else(|| ExprError::UnknownToken(t.to_string()))?;
            let mut args = Vec::with_capacity(p.arity());
            for _ in 0..p.arity() {
                args.push(parse_expr(tokens)?);
            }
            Ok(FnExpr::Prim(p, args))
        }
    }
}

pub fn parse_expr_str(s: &str) -> Result<FnExpr, ExprError> {
    let toks: Vec<&str> = s.split_whitespace().collect();
    let mut it = toks.iter();
    let e = parse_expr(&mut it)?;
    if it.next().is_some() {
        return Err(ExprError::Trailing);
    }
    Ok(e)
}

impl std::fmt::Display for FnExpr {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FnExpr::Var(i) => write!(f, "var_{i}"),
            FnExpr::Const(iv) => {
                if iv.lo() == iv.hi() {
                    write!(f, "const {}", iv.lo())
                } else {
                    write!(f, "const {}", iv.midpoint())
                }
            }
            FnExpr::Add(a, b) => write!(f, "+ {a} {b}"),
            FnExpr::Sub(a, b) => write!(f, "- {a} {b}"),
            FnExpr::Mul(a, b) => write!(f, "* {a} {b}"),
            FnExpr::Div(a, b) => write!(f, "/ {a} {b}"),
            FnExpr::Sqrt(a) => write!(f, "sqrt {a}"),
            FnExpr::Atan(a) => write!(f, "atan {a}"),
            FnExpr::Prim(p, args) => {
                write!(f, "{}", p.token())?;
                for a in args {
                    write!(f, " {a}")?;
                }
                Ok(())
            }
        }
    }
}
