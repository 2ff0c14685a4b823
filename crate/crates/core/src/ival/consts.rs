//! Verified enclosures of the named constants of the dodecahedral bound.
//!
//! `pi` is a stored two-endpoint literal (validated against a Machin-style
//! computation in the `atan` tests, which avoids a circular dependency on
//! the `atan` enclosure itself). Everything else is computed on demand from
//! `sqrt`, `atan` and rational enclosures:
//!
//! * `t_dod   = sqrt(3) tan(pi/5) = sqrt(15 - 6 sqrt(5))`, the circumradius
//!   of the regular dodecahedron of inradius 1 and the truncation radius.
//! * `omega_dod = 10 (3 - sqrt(5)) sqrt(5 - 2 sqrt(5))`, the volume of the
//!   regular dodecahedron of inradius 1.
//! * `mu_dod = omega_dod - 4 pi M_dod`, the squander target.
//! * `delta_tet = sqrt(8) atan(sqrt(2)/5)`, Rogers' density bound, with
//!   `M_0 = 1/(3 delta_tet)`.

use super::{Interval, IvalError, Result};

/// The nearest `f64` below pi; pi lies strictly between it and its successor.
const PI_LO: f64 = 3.141592653589793;

pub fn pi() -> Interval {
    Interval::raw(PI_LO, PI_LO.next_up())
}

pub fn pi_half() -> Interval {
    let p = pi();
    Interval::raw(p.lo() / 2.0, p.hi() / 2.0)
}

pub fn pi_quarter() -> Interval {
    let p = pi();
    Interval::raw(p.lo() / 4.0, p.hi() / 4.0)
}

pub fn two_pi() -> Interval {
    let p = pi();
    Interval::raw(p.lo() * 2.0, p.hi() * 2.0)
}

pub fn four_pi() -> Interval {
    let p = pi();
    Interval::raw(p.lo() * 4.0, p.hi() * 4.0)
}

fn sqrt5() -> Interval {
    Interval::point(5.0).sqrt().unwrap()
}

fn t_dod() -> Interval {
    // sqrt(15 - 6 sqrt(5))
    let six_sqrt5 = Interval::point(6.0).mul(&sqrt5()).unwrap();
    Interval::point(15.0).sub(&six_sqrt5).unwrap().sqrt().unwrap()
}

fn delta_tet() -> Interval {
    let sqrt2 = Interval::point(2.0).sqrt().unwrap();
    let arg = sqrt2.div(&Interval::point(5.0)).unwrap();
    Interval::point(8.0).sqrt().unwrap().mul(&arg.atan()).unwrap()
}

fn m_0() -> Interval {
    let three_delta = Interval::point(3.0).mul(&delta_tet()).unwrap();
    Interval::point(1.0).div(&three_delta).unwrap()
}

fn m_dod() -> Interval {
    Interval::from_rational(42755, 100000)
}

fn omega_dod() -> Interval {
    // 10 (3 - sqrt(5)) sqrt(5 - 2 sqrt(5))
    let s5 = sqrt5();
    let a = Interval::point(3.0).sub(&s5).unwrap();
    let b = Interval::point(5.0)
        .sub(&Interval::point(2.0).mul(&s5).unwrap())
        .unwrap()
        .sqrt()
        .unwrap();
    Interval::point(10.0).mul(&a).unwrap().mul(&b).unwrap()
}

fn mu_dod() -> Interval {
    let cap = four_pi().mul(&m_dod()).unwrap();
    omega_dod().sub(&cap).unwrap()
}

/// The named constants exposed by the toolkit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constant {
    Pi,
    Sqrt8,
    TDod,
    T0,
    MDod,
    M0,
    DeltaTet,
    MuDod,
    OmegaDod,
}

impl Constant {
    pub const ALL: [Constant; 9] = [
        Constant::Pi,
        Constant::Sqrt8,
        Constant::TDod,
        Constant::T0,
        Constant::MDod,
        Constant::M0,
        Constant::DeltaTet,
        Constant::MuDod,
        Constant::OmegaDod,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Constant::Pi => "pi",
            Constant::Sqrt8 => "sqrt8",
            Constant::TDod => "t_dod",
            Constant::T0 => "t_0",
            Constant::MDod => "M_dod",
            Constant::M0 => "M_0",
            Constant::DeltaTet => "delta_tet",
            Constant::MuDod => "mu_dod",
            Constant::OmegaDod => "omega_dod",
        }
    }

    pub fn from_name(name: &str) -> Result<Constant> {
        Constant::ALL
            .iter()
            .copied()
            .find(|c| c.name() == name)
            .ok_or_else(|| IvalError::UnknownConstant(name.to_string()))
    }

    /// Verified enclosure of the constant.
    pub fn enclosure(&self) -> Interval {
        match self {
            Constant::Pi => pi(),
            Constant::Sqrt8 => Interval::point(8.0).sqrt().unwrap(),
            Constant::TDod => t_dod(),
            Constant::T0 => Interval::from_rational(1255, 1000),
            Constant::MDod => m_dod(),
            Constant::M0 => m_0(),
            Constant::DeltaTet => delta_tet(),
            Constant::MuDod => mu_dod(),
            Constant::OmegaDod => omega_dod(),
        }
    }
}

/// Convenience lookup by name.
pub fn const_enclosure(name: &str) -> Result<Interval> {
    Constant::from_name(name).map(|c| c.enclosure())
}
