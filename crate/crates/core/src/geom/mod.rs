//! Geometry of the truncated Voronoi cell.
//!
//! Circumradii, Cayley-Menger simplex volumes, spherical caps and quoins,
//! the `phi`/`A` conversion functions, azimuth angles, Girard solid angles,
//! and the two per-face volume formulas (inclusion-exclusion for general
//! faces, the orthoscheme decomposition for protected triangle simplices).
//! Everything is generic over [`crate::scalar::Scalar`]: the same code path
//! serves plain `f64` search and rigorous interval verification.

mod cell;
mod face;
mod predicates;
mod simplex;
mod vec3;

pub use cell::{a_fun, cap_sol, cap_vol, phi, quo, CellScalar, LambdaPair};
pub use face::{
    mu_face, omega_auto, omega_face, omega_triangle, spherical_polygon_contains,
    triangle_simplex_circumradius, FaceCycle,
};
pub use predicates::{in_aff_plus, in_conv, in_rcone, orientation, Orientation};
pub use simplex::{
    azim, azim_edge, circumcenter3, circumcenter4, circumradius, delta_cm, delta_cm_d4, embed,
    eta, eta_points, tet_vol, Simplex, Triangle,
};
pub use vec3::{Vec3, Vec3f};

use crate::ival::IvalError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("degenerate triangle (zero area, circumradius unbounded)")]
    DegenerateTriangle,
    #[error("edge lengths are not realizable by points in 3-space")]
    NonRealizable,
    #[error("cap height must satisfy 0 < h <= t")]
    HOutOfRange,
    #[error("degenerate edge: dihedral angle undefined")]
    DegenerateEdge,
    #[error("triangle face in the protected-simplex regime: use omega_triangle")]
    PreconditionRegime,
    #[error("simplex circumradius at or above the truncation radius: use omega_face")]
    RegimeMismatch,
    #[error("degenerate point set")]
    DegenerateSet,
    #[error("a face needs at least 3 vertices, got {0}")]
    FaceTooSmall(usize),
    #[error("piecewise branch boundary: not twice differentiable on this enclosure")]
    NotC2,
    #[error(transparent)]
    Ival(#[from] IvalError),
}

pub type Result<T> = std::result::Result<T, Error>;
