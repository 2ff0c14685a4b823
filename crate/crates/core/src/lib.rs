//! Rigorous-computation toolkit for the dodecahedral bound on Voronoi cells
//! in unit-sphere packings.
//!
//! The crate is organized around the main computational pillars of the bound:
//!
//! * [`ival`] — outward-rounded interval arithmetic and verified enclosures of
//!   the transcendental constants (`t_dod`, `M_dod`, the squander target, ...).
//! * [`geom`] — truncated Voronoi-cell geometry: circumradii, simplex volumes,
//!   spherical caps, quoins, azimuth angles and the per-face volume formulas,
//!   generic over plain `f64` and rigorous [`ival::Interval`] scalars.
//! * [`prover`] — a branch-and-bound verifier for disjunctions of strict
//!   inequalities over boxes, with interval and first-order Taylor bounds.
//! * [`hmap`] — combinatorial hypermaps (dart permutations, orbits, planarity,
//!   canonical forms, isomorphism).
//! * [`packing`] — from a finite point packing to its graph, hypermap,
//!   standard components and per-face `mu`/`omega` values.
//! * [`tame`] — the constant tables and the eleven tameness conditions on
//!   hypermaps, including Voronoi weight assignments.
//! * [`graphgen`] — isomorph-free seed-and-extend enumeration of candidate
//!   tame hypermaps, plus archive I/O and comparison.
//! * [`lp`] — linear relaxations of hypermap systems and rigorous verification
//!   of dual infeasibility certificates.
//!
//! The `dodeca` CLI (a separate crate in this workspace) wires these modules
//! into file-driven subcommands. A narrative guide lives in `book/` and its
//! code snippets are compiled as doc-tests through the [`book`] module.

pub mod geom;
pub mod graphgen;
pub mod hmap;
pub mod ival;
pub mod lp;
pub mod packing;
pub mod prover;
pub mod scalar;
pub mod tame;
pub mod taylor;

pub mod book;

pub use ival::{Interval, IntervalBox};
pub use scalar::Scalar;
