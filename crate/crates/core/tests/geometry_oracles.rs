//! Monte-Carlo validation of the closed-form cell-geometry volumes on the
//! reference configurations. The broader randomized sweep lives in the
//! acceptance suite.

mod common;

use common::*;
use dodeca::geom::{self, CellScalar, FaceCycle, Vec3f};

#[test]
fn quoin_matches_monte_carlo() {
    let (a, b) = (1.0, 1.1);
    let q = f64::quo(&a, &b, &TDOD).unwrap();
    let mut r = rng(101);
    let (mc, sigma) = mc_quoin(a, b, TDOD, 60_000_000, &mut r);
    let tol = (3.0 * sigma).max(1e-3 * q);
    assert!(
        (q - mc).abs() <= tol,
        "quo({a},{b},t) = {q}, mc = {mc} +- {sigma}"
    );
}

#[test]
fn cap_volume_matches_monte_carlo() {
    let h = 1.0;
    let v = geom::cap_vol(&h, &TDOD).unwrap();
    let mut r = rng(102);
    let (mc, sigma) = mc_cap(h, TDOD, 20_000_000, &mut r);
    let tol = (3.0 * sigma).max(1e-3 * v);
    assert!((v - mc).abs() <= tol, "cap_vol = {v}, mc = {mc} +- {sigma}");
}

#[test]
fn omega_triangle_regular_matches_monte_carlo() {
    // regular tetrahedron of edge 2 on the origin
    let pts = order_ccw([
        Vec3f::of(2.0, 0.0, 0.0),
        Vec3f::of(1.0, 3.0f64.sqrt(), 0.0),
        Vec3f::of(1.0, 1.0 / 3.0f64.sqrt(), (8.0f64 / 3.0).sqrt()),
    ]);
    let om = geom::omega_triangle(&pts, &TDOD).unwrap();
    let mut r = rng(103);
    let (mc, sigma) = mc_omega_triangle(&pts, 40_000_000, &mut r);
    let tol = (3.0 * sigma).max(1.5e-3 * om);
    assert!((om - mc).abs() <= tol, "omega = {om}, mc = {mc} +- {sigma}");
}

#[test]
fn omega_face_square_matches_monte_carlo() {
    let verts = spherical_square(2.2);
    let fc = FaceCycle::new(verts.clone()).unwrap();
    let om = geom::omega_face(&fc, &TDOD).unwrap();
    let mut r = rng(104);
    let (mc, sigma) = mc_omega_face_convex(&verts, TDOD, 40_000_000, &mut r);
    let tol = (3.0 * sigma).max(1.5e-3 * om);
    assert!((om - mc).abs() <= tol, "omega = {om}, mc = {mc} +- {sigma}");
}

#[test]
fn omega_face_all_quoins_vanish_reduces_to_caps() {
    // a face whose vertices are pairwise cap-disjoint (all eta(0,u,v) > t):
    // quoins vanish and omega = sol phi(t,t) + sum azim A(h)
    let verts = spherical_square(2.51);
    for (i, v) in verts.iter().enumerate() {
        let e = geom::eta_points(&Vec3f::of(0.0, 0.0, 0.0), v, &verts[(i + 1) % 4]).unwrap();
        assert!(e > TDOD, "edge {i} eta {e}");
    }
    let fc = FaceCycle::new(verts.clone()).unwrap();
    let om = geom::omega_face(&fc, &TDOD).unwrap();
    let l = geom::LambdaPair::volume();
    let mut manual = fc.sol_girard().unwrap() * geom::phi(&TDOD, &TDOD, &l).unwrap();
    for i in 0..4 {
        let h = verts[i].norm().unwrap() / 2.0;
        manual += fc.azim(i).unwrap() * geom::a_fun(&h, &TDOD, &l).unwrap();
    }
    assert!((om - manual).abs() < 1e-12, "{om} vs {manual}");
}
