//! Face cycles of a packing graph and the per-face volume formulas: the
//! Girard solid angle, the quoin-based inclusion-exclusion formula for
//! general faces, and the orthoscheme decomposition for triangle faces
//! whose simplex circumradius stays under the truncation radius.

use super::cell::{a_fun, phi, quo, CellScalar, LambdaPair};
use super::simplex::{azim_edge, circumcenter3, circumcenter4, eta_points, Simplex};
use super::vec3::Vec3;
use super::{Error, Result};
use crate::scalar::{Scalar, Trilean};

/// A face of the graph: its vertex cycle, counterclockwise as seen from
/// outside the unit sphere. The region `U_F` lies to the left of the
/// traversal.
#[derive(Debug, Clone)]
pub struct FaceCycle<T> {
    verts: Vec<Vec3<T>>,
}

impl<T: Scalar> FaceCycle<T> {
    pub fn new(verts: Vec<Vec3<T>>) -> Result<Self> {
        if verts.len() < 3 {
            return Err(Error::FaceTooSmall(verts.len()));
        }
        Ok(FaceCycle { verts })
    }

    pub fn from_f64s(pts: &[[f64; 3]]) -> Result<Self> {
        FaceCycle::new(pts.iter().map(|p| Vec3::from_f64s(*p)).collect())
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn verts(&self) -> &[Vec3<T>] {
        &self.verts
    }

    fn prev(&self, i: usize) -> &Vec3<T> {
        &self.verts[(i + self.verts.len() - 1) % self.verts.len()]
    }

    fn next(&self, i: usize) -> &Vec3<T> {
        &self.verts[(i + 1) % self.verts.len()]
    }

    /// Half the distance to the origin, `h_i = |v_i| / 2`.
    pub fn h(&self, i: usize) -> Result<T> {
        Ok(self.verts[i].norm()?.div(&T::from_f64(2.0))?)
    }

    /// Circumradius `eta(0, v_i, v_{i+1})`.
    pub fn b_plus(&self, i: usize) -> Result<T> {
        eta_points(&Vec3::zero(), &self.verts[i], self.next(i))
    }

    /// Circumradius `eta(0, v_i, v_{i-1})`.
    pub fn b_minus(&self, i: usize) -> Result<T> {
        eta_points(&Vec3::zero(), &self.verts[i], self.prev(i))
    }

    /// Interior angle of the spherical polygon `U_F ∩ S^2` at `v_i / |v_i|`
    /// (the azimuth angle of `(U_F, v_i)`). Values above `pi` occur at
    /// reflex vertices; the reflex side is decided by the orientation of
    /// the adjacent arcs against the traversal direction.
    pub fn azim(&self, i: usize) -> Result<T> {
        let v = &self.verts[i];
        let p = perp_component(self.prev(i), v)?;
        let q = perp_component(self.next(i), v)?;
        let dih = azim_edge(
            &Simplex::from_points(&[
                Vec3::zero(),
                v.clone(),
                self.prev(i).clone(),
                self.next(i).clone(),
            ])?,
            0,
            1,
        )?;
        // convex iff (p x q) . v <= 0 for a counterclockwise cycle
        let s = p.cross(&q)?.dot(v)?;
        match s.gt_zero() {
            Trilean::False => Ok(dih),
            Trilean::True => Ok(T::two_pi().sub(&dih)?),
            Trilean::Unknown => {
                // angle is near pi; both branches agree there, hull is sound
                Ok(dih.clone().join(&T::two_pi().sub(&dih)?))
            }
        }
    }

    /// Girard's formula: `sol = sum_i azim_i - (r - 2) pi`.
    pub fn sol_girard(&self) -> Result<T> {
        let mut sum = T::from_f64(0.0);
        for i in 0..self.verts.len() {
            sum = sum.add(&self.azim(i)?)?;
        }
        let r_minus_2 = T::from_f64((self.verts.len() - 2) as f64);
        Ok(sum.sub(&r_minus_2.mul(&T::pi())?)?)
    }
}

fn perp_component<T: Scalar>(w: &Vec3<T>, axis: &Vec3<T>) -> Result<Vec3<T>> {
    // w |axis|^2 - (w . axis) axis: the component of w orthogonal to axis,
    // scaled by |axis|^2 (scaling preserves angles and signs)
    let n2 = axis.norm2()?;
    let d = w.dot(axis)?;
    Ok(w.scale(&n2)?.sub(&axis.scale(&d)?)?)
}

/// Inclusion-exclusion volume of `U_F ∩ Omega_0`:
/// `omega = sol phi(t,t) + sum_i (azim_i A(h_i,t) + quo(h_i,b_i^+,t) + quo(h_i,b_i^-,t))`
/// with `lambda = (1,0)`.
///
/// For triangle faces this is the pairwise-cap regime formula; a triangle
/// whose bounding simplex has circumradius provably below `t` (and whose
/// region is the small cone side) must be routed to [`omega_triangle`]
/// instead, and is rejected here.
pub fn omega_face<T: CellScalar>(face: &FaceCycle<T>, t: &T) -> Result<T> {
    let sol = face.sol_girard()?;
    if face.len() == 3 {
        let eta_s = triangle_simplex_circumradius(face)?;
        if eta_s.cmp_scalar(t).is_false() && sol.cmp_scalar(&T::two_pi()).is_false() {
            return Err(Error::PreconditionRegime);
        }
    }
    omega_face_unchecked(face, t, &sol)
}

fn omega_face_unchecked<T: CellScalar>(face: &FaceCycle<T>, t: &T, sol: &T) -> Result<T> {
    let l = LambdaPair::volume();
    let mut acc = sol.mul(&phi(t, t, &l)?)?;
    for i in 0..face.len() {
        let h = face.h(i)?;
        let term = face
            .azim(i)?
            .mul(&a_fun(&h, t, &l)?)?
            .add(&quo(&h, &face.b_plus(i)?, t)?)?
            .add(&quo(&h, &face.b_minus(i)?, t)?)?;
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Circumradius of the simplex `{0, v_1, v_2, v_3}` spanned by a triangle
/// face.
pub fn triangle_simplex_circumradius<T: Scalar>(face: &FaceCycle<T>) -> Result<T> {
    debug_assert_eq!(face.len(), 3);
    let c = circumcenter4(&[
        Vec3::zero(),
        face.verts[0].clone(),
        face.verts[1].clone(),
        face.verts[2].clone(),
    ])?;
    c.norm().map_err(Into::into)
}

/// Volume of `conv(S) ∩ Omega(S, 0)` for `S = {0, v_1, v_2, v_3}` in the
/// protected-simplex regime (circumradius of `S` below `t`), via the
/// orthoscheme decomposition anchored at the circumcenter of `S`, the face
/// circumcenters, the edge midpoints and the origin. Each orthoscheme has
/// mutually orthogonal successive legs, giving volume `a d1 d2 / 6` with
/// the two distal legs signed by which side of the edge (resp. face) the
/// circumcenters fall on.
pub fn omega_triangle<T: Scalar>(v: &[Vec3<T>; 3], t: &T) -> Result<T> {
    let pts = [Vec3::zero(), v[0].clone(), v[1].clone(), v[2].clone()];
    let c_s = circumcenter4(&pts)?;
    let eta_s = c_s.norm()?;
    if eta_s.cmp_scalar(t).is_true() {
        return Err(Error::RegimeMismatch);
    }
    omega_triangle_unchecked(v, &c_s)
}

pub(crate) fn omega_triangle_unchecked<T: Scalar>(v: &[Vec3<T>; 3], c_s: &Vec3<T>) -> Result<T> {
    let half = T::from_f64(0.5);
    let sixth = T::from_rational(1, 6);
    let mut total = T::from_f64(0.0);
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 2)] {
        let k = 3 - i - j; // remaining vertex index
        let q_f = circumcenter3(&Vec3::zero(), &v[i], &v[j])?;
        // unit normal of the face plane, toward the fourth vertex v_k
        let n_raw = v[i].cross(&v[j])?;
        let side = n_raw.dot(&v[k])?;
        let n_len = n_raw.norm()?;
        if !n_len.gt_zero().is_true() {
            return Err(Error::DegenerateSet);
        }
        // signed distance from face plane to circumcenter of S, positive
        // toward v_k
        let d2 = c_s.sub(&q_f)?.dot(&n_raw)?.div(&n_len)?;
        let d2 = match side.gt_zero() {
            Trilean::True => d2,
            Trilean::False => d2.neg(),
            Trilean::Unknown => return Err(Error::DegenerateSet),
        };
        for (e, w) in [(i, j), (j, i)] {
            let edge = &v[e];
            let m = edge.scale(&half)?;
            let a = edge.norm()?.mul(&half)?;
            // in-plane direction orthogonal to the edge, toward v_w
            let dir = perp_component(&v[w], edge)?;
            let dir_len = dir.norm()?;
            if !dir_len.gt_zero().is_true() {
                return Err(Error::DegenerateTriangle);
            }
            let d1 = q_f.sub(&m)?.dot(&dir)?.div(&dir_len)?;
            let contrib = a.mul(&d1)?.mul(&d2)?.mul(&sixth)?;
            total = total.add(&contrib)?;
        }
    }
    Ok(total)
}

/// `omega` of a face with automatic regime routing: triangle faces whose
/// simplex circumradius is provably below `t` (on the cone side) use the
/// orthoscheme decomposition; everything else uses inclusion-exclusion.
/// When an interval enclosure straddles the regime boundary, the hull of
/// both branches is returned (both formulas agree at the boundary).
pub fn omega_auto<T: CellScalar>(face: &FaceCycle<T>, t: &T) -> Result<T> {
    let sol = face.sol_girard()?;
    // only the small (cone) side of a triangle can be a protected simplex;
    // the complement face (sol >= 2pi) always uses inclusion-exclusion
    let complement = sol.cmp_scalar(&T::two_pi());
    if face.len() != 3 || complement.is_true() {
        return omega_face_unchecked(face, t, &sol);
    }
    let tri = [
        face.verts[0].clone(),
        face.verts[1].clone(),
        face.verts[2].clone(),
    ];
    let pts = [Vec3::zero(), tri[0].clone(), tri[1].clone(), tri[2].clone()];
    let c_s = circumcenter4(&pts)?;
    let eta_s = c_s.norm()?;
    match t.cmp_scalar(&eta_s) {
        // eta_s <= t: protected simplex, local formula
        Trilean::True if complement.is_false() => omega_triangle_unchecked(&tri, &c_s),
        Trilean::False => omega_face_unchecked(face, t, &sol),
        // regime (or cone side) undecidable on this enclosure: both
        // formulas agree at the boundary, their hull is sound
        _ => {
            let a = omega_triangle_unchecked(&tri, &c_s)?;
            let b = omega_face_unchecked(face, t, &sol)?;
            Ok(a.join(&b))
        }
    }
}

/// `mu = omega - M sol` for a face, with the same regime routing as
/// [`omega_auto`].
pub fn mu_face<T: CellScalar>(face: &FaceCycle<T>, t: &T, m: &T) -> Result<T> {
    let omega = omega_auto(face, t)?;
    let sol = face.sol_girard()?;
    Ok(omega.sub(&m.mul(&sol)?)?)
}

/// Winding-number membership test for a direction against the spherical
/// polygon of a face (plain arithmetic; used by visibility tests).
pub fn spherical_polygon_contains(verts: &[Vec3<f64>], dir: &Vec3<f64>) -> bool {
    let n = verts.len();
    let mut winding = 0.0f64;
    for i in 0..n {
        let a = &verts[i];
        let b = &verts[(i + 1) % n];
        let pa = perp_f64(a, dir);
        let pb = perp_f64(b, dir);
        let na = (pa.dot(&pa).unwrap()).sqrt();
        let nb = (pb.dot(&pb).unwrap()).sqrt();
        if na < 1e-14 || nb < 1e-14 {
            return false; // direction hits a vertex ray: treat as outside
        }
        let cosv = pa.dot(&pb).unwrap() / (na * nb);
        let sinv = pa.cross(&pb).unwrap().dot(dir).unwrap() / (na * nb * norm_f64(dir));
        winding += sinv.atan2(cosv.clamp(-1.0, 1.0));
    }
    // counterclockwise interior accumulates +2pi
    winding > std::f64::consts::PI
}

fn perp_f64(w: &Vec3<f64>, axis: &Vec3<f64>) -> Vec3<f64> {
    let n2 = axis.dot(axis).unwrap();
    let d = w.dot(axis).unwrap();
    w.scale(&n2).unwrap().sub(&axis.scale(&d).unwrap()).unwrap()
}

fn norm_f64(v: &Vec3<f64>) -> f64 {
    v.dot(v).unwrap().sqrt()
}
