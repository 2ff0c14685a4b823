//! Circumradii, Cayley-Menger volumes, and dihedral (azimuth) angles from
//! edge data.

use super::{Error, Result};
use crate::scalar::{Scalar, Trilean};

/// Euclidean triangle given by its three side lengths.
#[derive(Debug, Clone)]
pub struct Triangle<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Scalar> Triangle<T> {
    pub fn new(x: T, y: T, z: T) -> Self {
        Triangle { x, y, z }
    }
}

/// Circumradius of a triangle with side lengths `x, y, z`:
/// `eta = xyz / sqrt((x+y+z)(-x+y+z)(x-y+z)(x+y-z))`.
pub fn eta<T: Scalar>(t: &Triangle<T>) -> Result<T> {
    let (x, y, z) = (&t.x, &t.y, &t.z);
    let p1 = x.add(y)?.add(z)?;
    let p2 = x.neg().add(y)?.add(z)?;
    let p3 = x.sub(y)?.add(z)?;
    let p4 = x.add(y)?.sub(z)?;
    let heron = p1.mul(&p2)?.mul(&p3)?.mul(&p4)?;
    if heron.gt_zero().is_false() {
        return Err(Error::DegenerateTriangle);
    }
    let denom = heron.sqrt_clamped()?;
    if !denom.gt_zero().is_true() {
        // zero area cannot be excluded: infinite circumradius
        return Err(Error::DegenerateTriangle);
    }
    Ok(x.mul(y)?.mul(z)?.div(&denom)?)
}

/// Circumradius of the triangle spanned by points `u, v, w`.
pub fn eta_points<T: Scalar>(
    u: &super::Vec3<T>,
    v: &super::Vec3<T>,
    w: &super::Vec3<T>,
) -> Result<T> {
    let a = u.dist(v)?;
    let b = v.dist(w)?;
    let c = u.dist(w)?;
    eta(&Triangle::new(a, b, c))
}

/// Simplex on four points, stored as the six squared edge lengths
/// `(x1..x6) = (|01|^2, |02|^2, |03|^2, |23|^2, |13|^2, |12|^2)`; opposite
/// edges are the pairs `(x1,x4)`, `(x2,x5)`, `(x3,x6)`.
#[derive(Debug, Clone)]
pub struct Simplex<T> {
    pub x: [T; 6],
}

impl<T: Scalar> Simplex<T> {
    pub fn new(x: [T; 6]) -> Self {
        Simplex { x }
    }

    /// From the six edge lengths (same order), squaring each.
    pub fn from_lengths(y: &[T; 6]) -> Result<Self> {
        Ok(Simplex {
            x: [
                y[0].square()?,
                y[1].square()?,
                y[2].square()?,
                y[3].square()?,
                y[4].square()?,
                y[5].square()?,
            ],
        })
    }

    /// From four explicit points.
    pub fn from_points(p: &[super::Vec3<T>; 4]) -> Result<Self> {
        let d2 = |a: &super::Vec3<T>, b: &super::Vec3<T>| a.sub(b)?.norm2();
        Ok(Simplex {
            x: [
                d2(&p[0], &p[1])?,
                d2(&p[0], &p[2])?,
                d2(&p[0], &p[3])?,
                d2(&p[2], &p[3])?,
                d2(&p[1], &p[3])?,
                d2(&p[1], &p[2])?,
            ],
        })
    }

    /// Re-index so that the edge between vertices `i` and `j` becomes the
    /// leading edge (x1), preserving the opposite-pair structure.
    pub fn with_leading_edge(&self, i: usize, j: usize) -> Simplex<T> {
        let x = &self.x;
        let pick = |k: usize| x[k].clone();
        // map (i,j) with i<j onto position 1; vertices relabel accordingly
        let idx: [usize; 6] = match (i.min(j), i.max(j)) {
            (0, 1) => [0, 1, 2, 3, 4, 5],
            (0, 2) => [1, 0, 2, 4, 3, 5],
            (0, 3) => [2, 0, 1, 5, 3, 4],
            (1, 2) => [5, 0, 4, 2, 3, 1],
            (1, 3) => [4, 0, 5, 1, 3, 2],
            (2, 3) => [3, 1, 5, 0, 4, 2],
            _ => panic!("vertex indices must be distinct and < 4"),
        };
        Simplex::new([
            pick(idx[0]),
            pick(idx[1]),
            pick(idx[2]),
            pick(idx[3]),
            pick(idx[4]),
            pick(idx[5]),
        ])
    }
}

/// The Cayley-Menger polynomial `Delta` of the six squared edge lengths;
/// the simplex volume is `sqrt(Delta)/12`.
pub fn delta_cm<T: Scalar>(s: &Simplex<T>) -> Result<T> {
    let [x1, x2, x3, x4, x5, x6] = &s.x;
    let a = x1.neg().add(x2)?.add(x3)?.sub(x4)?.add(x5)?.add(x6)?;
    let b = x1.sub(x2)?.add(x3)?.add(x4)?.sub(x5)?.add(x6)?;
    let c = x1.add(x2)?.sub(x3)?.add(x4)?.add(x5)?.sub(x6)?;
    let t1 = x1.mul(x4)?.mul(&a)?;
    let t2 = x2.mul(x5)?.mul(&b)?;
    let t3 = x3.mul(x6)?.mul(&c)?;
    let m1 = x2.mul(x3)?.mul(x4)?;
    let m2 = x1.mul(x3)?.mul(x5)?;
    let m3 = x1.mul(x2)?.mul(x6)?;
    let m4 = x4.mul(x5)?.mul(x6)?;
    t1.add(&t2)?
        .add(&t3)?
        .sub(&m1)?
        .sub(&m2)?
        .sub(&m3)?
        .sub(&m4)
        .map_err(Into::into)
}

/// `d Delta / d x4`, used in the dihedral-angle formula.
pub fn delta_cm_d4<T: Scalar>(s: &Simplex<T>) -> Result<T> {
    let [x1, x2, x3, x4, x5, x6] = &s.x;
    let a = x1.neg().add(x2)?.add(x3)?.sub(x4)?.add(x5)?.add(x6)?;
    x1.mul(&a)?
        .sub(&x1.mul(x4)?)?
        .add(&x2.mul(x5)?)?
        .add(&x3.mul(x6)?)?
        .sub(&x2.mul(x3)?)?
        .sub(&x5.mul(x6)?)
        .map_err(Into::into)
}

/// Volume of the simplex, `sqrt(Delta)/12`. Fails with `NonRealizable`
/// when `Delta` is provably negative.
pub fn tet_vol<T: Scalar>(s: &Simplex<T>) -> Result<T> {
    let d = delta_cm(s)?;
    if d.ge_zero().is_false() {
        return Err(Error::NonRealizable);
    }
    let twelve = T::from_f64(12.0);
    Ok(d.sqrt_clamped()?.div(&twelve)?)
}

/// Dihedral angle of the simplex along its leading edge (between vertices
/// 0 and 1), in `(0, pi)`:
/// `azim = pi/2 - atan(Delta4 / sqrt(4 x1 Delta))`.
pub fn azim<T: Scalar>(s: &Simplex<T>) -> Result<T> {
    let d = delta_cm(s)?;
    let d4 = delta_cm_d4(s)?;
    let four_x1 = T::from_f64(4.0).mul(&s.x[0])?;
    let disc = four_x1.mul(&d)?;
    match disc.gt_zero() {
        Trilean::True => {
            let root = disc.sqrt_clamped()?;
            let t = d4.div(&root)?.atan()?;
            Ok(T::pi_half().sub(&t)?)
        }
        Trilean::False => Err(Error::DegenerateEdge),
        // degeneracy cannot be excluded on this enclosure: the angle can be
        // anywhere in [0, pi]
        Trilean::Unknown => Ok(T::from_f64(0.0).join(&T::pi())),
    }
}

/// Dihedral angle along the edge between vertices `i` and `j`.
pub fn azim_edge<T: Scalar>(s: &Simplex<T>, i: usize, j: usize) -> Result<T> {
    azim(&s.with_leading_edge(i, j))
}

/// Circumradius of the full simplex (distance from each vertex to the
/// common circumcenter), via the face areas and `Delta`:
/// `eta^2 = (length of Cayley expression)`; computed here from the
/// circumcenter of the coordinate embedding of the simplex.
pub fn circumradius<T: Scalar>(s: &Simplex<T>) -> Result<T> {
    let p = embed(s)?;
    let c = circumcenter4(&p)?;
    c.sub(&p[0])?.norm().map_err(Into::into)
}

/// Embed the simplex in coordinates: vertex 0 at the origin, vertex 1 on
/// the x-axis, vertex 2 in the xy-plane. Every coordinate is an explicit
/// sqrt/rational expression of the squared lengths, so the embedding is
/// sound in interval mode.
pub fn embed<T: Scalar>(s: &Simplex<T>) -> Result<[super::Vec3<T>; 4]> {
    let [x1, x2, x3, x4, x5, x6] = &s.x;
    let zero = T::from_f64(0.0);
    let two = T::from_f64(2.0);

    let l1 = x1.sqrt_clamped()?; // |v1|
    if !l1.gt_zero().is_true() {
        return Err(Error::DegenerateEdge);
    }
    // v2 = (a2, b2, 0): a2 = (x1 + x2 - x6) / (2 l1)
    let a2 = x1.add(x2)?.sub(x6)?.div(&two.mul(&l1)?)?;
    let b2sq = x2.sub(&a2.square()?)?;
    if b2sq.gt_zero().is_false() {
        return Err(Error::NonRealizable);
    }
    let b2 = b2sq.sqrt_clamped()?;
    if !b2.gt_zero().is_true() {
        return Err(Error::DegenerateTriangle);
    }
    // v3 = (a3, b3, c3)
    let a3 = x1.add(x3)?.sub(x5)?.div(&two.mul(&l1)?)?;
    // |v3|^2 - |v3 - v2|^2 = 2 v3.v2 - |v2|^2  =>  b3 from x3, x4 relation
    // v3.v2 = (x3 + x2 - d(2,3)^2)/2 = (x3 + x2 - x4)/2
    let dot32 = x3.add(x2)?.sub(x4)?.div(&two)?;
    let b3 = dot32.sub(&a3.mul(&a2)?)?.div(&b2)?;
    let c3sq = x3.sub(&a3.square()?)?.sub(&b3.square()?)?;
    if c3sq.ge_zero().is_false() {
        return Err(Error::NonRealizable);
    }
    let c3 = c3sq.sqrt_clamped()?;
    Ok([
        super::Vec3::new(zero.clone(), zero.clone(), zero.clone()),
        super::Vec3::new(l1, zero.clone(), zero.clone()),
        super::Vec3::new(a2, b2, zero),
        super::Vec3::new(a3, b3, c3),
    ])
}

/// Circumcenter of four points (solves the 3x3 bisector system by Cramer's
/// rule).
pub fn circumcenter4<T: Scalar>(p: &[super::Vec3<T>; 4]) -> Result<super::Vec3<T>> {
    let two = T::from_f64(2.0);
    let mut rows = Vec::with_capacity(3);
    let mut rhs = Vec::with_capacity(3);
    let n0 = p[0].norm2()?;
    for i in 1..4 {
        rows.push(p[i].sub(&p[0])?.scale(&two)?);
        rhs.push(p[i].norm2()?.sub(&n0)?);
    }
    let det = det3(&rows[0], &rows[1], &rows[2])?;
    if !det.gt_zero().is_true() && !det.ge_zero().is_false() {
        // sign indefinite: flat simplex cannot be excluded
        return Err(Error::DegenerateSet);
    }
    let dx = det3(
        &col_replace(&rows, 0, &rhs)?[0],
        &col_replace(&rows, 0, &rhs)?[1],
        &col_replace(&rows, 0, &rhs)?[2],
    )?;
    let dy = det3(
        &col_replace(&rows, 1, &rhs)?[0],
        &col_replace(&rows, 1, &rhs)?[1],
        &col_replace(&rows, 1, &rhs)?[2],
    )?;
    let dz = det3(
        &col_replace(&rows, 2, &rhs)?[0],
        &col_replace(&rows, 2, &rhs)?[1],
        &col_replace(&rows, 2, &rhs)?[2],
    )?;
    Ok(super::Vec3::new(dx.div(&det)?, dy.div(&det)?, dz.div(&det)?))
}

fn col_replace<T: Scalar>(
    rows: &[super::Vec3<T>],
    col: usize,
    rhs: &[T],
) -> Result<[super::Vec3<T>; 3]> {
    let mut out = [rows[0].clone(), rows[1].clone(), rows[2].clone()];
    for (i, r) in out.iter_mut().enumerate() {
        match col {
            0 => r.x = rhs[i].clone(),
            1 => r.y = rhs[i].clone(),
            2 => r.z = rhs[i].clone(),
            _ => unreachable!(),
        }
    }
    Ok(out)
}

fn det3<T: Scalar>(
    a: &super::Vec3<T>,
    b: &super::Vec3<T>,
    c: &super::Vec3<T>,
) -> Result<T> {
    a.dot(&b.cross(c)?).map_err(Into::into)
}

/// Circumcenter of the triangle `(p0, p1, p2)` in 3-space.
pub fn circumcenter3<T: Scalar>(
    p0: &super::Vec3<T>,
    p1: &super::Vec3<T>,
    p2: &super::Vec3<T>,
) -> Result<super::Vec3<T>> {
    let a = p1.sub(p0)?;
    let b = p2.sub(p0)?;
    let axb = a.cross(&b)?;
    let denom = T::from_f64(2.0).mul(&axb.norm2()?)?;
    if !denom.gt_zero().is_true() {
        return Err(Error::DegenerateTriangle);
    }
    let na = a.norm2()?;
    let nb = b.norm2()?;
    let w = b.scale(&na)?.sub(&a.scale(&nb)?)?;
    let offset = w.cross(&axb)?.scale(&T::from_f64(1.0).div(&denom)?)?;
    p0.add(&offset).map_err(Into::into)
}
