//! Point-membership predicates (plain arithmetic): right circular cones,
//! positive hulls, convex hulls, and the circumcenter orientation test.

use super::simplex::circumcenter4;
use super::vec3::Vec3f;
use super::{Error, Result};

const EPS: f64 = 1e-12;

/// Membership in `rcone(0, v, h)`: `x . v >= |x| |v| h`.
pub fn in_rcone(x: &Vec3f, v: &Vec3f, h: f64) -> bool {
    let dot = x.dot(v).unwrap();
    let nx = x.dot(x).unwrap().sqrt();
    let nv = v.dot(v).unwrap().sqrt();
    dot >= nx * nv * h - EPS
}

/// Side of `v1` relative to the circumcenter of `S = {v1, v2, v3, v4}`:
/// `Positive` when `v1` and the circumcenter lie on the same side of the
/// plane through the other three points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    Positive,
    Zero,
    Negative,
}

pub fn orientation(v1: &Vec3f, s: &[Vec3f; 4]) -> Result<Orientation> {
    let c = circumcenter4(s)?;
    let others: Vec<&Vec3f> = s
        .iter()
        .filter(|p| {
            let d = p.sub(v1).unwrap();
            d.dot(&d).unwrap() > EPS
        })
        .collect();
    if others.len() != 3 {
        return Err(Error::DegenerateSet);
    }
    let a = others[1].sub(others[0])?;
    let b = others[2].sub(others[0])?;
    let n = a.cross(&b)?;
    if n.dot(&n)?.sqrt() < EPS {
        return Err(Error::DegenerateSet);
    }
    let side_v = v1.sub(others[0])?.dot(&n)?;
    let side_c = c.sub(others[0])?.dot(&n)?;
    let prod = side_v * side_c;
    Ok(if prod > EPS {
        Orientation::Positive
    } else if prod < -EPS {
        Orientation::Negative
    } else {
        Orientation::Zero
    })
}

/// Membership in `aff_+(0, S)`, the cone of nonnegative combinations of up
/// to three independent generators.
pub fn in_aff_plus(x: &Vec3f, s: &[Vec3f]) -> Result<bool> {
    if s.is_empty() || s.len() > 3 {
        return Err(Error::DegenerateSet);
    }
    // solve the Gram system G t = (S . x) and check t >= 0 plus residual
    let n = s.len();
    let mut g = vec![vec![0.0f64; n]; n];
    let mut rhs = vec![0.0f64; n];
    for i in 0..n {
        for j in 0..n {
            g[i][j] = s[i].dot(&s[j]).unwrap();
        }
        rhs[i] = s[i].dot(x).unwrap();
    }
    let t = solve_dense(&mut g, &mut rhs).ok_or(Error::DegenerateSet)?;
    // reconstruct and compare
    let mut recon = Vec3f::of(0.0, 0.0, 0.0);
    for i in 0..n {
        recon = recon.add(&s[i].scale(&t[i]).unwrap()).unwrap();
    }
    let resid = recon.sub(x).unwrap();
    let in_span = resid.dot(&resid).unwrap().sqrt() <= 1e-9 * (1.0 + x.dot(x).unwrap().sqrt());
    Ok(in_span && t.iter().all(|&ti| ti >= -1e-9))
}

/// Membership in the convex hull of four points (barycentric sign test).
pub fn in_conv(x: &Vec3f, s: &[Vec3f; 4]) -> Result<bool> {
    // solve sum t_i s_i = x with sum t_i = 1 as a 4x4 system
    let mut m = [[0.0f64; 5]; 4];
    for (j, p) in s.iter().enumerate() {
        m[0][j] = p.x;
        m[1][j] = p.y;
        m[2][j] = p.z;
        m[3][j] = 1.0;
    }
    m[0][4] = x.x;
    m[1][4] = x.y;
    m[2][4] = x.z;
    m[3][4] = 1.0;
    let mut g = vec![vec![0.0f64; 4]; 4];
    let mut rhs = vec![0.0f64; 4];
    for i in 0..4 {
        for j in 0..4 {
            g[i][j] = m[i][j];
        }
        rhs[i] = m[i][4];
    }
    let t = solve_dense(&mut g, &mut rhs).ok_or(Error::DegenerateSet)?;
    Ok(t.iter().all(|&ti| ti >= -1e-9))
}

/// Gaussian elimination with partial pivoting; `None` on singular systems.
pub(crate) fn solve_dense(g: &mut [Vec<f64>], rhs: &mut [f64]) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| g[a][col].abs().total_cmp(&g[b][col].abs()))?;
        if g[piv][col].abs() < 1e-13 {
            return None;
        }
        g.swap(col, piv);
        rhs.swap(col, piv);
        for row in (col + 1)..n {
            let f = g[row][col] / g[col][col];
            for k in col..n {
                g[row][k] -= f * g[col][k];
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut t = vec![0.0f64; n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in (row + 1)..n {
            acc -= g[row][k] * t[k];
        }
        t[row] = acc / g[row][row];
    }
    Some(t)
}
