//! Shared test utilities: seeded RNG, reference configurations, and the
//! Monte-Carlo volume oracles that the geometry formulas are validated
//! against. The oracles only use elementary membership tests (half-spaces,
//! balls, convex cones), independent of the closed-form volume code they
//! check.

#![allow(dead_code)]

use dodeca::geom::Vec3f;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const TDOD: f64 = 1.2584085723648188;
pub const MDOD: f64 = 0.42755;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Icosahedron vertices at circumradius 2.
pub fn icosahedron_radius2() -> Vec<[f64; 3]> {
    let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
    let s = 2.0 / (1.0 + phi * phi).sqrt();
    let mut v = Vec::new();
    for &(a, b) in &[(1.0, phi), (1.0, -phi), (-1.0, phi), (-1.0, -phi)] {
        v.push([0.0, a * s, b * s]);
        v.push([a * s, b * s, 0.0]);
        v.push([b * s, 0.0, a * s]);
    }
    v
}

/// Plain 3-D Monte-Carlo volume of `{x in box : member(x)}` with its
/// standard error.
pub fn mc_volume_3d(
    bounds: [[f64; 2]; 3],
    n: usize,
    rng: &mut ChaCha8Rng,
    member: impl Fn([f64; 3]) -> bool,
) -> (f64, f64) {
    let vol_box: f64 = bounds.iter().map(|b| b[1] - b[0]).product();
    let mut hits = 0u64;
    for _ in 0..n {
        let x = [
            rng.gen_range(bounds[0][0]..bounds[0][1]),
            rng.gen_range(bounds[1][0]..bounds[1][1]),
            rng.gen_range(bounds[2][0]..bounds[2][1]),
        ];
        if member(x) {
            hits += 1;
        }
    }
    let f = hits as f64 / n as f64;
    let est = f * vol_box;
    let sigma = vol_box * (f * (1.0 - f) / n as f64).sqrt();
    (est, sigma)
}

/// Monte-Carlo integral of `f` over a 2-D box (used for regions whose
/// z-extent is known in closed form; much lower variance than 3-D
/// indicator sampling).
pub fn mc_integral_2d(
    bounds: [[f64; 2]; 2],
    n: usize,
    rng: &mut ChaCha8Rng,
    f: impl Fn([f64; 2]) -> f64,
) -> (f64, f64) {
    let area: f64 = (bounds[0][1] - bounds[0][0]) * (bounds[1][1] - bounds[1][0]);
    let mut sum = 0.0;
    let mut sum2 = 0.0;
    for _ in 0..n {
        let x = [
            rng.gen_range(bounds[0][0]..bounds[0][1]),
            rng.gen_range(bounds[1][0]..bounds[1][1]),
        ];
        let v = f(x);
        sum += v;
        sum2 += v * v;
    }
    let mean = sum / n as f64;
    let var = (sum2 / n as f64 - mean * mean).max(0.0);
    (area * mean, area * (var / n as f64).sqrt())
}

/// Monte-Carlo volume of the quoin `quo(a, b, c)` by direct construction:
/// `v = (2a, 0, 0)`, `w = (0, 2g, 0)` with `g = sqrt(b^2 - a^2)`, so that
/// `eta(0, v, w) = b`. The quoin is the part of `C(v,c) ∩ C(w,c)` above the
/// `{0,v,w}` plane and on the `w` side of the orthogonal plane through `0`
/// and the triangle circumcenter `(a, g, 0)`. All constraints except the
/// ball are z-free, so the z-extent integrates exactly.
pub fn mc_quoin(a: f64, b: f64, c: f64, n: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    assert!(a <= b && b <= c);
    let g = (b * b - a * a).sqrt();
    let x2max = (c * c - a * a).sqrt();
    mc_integral_2d([[a, c], [0.0, x2max]], n, rng, move |[x1, x2]| {
        // C(v): x1 >= a (already enforced by the box lower bound)
        // C(w): x2 >= g
        if x2 < g {
            return 0.0;
        }
        // w side of the plane through 0, (a, g, 0), z-axis
        if -x1 * g + x2 * a < 0.0 {
            return 0.0;
        }
        let r2 = c * c - x1 * x1 - x2 * x2;
        if r2 <= 0.0 {
            return 0.0;
        }
        r2.sqrt()
    })
}

/// Monte-Carlo volume of the spherical cap `C(v, t)` with `|v| = 2h`.
pub fn mc_cap(h: f64, t: f64, n: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let w = (t * t - h * h).max(0.0).sqrt();
    mc_volume_3d([[h, t], [-w, w], [-w, w]], n, rng, move |[x, y, z]| {
        x * x + y * y + z * z <= t * t
    })
}

/// Face normals of the tetrahedron `{0, v1, v2, v3}`, inward-oriented, for
/// fast convex-hull membership.
pub struct TetraHull {
    normals: Vec<(Vec3f, f64)>, // (n, offset): inside iff n.x >= offset
}

impl TetraHull {
    pub fn new(v: &[Vec3f; 3]) -> TetraHull {
        let o = Vec3f::of(0.0, 0.0, 0.0);
        let pts = [o, v[0].clone(), v[1].clone(), v[2].clone()];
        let mut normals = Vec::new();
        for i in 0..4 {
            let others: Vec<&Vec3f> = (0..4).filter(|&k| k != i).map(|k| &pts[k]).collect();
            let a = others[1].sub(others[0]).unwrap();
            let b = others[2].sub(others[0]).unwrap();
            let mut n = a.cross(&b).unwrap();
            let off = n.dot(others[0]).unwrap();
            // orient inward (toward pts[i])
            if n.dot(&pts[i]).unwrap() < off {
                n = n.neg();
            }
            let off = n.dot(others[0]).unwrap();
            normals.push((n, off));
        }
        TetraHull { normals }
    }

    pub fn contains(&self, x: [f64; 3]) -> bool {
        let p = Vec3f::of(x[0], x[1], x[2]);
        self.normals
            .iter()
            .all(|(n, off)| n.dot(&p).unwrap() >= *off - 1e-12)
    }
}

/// Monte-Carlo volume of `conv(S) ∩ Omega(S, 0)` for `S = {0, v1, v2, v3}`.
pub fn mc_omega_triangle(v: &[Vec3f; 3], n: usize, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let hull = TetraHull::new(v);
    let mut lo = [0.0f64; 3];
    let mut hi = [0.0f64; 3];
    for p in v {
        let c = [p.x, p.y, p.z];
        for k in 0..3 {
            lo[k] = lo[k].min(c[k]);
            hi[k] = hi[k].max(c[k]);
        }
    }
    let bisectors: Vec<(Vec3f, f64)> = v
        .iter()
        .map(|p| (p.clone(), p.dot(p).unwrap() / 2.0))
        .collect();
    mc_volume_3d(
        [[lo[0], hi[0]], [lo[1], hi[1]], [lo[2], hi[2]]],
        n,
        rng,
        move |x| {
            if !hull.contains(x) {
                return false;
            }
            let p = Vec3f::of(x[0], x[1], x[2]);
            bisectors.iter().all(|(vtx, half)| p.dot(vtx).unwrap() <= *half)
        },
    )
}

/// Monte-Carlo volume of `U_F ∩ Omega_0` for a convex face cycle
/// (counterclockwise from outside): membership in the radial cone of the
/// spherical polygon via its edge half-spaces, intersected with the ball
/// of radius `t` and all bisector half-spaces of the face vertices.
pub fn mc_omega_face_convex(
    verts: &[Vec3f],
    t: f64,
    n: usize,
    rng: &mut ChaCha8Rng,
) -> (f64, f64) {
    let r = verts.len();
    let edges: Vec<Vec3f> = (0..r)
        .map(|i| verts[i].cross(&verts[(i + 1) % r]).unwrap())
        .collect();
    let bisectors: Vec<(Vec3f, f64)> = verts
        .iter()
        .map(|p| (p.clone(), p.dot(p).unwrap() / 2.0))
        .collect();
    mc_volume_3d([[-t, t], [-t, t], [-t, t]], n, rng, move |x| {
        let p = Vec3f::of(x[0], x[1], x[2]);
        if p.dot(&p).unwrap() > t * t {
            return false;
        }
        // inside the radial cone: left of every edge plane for a ccw cycle
        if !edges.iter().all(|e| e.dot(&p).unwrap() >= 0.0) {
            return false;
        }
        bisectors.iter().all(|(vtx, half)| p.dot(vtx).unwrap() <= *half)
    })
}

/// Random admissible protected-simplex configuration: `|v_i|` and pairwise
/// distances in `[2, 2 t_dod]`, simplex circumradius strictly below
/// `t_dod`, counterclockwise orientation.
pub fn random_triangle_regime(rng: &mut ChaCha8Rng) -> [Vec3f; 3] {
    loop {
        let mut pts = Vec::new();
        for _ in 0..3 {
            let r: f64 = rng.gen_range(2.0..2.2);
            let z: f64 = rng.gen_range(-1.0..1.0f64);
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - z * z).sqrt();
            pts.push(Vec3f::of(r * s * phi.cos(), r * s * phi.sin(), r * z));
        }
        let ok_pairs = (0..3).all(|i| {
            (i + 1..3).all(|j| {
                let d = pts[i].dist(&pts[j]).unwrap();
                (2.0..2.0 * TDOD).contains(&d)
            })
        });
        if !ok_pairs {
            continue;
        }
        let arr = [pts[0].clone(), pts[1].clone(), pts[2].clone()];
        let arr = order_ccw(arr);
        let eta_s = dodeca::geom::circumcenter4(&[
            Vec3f::of(0.0, 0.0, 0.0),
            arr[0].clone(),
            arr[1].clone(),
            arr[2].clone(),
        ])
        .and_then(|c| c.norm().map_err(Into::into));
        match eta_s {
            Ok(e) if e < TDOD - 1e-3 => return arr,
            _ => continue,
        }
    }
}

/// Random convex quoin-regime face with `r` vertices: radial polygon with
/// ascending longitude, moderate colatitude, packing-spaced vertices, and
/// caps meeting pairwise at most (no triple intersections, non-adjacent
/// caps disjoint).
pub fn random_face_config(rng: &mut ChaCha8Rng, r: usize) -> Vec<Vec3f> {
    'outer: loop {
        let mut phis: Vec<f64> = (0..r)
            .map(|i| {
                let base = i as f64 / r as f64 * std::f64::consts::TAU;
                base + rng.gen_range(-0.3 / r as f64..0.3 / r as f64)
            })
            .collect();
        phis.sort_by(f64::total_cmp);
        let mut verts = Vec::new();
        for &phi in &phis {
            let theta: f64 = rng.gen_range(0.72..0.95); // colatitude
            let rad: f64 = rng.gen_range(2.0..2.3);
            verts.push(Vec3f::of(
                rad * theta.sin() * phi.cos(),
                rad * theta.sin() * phi.sin(),
                rad * theta.cos(),
            ));
        }
        // packing distances
        for i in 0..r {
            for j in i + 1..r {
                let d = verts[i].dist(&verts[j]).unwrap();
                if d < 2.0 {
                    continue 'outer;
                }
                let adjacent = j == i + 1 || (i == 0 && j == r - 1);
                if adjacent && d > 2.0 * TDOD {
                    continue 'outer;
                }
                if !adjacent {
                    // non-adjacent caps must be disjoint
                    let eta = dodeca::geom::eta_points(
                        &Vec3f::of(0.0, 0.0, 0.0),
                        &verts[i],
                        &verts[j],
                    );
                    match eta {
                        Ok(e) if e > TDOD + 1e-3 => {}
                        _ => continue 'outer,
                    }
                }
            }
        }
        // no triple cap intersections among consecutive triples
        for i in 0..r {
            let tri = [
                Vec3f::of(0.0, 0.0, 0.0),
                verts[i].clone(),
                verts[(i + 1) % r].clone(),
                verts[(i + 2) % r].clone(),
            ];
            match dodeca::geom::circumcenter4(&tri).and_then(|c| c.norm().map_err(Into::into)) {
                Ok(e) if e > TDOD + 1e-3 => {}
                _ => continue 'outer,
            }
        }
        // counterclockwise seen from outside (+z side): ascending phi is ccw
        return verts;
    }
}

pub fn order_ccw(v: [Vec3f; 3]) -> [Vec3f; 3] {
    let n = v[1]
        .sub(&v[0])
        .unwrap()
        .cross(&v[2].sub(&v[0]).unwrap())
        .unwrap();
    if n.dot(&v[0]).unwrap() >= 0.0 {
        v
    } else {
        let [a, b, c] = v;
        [a, c, b]
    }
}

/// Spherical square: four vertices at radius 2 with consecutive chord
/// distance `d`, centered on the +z axis, counterclockwise from outside.
pub fn spherical_square(d: f64) -> Vec<Vec3f> {
    // |v_i - v_{i+1}|^2 = 8 sin^2(theta) for quarter-turn spacing at radius 2
    let sin_theta = (d * d / 8.0).sqrt();
    let theta = sin_theta.asin();
    (0..4)
        .map(|i| {
            let phi = i as f64 * std::f64::consts::FRAC_PI_2;
            Vec3f::of(
                2.0 * theta.sin() * phi.cos(),
                2.0 * theta.sin() * phi.sin(),
                2.0 * theta.cos(),
            )
        })
        .collect()
}
