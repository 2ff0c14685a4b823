//! The single rounding primitive behind the crate's interval arithmetic.
//!
//! Each operation is computed in round-to-nearest and the exact sign of the
//! rounding residual is recovered (TwoSum for `+`/`-`, FMA residuals for
//! `*`, `/` and `sqrt`). The result is stepped one ulp toward the requested
//! direction only when the residual lies on that side, so exact results stay
//! exact and inexact ones are correctly directed. In the subnormal range,
//! where residual recovery is not guaranteed exact, the step is taken
//! unconditionally.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dir {
    Down,
    Up,
}

/// Step `v` one ulp along `dir` when the exact result lies on that side of
/// `v`, as told by the sign of `residual = exact - v`.
fn step(v: f64, residual: f64, dir: Dir) -> f64 {
    if v.is_nan() {
        return v;
    }
    match dir {
        Dir::Down => {
            if residual < 0.0 {
                v.next_down()
            } else {
                v
            }
        }
        Dir::Up => {
            if residual > 0.0 {
                v.next_up()
            } else {
                v
            }
        }
    }
}

/// Unconditional one-ulp step, for cases where the residual sign is unknown.
fn step_always(v: f64, dir: Dir) -> f64 {
    match dir {
        Dir::Down => v.next_down(),
        Dir::Up => v.next_up(),
    }
}

fn subnormal_or_zero(v: f64) -> bool {
    v == 0.0 || v.abs() < f64::MIN_POSITIVE
}

pub fn add_dir(a: f64, b: f64, dir: Dir) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    // TwoSum: exact residual of round-to-nearest addition.
    let ap = s - b;
    let bp = s - ap;
    let da = a - ap;
    let db = b - bp;
    step(s, da + db, dir)
}

pub fn sub_dir(a: f64, b: f64, dir: Dir) -> f64 {
    add_dir(a, -b, dir)
}

pub fn mul_dir(a: f64, b: f64, dir: Dir) -> f64 {
    let p = a * b;
    if !p.is_finite() {
        return p;
    }
    if subnormal_or_zero(p) {
        if a == 0.0 || b == 0.0 {
            return p; // exact zero
        }
        return step_always(p, dir);
    }
    let r = a.mul_add(b, -p);
    step(p, r, dir)
}

pub fn div_dir(a: f64, b: f64, dir: Dir) -> f64 {
    let q = a / b;
    if !q.is_finite() {
        return q;
    }
    if subnormal_or_zero(q) {
        if a == 0.0 {
            return q;
        }
        return step_always(q, dir);
    }
    // exact = a/b; residual sign = sign(a - q*b) * sign(b)
    let r = -q.mul_add(b, -a); // a - q*b, exact for normal q
    let signed = if b > 0.0 { r } else { -r };
    step(q, signed, dir)
}

pub fn sqrt_dir(a: f64, dir: Dir) -> f64 {
    debug_assert!(a >= 0.0);
    let s = a.sqrt();
    if a == 0.0 {
        return 0.0;
    }
    if subnormal_or_zero(s) {
        return step_always(s, dir);
    }
    // sign(sqrt(a) - s) = sign(a - s*s)
    let r = -s.mul_add(s, -a);
    step(s, r, dir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_results_are_not_widened() {
        assert_eq!(add_dir(1.0, 3.0, Dir::Down), 4.0);
        assert_eq!(add_dir(1.0, 3.0, Dir::Up), 4.0);
        assert_eq!(mul_dir(1.5, 2.0, Dir::Down), 3.0);
        assert_eq!(mul_dir(1.5, 2.0, Dir::Up), 3.0);
        assert_eq!(div_dir(1.0, 4.0, Dir::Up), 0.25);
        assert_eq!(sqrt_dir(9.0, Dir::Down), 3.0);
    }

    #[test]
    fn inexact_results_bracket_the_truth() {
        let lo = div_dir(1.0, 3.0, Dir::Down);
        let hi = div_dir(1.0, 3.0, Dir::Up);
        assert!(lo < hi);
        assert_eq!(hi, lo.next_up());
        // 3*lo < 1 < 3*hi in exact arithmetic
        assert!(mul_dir(lo, 3.0, Dir::Up) <= 1.0);
        assert!(mul_dir(hi, 3.0, Dir::Down) >= 1.0);

        let s_lo = sqrt_dir(2.0, Dir::Down);
        let s_hi = sqrt_dir(2.0, Dir::Up);
        assert!(mul_dir(s_lo, s_lo, Dir::Up) <= 2.0);
        assert!(mul_dir(s_hi, s_hi, Dir::Down) >= 2.0);
        assert!(s_hi <= s_lo.next_up());
    }
}
