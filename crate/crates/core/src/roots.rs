//! Sign-change scan and bisection for scalar root functions.

/// A root located by bisection inside a sign-change bracket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub residual: f64,
    pub bracket: (f64, f64),
}

/// Uniform grid of `points` samples over [lo, hi], endpoints included.
pub fn uniform_grid(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (points.max(2) - 1) as f64;
    (0..points.max(2)).map(move |i| if i + 1 == points.max(2) { hi } else { lo + step * i as f64 })
}

/// Brackets [xᵢ, xᵢ₊₁] where consecutive samples change sign. A sample that
/// is exactly zero yields a degenerate bracket at that point.
pub fn sign_changes(samples: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for (i, w) in samples.windows(2).enumerate() {
        let (x0, f0) = w[0];
        let (x1, f1) = w[1];
        if f0 == 0.0 {
            out.push((x0, x0));
        } else if f1 == 0.0 {
            if i + 2 == samples.len() {
                out.push((x1, x1));
            }
        } else if (f0 < 0.0) != (f1 < 0.0) {
            out.push((x0, x1));
        }
    }
    out
}

/// Bisects until the bracket collapses to adjacent floats or the width drops
/// below `x_tol`; returns the endpoint or midpoint with smallest |f|.
pub fn bisect<F: FnMut(f64) -> f64>(mut f: F, lo: f64, hi: f64, x_tol: f64) -> Root {
    let bracket = (lo, hi);
    let (mut a, mut b) = (lo, hi);
    let mut fa = f(a);
    if a == b {
        return Root {
            x: a,
            residual: fa.abs(),
            bracket,
        };
    }
    let fb = f(b);
    let mut best = if fa.abs() <= fb.abs() { (a, fa) } else { (b, fb) };
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b || (b - a) <= x_tol {
            break;
        }
        let fm = f(m);
        if fm.abs() < best.1.abs() {
            best = (m, fm);
        }
        if fm == 0.0 {
            break;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Root {
        x: best.0,
        residual: best.1.abs(),
        bracket,
    }
}
