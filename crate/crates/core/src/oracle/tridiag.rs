//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection.

/// Symmetric tridiagonal matrix: `diag[0..n]`, `off[0..n-1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiag {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length must be n - 1");
        SymTridiag { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (negative LDLᵀ pivots).
    pub fn sturm_count(&self, x: f64) -> usize {
        let guard = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let prev = if q.abs() < guard { guard.copysign(q) } else { q };
            q = (self.diag[i] - x) - self.off[i - 1] * self.off[i - 1] / prev;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The k-th smallest eigenvalue (k = 0 is the lowest).
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index {k} out of range");
        let (mut lo, mut hi) = self.gershgorin();
        let span = hi - lo;
        lo -= 1e-12 * span.max(1.0);
        hi += 1e-12 * span.max(1.0);
        // shrink the upper end quickly; the low eigenvalues we need sit far
        // below the Gershgorin bound of a fine Laplacian
        let base = lo;
        let mut step = 1e-6 * span.max(f64::MIN_POSITIVE);
        loop {
            let probe = base + step;
            if probe >= hi {
                break;
            }
            if self.sturm_count(probe) > k {
                hi = probe;
                break;
            }
            lo = probe;
            step *= 8.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// Eigenvector for an eigenvalue estimate by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let shift = lambda + 1e-10 * lambda.abs().max(1e-10);
        let mut v = vec![1.0; n];
        for _ in 0..6 {
            v = self.solve_shifted(shift, &v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= norm);
        }
        v
    }

    /// Solves (T − shift·I)x = rhs by the Thomas algorithm.
    fn solve_shifted(&self, shift: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let tiny = 1e-300;
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        let mut b0 = self.diag[0] - shift;
        if b0.abs() < tiny {
            b0 = tiny;
        }
        if n > 1 {
            c[0] = self.off[0] / b0;
        }
        d[0] = rhs[0] / b0;
        for i in 1..n {
            let mut m = (self.diag[i] - shift) - self.off[i - 1] * c[i - 1];
            if m.abs() < tiny {
                m = tiny;
            }
            if i + 1 < n {
                c[i] = self.off[i] / m;
            }
            d[i] = (rhs[i] - self.off[i - 1] * d[i - 1]) / m;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    }
}
