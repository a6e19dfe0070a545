//! Symmetric tridiagonal eigensolver: Sturm-sequence bisection for the
//! eigenvalues, inverse iteration with a pivoted LU for the eigenvectors.

use crate::error::{Error, Result};

const MAX_BISECTION: usize = 200;
const MAX_INVERSE_ITERATIONS: usize = 8;

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    /// `off[i]` couples rows `i` and `i + 1`.
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidInput(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(&off).any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(
                "tridiagonal matrix has non-finite entries".into(),
            ));
        }
        Ok(Self { diag, off })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    fn scale(&self) -> f64 {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE)
    }

    /// Number of eigenvalues strictly below `x`.
    pub fn count_below(&self, x: f64) -> usize {
        let tiny = f64::EPSILON * self.scale();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                q = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / q;
            }
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `index`-th smallest eigenvalue (zero based), by bisection.
    pub fn eigenvalue(&self, index: usize) -> Result<f64> {
        if index >= self.len() {
            return Err(Error::InvalidInput(format!(
                "eigenvalue index {index} out of range for size {}",
                self.len()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = f64::EPSILON * self.scale() * 4.0;
        lo -= pad;
        hi += pad;
        for _ in 0..MAX_BISECTION {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    fn matvec(&self, v: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * v[i];
                if i > 0 {
                    s += self.off[i - 1] * v[i - 1];
                }
                if i + 1 < n {
                    s += self.off[i] * v[i + 1];
                }
                s
            })
            .collect()
    }

    /// Unit eigenvector (Euclidean norm) for an eigenvalue, orthogonal to
    /// `previous`.
    pub fn eigenvector(
        &self,
        index: usize,
        lambda: f64,
        previous: &[Vec<f64>],
    ) -> Result<Vec<f64>> {
        let n = self.len();
        let scale = self.scale();
        let lu = ShiftedLu::new(self, lambda, scale);
        // Deterministic, non-symmetric start vector.
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.5 * ((i as f64) * 0.618_033_988_7).sin())
            .collect();
        let mut residual = f64::INFINITY;
        for _ in 0..MAX_INVERSE_ITERATIONS {
            orthogonalize(&mut v, previous);
            normalize(&mut v);
            lu.solve(&mut v);
            orthogonalize(&mut v, previous);
            normalize(&mut v);
            let tv = self.matvec(&v);
            residual = tv
                .iter()
                .zip(&v)
                .map(|(a, b)| (a - lambda * b).powi(2))
                .sum::<f64>()
                .sqrt();
            if residual <= 1e3 * f64::EPSILON * scale * (n as f64).sqrt() {
                return Ok(v);
            }
        }
        Err(Error::ConvergenceFailure {
            index,
            iterations: MAX_INVERSE_ITERATIONS,
            residual,
        })
    }

    /// The `count` smallest eigenpairs with unit Euclidean eigenvectors.
    pub fn lowest(&self, count: usize) -> Result<Vec<(f64, Vec<f64>)>> {
        let mut out: Vec<(f64, Vec<f64>)> = Vec::with_capacity(count);
        for i in 0..count {
            let lambda = self.eigenvalue(i)?;
            let previous: Vec<Vec<f64>> = out.iter().map(|(_, v)| v.clone()).collect();
            let v = self.eigenvector(i, lambda, &previous)?;
            out.push((lambda, v));
        }
        Ok(out)
    }
}

fn orthogonalize(v: &mut [f64], previous: &[Vec<f64>]) {
    for p in previous {
        let dot: f64 = v.iter().zip(p).map(|(a, b)| a * b).sum();
        v.iter_mut().zip(p).for_each(|(a, b)| *a -= dot * b);
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
}

/// LU factorization of `T - lambda I` with partial pivoting.
struct ShiftedLu {
    d: Vec<f64>,
    dl: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &SymTridiagonal, lambda: f64, scale: f64) -> Self {
        let n = t.len();
        let mut d: Vec<f64> = t.diag.iter().map(|v| v - lambda).collect();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] != 0.0 {
                    let fact = dl[i] / d[i];
                    dl[i] = fact;
                    d[i + 1] -= fact * du[i];
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let temp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = temp - fact * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -fact;
                }
                swapped[i] = true;
            }
        }
        let floor = f64::EPSILON * scale;
        for v in d.iter_mut() {
            if v.abs() < floor {
                *v = if *v < 0.0 { -floor } else { floor };
            }
        }
        Self {
            d,
            dl,
            du,
            du2,
            swapped,
        }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = self.d.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let temp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = temp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        b[n - 1] /= self.d[n - 1];
        if n > 1 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
        // Rescale to keep magnitudes bounded after near-singular solves.
        let m = b.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        if m > 0.0 && m.is_finite() {
            b.iter_mut().for_each(|v| *v /= m);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn discrete_laplacian_eigenvalues() {
        // 2 - 2cos(j pi / (n+1))
        let n = 50;
        let t = laplacian(n);
        for j in 0..5 {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((t.eigenvalue(j).unwrap() - exact).abs() < 1e-14);
        }
    }

    #[test]
    fn eigenvectors_are_orthonormal_with_small_residual() {
        let n = 200;
        let diag: Vec<f64> = (0..n)
            .map(|i| 2.0 + (i as f64 * 0.05 - 5.0).powi(2) * 0.01)
            .collect();
        let t = SymTridiagonal::new(diag, vec![-1.0; n - 1]).unwrap();
        let pairs = t.lowest(6).unwrap();
        for (i, (li, vi)) in pairs.iter().enumerate() {
            let r: f64 = t
                .matvec(vi)
                .iter()
                .zip(vi)
                .map(|(a, b)| (a - li * b).powi(2))
                .sum::<f64>()
                .sqrt();
            assert!(r < 1e-10);
            for (_, vj) in pairs.iter().skip(i + 1) {
                let dot: f64 = vi.iter().zip(vj).map(|(a, b)| a * b).sum();
                assert!(dot.abs() < 1e-8);
            }
        }
    }

    #[test]
    fn sturm_count_brackets() {
        let t = laplacian(10);
        assert_eq!(t.count_below(-0.1), 0);
        assert_eq!(t.count_below(4.1), 10);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
    }
}
