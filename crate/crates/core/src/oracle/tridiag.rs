use crate::error::{Error, Result};

/// Symmetric tridiagonal matrix stored as its diagonal and first off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidGrid(format!(
                "tridiagonal shape mismatch: {} diagonal vs {} off-diagonal entries",
                diag.len(),
                off.len()
            )));
        }
        if diag.iter().chain(off.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid("non-finite matrix entry".into()));
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off_diag(&self) -> &[f64] {
        &self.off
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        match i.abs_diff(j) {
            0 => self.diag[i],
            1 => self.off[i.min(j)],
            _ => 0.0,
        }
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dim();
        (0..n).fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), i| {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i + 1 < n { self.off[i].abs() } else { 0.0 };
            (lo.min(self.diag[i] - r), hi.max(self.diag[i] + r))
        })
    }

    /// Number of eigenvalues strictly below `x`, from the signs of the LDLᵀ
    /// pivots of `A − xI` (Sturm count).
    pub fn count_below(&self, x: f64) -> usize {
        let mut count = 0;
        let mut d = 1.0_f64;
        let tiny = f64::MIN_POSITIVE.sqrt();
        for i in 0..self.dim() {
            let coupling = if i == 0 {
                0.0
            } else {
                self.off[i - 1] * self.off[i - 1] / d
            };
            d = self.diag[i] - x - coupling;
            if d == 0.0 {
                d = -tiny;
            }
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k` lowest eigenvalues in ascending order, each bisected until its
    /// bracket is no wider than `tol`.
    pub fn lowest_eigenvalues(&self, k: usize, tol: f64) -> Result<Vec<f64>> {
        let n = self.dim();
        if k == 0 || k > n {
            return Err(Error::InvalidGrid(format!(
                "requested {k} eigenvalues of a {n}x{n} matrix"
            )));
        }
        let (glo, ghi) = self.gershgorin();
        let pad = f64::EPSILON * glo.abs().max(ghi.abs()).max(1.0) * n as f64;
        let (glo, ghi) = (glo - pad, ghi + pad);
        let mut out = Vec::with_capacity(k);
        let mut lower = glo;
        for index in 0..k {
            // Smallest x with count_below(x) > index.
            let (mut lo, mut hi) = (lower, ghi);
            let mut steps = 0;
            while hi - lo > tol.max(4.0 * f64::EPSILON * lo.abs().max(hi.abs())) {
                let mid = 0.5 * (lo + hi);
                if self.count_below(mid) > index {
                    hi = mid;
                } else {
                    lo = mid;
                }
                steps += 1;
                if steps > 2000 {
                    return Err(Error::EigenNonConvergence { index });
                }
            }
            let value = 0.5 * (lo + hi);
            out.push(value);
            lower = lo;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1]).unwrap()
    }

    #[test]
    fn dirichlet_laplacian_spectrum() {
        // Eigenvalues 2 − 2cos(jπ/(n+1)), j = 1..n.
        let n = 50;
        let eig = laplacian(n).lowest_eigenvalues(n, 1e-13).unwrap();
        for (j, v) in eig.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((v - exact).abs() < 1e-12, "j={j} {v} vs {exact}");
        }
        assert!(eig.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn sturm_count_matches_diagonal_matrix() {
        let m = SymTridiagonal::new(vec![3.0, -1.0, 7.0, 0.5], vec![0.0; 3]).unwrap();
        assert_eq!(m.count_below(0.0), 1);
        assert_eq!(m.count_below(1.0), 2);
        assert_eq!(m.count_below(10.0), 4);
        let eig = m.lowest_eigenvalues(4, 1e-14).unwrap();
        let expected = [-1.0, 0.5, 3.0, 7.0];
        for (v, e) in eig.iter().zip(expected) {
            assert!((v - e).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(SymTridiagonal::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(SymTridiagonal::new(vec![], vec![]).is_err());
        assert!(laplacian(5).lowest_eigenvalues(6, 1e-12).is_err());
        assert!(laplacian(5).lowest_eigenvalues(0, 1e-12).is_err());
    }
}
