//! Tridiagonal linear algebra.
//!
//! No pivoting anywhere: the slope systems built by this crate are positive
//! definite whenever the mesh widths share a sign, and keeping the
//! elimination in natural order preserves the bidiagonal factor structure.
//! A zero pivot is reported as [`Error::SingularPivot`].

use crate::error::{Error, Result};
use crate::mesh::Mesh;

/// Pivots smaller than this in magnitude are treated as zero.
pub const PIVOT_FLOOR: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

/// `A = L·U` with `L` unit lower bidiagonal and `U` upper bidiagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactors {
    /// Subdiagonal of `L`, length `m − 1`.
    pub l_sub: Vec<f64>,
    /// Diagonal of `U`, length `m`.
    pub u_diag: Vec<f64>,
    /// Superdiagonal of `U` (equal to that of `A`), length `m − 1`.
    pub u_sup: Vec<f64>,
}

/// Leading principal minors `D¹ … Dᵐ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinorSequence {
    pub values: Vec<f64>,
}

/// Where a total-nonnegativity check failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TnViolation {
    NegativeSub {
        index: usize,
        value: f64,
    },
    NegativeDiag {
        index: usize,
        value: f64,
    },
    NegativeSup {
        index: usize,
        value: f64,
    },
    /// `scaled` is the minor divided by the running product of diagonal magnitudes.
    NegativeMinor {
        order: usize,
        scaled: f64,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct TnCertificate {
    pub totally_nonnegative: bool,
    pub violation: Option<TnViolation>,
    /// Leading minors normalised by the running diagonal product.
    pub scaled_minors: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>) -> Result<Self> {
        let m = diag.len();
        if m < 2 {
            return Err(Error::TooFewNodes { needed: 2, got: m });
        }
        for band in [&sub, &sup] {
            if band.len() != m - 1 {
                return Err(Error::LengthMismatch {
                    expected: m - 1,
                    got: band.len(),
                });
            }
        }
        if sub.iter().chain(&diag).chain(&sup).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "matrix" });
        }
        Ok(TridiagonalSystem { sub, diag, sup })
    }

    pub fn identity(m: usize) -> Result<Self> {
        Self::new(
            vec![0.0; m.saturating_sub(1)],
            vec![1.0; m],
            vec![0.0; m.saturating_sub(1)],
        )
    }

    /// Constant-band Toeplitz matrix with the corner diagonal entries replaced.
    pub fn with_corners(m: usize, off: f64, diag: f64, first: f64, last: f64) -> Result<Self> {
        let mut d = vec![diag; m];
        if m > 0 {
            d[0] = first;
            d[m - 1] = last;
        }
        Self::new(
            vec![off; m.saturating_sub(1)],
            d,
            vec![off; m.saturating_sub(1)],
        )
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    pub fn sub(&self) -> &[f64] {
        &self.sub
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn sup(&self) -> &[f64] {
        &self.sup
    }

    /// Entry `(i, j)`; zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i == j {
            self.diag[i]
        } else if i == j + 1 {
            self.sub[j]
        } else if j == i + 1 {
            self.sup[i]
        } else {
            0.0
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        let m = self.dim();
        (0..m)
            .map(|i| (0..m).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut acc = self.diag[i] * x[i];
                if i > 0 {
                    acc += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < m {
                    acc += self.sup[i] * x[i + 1];
                }
                acc
            })
            .collect()
    }

    /// Multiplies row `i` by `scale[i]` (left multiplication by a diagonal matrix).
    pub fn scale_rows(&self, scale: &[f64]) -> Result<Self> {
        let m = self.dim();
        if scale.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: scale.len(),
            });
        }
        let diag = self.diag.iter().zip(scale).map(|(d, s)| d * s).collect();
        let sub = (0..m - 1).map(|j| self.sub[j] * scale[j + 1]).collect();
        let sup = (0..m - 1).map(|i| self.sup[i] * scale[i]).collect();
        Self::new(sub, diag, sup)
    }

    /// Maximum absolute column sum.
    pub fn one_norm(&self) -> f64 {
        let m = self.dim();
        (0..m)
            .map(|j| {
                let mut s = self.diag[j].abs();
                if j > 0 {
                    s += self.sup[j - 1].abs();
                }
                if j + 1 < m {
                    s += self.sub[j].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    /// Maximum absolute row sum.
    pub fn inf_norm(&self) -> f64 {
        let m = self.dim();
        (0..m)
            .map(|i| {
                let mut s = self.diag[i].abs();
                if i > 0 {
                    s += self.sub[i - 1].abs();
                }
                if i + 1 < m {
                    s += self.sup[i].abs();
                }
                s
            })
            .fold(0.0, f64::max)
    }

    #[allow(clippy::neg_cmp_op_on_partial_ord)] // NaN must fail too
    pub fn lu_factor(&self) -> Result<LuFactors> {
        let m = self.dim();
        let mut u_diag = Vec::with_capacity(m);
        let mut l_sub = Vec::with_capacity(m - 1);
        let mut pivot = self.diag[0];
        if !(pivot.abs() > PIVOT_FLOOR) {
            return Err(Error::SingularPivot { row: 0 });
        }
        u_diag.push(pivot);
        for i in 1..m {
            let l = self.sub[i - 1] / pivot;
            pivot = self.diag[i] - l * self.sup[i - 1];
            if !(pivot.abs() > PIVOT_FLOOR) {
                return Err(Error::SingularPivot { row: i });
            }
            l_sub.push(l);
            u_diag.push(pivot);
        }
        Ok(LuFactors {
            l_sub,
            u_diag,
            u_sup: self.sup.clone(),
        })
    }

    /// Thomas algorithm.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        self.lu_factor()?.solve(rhs)
    }

    /// Leading principal minors by the three-term recurrence
    /// `Dᵏ = d_k Dᵏ⁻¹ − sub_k sup_k Dᵏ⁻²`.
    pub fn leading_minors(&self) -> MinorSequence {
        let m = self.dim();
        let mut values = Vec::with_capacity(m);
        let (mut prev2, mut prev1) = (1.0, self.diag[0]);
        values.push(prev1);
        for k in 1..m {
            let d = self.diag[k] * prev1 - self.sub[k - 1] * self.sup[k - 1] * prev2;
            values.push(d);
            prev2 = prev1;
            prev1 = d;
        }
        MinorSequence { values }
    }

    /// Gantmacher–Krein test: an irreducible tridiagonal matrix is totally
    /// nonnegative iff its entries and its leading principal minors are
    /// nonnegative.
    ///
    /// Minors are compared against `−tol` after dividing by the running
    /// product of diagonal magnitudes, so the test is insensitive to the
    /// exponential growth of raw minors with the dimension.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    pub fn is_totally_nonnegative(&self, tol: f64) -> Result<TnCertificate> {
        if let Some(row) = self
            .sub
            .iter()
            .zip(&self.sup)
            .position(|(&a, &b)| a == 0.0 || b == 0.0)
        {
            return Err(Error::Reducible { row });
        }
        if !(tol >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerance {tol} must be >= 0"
            )));
        }

        let entry_violation = self
            .sub
            .iter()
            .enumerate()
            .find(|(_, &v)| v < -tol)
            .map(|(index, &value)| TnViolation::NegativeSub { index, value })
            .or_else(|| {
                self.diag
                    .iter()
                    .enumerate()
                    .find(|(_, &v)| v < -tol)
                    .map(|(index, &value)| TnViolation::NegativeDiag { index, value })
            })
            .or_else(|| {
                self.sup
                    .iter()
                    .enumerate()
                    .find(|(_, &v)| v < -tol)
                    .map(|(index, &value)| TnViolation::NegativeSup { index, value })
            });

        let scaled_minors = self.scaled_minors();
        let violation = entry_violation.or_else(|| {
            scaled_minors
                .iter()
                .enumerate()
                .find(|(_, &v)| v < -tol)
                .map(|(k, &scaled)| TnViolation::NegativeMinor {
                    order: k + 1,
                    scaled,
                })
        });
        Ok(TnCertificate {
            totally_nonnegative: violation.is_none(),
            violation,
            scaled_minors,
        })
    }

    /// `Dᵏ / ∏_{i≤k} |d_i|`, computed without forming the products.
    fn scaled_minors(&self) -> Vec<f64> {
        let m = self.dim();
        let mag = |d: f64| if d == 0.0 { 1.0 } else { d.abs() };
        let mut out = Vec::with_capacity(m);
        let mut prev2 = 1.0;
        let mut prev1 = self.diag[0] / mag(self.diag[0]);
        out.push(prev1);
        for k in 1..m {
            let dk = mag(self.diag[k]);
            let dk1 = mag(self.diag[k - 1]);
            let v = (self.diag[k] / dk) * prev1
                - (self.sub[k - 1] / dk) * (self.sup[k - 1] / dk1) * prev2;
            out.push(v);
            prev2 = prev1;
            prev1 = v;
        }
        out
    }

    /// Exact `‖A‖₁·‖A⁻¹‖₁`, with `‖A⁻¹‖₁` assembled column by column from
    /// `m` solves against the unit vectors. `O(m²)` work.
    pub fn one_norm_condition(&self) -> Result<f64> {
        let lu = self.lu_factor()?;
        let m = self.dim();
        let mut e = vec![0.0; m];
        let mut inv_norm: f64 = 0.0;
        for j in 0..m {
            e.iter_mut().for_each(|v| *v = 0.0);
            e[j] = 1.0;
            let col = lu.solve(&e)?;
            inv_norm = inv_norm.max(col.iter().map(|v| v.abs()).sum());
        }
        Ok(self.one_norm() * inv_norm)
    }
}

impl LuFactors {
    pub fn dim(&self) -> usize {
        self.u_diag.len()
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>> {
        let m = self.dim();
        if rhs.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: rhs.len(),
            });
        }
        let mut y = Vec::with_capacity(m);
        y.push(rhs[0]);
        for i in 1..m {
            let v = rhs[i] - self.l_sub[i - 1] * y[i - 1];
            y.push(v);
        }
        let mut x = vec![0.0; m];
        x[m - 1] = y[m - 1] / self.u_diag[m - 1];
        for i in (0..m - 1).rev() {
            x[i] = (y[i] - self.u_sup[i] * x[i + 1]) / self.u_diag[i];
        }
        Ok(x)
    }

    /// `L·U` as a tridiagonal matrix.
    pub fn product(&self) -> Result<TridiagonalSystem> {
        let m = self.dim();
        let sub = (0..m - 1).map(|i| self.l_sub[i] * self.u_diag[i]).collect();
        let diag = (0..m)
            .map(|i| {
                if i == 0 {
                    self.u_diag[0]
                } else {
                    self.l_sub[i - 1] * self.u_sup[i - 1] + self.u_diag[i]
                }
            })
            .collect();
        TridiagonalSystem::new(sub, diag, self.u_sup.clone())
    }
}

impl MinorSequence {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn determinant(&self) -> f64 {
        *self.values.last().expect("non-empty")
    }

    pub fn all_positive(&self) -> bool {
        self.values.iter().all(|&v| v > 0.0)
    }
}

/// Leading principal minors of the denominator-free compact matrix `T` of a
/// mesh (see [`crate::assembly::scaled_compact_matrix`]), from closed forms:
/// the first three directly, then the interior recurrence
/// `Dᵏ = (h_{k−1} + h_k)² Dᵏ⁻¹ − h_{k−2}² h_k² Dᵏ⁻²`, and finally the
/// corner-weighted formula for the full determinant.
pub fn leading_minors(mesh: &Mesh) -> Result<MinorSequence> {
    mesh.require_subintervals(4)?;
    let n = mesh.n();
    let h = |k: usize| mesh.width(k);
    let (h1, h2, h3) = (h(1), h(2), h(3));
    let s3 = h1 + h2 + h3;

    let mut d = Vec::with_capacity(n + 1);
    d.push(h2 * (h3 + h2) / ((h2 + h1) * s3));
    d.push(h1 * h2 * h3 / s3);
    d.push(h1 * h3 * h2 * h2 * (h3 + h2) / (h2 + h1));
    for k in 4..=n {
        let v = (h(k - 1) + h(k)).powi(2) * d[k - 2] - h(k - 2).powi(2) * h(k).powi(2) * d[k - 3];
        d.push(v);
    }
    let (hn, hn1, hn2) = (h(n), h(n - 1), h(n - 2));
    let alpha = hn1 * (hn1 + hn2) / ((hn1 + hn) * (hn + hn1 + hn2));
    d.push(alpha * d[n - 1] - hn1 * hn1 * d[n - 2]);
    Ok(MinorSequence { values: d })
}
