//! Piecewise cubic Hermite interpolants.
//!
//! A [`PiecewiseCubic`] stores nodal values and nodal slopes; each piece is
//! the cubic Hermite interpolant of its two endpoints. Evaluation uses the
//! Hermite basis written in the local coordinates `u = (t − τ_k)/h` and
//! `w = (t − τ_{k+1})/h`, which are exactly `0`/`−1` and `1`/`0` at the two
//! ends of the piece, so nodal values and slopes come back bitwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mesh::Mesh;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    fn name(self) -> &'static str {
        match self {
            Side::Left => "left",
            Side::Right => "right",
        }
    }
}

/// Partial-fraction coefficients of `1/((t − τ_k)²(t − τ_{k+1})²)` for one
/// subinterval: `β_{i,0}` multiplies `1/(t − τ_i)`, `β_{i,1}` multiplies
/// `1/(t − τ_i)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaryWeights {
    pub left_first: f64,
    pub left_second: f64,
    pub right_first: f64,
    pub right_second: f64,
}

impl BaryWeights {
    /// `(β_{k,0}, β_{k,1}, β_{k+1,0}, β_{k+1,1})`.
    pub fn as_tuple(&self) -> (f64, f64, f64, f64) {
        (
            self.left_first,
            self.left_second,
            self.right_first,
            self.right_second,
        )
    }
}

/// Weights for a subinterval of signed width `h = τ_{k+1} − τ_k`.
pub fn bary_weights(h: f64) -> Result<BaryWeights> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroWidth);
    }
    let h2 = h * h;
    let h3 = h2 * h;
    Ok(BaryWeights {
        left_first: 2.0 / h3,
        left_second: 1.0 / h2,
        right_first: -2.0 / h3,
        right_second: 1.0 / h2,
    })
}

/// Local monomial form: piece `k` is `a + b·x + c·x² + d·x³` with `x = t − τ_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PpForm {
    pub breaks: Vec<f64>,
    pub coefs: Vec<[f64; 4]>,
}

impl PpForm {
    pub fn pieces(&self) -> usize {
        self.coefs.len()
    }

    fn locate(&self, t: f64) -> Result<usize> {
        let n = self.coefs.len();
        let (a, b) = (self.breaks[0], self.breaks[n]);
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        let idx = if a <= b {
            self.breaks.partition_point(|&x| x <= t)
        } else {
            self.breaks.partition_point(|&x| x >= t)
        };
        Ok(idx.saturating_sub(1).min(n - 1))
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let k = self.locate(t)?;
        let [a, b, c, d] = self.coefs[k];
        let x = t - self.breaks[k];
        Ok(a + x * (b + x * (c + x * d)))
    }

    pub fn evaluate_derivative(&self, t: f64) -> Result<f64> {
        let k = self.locate(t)?;
        let [_, b, c, d] = self.coefs[k];
        let x = t - self.breaks[k];
        Ok(b + x * (2.0 * c + x * 3.0 * d))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ppform serialises")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let pp: PpForm = serde_json::from_str(s).map_err(|e| Error::Parse {
            line: e.line() as u64,
            message: e.to_string(),
        })?;
        if pp.breaks.len() != pp.coefs.len() + 1 || pp.coefs.is_empty() {
            return Err(Error::LengthMismatch {
                expected: pp.coefs.len() + 1,
                got: pp.breaks.len(),
            });
        }
        Ok(pp)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseCubic {
    mesh: Mesh,
    values: Vec<f64>,
    slopes: Vec<f64>,
}

impl PiecewiseCubic {
    pub fn new(mesh: Mesh, values: Vec<f64>, slopes: Vec<f64>) -> Result<Self> {
        let m = mesh.len();
        for v in [&values, &slopes] {
            if v.len() != m {
                return Err(Error::LengthMismatch {
                    expected: m,
                    got: v.len(),
                });
            }
        }
        if values.iter().chain(&slopes).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { what: "nodal data" });
        }
        Ok(PiecewiseCubic {
            mesh,
            values,
            slopes,
        })
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn slopes(&self) -> &[f64] {
        &self.slopes
    }

    /// Local coordinates and endpoint data of piece `k` at `t`.
    fn local(&self, k: usize, t: f64) -> Local {
        let t0 = self.mesh.node(k);
        let t1 = self.mesh.node(k + 1);
        let h = self.mesh.widths()[k];
        Local {
            u: (t - t0) / h,
            w: (t - t1) / h,
            h,
            y0: self.values[k],
            y1: self.values[k + 1],
            d0: self.slopes[k],
            d1: self.slopes[k + 1],
        }
    }

    pub fn evaluate(&self, t: f64) -> Result<f64> {
        let k = self.mesh.locate(t)?;
        Ok(self.local(k, t).value())
    }

    pub fn evaluate_derivative(&self, t: f64) -> Result<f64> {
        let k = self.mesh.locate(t)?;
        Ok(self.local(k, t).derivative())
    }

    /// `p″(t)`. Away from nodes `side` is ignored; at a node it selects the
    /// piece (`Left` is the piece ending at the node in index order).
    pub fn evaluate_second_derivative(&self, t: f64, side: Side) -> Result<f64> {
        let mut k = self.mesh.locate(t)?;
        if let Some(j) = self.mesh.node_index(t) {
            let n = self.mesh.n();
            k = match side {
                Side::Left if j == 0 => {
                    return Err(Error::SideUnavailable {
                        side: side.name(),
                        index: j,
                    })
                }
                Side::Right if j == n => {
                    return Err(Error::SideUnavailable {
                        side: side.name(),
                        index: j,
                    })
                }
                Side::Left => j - 1,
                Side::Right => j,
            };
        }
        Ok(self.local(k, t).second_derivative())
    }

    /// Constant third derivative of piece `k`.
    pub fn third_derivative(&self, k: usize) -> f64 {
        let l = self.local(k, self.mesh.node(k));
        let h = l.h;
        12.0 * (l.y0 - l.y1) / (h * h * h) + 6.0 * (l.d0 + l.d1) / (h * h)
    }

    /// One-sided second derivatives at node `k` from the closed forms
    /// `(2/h_k)(2ρ′_k + ρ′_{k−1}) − (6/h_k²)(ρ_k − ρ_{k−1})` (left) and
    /// `−(2/h_{k+1})(2ρ′_k + ρ′_{k+1}) + (6/h_{k+1}²)(ρ_{k+1} − ρ_k)` (right).
    pub fn nodal_second_derivative(&self, k: usize, side: Side) -> Result<f64> {
        let n = self.mesh.n();
        let (y, d) = (&self.values, &self.slopes);
        match side {
            Side::Left => {
                if k == 0 || k > n {
                    return Err(Error::SideUnavailable {
                        side: side.name(),
                        index: k,
                    });
                }
                let h = self.mesh.width(k);
                Ok(2.0 / h * (2.0 * d[k] + d[k - 1]) - 6.0 / (h * h) * (y[k] - y[k - 1]))
            }
            Side::Right => {
                if k >= n {
                    return Err(Error::SideUnavailable {
                        side: side.name(),
                        index: k,
                    });
                }
                let h = self.mesh.width(k + 1);
                Ok(-2.0 / h * (2.0 * d[k] + d[k + 1]) + 6.0 / (h * h) * (y[k + 1] - y[k]))
            }
        }
    }

    /// Right limit minus left limit of `p″` at interior node `k`.
    pub fn c2_jump(&self, k: usize) -> Result<f64> {
        self.mesh.check_interior(k)?;
        Ok(self.nodal_second_derivative(k, Side::Right)?
            - self.nodal_second_derivative(k, Side::Left)?)
    }

    pub fn to_ppform(&self) -> PpForm {
        let n = self.mesh.n();
        let coefs = (0..n)
            .map(|k| {
                let h = self.mesh.widths()[k];
                let (y0, y1) = (self.values[k], self.values[k + 1]);
                let (d0, d1) = (self.slopes[k], self.slopes[k + 1]);
                let secant = (y1 - y0) / h;
                let c = (3.0 * secant - 2.0 * d0 - d1) / h;
                let d = (d0 + d1 - 2.0 * secant) / (h * h);
                [y0, d0, c, d]
            })
            .collect();
        PpForm {
            breaks: self.mesh.nodes().to_vec(),
            coefs,
        }
    }

    /// Second barycentric form of the Hermite interpolant on the piece
    /// containing `t`. Returns the nodal value when `t` is a node.
    pub fn evaluate_barycentric(&self, t: f64) -> Result<f64> {
        let k = self.mesh.locate(t)?;
        let (t0, t1) = (self.mesh.node(k), self.mesh.node(k + 1));
        if t == t0 {
            return Ok(self.values[k]);
        }
        if t == t1 {
            return Ok(self.values[k + 1]);
        }
        let beta = bary_weights(t1 - t0)?;
        let mut num = 0.0;
        let mut den = 0.0;
        for (tau, y, d, b0, b1) in [
            (
                t0,
                self.values[k],
                self.slopes[k],
                beta.left_first,
                beta.left_second,
            ),
            (
                t1,
                self.values[k + 1],
                self.slopes[k + 1],
                beta.right_first,
                beta.right_second,
            ),
        ] {
            let x = t - tau;
            // j = 0: β_{i,0} ρ_{i,0} / x
            // j = 1: β_{i,1} (ρ_{i,0}/x² + ρ_{i,1}/x)
            num += b0 * y / x + b1 * (y / (x * x) + d / x);
            den += b0 / x + b1 / (x * x);
        }
        Ok(num / den)
    }
}

struct Local {
    u: f64,
    w: f64,
    h: f64,
    y0: f64,
    y1: f64,
    d0: f64,
    d1: f64,
}

impl Local {
    fn value(&self) -> f64 {
        let Local {
            u,
            w,
            h,
            y0,
            y1,
            d0,
            d1,
        } = *self;
        w * w * (2.0 * u + 1.0) * y0
            + u * u * (1.0 - 2.0 * w) * y1
            + h * (w * w * u * d0 + u * u * w * d1)
    }

    fn derivative(&self) -> f64 {
        let Local {
            u,
            w,
            h,
            y0,
            y1,
            d0,
            d1,
        } = *self;
        let a = 2.0 * w * (2.0 * u + 1.0) + 2.0 * w * w;
        let b = 2.0 * u * (1.0 - 2.0 * w) - 2.0 * u * u;
        let c = 2.0 * w * u + w * w;
        let d = 2.0 * u * w + u * u;
        (a * y0 + b * y1) / h + c * d0 + d * d1
    }

    fn second_derivative(&self) -> f64 {
        let Local {
            u,
            w,
            h,
            y0,
            y1,
            d0,
            d1,
        } = *self;
        let a = 4.0 * u + 2.0 + 8.0 * w;
        let b = 2.0 - 4.0 * w - 8.0 * u;
        let c = 2.0 * u + 4.0 * w;
        let d = 2.0 * w + 4.0 * u;
        (a * y0 + b * y1) / (h * h) + (c * d0 + d * d1) / h
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cubic_data(mesh: &Mesh) -> PiecewiseCubic {
        let y = mesh.nodes().iter().map(|&t| t * t * t).collect();
        let d = mesh.nodes().iter().map(|&t| 3.0 * t * t).collect();
        PiecewiseCubic::new(mesh.clone(), y, d).unwrap()
    }

    #[test]
    fn weights_match_expansion() {
        assert_eq!(bary_weights(1.0).unwrap().as_tuple(), (2.0, 1.0, -2.0, 1.0));
        assert_eq!(
            bary_weights(2.0).unwrap().as_tuple(),
            (0.25, 0.25, -0.25, 0.25)
        );
        for h in [0.1, -0.7, 3.3] {
            let b = bary_weights(h).unwrap();
            assert_eq!(b.left_first + b.right_first, 0.0);
            // the expansion reproduces 1/((t − a)²(t − a − h)²)
            let a = 0.4;
            for t in [a - 0.37, a + 0.3 * h, a + 2.1 * h] {
                let (x0, x1) = (t - a, t - a - h);
                let lhs = 1.0 / (x0 * x0 * x1 * x1);
                let rhs = b.left_first / x0
                    + b.left_second / (x0 * x0)
                    + b.right_first / x1
                    + b.right_second / (x1 * x1);
                assert!((lhs - rhs).abs() < 1e-10 * lhs.abs(), "h={h} t={t}");
            }
        }
        assert_eq!(bary_weights(0.0), Err(Error::ZeroWidth));
    }

    #[test]
    fn reproduces_cubic() {
        let mesh = Mesh::from_nodes(vec![-1.0, -0.3, 0.2, 0.25, 0.9, 1.4]).unwrap();
        let p = cubic_data(&mesh);
        for i in 0..=100 {
            let t = -1.0 + 2.4 * i as f64 / 100.0;
            let v = p.evaluate(t).unwrap();
            assert!((v - t * t * t).abs() <= 1e-13 * (t * t * t).abs().max(1.0));
            let d = p.evaluate_derivative(t).unwrap();
            assert!((d - 3.0 * t * t).abs() <= 1e-12 * (3.0 * t * t).max(1.0));
            let side = if i == 100 { Side::Left } else { Side::Right };
            let s = p.evaluate_second_derivative(t, side).unwrap();
            assert!((s - 6.0 * t).abs() <= 1e-11 * t.abs().max(1.0));
        }
    }

    #[test]
    fn nodal_values_are_exact_from_both_sides() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.3, 0.7, 1.6, 2.0]).unwrap();
        let y = vec![0.1, -2.3, 4.7, 1.1e-3, 9.0];
        let d = vec![1.0 / 3.0, -7.1, 0.2, 5.5, -1.0];
        let p = PiecewiseCubic::new(mesh.clone(), y.clone(), d.clone()).unwrap();
        for k in 0..5 {
            let t = mesh.node(k);
            assert_eq!(p.evaluate(t).unwrap(), y[k]);
            assert_eq!(p.evaluate_derivative(t).unwrap(), d[k]);
            // the piece on the other side, evaluated at its far end
            if k > 0 {
                let l = p.local(k - 1, t);
                assert_eq!(l.value(), y[k]);
                assert_eq!(l.derivative(), d[k]);
            }
        }
    }

    #[test]
    fn one_sided_second_derivatives() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.5, 1.25, 2.0]).unwrap();
        let y: Vec<f64> = mesh.nodes().iter().map(|t| t * t).collect();
        let d: Vec<f64> = mesh.nodes().iter().map(|t| 2.0 * t).collect();
        let p = PiecewiseCubic::new(mesh.clone(), y, d).unwrap();
        for k in 1..3 {
            let t = mesh.node(k);
            for side in [Side::Left, Side::Right] {
                assert!((p.evaluate_second_derivative(t, side).unwrap() - 2.0).abs() < 1e-13);
                assert!((p.nodal_second_derivative(k, side).unwrap() - 2.0).abs() < 1e-13);
            }
            assert!(p.c2_jump(k).unwrap().abs() < 1e-12);
        }
        assert!(matches!(
            p.evaluate_second_derivative(0.0, Side::Left),
            Err(Error::SideUnavailable { .. })
        ));
        assert!(matches!(
            p.evaluate_second_derivative(2.0, Side::Right),
            Err(Error::SideUnavailable { .. })
        ));
        assert!(p.evaluate_second_derivative(2.0, Side::Left).is_ok());
        assert!(matches!(p.c2_jump(0), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(p.c2_jump(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn closed_form_matches_piece_second_derivative() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.3, 0.7, 1.6, 2.0]).unwrap();
        let y = vec![0.1, -2.3, 4.7, 1.1e-3, 9.0];
        let d = vec![1.0 / 3.0, -7.1, 0.2, 5.5, -1.0];
        let p = PiecewiseCubic::new(mesh.clone(), y, d).unwrap();
        for k in 1..4 {
            for side in [Side::Left, Side::Right] {
                let a = p.nodal_second_derivative(k, side).unwrap();
                let b = p.evaluate_second_derivative(mesh.node(k), side).unwrap();
                assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0), "{k} {side:?}");
            }
        }
    }

    #[test]
    fn out_of_domain_is_an_error() {
        let p = cubic_data(&Mesh::uniform(0.0, 1.0, 3).unwrap());
        assert!(matches!(p.evaluate(1.5), Err(Error::OutOfDomain { .. })));
        assert!(matches!(p.evaluate(-1e-9), Err(Error::OutOfDomain { .. })));
        assert!(p.evaluate(f64::NAN).is_err());
    }

    #[test]
    fn ppform_examples() {
        let mesh = Mesh::uniform(0.0, 1.0, 1).unwrap();
        let line = PiecewiseCubic::new(mesh.clone(), vec![0.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(line.to_ppform().coefs, vec![[0.0, 1.0, 0.0, 0.0]]);
        let cube = PiecewiseCubic::new(mesh, vec![0.0, 1.0], vec![0.0, 3.0]).unwrap();
        assert_eq!(cube.to_ppform().coefs, vec![[0.0, 0.0, 0.0, 1.0]]);
    }

    #[test]
    fn ppform_json_shape() {
        let p = cubic_data(&Mesh::uniform(0.0, 1.0, 4).unwrap());
        let json = p.to_ppform().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["breaks"].as_array().unwrap().len(), 5);
        assert_eq!(v["coefs"].as_array().unwrap().len(), 4);
        assert_eq!(v["coefs"][0].as_array().unwrap().len(), 4);
        assert_eq!(PpForm::from_json(&json).unwrap(), p.to_ppform());
        assert!(PpForm::from_json("{\"breaks\":[0,1,2],\"coefs\":[[0,0,0,0]]}").is_err());
    }

    #[test]
    fn barycentric_form_agrees_with_hermite_basis() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.3, 0.7, 1.6, 2.0]).unwrap();
        let y = vec![0.1, -2.3, 4.7, 1.1e-3, 9.0];
        let d = vec![1.0 / 3.0, -7.1, 0.2, 5.5, -1.0];
        let p = PiecewiseCubic::new(mesh, y, d).unwrap();
        for i in 0..=200 {
            let t = 2.0 * i as f64 / 200.0;
            let a = p.evaluate(t).unwrap();
            let b = p.evaluate_barycentric(t).unwrap();
            assert!(
                (a - b).abs() < 1e-11 * a.abs().max(1.0),
                "t={t}: {a} vs {b}"
            );
        }
    }

    #[test]
    fn decreasing_mesh_evaluates() {
        let mesh = Mesh::chebyshev(-1.0, 1.0, 6).unwrap();
        let p = cubic_data(&mesh);
        for i in 0..=50 {
            let t = -1.0 + 2.0 * i as f64 / 50.0;
            assert!((p.evaluate(t).unwrap() - t * t * t).abs() < 1e-14);
        }
        let pp = p.to_ppform();
        for i in 0..=50 {
            let t = -1.0 + 2.0 * i as f64 / 50.0;
            assert!((pp.evaluate(t).unwrap() - t * t * t).abs() < 1e-14);
        }
    }
}
