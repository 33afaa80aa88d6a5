//! Strictly monotone partitions of an interval.
//!
//! Widths are indexed the way the slope formulas read them: `width(k)` is
//! `h_k = τ_k − τ_{k−1}` for `k = 1..=n`. Decreasing node sequences are
//! accepted; every formula downstream only needs the widths to share a sign.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Mesh {
    nodes: Vec<f64>,
    widths: Vec<f64>,
    ref_step: f64,
}

impl Mesh {
    /// Builds a mesh from explicit abscissae.
    pub fn from_nodes(nodes: Vec<f64>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::TooFewNodes {
                needed: 2,
                got: nodes.len(),
            });
        }
        if nodes.iter().any(|x| !x.is_finite()) {
            return Err(Error::NonFinite { what: "nodes" });
        }
        let widths: Vec<f64> = nodes.windows(2).map(|w| w[1] - w[0]).collect();
        let sign = widths[0].signum();
        for (i, &h) in widths.iter().enumerate() {
            if h == 0.0 || h.signum() != sign {
                return Err(Error::NonMonotone {
                    index: i + 1,
                    width: h,
                });
            }
        }
        let n = widths.len();
        let ref_step = (nodes[n] - nodes[0]) / n as f64;
        Ok(Mesh {
            nodes,
            widths,
            ref_step,
        })
    }

    /// `n` equal subintervals of `[a, b]`, nodes `a + k(b − a)/n`.
    pub fn uniform(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a == b {
            return Err(Error::DegenerateInterval { a, b });
        }
        if n == 0 {
            return Err(Error::TooFewNodes { needed: 2, got: 1 });
        }
        let span = b - a;
        let nodes = (0..=n).map(|k| a + span * k as f64 / n as f64).collect();
        Mesh::from_nodes(nodes)
    }

    /// Chebyshev extreme points `mid + half·cos(πj/n)`, `j = 0..=n`.
    ///
    /// The nodes run from `b` down to `a`, so all widths are negative.
    pub fn chebyshev(a: f64, b: f64, n: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || a == b {
            return Err(Error::DegenerateInterval { a, b });
        }
        if n == 0 {
            return Err(Error::TooFewNodes { needed: 2, got: 1 });
        }
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let mut nodes: Vec<f64> = (0..=n)
            .map(|j| mid + half * (std::f64::consts::PI * j as f64 / n as f64).cos())
            .collect();
        // cos(π/2) is not exactly zero; pin the endpoints.
        nodes[0] = b;
        nodes[n] = a;
        Mesh::from_nodes(nodes)
    }

    /// Nodes at the cumulative sums of `widths`, mapped affinely onto `[a, b]`.
    pub fn from_widths(widths: &[f64], a: f64, b: f64) -> Result<Self> {
        if widths.is_empty() {
            return Err(Error::TooFewNodes { needed: 2, got: 1 });
        }
        if a == b {
            return Err(Error::DegenerateInterval { a, b });
        }
        let mut acc = 0.0;
        let mut cum = Vec::with_capacity(widths.len() + 1);
        cum.push(0.0);
        for &w in widths {
            acc += w;
            cum.push(acc);
        }
        let total = acc;
        if total == 0.0 || !total.is_finite() {
            return Err(Error::NonMonotone {
                index: 1,
                width: widths[0],
            });
        }
        let last = cum.len() - 1;
        let nodes = cum
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                if i == last {
                    b
                } else {
                    a + (b - a) * (c / total)
                }
            })
            .collect();
        Mesh::from_nodes(nodes)
    }

    /// Number of subintervals.
    pub fn n(&self) -> usize {
        self.widths.len()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn node(&self, k: usize) -> f64 {
        self.nodes[k]
    }

    /// All widths, `widths()[i] = τ_{i+1} − τ_i`.
    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    /// `h_k = τ_k − τ_{k−1}` for `1 ≤ k ≤ n`.
    pub fn width(&self, k: usize) -> f64 {
        self.widths[k - 1]
    }

    /// Mean width `(τ_n − τ_0)/n`; negative for decreasing meshes.
    pub fn ref_step(&self) -> f64 {
        self.ref_step
    }

    pub fn first(&self) -> f64 {
        self.nodes[0]
    }

    pub fn last(&self) -> f64 {
        self.nodes[self.n()]
    }

    pub fn is_increasing(&self) -> bool {
        self.ref_step > 0.0
    }

    /// `(min, max)` of the interval covered, regardless of orientation.
    pub fn bounds(&self) -> (f64, f64) {
        let (a, b) = (self.first(), self.last());
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Widths on either side of interior node `k`, divided by the reference step.
    pub fn local_ratios(&self, k: usize) -> Result<(f64, f64)> {
        self.local_ratios_with(k, self.ref_step)
    }

    /// As [`Mesh::local_ratios`] with an explicit reference step.
    pub fn local_ratios_with(&self, k: usize, ref_step: f64) -> Result<(f64, f64)> {
        self.check_interior(k)?;
        Ok((self.width(k) / ref_step, self.width(k + 1) / ref_step))
    }

    /// Largest relative deviation of any width from the reference step.
    pub fn uniformity_spread(&self) -> f64 {
        self.widths
            .iter()
            .map(|h| ((h - self.ref_step) / self.ref_step).abs())
            .fold(0.0, f64::max)
    }

    pub(crate) fn check_interior(&self, k: usize) -> Result<()> {
        let n = self.n();
        if n < 2 || k == 0 || k >= n {
            return Err(Error::IndexOutOfRange {
                index: k,
                lo: 1,
                hi: n.saturating_sub(1),
            });
        }
        Ok(())
    }

    pub(crate) fn require_subintervals(&self, needed: usize) -> Result<()> {
        if self.n() < needed {
            return Err(Error::TooFewNodes {
                needed: needed + 1,
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Index of the piece containing `t`. Interior nodes belong to the piece
    /// on their right; `τ_n` belongs to the last piece.
    pub(crate) fn locate(&self, t: f64) -> Result<usize> {
        let (lo, hi) = self.bounds();
        if !(t >= lo && t <= hi) {
            return Err(Error::OutOfDomain { t, lo, hi });
        }
        let n = self.n();
        let idx = if self.is_increasing() {
            self.nodes.partition_point(|&x| x <= t)
        } else {
            self.nodes.partition_point(|&x| x >= t)
        };
        // idx counts nodes at or before t; the piece starts at idx - 1.
        Ok(idx.saturating_sub(1).min(n - 1))
    }

    /// Index of the node exactly equal to `t`, if any.
    pub(crate) fn node_index(&self, t: f64) -> Option<usize> {
        let k = self.locate(t).ok()?;
        if self.nodes[k] == t {
            Some(k)
        } else if self.nodes[k + 1] == t {
            Some(k + 1)
        } else {
            None
        }
    }
}
