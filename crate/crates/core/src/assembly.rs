//! Row builders for the slope systems `A·v = B·ρ`.
//!
//! Interior rows come in two flavours: the spline `C²` continuity rows and
//! the fourth-order compact rows. Either can be closed with any
//! [`EdgeScheme`]. `B` is never formed; every builder returns its right-hand
//! side already applied to the data.

use std::fmt;

use crate::error::{Error, Result};
use crate::mesh::Mesh;
use crate::tridiag::TridiagonalSystem;

/// `2 + √3`, the left-corner ratio of the constant-pivot edge closure.
pub const COMPACT_C_RATIO: f64 = 3.732_050_807_568_877;

/// Meshes whose widths deviate from the mean by more than this (relative)
/// are rejected by [`EdgeScheme::CompactC`].
pub const UNIFORM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InteriorRule {
    Spline,
    Compact,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EdgeScheme {
    /// Zero second derivative at both ends.
    Natural,
    /// Prescribed end slopes.
    Clamped { left: f64, right: f64 },
    /// Third-derivative continuity at `τ_1` and `τ_{n−1}`.
    NotAKnot,
    /// Four-node compact closure, fourth order on any mesh.
    Compact4,
    /// Five-node closure with constant LU pivots on uniform meshes.
    CompactC,
}

impl EdgeScheme {
    pub fn name(&self) -> &'static str {
        match self {
            EdgeScheme::Natural => "natural",
            EdgeScheme::Clamped { .. } => "clamped",
            EdgeScheme::NotAKnot => "not-a-knot",
            EdgeScheme::Compact4 => "compact4",
            EdgeScheme::CompactC => "compactc",
        }
    }

    pub fn is_compact(&self) -> bool {
        matches!(self, EdgeScheme::Compact4 | EdgeScheme::CompactC)
    }

    /// Minimum number of subintervals the closure needs.
    pub fn min_subintervals(&self) -> usize {
        match self {
            EdgeScheme::Natural | EdgeScheme::Clamped { .. } => 2,
            EdgeScheme::NotAKnot => 3,
            EdgeScheme::Compact4 | EdgeScheme::CompactC => 4,
        }
    }
}

impl fmt::Display for EdgeScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    Left,
    Right,
}

/// One interior equation `sub·v_{k−1} + diag·v_k + sup·v_{k+1} = rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub sub: f64,
    pub diag: f64,
    pub sup: f64,
    pub rhs: f64,
}

impl Row {
    /// The row divided through by its centre coefficient.
    pub fn normalized(&self) -> Row {
        self.scaled(1.0 / self.diag)
    }

    pub fn scaled(&self, by: f64) -> Row {
        Row {
            sub: self.sub * by,
            diag: self.diag * by,
            sup: self.sup * by,
            rhs: self.rhs * by,
        }
    }

    pub fn coeffs(&self) -> [f64; 3] {
        [self.sub, self.diag, self.sup]
    }

    /// `lhs − rhs` for a candidate slope triple.
    pub fn residual(&self, slopes: [f64; 3]) -> f64 {
        self.sub * slopes[0] + self.diag * slopes[1] + self.sup * slopes[2] - self.rhs
    }
}

/// One boundary equation. At the left end it reads
/// `diag·v_0 + off·v_1 = rhs`; at the right end `off·v_{n−1} + diag·v_n = rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeRow {
    pub diag: f64,
    pub off: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssembledSystem {
    pub matrix: TridiagonalSystem,
    pub rhs: Vec<f64>,
    pub interior: InteriorRule,
    pub edges: EdgeScheme,
}

impl AssembledSystem {
    pub fn solve(&self) -> Result<Vec<f64>> {
        self.matrix.solve(&self.rhs)
    }
}

fn check_values(mesh: &Mesh, values: &[f64]) -> Result<()> {
    if values.len() != mesh.len() {
        return Err(Error::LengthMismatch {
            expected: mesh.len(),
            got: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite { what: "values" });
    }
    Ok(())
}

/// `C²` continuity at node `k`, multiplied through by
/// `h_k h_{k+1}/(h_k + h_{k+1})` so the centre coefficient is 4.
pub fn spline_interior_row(mesh: &Mesh, k: usize, values: &[f64]) -> Result<Row> {
    mesh.check_interior(k)?;
    check_values(mesh, values)?;
    let (hl, hr) = (mesh.width(k), mesh.width(k + 1));
    let sum = hl + hr;
    let y = values;
    Ok(Row {
        sub: 2.0 * hr / sum,
        diag: 4.0,
        sup: 2.0 * hl / sum,
        rhs: 6.0 * hl / (hr * sum) * (y[k + 1] - y[k]) + 6.0 * hr / (hl * sum) * (y[k] - y[k - 1]),
    })
}

/// Fourth-order compact row at node `k`, in the `(1/r², (r+s)²/(r²s²), 1/s²)`
/// normalisation, with `r, s` the flanking widths over the reference step.
pub fn compact_interior_row(mesh: &Mesh, k: usize, values: &[f64]) -> Result<Row> {
    compact_interior_row_with(mesh, k, values, mesh.ref_step())
}

/// As [`compact_interior_row`] with an explicit reference step.
pub fn compact_interior_row_with(
    mesh: &Mesh,
    k: usize,
    values: &[f64],
    ref_step: f64,
) -> Result<Row> {
    check_values(mesh, values)?;
    if ref_step == 0.0 || !ref_step.is_finite() {
        return Err(Error::ZeroWidth);
    }
    let (r, s) = mesh.local_ratios_with(k, ref_step)?;
    let h = ref_step;
    let rs = r + s;
    let (fm, f0, fp) = (values[k - 1], values[k], values[k + 1]);
    let rhs = -(4.0 * r + 2.0 * s) / (r * r * r * h * rs) * fm
        - 2.0 * (r - s) * rs * rs / (r * r * r * h * s * s * s) * f0
        + (4.0 * s + 2.0 * r) / (h * rs * s * s * s) * fp;
    Ok(Row {
        sub: 1.0 / (r * r),
        diag: rs * rs / (r * r * s * s),
        sup: 1.0 / (s * s),
        rhs,
    })
}

/// `a₀` and `c₀…c₃` of the four-node compact closure
/// `a₀·f′(τ₀) + f′(τ₁) = Σ c_j f(τ_j)` for widths `h₁, h₂, h₃`.
pub fn compact4_coefficients(h1: f64, h2: f64, h3: f64) -> (f64, [f64; 4]) {
    let s12 = h1 + h2;
    let s23 = h2 + h3;
    let s = h1 + h2 + h3;
    let a0 = h2 * s23 / (s12 * s);
    let c0 =
        -h2 * s23 * (4.0 * h1 * h1 + 6.0 * h1 * h2 + 3.0 * h1 * h3 + 2.0 * h2 * h2 + 2.0 * h2 * h3)
            / (h1 * s12 * s12 * s * s);
    let c1 = (2.0 * h2 * (h2 - h1) + h3 * (2.0 * h2 - h1)) / (h1 * h2 * s23);
    let c2 = h1 * h1 * s23 / (h2 * s12 * s12 * h3);
    let c3 = -h1 * h1 * h2 / (h3 * s23 * s * s);
    (a0, [c0, c1, c2, c3])
}

/// Widths `h'_1, h'_2, …` seen from `end`, with the labels reversed
/// (`τ_k ↔ τ_{n−k}`) at the right end.
fn edge_widths<const N: usize>(mesh: &Mesh, end: End) -> [f64; N] {
    let n = mesh.n();
    std::array::from_fn(|i| match end {
        End::Left => mesh.width(i + 1),
        End::Right => -mesh.width(n - i),
    })
}

fn edge_values<const N: usize>(values: &[f64], end: End) -> [f64; N] {
    let n = values.len() - 1;
    std::array::from_fn(|i| match end {
        End::Left => values[i],
        End::Right => values[n - i],
    })
}

/// Four-node compact edge row; the right end mirrors the left formula.
pub fn edge_rows_compact4(mesh: &Mesh, values: &[f64], end: End) -> Result<EdgeRow> {
    mesh.require_subintervals(4)?;
    check_values(mesh, values)?;
    let [h1, h2, h3] = edge_widths::<3>(mesh, end);
    let (a0, c) = compact4_coefficients(h1, h2, h3);
    let f = edge_values::<4>(values, end);
    let rhs = c.iter().zip(f).map(|(c, f)| c * f).sum();
    Ok(EdgeRow {
        diag: a0,
        off: 1.0,
        rhs,
    })
}

/// Coefficients of `f(0), f(h), …, f(4h)` in `c·f′(0) + f′(h)`, times `h`.
///
/// The relation is exact through degree four for every `c`: it is `c` times
/// the one-sided five-point formula for `f′(0)` plus the five-point formula
/// for `f′(h)`.
pub fn compact_c_weights(c: f64) -> [f64; 5] {
    [
        -25.0 * c / 12.0 - 0.25,
        4.0 * c - 5.0 / 6.0,
        -3.0 * c + 1.5,
        4.0 * c / 3.0 - 0.5,
        -c / 4.0 + 1.0 / 12.0,
    ]
}

/// Diagonal entry of the [`EdgeScheme::CompactC`] row at `end`.
///
/// The left corner is `c = 2 + √3`; the right corner is `c + 1/c = 4`, which
/// makes every pivot of the uniform-mesh LU factorisation equal to `c`.
pub fn compact_c_corner(end: End) -> f64 {
    match end {
        End::Left => COMPACT_C_RATIO,
        End::Right => 4.0,
    }
}

/// Five-node edge row for uniform meshes.
pub fn edge_rows_compact_c(mesh: &Mesh, values: &[f64], end: End) -> Result<EdgeRow> {
    mesh.require_subintervals(4)?;
    check_values(mesh, values)?;
    let spread = mesh.uniformity_spread();
    if spread > UNIFORM_TOLERANCE {
        return Err(Error::NonUniformUnsupported { spread });
    }
    let h = match end {
        End::Left => mesh.ref_step(),
        End::Right => -mesh.ref_step(),
    };
    let c = compact_c_corner(end);
    let f = edge_values::<5>(values, end);
    let rhs = compact_c_weights(c)
        .iter()
        .zip(f)
        .map(|(w, f)| w * f)
        .sum::<f64>()
        / h;
    Ok(EdgeRow {
        diag: c,
        off: 1.0,
        rhs,
    })
}

/// Natural, clamped and not-a-knot closures.
pub fn edge_rows_classical(
    mesh: &Mesh,
    values: &[f64],
    scheme: EdgeScheme,
    end: End,
) -> Result<EdgeRow> {
    check_values(mesh, values)?;
    mesh.require_subintervals(scheme.min_subintervals())?;
    let n = mesh.n();
    let y = values;
    match scheme {
        EdgeScheme::Natural => {
            // p″ = 0 at the end: 2v_end + v_next = 3·secant
            let (h, dy) = match end {
                End::Left => (mesh.width(1), y[1] - y[0]),
                End::Right => (mesh.width(n), y[n] - y[n - 1]),
            };
            Ok(EdgeRow {
                diag: 2.0,
                off: 1.0,
                rhs: 3.0 * dy / h,
            })
        }
        EdgeScheme::Clamped { left, right } => Ok(EdgeRow {
            diag: 1.0,
            off: 0.0,
            rhs: match end {
                End::Left => left,
                End::Right => right,
            },
        }),
        EdgeScheme::NotAKnot => {
            // Third-derivative continuity at the first interior node, with the
            // slope two nodes in eliminated through the neighbouring C² row.
            // Divided through by (h1 + h2)² so both entries are positive for
            // either width sign.
            let [h1, h2] = edge_widths::<2>(mesh, end);
            let [f0, f1, f2] = edge_values::<3>(values, end);
            let d0 = (f1 - f0) / h1;
            let d1 = (f2 - f1) / h2;
            let c = h1 + h2;
            Ok(EdgeRow {
                diag: h2 / c,
                off: 1.0,
                rhs: ((h1 + 2.0 * c) * h2 * d0 + h1 * h1 * d1) / (c * c),
            })
        }
        EdgeScheme::Compact4 => edge_rows_compact4(mesh, values, end),
        EdgeScheme::CompactC => edge_rows_compact_c(mesh, values, end),
    }
}

/// Full `(n+1)×(n+1)` slope system. Compact interior rows are rescaled to
/// centre coefficient 4, the same normalisation the spline rows carry.
pub fn assemble(
    mesh: &Mesh,
    values: &[f64],
    interior: InteriorRule,
    edges: EdgeScheme,
) -> Result<AssembledSystem> {
    assemble_with(mesh, values, interior, edges, mesh.ref_step())
}

/// As [`assemble`] with an explicit reference step for the compact rows.
pub fn assemble_with(
    mesh: &Mesh,
    values: &[f64],
    interior: InteriorRule,
    edges: EdgeScheme,
    ref_step: f64,
) -> Result<AssembledSystem> {
    check_values(mesh, values)?;
    mesh.require_subintervals(edges.min_subintervals())?;
    let n = mesh.n();
    let m = n + 1;
    let mut sub = vec![0.0; m - 1];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m - 1];
    let mut rhs = vec![0.0; m];

    let left = edge_rows_classical(mesh, values, edges, End::Left)?;
    diag[0] = left.diag;
    sup[0] = left.off;
    rhs[0] = left.rhs;

    for k in 1..n {
        let row = match interior {
            InteriorRule::Spline => spline_interior_row(mesh, k, values)?,
            InteriorRule::Compact => {
                let raw = compact_interior_row_with(mesh, k, values, ref_step)?;
                raw.scaled(4.0 / raw.diag)
            }
        };
        sub[k - 1] = row.sub;
        diag[k] = row.diag;
        sup[k] = row.sup;
        rhs[k] = row.rhs;
    }

    let right = edge_rows_classical(mesh, values, edges, End::Right)?;
    sub[n - 1] = right.off;
    diag[n] = right.diag;
    rhs[n] = right.rhs;

    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite {
            what: "right-hand side",
        });
    }
    Ok(AssembledSystem {
        matrix: TridiagonalSystem::new(sub, diag, sup)?,
        rhs,
        interior,
        edges,
    })
}

/// The compact-interior, four-node-edge matrix with the interior row
/// denominators cleared: interior row `k` is
/// `(h_{k+1}², (h_k + h_{k+1})², h_k²)`. The assembled matrix is this one
/// with row `k` multiplied by `4/(h_k + h_{k+1})²`.
pub fn scaled_compact_matrix(mesh: &Mesh) -> Result<TridiagonalSystem> {
    mesh.require_subintervals(4)?;
    let n = mesh.n();
    let m = n + 1;
    let mut sub = vec![0.0; m - 1];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m - 1];
    let [h1, h2, h3] = edge_widths::<3>(mesh, End::Left);
    diag[0] = compact4_coefficients(h1, h2, h3).0;
    sup[0] = 1.0;
    for k in 1..n {
        let (hl, hr) = (mesh.width(k), mesh.width(k + 1));
        sub[k - 1] = hr * hr;
        diag[k] = (hl + hr) * (hl + hr);
        sup[k] = hl * hl;
    }
    let [g1, g2, g3] = edge_widths::<3>(mesh, End::Right);
    diag[n] = compact4_coefficients(g1, g2, g3).0;
    sub[n - 1] = 1.0;
    TridiagonalSystem::new(sub, diag, sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compact4_weights_reproduce_constants_and_lines() {
        for (h1, h2, h3) in [(0.5, 1.0, 0.3), (2.0, 0.1, 0.7), (-1.2, -0.3, -1.0)] {
            let (a0, c) = compact4_coefficients(h1, h2, h3);
            let x = [0.0, h1, h1 + h2, h1 + h2 + h3];
            let sum: f64 = c.iter().sum();
            assert!(sum.abs() < 1e-12 * c.iter().map(|v| v.abs()).sum::<f64>());
            let lin: f64 = c.iter().zip(x).map(|(c, x)| c * x).sum();
            assert!((lin - (a0 + 1.0)).abs() < 1e-12);
        }
    }

    fn sample(mesh: &Mesh, f: impl Fn(f64) -> f64) -> Vec<f64> {
        mesh.nodes().iter().map(|&t| f(t)).collect()
    }

    #[test]
    fn spline_row_uniform_is_one_four_one() {
        let mesh = Mesh::uniform(0.0, 1.0, 6).unwrap();
        let y = sample(&mesh, |t| t.sin());
        let h = mesh.ref_step();
        for k in 1..6 {
            let row = spline_interior_row(&mesh, k, &y).unwrap();
            let [a, b, c] = row.coeffs();
            assert!((a - 1.0).abs() < 1e-14 && b == 4.0 && (c - 1.0).abs() < 1e-14);
            let expect = 3.0 / h * (y[k + 1] - y[k - 1]);
            assert!((row.rhs - expect).abs() < 1e-13 * expect.abs().max(1.0));
        }
    }

    #[test]
    fn spline_row_on_linear_data() {
        let mesh = Mesh::from_nodes(vec![0.0, 1.0, 3.0, 3.5]).unwrap();
        let y = sample(&mesh, |t| t);
        for k in 1..3 {
            let row = spline_interior_row(&mesh, k, &y).unwrap();
            let lhs: f64 = row.coeffs().iter().sum();
            assert!((lhs - 6.0).abs() < 1e-14);
            assert!((row.rhs - 6.0).abs() < 1e-14);
        }
    }

    #[test]
    fn spline_row_unequal_widths() {
        // h_k = 1, h_{k+1} = 2
        let mesh = Mesh::from_nodes(vec![0.0, 1.0, 3.0]).unwrap();
        let y = vec![0.7, -1.3, 2.9];
        let row = spline_interior_row(&mesh, 1, &y).unwrap();
        assert!((row.sub - 4.0 / 3.0).abs() < 1e-15);
        assert_eq!(row.diag, 4.0);
        assert!((row.sup - 2.0 / 3.0).abs() < 1e-15);
        let expect = 1.0 * (y[2] - y[1]) + 4.0 * (y[1] - y[0]);
        assert!((row.rhs - expect).abs() < 1e-14);
    }

    #[test]
    fn compact_row_examples() {
        let mesh = Mesh::uniform(-2.0, 2.0, 8).unwrap();
        let y = sample(&mesh, |t| t.exp());
        let h = mesh.ref_step();
        for k in 1..8 {
            let row = compact_interior_row(&mesh, k, &y).unwrap();
            let [a, b, c] = row.coeffs();
            assert!((a - 1.0).abs() < 1e-14 && (b - 4.0).abs() < 1e-14 && (c - 1.0).abs() < 1e-14);
            let expect = 3.0 / h * (y[k + 1] - y[k - 1]);
            assert!((row.rhs - expect).abs() < 1e-12 * expect.abs());
        }

        // r = 1, s = 2 with h = 1, linear data
        let mesh = Mesh::from_nodes(vec![-1.0, 0.0, 2.0]).unwrap();
        let y = sample(&mesh, |t| t);
        let row = compact_interior_row_with(&mesh, 1, &y, 1.0).unwrap();
        let lhs: f64 = row.coeffs().iter().sum();
        assert!((lhs - 3.5).abs() < 1e-15);
        assert!((row.rhs - 3.5).abs() < 1e-15);
        assert!((row.diag - 2.25).abs() < 1e-15 && (row.sup - 0.25).abs() < 1e-15);
    }

    #[test]
    fn interior_rows_annihilate_constants() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.1, 0.5, 0.6, 1.7, 2.0]).unwrap();
        let y = vec![3.25; 6];
        for k in 1..5 {
            assert_eq!(spline_interior_row(&mesh, k, &y).unwrap().rhs.abs(), 0.0);
            assert!(compact_interior_row(&mesh, k, &y).unwrap().rhs.abs() < 1e-13);
        }
    }

    #[test]
    fn compact4_uniform_coefficients() {
        let (a0, c) = compact4_coefficients(1.0, 1.0, 1.0);
        assert!((a0 - 1.0 / 3.0).abs() < 1e-15);
        let expect = [-17.0 / 18.0, 0.5, 0.5, -1.0 / 18.0];
        for (x, e) in c.iter().zip(expect) {
            assert!((x - e).abs() < 1e-15);
        }
        assert!(c.iter().sum::<f64>().abs() < 1e-15);
        // f(t) = t on unit steps: 1/3 + 1 = c1 + 2c2 + 3c3
        let rhs = c[1] + 2.0 * c[2] + 3.0 * c[3];
        assert!((rhs - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn compact4_right_edge_mirrors_left() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.4, 0.5, 1.1, 1.3, 2.2]).unwrap();
        let y = sample(&mesh, |t| t.powi(4) - t);
        let right = edge_rows_compact4(&mesh, &y, End::Right).unwrap();
        let flipped: Vec<f64> = mesh.nodes().iter().rev().copied().collect();
        let rev = Mesh::from_nodes(flipped).unwrap();
        let yr: Vec<f64> = y.iter().rev().copied().collect();
        let left = edge_rows_compact4(&rev, &yr, End::Left).unwrap();
        assert!((right.diag - left.diag).abs() < 1e-15);
        assert!((right.rhs - left.rhs).abs() < 1e-12 * left.rhs.abs());
    }

    #[test]
    fn compact_c_printed_sign_fails_linear_data() {
        let c = COMPACT_C_RATIO;
        let w = compact_c_weights(c);
        let on_linear: f64 = w.iter().enumerate().map(|(j, w)| w * j as f64).sum();
        // corrected: c f'(0) + f'(h) = +(1/h)·Σ; the printed form carries a leading minus
        assert!((on_linear - (c + 1.0)).abs() < 1e-13);
        assert!((-on_linear - (c + 1.0)).abs() > 1.0);
        assert!(w.iter().sum::<f64>().abs() < 1e-13);
        assert!((c - (2.0 + 3f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn compact_c_rejects_nonuniform() {
        let mesh = Mesh::from_nodes(vec![0.0, 1.0, 2.0, 3.0, 4.5]).unwrap();
        let y = vec![0.0; 5];
        assert!(matches!(
            edge_rows_compact_c(&mesh, &y, End::Left),
            Err(Error::NonUniformUnsupported { .. })
        ));
        let short = Mesh::uniform(0.0, 1.0, 3).unwrap();
        assert!(matches!(
            edge_rows_compact_c(&short, &[0.0; 4], End::Left),
            Err(Error::TooFewNodes { .. })
        ));
    }

    #[test]
    fn natural_row_matches_zero_second_derivative() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.5, 1.5]).unwrap();
        let y = vec![1.0, 2.0, 0.5];
        let l = edge_rows_classical(&mesh, &y, EdgeScheme::Natural, End::Left).unwrap();
        assert_eq!((l.diag, l.off), (2.0, 1.0));
        assert!((l.rhs - 6.0).abs() < 1e-15);
        let r = edge_rows_classical(&mesh, &y, EdgeScheme::Natural, End::Right).unwrap();
        assert!((r.rhs - 3.0 * (-1.5)).abs() < 1e-15);
    }

    #[test]
    fn scheme_prerequisites() {
        let m3 = Mesh::uniform(0.0, 1.0, 3).unwrap();
        let y = vec![0.0; 4];
        assert!(matches!(
            assemble(&m3, &y, InteriorRule::Compact, EdgeScheme::Compact4),
            Err(Error::TooFewNodes { .. })
        ));
        assert!(assemble(&m3, &y, InteriorRule::Spline, EdgeScheme::NotAKnot).is_ok());
        let m2 = Mesh::uniform(0.0, 1.0, 2).unwrap();
        assert!(assemble(&m2, &[0.0; 3], InteriorRule::Spline, EdgeScheme::NotAKnot).is_err());
        assert!(assemble(&m2, &[0.0; 3], InteriorRule::Spline, EdgeScheme::Natural).is_ok());
        assert!(matches!(
            assemble(&m3, &[0.0; 3], InteriorRule::Spline, EdgeScheme::Natural),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn uniform_compact_matrix_shape() {
        let mesh = Mesh::uniform(0.0, 1.0, 6).unwrap();
        let y = sample(&mesh, |t| t.cos());
        let sys = assemble(&mesh, &y, InteriorRule::Compact, EdgeScheme::Compact4).unwrap();
        let a = &sys.matrix;
        assert!((a.diag()[0] - 1.0 / 3.0).abs() < 1e-14);
        assert!((a.diag()[6] - 1.0 / 3.0).abs() < 1e-14);
        for k in 1..6 {
            assert!((a.diag()[k] - 4.0).abs() < 1e-14);
        }
        assert!(a
            .sub()
            .iter()
            .chain(a.sup())
            .all(|&v| (v - 1.0).abs() < 1e-14));
    }

    #[test]
    fn assembled_is_row_scaled_t() {
        let mesh = Mesh::from_nodes(vec![0.0, 0.3, 0.35, 1.0, 1.8, 2.0, 2.9]).unwrap();
        let y = sample(&mesh, f64::sin);
        let a = assemble(&mesh, &y, InteriorRule::Compact, EdgeScheme::Compact4)
            .unwrap()
            .matrix;
        let t = scaled_compact_matrix(&mesh).unwrap();
        let n = mesh.n();
        let mut z = vec![1.0; n + 1];
        for (k, zk) in z.iter_mut().enumerate().take(n).skip(1) {
            *zk = 4.0 / (mesh.width(k) + mesh.width(k + 1)).powi(2);
        }
        let zt = t.scale_rows(&z).unwrap();
        for i in 0..=n {
            for j in 0..=n {
                let (x, y) = (a.get(i, j), zt.get(i, j));
                assert!(
                    (x - y).abs() <= 1e-14 * x.abs().max(1.0),
                    "({i},{j}) {x} {y}"
                );
            }
        }
    }
}
