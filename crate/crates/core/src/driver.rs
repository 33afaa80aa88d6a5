//! High-level constructions on top of [`crate::assembly`]: splines, compact
//! cubic interpolants, compact derivative vectors, and the second-derivative
//! formulas.

use crate::assembly::{
    assemble, compact4_coefficients, compact_c_weights, compact_interior_row_with,
    spline_interior_row, EdgeScheme, InteriorRule, COMPACT_C_RATIO,
};
use crate::error::{Error, Result};
use crate::hermite::PiecewiseCubic;
use crate::mesh::Mesh;
use crate::tridiag::TridiagonalSystem;

/// Nodal slopes from one solved slope system.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivativeResult {
    pub slopes: Vec<f64>,
    pub interior: InteriorRule,
    pub edges: EdgeScheme,
    /// 1-norm condition number of the solved matrix.
    pub condition: f64,
}

/// Interpolation methods exposed on the command line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    SplineNatural,
    SplineClamped { left: f64, right: f64 },
    SplineNotAKnot,
    Compact4,
    CompactC,
}

impl Method {
    pub const NAMES: [&'static str; 5] = [
        "spline-natural",
        "spline-clamped",
        "spline-notaknot",
        "compact4",
        "compactc",
    ];

    /// Parses a method name; clamped splines need both end slopes.
    pub fn parse(name: &str, dleft: Option<f64>, dright: Option<f64>) -> Result<Self> {
        Ok(match name {
            "spline-natural" => Method::SplineNatural,
            "spline-clamped" => match (dleft, dright) {
                (Some(left), Some(right)) => Method::SplineClamped { left, right },
                _ => {
                    return Err(Error::InvalidArgument(
                        "spline-clamped needs --dleft and --dright".into(),
                    ))
                }
            },
            "spline-notaknot" => Method::SplineNotAKnot,
            "compact4" => Method::Compact4,
            "compactc" => Method::CompactC,
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown method {other:?}; expected one of {}",
                    Method::NAMES.join(", ")
                )))
            }
        })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Method::SplineNatural => "spline-natural",
            Method::SplineClamped { .. } => "spline-clamped",
            Method::SplineNotAKnot => "spline-notaknot",
            Method::Compact4 => "compact4",
            Method::CompactC => "compactc",
        }
    }

    pub fn interior(&self) -> InteriorRule {
        match self {
            Method::Compact4 | Method::CompactC => InteriorRule::Compact,
            _ => InteriorRule::Spline,
        }
    }

    pub fn edges(&self) -> EdgeScheme {
        match *self {
            Method::SplineNatural => EdgeScheme::Natural,
            Method::SplineClamped { left, right } => EdgeScheme::Clamped { left, right },
            Method::SplineNotAKnot => EdgeScheme::NotAKnot,
            Method::Compact4 => EdgeScheme::Compact4,
            Method::CompactC => EdgeScheme::CompactC,
        }
    }
}

/// A fitted interpolant together with the slope-system diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub cubic: PiecewiseCubic,
    pub derivatives: DerivativeResult,
}

fn solve_slopes(
    mesh: &Mesh,
    values: &[f64],
    interior: InteriorRule,
    edges: EdgeScheme,
) -> Result<DerivativeResult> {
    let system = assemble(mesh, values, interior, edges)?;
    let slopes = system.solve()?;
    let condition = system.matrix.one_norm_condition()?;
    Ok(DerivativeResult {
        slopes,
        interior,
        edges,
        condition,
    })
}

/// Fourth-order compact derivatives at every node.
pub fn compact_first_derivatives(
    mesh: &Mesh,
    values: &[f64],
    edges: EdgeScheme,
) -> Result<DerivativeResult> {
    match edges {
        EdgeScheme::Compact4 | EdgeScheme::CompactC | EdgeScheme::Clamped { .. } => {}
        other => {
            return Err(Error::InvalidScheme {
                scheme: other.name(),
                reason: "compact derivatives take compact4, compactc or clamped edges",
            })
        }
    }
    solve_slopes(mesh, values, InteriorRule::Compact, edges)
}

/// Slopes of the `C²` cubic spline under any closure.
pub fn spline_slopes(mesh: &Mesh, values: &[f64], edges: EdgeScheme) -> Result<DerivativeResult> {
    solve_slopes(mesh, values, InteriorRule::Spline, edges)
}

/// Cubic spline in Hermite form.
///
/// Natural, clamped and not-a-knot are the classical closures; the compact
/// edge rows are accepted too, which gives a spline whose end slopes are
/// fourth-order accurate.
pub fn cubic_spline(mesh: &Mesh, values: &[f64], edges: EdgeScheme) -> Result<PiecewiseCubic> {
    let d = spline_slopes(mesh, values, edges)?;
    PiecewiseCubic::new(mesh.clone(), values.to_vec(), d.slopes)
}

/// `C¹` piecewise cubic whose nodal slopes are the compact derivatives.
pub fn compact_cubic(mesh: &Mesh, values: &[f64], edges: EdgeScheme) -> Result<PiecewiseCubic> {
    if !edges.is_compact() {
        return Err(Error::InvalidScheme {
            scheme: edges.name(),
            reason: "compact cubic interpolants take compact4 or compactc edges",
        });
    }
    let d = compact_first_derivatives(mesh, values, edges)?;
    PiecewiseCubic::new(mesh.clone(), values.to_vec(), d.slopes)
}

/// Interpolant and diagnostics for a named method.
pub fn fit(mesh: &Mesh, values: &[f64], method: Method) -> Result<Fit> {
    let derivatives = solve_slopes(mesh, values, method.interior(), method.edges())?;
    let cubic = PiecewiseCubic::new(mesh.clone(), values.to_vec(), derivatives.slopes.clone())?;
    Ok(Fit { cubic, derivatives })
}

/// `f″(0) ≈ 2(f(h) − 2f(0) + f(−h))/h² − (f′(h) − f′(−h))/(2h)`.
///
/// `values = [f(−h), f(0), f(h)]`, `slopes = [f′(−h), f′(h)]`. Exact through
/// degree five; the error is `−h⁴ f⁽⁶⁾/360 + …`.
pub fn second_derivative_mixed(values: [f64; 3], slopes: [f64; 2], h: f64) -> Result<f64> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroWidth);
    }
    let [fm, f0, fp] = values;
    let [dm, dp] = slopes;
    Ok(2.0 * (fp - 2.0 * f0 + fm) / (h * h) - (dp - dm) / (2.0 * h))
}

/// Second derivatives on a uniform mesh from the fourth-order system
/// `f″_{k−1} + 10 f″_k + f″_{k+1} = 12 (f_{k−1} − 2 f_k + f_{k+1})/h²`.
///
/// `ends` supplies `f″` at both end nodes; the returned vector has length
/// `n + 1` with those values in the first and last slots.
pub fn compact_second_derivatives_uniform(
    values: &[f64],
    h: f64,
    ends: [f64; 2],
) -> Result<Vec<f64>> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroWidth);
    }
    let m = values.len();
    if m < 3 {
        return Err(Error::TooFewNodes { needed: 3, got: m });
    }
    let n = m - 1;
    let scale = 12.0 / (h * h);
    let mut rhs: Vec<f64> = (1..n)
        .map(|k| scale * (values[k - 1] - 2.0 * values[k] + values[k + 1]))
        .collect();
    rhs[0] -= ends[0];
    rhs[n - 2] -= ends[1];
    let interior = if n == 2 {
        vec![rhs[0] / 10.0]
    } else {
        let k = n - 1;
        TridiagonalSystem::new(vec![1.0; k - 1], vec![10.0; k], vec![1.0; k - 1])?.solve(&rhs)?
    };
    let mut out = Vec::with_capacity(m);
    out.push(ends[0]);
    out.extend(interior);
    out.push(ends[1]);
    Ok(out)
}

/// [`compact_second_derivatives_uniform`] with the end values taken from the
/// first and last pieces of a compact cubic fit. The ends are only as good
/// as a cubic piece allows, `O(h²)` in `f″`.
pub fn compact_second_derivatives(mesh: &Mesh, values: &[f64]) -> Result<Vec<f64>> {
    let cubic = compact_cubic(mesh, values, EdgeScheme::Compact4)?;
    let n = mesh.n();
    let d = cubic.slopes();
    let left = butcher_second_derivative([values[0], values[1]], [d[0], d[1]], mesh.width(1), 0.0)?;
    let right = butcher_second_derivative(
        [values[n - 1], values[n]],
        [d[n - 1], d[n]],
        mesh.width(n),
        1.0,
    )?;
    let spread = mesh.uniformity_spread();
    if spread > 1e-12 {
        return Err(Error::NonUniformUnsupported { spread });
    }
    compact_second_derivatives_uniform(values, mesh.ref_step(), [left.value, right.value])
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ButcherSecondDerivative {
    pub value: f64,
    /// `φ` was outside `[0, 1]`; the value extrapolates the piece.
    pub extrapolated: bool,
}

/// `p″(τ + φh)` for the cubic through `(τ, p₀, p′₀)` and `(τ + h, p₁, p′₁)`:
/// `2(3φ−2)/h·p′₀ + 2(3φ−1)/h·p′₁ + 6(1−2φ)/h·(p₁ − p₀)/h`.
pub fn butcher_second_derivative(
    values: [f64; 2],
    slopes: [f64; 2],
    h: f64,
    phi: f64,
) -> Result<ButcherSecondDerivative> {
    if h == 0.0 || !h.is_finite() {
        return Err(Error::ZeroWidth);
    }
    let [p0, p1] = values;
    let [d0, d1] = slopes;
    let value = 2.0 * (3.0 * phi - 2.0) / h * d0
        + 2.0 * (3.0 * phi - 1.0) / h * d1
        + 6.0 * (1.0 - 2.0 * phi) / h * ((p1 - p0) / h);
    Ok(ButcherSecondDerivative {
        value,
        extrapolated: !(0.0..=1.0).contains(&phi),
    })
}

/// Difference formulas whose truncation error [`truncation_probe`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProbeFormula {
    /// Compact row centred at `x0` with widths `r·h` (left) and `s·h` (right).
    InteriorCompact,
    /// Spline continuity row used as a difference formula, same geometry.
    InteriorSpline,
    /// Left four-node compact edge at `x0` with widths `h, r·h, s·h`.
    EdgeCompact4,
    /// Left five-node edge at `x0`, uniform step `h`.
    EdgeCompactC,
    /// The `(1, 10, 1)` second-derivative row, uniform step `h`.
    SecondDerivativeCompact,
    /// The mixed value/slope second-derivative formula minus `f″(x0)`.
    SecondDerivativeMixed,
}

impl ProbeFormula {
    /// Order of the derivative of `f` the leading error term multiplies,
    /// relative to the order of accuracy.
    fn derivative_offset(self) -> usize {
        match self {
            ProbeFormula::SecondDerivativeCompact | ProbeFormula::SecondDerivativeMixed => 2,
            _ => 1,
        }
    }

    /// Leading coefficient `C` in `residual ≈ C·hᵖ·f⁽ᵖ⁺ᵒ⁾(x0)` as derived by
    /// Taylor expansion.
    pub fn theoretical(self, r: f64, s: f64) -> (u32, f64) {
        match self {
            ProbeFormula::InteriorCompact => (4, (s + r).powi(2) / 120.0),
            ProbeFormula::InteriorSpline if r != s => (3, -r * s * (r - s) / 12.0),
            ProbeFormula::InteriorSpline => (4, r * s * (r * r - r * s + s * s) / 30.0),
            ProbeFormula::EdgeCompact4 => (4, r * (r + s) / 120.0),
            ProbeFormula::EdgeCompactC => (4, (4.0 * COMPACT_C_RATIO - 1.0) / 20.0),
            ProbeFormula::SecondDerivativeCompact => (4, 1.0 / 20.0),
            ProbeFormula::SecondDerivativeMixed => (4, -1.0 / 360.0),
        }
    }
}

/// Result of a step-size sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncationFit {
    /// Least-squares slope of `log|residual|` against `log h`.
    pub order: f64,
    /// Leading coefficient divided by the matching derivative of `f`.
    pub coefficient: f64,
    /// `(h, residual)` pairs above the rounding floor.
    pub points: Vec<(f64, f64)>,
}

/// Measures the truncation error of `formula` on `f`, where `f(x, j)` is the
/// `j`-th derivative at `x`, over the step sizes in `steps`.
///
/// Residuals below `100·eps` times the size of the terms being cancelled are
/// dropped. The order comes from a least-squares fit; the coefficient from
/// linear extrapolation to `h = 0` of `residual/hᵖ` at the two smallest
/// steps, with `p` the rounded order.
pub fn truncation_probe(
    formula: ProbeFormula,
    f: &dyn Fn(f64, usize) -> f64,
    x0: f64,
    r: f64,
    s: f64,
    steps: &[f64],
) -> Result<TruncationFit> {
    const MIN_POINTS: usize = 4;
    if steps.len() < MIN_POINTS {
        return Err(Error::InsufficientSweep {
            needed: MIN_POINTS,
            got: steps.len(),
        });
    }
    let mut points = Vec::new();
    for &h in steps {
        let (res, scale) = probe_residual(formula, f, x0, r, s, h)?;
        if res.abs() > 100.0 * f64::EPSILON * scale {
            points.push((h, res));
        }
    }
    if points.len() < MIN_POINTS {
        return Err(Error::InsufficientSweep {
            needed: MIN_POINTS,
            got: points.len(),
        });
    }

    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(h, e)| (h.abs().ln(), e.abs().ln()))
        .collect();
    let order = least_squares_slope(&logs);

    let p = order.round() as i32;
    let mut by_step = points.clone();
    by_step.sort_by(|a, b| a.0.abs().total_cmp(&b.0.abs()));
    let (h1, e1) = by_step[0];
    let (h2, e2) = by_step[1];
    let (c1, c2) = (e1 / h1.powi(p), e2 / h2.powi(p));
    let c0 = (c1 * h2 - c2 * h1) / (h2 - h1);
    let deriv = f(x0, p as usize + formula.derivative_offset());
    Ok(TruncationFit {
        order,
        coefficient: c0 / deriv,
        points,
    })
}

/// Slope of the least-squares line through `(x, y)` pairs.
pub fn least_squares_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn probe_residual(
    formula: ProbeFormula,
    f: &dyn Fn(f64, usize) -> f64,
    x0: f64,
    r: f64,
    s: f64,
    h: f64,
) -> Result<(f64, f64)> {
    let val = |x: f64| f(x, 0);
    let d1 = |x: f64| f(x, 1);
    let d2 = |x: f64| f(x, 2);
    match formula {
        ProbeFormula::InteriorCompact | ProbeFormula::InteriorSpline => {
            let mesh = Mesh::from_nodes(vec![x0 - r * h, x0, x0 + s * h])?;
            let y: Vec<f64> = mesh.nodes().iter().map(|&x| val(x)).collect();
            let slopes = [d1(mesh.node(0)), d1(x0), d1(mesh.node(2))];
            let row = match formula {
                ProbeFormula::InteriorCompact => compact_interior_row_with(&mesh, 1, &y, h)?,
                _ => spline_interior_row(&mesh, 1, &y)?,
            };
            let scale = row.rhs.abs()
                + row.sub.abs() * slopes[0].abs()
                + row.diag.abs() * slopes[1].abs()
                + row.sup.abs() * slopes[2].abs();
            Ok((row.residual(slopes), scale))
        }
        ProbeFormula::EdgeCompact4 => {
            let nodes = [x0, x0 + h, x0 + h + r * h, x0 + h + r * h + s * h];
            let (a0, c) = compact4_coefficients(
                nodes[1] - nodes[0],
                nodes[2] - nodes[1],
                nodes[3] - nodes[2],
            );
            let lhs = a0 * d1(nodes[0]) + d1(nodes[1]);
            let terms: Vec<f64> = c.iter().zip(nodes).map(|(c, x)| c * val(x)).collect();
            let rhs: f64 = terms.iter().sum();
            let scale = lhs.abs() + terms.iter().map(|t| t.abs()).sum::<f64>();
            Ok((lhs - rhs, scale))
        }
        ProbeFormula::EdgeCompactC => {
            let c = COMPACT_C_RATIO;
            let lhs = c * d1(x0) + d1(x0 + h);
            let terms: Vec<f64> = compact_c_weights(c)
                .iter()
                .enumerate()
                .map(|(j, w)| w * val(x0 + j as f64 * h) / h)
                .collect();
            let rhs: f64 = terms.iter().sum();
            let scale = lhs.abs() + terms.iter().map(|t| t.abs()).sum::<f64>();
            Ok((lhs - rhs, scale))
        }
        ProbeFormula::SecondDerivativeCompact => {
            let lhs = d2(x0 - h) + 10.0 * d2(x0) + d2(x0 + h);
            let (fm, f0, fp) = (val(x0 - h), val(x0), val(x0 + h));
            let rhs = 12.0 / (h * h) * (fm - 2.0 * f0 + fp);
            let scale = lhs.abs() + 12.0 / (h * h) * (fm.abs() + 2.0 * f0.abs() + fp.abs());
            Ok((lhs - rhs, scale))
        }
        ProbeFormula::SecondDerivativeMixed => {
            let (fm, f0, fp) = (val(x0 - h), val(x0), val(x0 + h));
            let (dm, dp) = (d1(x0 - h), d1(x0 + h));
            let approx = second_derivative_mixed([fm, f0, fp], [dm, dp], h)?;
            let scale = 2.0 / (h * h) * (fm.abs() + 2.0 * f0.abs() + fp.abs())
                + (dm.abs() + dp.abs()) / (2.0 * h).abs();
            Ok((approx - d2(x0), scale))
        }
    }
}
