//! Cubic splines, compact cubic interpolants and fourth-order compact
//! finite differences on uniform and nonuniform meshes.
//!
//! The slope of a `C¹` piecewise cubic at every node comes from one
//! tridiagonal system. [`assembly`] builds its rows: the classical spline
//! continuity rows or the fourth-order compact rows, closed by one of the
//! [`EdgeScheme`]s. On a uniform mesh the two interior rules coincide.
//!
//! ```
//! use compact_cubic::{compact_cubic, EdgeScheme, Mesh};
//!
//! let mesh = Mesh::uniform(0.0, 1.0, 8).unwrap();
//! let y: Vec<f64> = mesh.nodes().iter().map(|t| t.powi(4)).collect();
//! let p = compact_cubic(&mesh, &y, EdgeScheme::Compact4).unwrap();
//! assert!((p.slopes()[8] - 4.0).abs() < 1e-12);
//! ```

pub mod assembly;
pub mod driver;
pub mod error;
pub mod harness;
pub mod hermite;
pub mod mesh;
pub mod tridiag;

pub use assembly::{assemble, AssembledSystem, EdgeScheme, End, InteriorRule};
pub use driver::{
    compact_cubic, compact_first_derivatives, cubic_spline, fit, DerivativeResult, Fit, Method,
};
pub use error::{Error, Result};
pub use hermite::{PiecewiseCubic, PpForm, Side};
pub use mesh::Mesh;
pub use tridiag::TridiagonalSystem;
