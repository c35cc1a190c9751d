//! Spectral solver and revival-analysis toolkit for two dispersive boundary
//! value problems on the unit interval:
//!
//! * the Airy equation `u_t + u_xxx = 0` with Dirichlet-type boundary
//!   conditions `u(0) = u(1) = 0`, `u_x(1) = u_x(0)`, and
//! * the linear Schrödinger equation for the dislocated Laplacian, where the
//!   equation flips sign across an interior dislocation `b` and the
//!   derivative reverses there (`u_x(b+) = -u_x(b-)`).
//!
//! Both operators have discrete real spectra accumulating at plus/minus
//! infinity.  The toolkit builds eigenfunction-expansion solutions from exact
//! (quadrature-free) inner products, and independently evaluates the
//! closed-form revival decompositions that hold at rational times, where the
//! leading part of the solution collapses to finitely many translates of a
//! boundary-augmented copy of the initial datum plus its periodic Hilbert
//! transform.  Cross-validating the two routes is the purpose of the
//! `compare` pipeline.

pub mod config;
pub mod diagnostics;
pub mod dislocation_revival;
pub mod error;
pub mod expfun;
pub mod hilbert;
pub mod piecewise;
pub mod problem;
pub mod quad;
pub mod report;
pub mod specfun;
pub mod sum;

pub mod airy_revival;
mod poly;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// `alpha = e^{2 pi i / 3}`, the primitive cube root of unity that generates
/// the rotation symmetry of the Airy characteristic determinant.
pub fn cube_root_of_unity() -> Complex64 {
    Complex64::new(-0.5, 0.5 * 3f64.sqrt())
}
