//! Periodic Fibonacci-like sequences `F[n+2] = A + B*F[n+1] + C*F[n]`.
//!
//! With `C = -1` and `|B| < 2` the orbit samples a sinusoid and is periodic
//! with continuous period `T = 2*pi/arccos(B/2) > 2`; the degenerate
//! coefficient sets `(A=0, B=1, C=0)` and `B = C - 1` give periods 1 and 2.
//! The crate provides:
//!
//! - [`recurrence`]: generation, structural classification, closed forms,
//!   empirical period detection, least-squares coefficient recovery, and a
//!   conserved quadratic invariant;
//! - [`spectral`]: the Fourier-coefficient residuals and admissible-harmonic
//!   set that justify the criterion, plus direct sampling of the functional
//!   equation `f(x+1) = A + B*f(x) + C*f(x-1)`;
//! - [`wave`]: a leapfrog wave-equation scheme on path/cycle lattices whose
//!   Laplacian eigenmode coefficients are exactly such recurrences with
//!   `B = 2 - c^2*lambda`;
//! - [`presets`]: fixed demonstration parameter sets with frozen reference
//!   tables.

pub mod error;
pub mod presets;
pub mod recurrence;
pub mod spectral;
pub mod wave;

pub use error::{Error, Result};
