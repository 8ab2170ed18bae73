//! Fourier-side verification of the periodicity criterion.
//!
//! A trigonometric model `f(x) = a0 + sum_n a_n*cos(omega*n*x) +
//! b_n*sin(omega*n*x)` satisfies the functional equation
//! `f(x+1) = A + B*f(x) + C*f(x-1)` exactly when the coefficient residuals
//!
//! ```text
//! c0  = a0 - C*a0 - B*a0 - A
//! c_n = a_n*(cos(omega*n) - C*cos(omega*n) - B) + b_n*(1 + C)*sin(omega*n)
//! d_n = -a_n*(1 + C)*sin(omega*n) + b_n*(cos(omega*n) - C*cos(omega*n) - B)
//! ```
//!
//! all vanish. Forcing them to zero for the fundamental pins `C = -1`,
//! `B = 2*cos(omega)`, `a0 = A/(2 - B)`; higher harmonics survive only on
//! the admissible set `(n +- 1)*omega = 2*pi*k`. This module computes the
//! residuals, enumerates the admissible set, and samples the functional
//! equation directly so the two routes can cross-check each other.

use std::collections::BTreeSet;
use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::recurrence::{ClosedFormSolution, TermSequence};

/// Absolute tolerance on `|F[n+1] - (D - F[n])|` in [`check_period2_identity`].
pub const PAIR_IDENTITY_TOL: f64 = 1e-12;
/// Sample count used by [`verify_functional_equation_default`].
pub const DEFAULT_SAMPLE_COUNT: usize = 1024;

/// One harmonic of a trigonometric model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harmonic {
    /// Multiplier `n >= 1` of the fundamental frequency.
    pub index: u32,
    /// Cosine amplitude `a_n`.
    pub cos_amp: f64,
    /// Sine amplitude `b_n`.
    pub sin_amp: f64,
}

/// Finite trigonometric model `a0 + sum a_n*cos(omega*n*x) + b_n*sin(omega*n*x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierModel {
    /// Mean level `a0`.
    pub mean: f64,
    /// Fundamental angular frequency, in `(0, pi)`.
    pub omega: f64,
    /// Harmonics in strictly increasing index order.
    pub harmonics: Vec<Harmonic>,
}

impl FourierModel {
    pub fn new(mean: f64, omega: f64, harmonics: Vec<Harmonic>) -> Result<Self> {
        if !(omega > 0.0 && omega < PI) {
            return Err(Error::Domain { condition: "omega must lie in (0, pi)" });
        }
        if !mean.is_finite() {
            return Err(Error::NonFinite { name: "a0", value: mean });
        }
        let mut previous = 0u32;
        for h in &harmonics {
            if h.index <= previous {
                return Err(Error::Domain {
                    condition: "harmonic indices must be strictly increasing and >= 1",
                });
            }
            if !h.cos_amp.is_finite() || !h.sin_amp.is_finite() {
                return Err(Error::NonFinite { name: "harmonic amplitude", value: f64::NAN });
            }
            previous = h.index;
        }
        Ok(Self { mean, omega, harmonics })
    }

    /// Model with the single fundamental harmonic of a closed-form solution.
    pub fn from_closed_form(cf: &ClosedFormSolution) -> Self {
        Self {
            mean: cf.mean,
            omega: cf.omega,
            harmonics: vec![Harmonic { index: 1, cos_amp: cf.cos_amp, sin_amp: cf.sin_amp }],
        }
    }

    pub fn evaluate(&self, x: f64) -> f64 {
        self.mean
            + self
                .harmonics
                .iter()
                .map(|h| {
                    let phase = self.omega * h.index as f64 * x;
                    h.cos_amp * phase.cos() + h.sin_amp * phase.sin()
                })
                .sum::<f64>()
    }
}

/// Residual of one harmonic against the functional equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicResidual {
    pub index: u32,
    /// `c_n`, the surviving cosine coefficient.
    pub cos_residual: f64,
    /// `d_n`, the surviving sine coefficient.
    pub sin_residual: f64,
}

/// All coefficient residuals of a model against `(A, B, C)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientResiduals {
    /// `c0`, the constant-term residual.
    pub constant: f64,
    pub per_harmonic: Vec<HarmonicResidual>,
}

impl CoefficientResiduals {
    pub fn max_abs(&self) -> f64 {
        self.per_harmonic
            .iter()
            .flat_map(|h| [h.cos_residual.abs(), h.sin_residual.abs()])
            .fold(self.constant.abs(), f64::max)
    }
}

/// Computes `c0` and `(c_n, d_n)` for every harmonic of `model` against the
/// equation `f(x+1) = A + B*f(x) + C*f(x-1)` at fundamental frequency `omega`.
pub fn residual_coefficients(
    additive: f64,
    lag1: f64,
    lag2: f64,
    omega: f64,
    model: &FourierModel,
) -> CoefficientResiduals {
    let constant = model.mean - lag2 * model.mean - lag1 * model.mean - additive;
    let per_harmonic = model
        .harmonics
        .iter()
        .map(|h| {
            let phase = omega * h.index as f64;
            let forcing = phase.cos() - lag2 * phase.cos() - lag1;
            let coupling = (1.0 + lag2) * phase.sin();
            HarmonicResidual {
                index: h.index,
                cos_residual: h.cos_amp * forcing + h.sin_amp * coupling,
                sin_residual: -h.cos_amp * coupling + h.sin_amp * forcing,
            }
        })
        .collect();
    CoefficientResiduals { constant, per_harmonic }
}

/// Harmonic indices that survive the functional equation at frequency `omega`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicSet {
    pub omega: f64,
    pub max_index: u32,
    /// Admissible indices, all `>= 2`.
    pub members: BTreeSet<u32>,
    pub tolerance: f64,
}

/// Indices `n` in `[2, max_index]` with `(n - 1)*omega` or `(n + 1)*omega`
/// within `tolerance` of a positive multiple of `2*pi`.
///
/// The fundamental `n = 1` is excluded by construction (it is pinned by the
/// `B = 2*cos(omega)` condition, not by this resonance), and `k = 0` is not
/// admitted: it would make `n = 1` trivially resonant.
pub fn admissible_harmonics(omega: f64, max_index: u32, tolerance: f64) -> HarmonicSet {
    let members = (2..=max_index)
        .filter(|&n| {
            near_positive_multiple_of_tau((n - 1) as f64 * omega, tolerance)
                || near_positive_multiple_of_tau((n + 1) as f64 * omega, tolerance)
        })
        .collect();
    HarmonicSet { omega, max_index, members, tolerance }
}

fn near_positive_multiple_of_tau(value: f64, tolerance: f64) -> bool {
    let k = (value / TAU).round();
    k >= 1.0 && (value - k * TAU).abs() <= tolerance
}

/// Max of `|f(x+1) - A - B*f(x) - C*f(x-1)|` over `sample_count` evenly
/// spaced points in `x_range`.
pub fn verify_functional_equation(
    model: &FourierModel,
    additive: f64,
    lag1: f64,
    lag2: f64,
    sample_count: usize,
    x_range: (f64, f64),
) -> f64 {
    let (lo, hi) = x_range;
    let step = if sample_count > 1 { (hi - lo) / (sample_count - 1) as f64 } else { 0.0 };
    (0..sample_count)
        .map(|i| {
            let x = lo + step * i as f64;
            let residual = model.evaluate(x + 1.0)
                - additive
                - lag1 * model.evaluate(x)
                - lag2 * model.evaluate(x - 1.0);
            residual.abs()
        })
        .fold(0.0, f64::max)
}

/// [`verify_functional_equation`] over four fundamental periods with
/// [`DEFAULT_SAMPLE_COUNT`] samples.
pub fn verify_functional_equation_default(
    model: &FourierModel,
    additive: f64,
    lag1: f64,
    lag2: f64,
) -> f64 {
    let period = TAU / model.omega;
    verify_functional_equation(model, additive, lag1, lag2, DEFAULT_SAMPLE_COUNT, (0.0, 4.0 * period))
}

/// True when every consecutive pair of `seq` satisfies the period-2 identity
/// `F[n+1] = D - F[n]` with `D = A/(1 - C)`, within [`PAIR_IDENTITY_TOL`].
pub fn check_period2_identity(additive: f64, lag2: f64, seq: &TermSequence) -> Result<bool> {
    if lag2 == 1.0 {
        return Err(Error::Domain { condition: "pair sum D = A/(1 - C) undefined for C = 1" });
    }
    let pair_sum = additive / (1.0 - lag2);
    Ok(seq
        .terms()
        .windows(2)
        .all(|w| (w[1] - (pair_sum - w[0])).abs() <= PAIR_IDENTITY_TOL))
}
