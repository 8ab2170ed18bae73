//! Fibonacci-like recurrences `F[n+2] = A + B*F[n+1] + C*F[n]`.
//!
//! The central fact driving this module: with `C = -1` and `|B| < 2` the
//! orbit samples a sinusoid `a0 + a1*cos(omega*n) + b1*sin(omega*n)` with
//! `omega = arccos(B/2)`, so the sequence is periodic with continuous period
//! `T = 2*pi/omega > 2`. Everything else here is machinery around that:
//! structural classification, closed-form construction, empirical period
//! detection, coefficient recovery from data, and a conserved quantity used
//! as a long-run integration check.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Absolute tolerance on `f0 + f1 = D` when deciding the period-2 case.
pub const ALTERNATING_INIT_TOL: f64 = 1e-12;
/// `|T - p/q|` below this accepts `p` as the exact integer period.
pub const RATIONAL_PERIOD_TOL: f64 = 1e-9;
/// Largest denominator tried when testing `T` for rationality.
pub const MAX_PERIOD_DENOMINATOR: u64 = 64;
/// `|1 - B - C|` below this means no fixed point.
pub const FIXED_POINT_TOL: f64 = 1e-12;
/// Tolerance on `|r| - 1` for the unit-circle flag of a root.
pub const UNIT_CIRCLE_TOL: f64 = 1e-9;
/// Singular values below this fraction of the largest do not count
/// towards the rank of the fit design matrix.
pub const RANK_TOL_REL: f64 = 1e-10;

/// Coefficients and initial values of
/// `F[n+2] = A + B*F[n+1] + C*F[n]`, `F[0] = f0`, `F[1] = f1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecurrenceParams {
    /// Constant forcing term `A`.
    pub additive: f64,
    /// Weight `B` of the most recent term `F[n+1]`.
    pub lag1: f64,
    /// Weight `C` of the older term `F[n]`.
    pub lag2: f64,
    /// Initial term `F[0]`.
    pub f0: f64,
    /// Initial term `F[1]`.
    pub f1: f64,
}

impl RecurrenceParams {
    pub fn new(additive: f64, lag1: f64, lag2: f64, f0: f64, f1: f64) -> Result<Self> {
        let params = Self { additive, lag1, lag2, f0, f1 };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("A", self.additive),
            ("B", self.lag1),
            ("C", self.lag2),
            ("f0", self.f0),
            ("f1", self.f1),
        ];
        for (name, value) in fields {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        Ok(())
    }

    /// Fixed point `A/(1 - B - C)` of this parameter set, when it exists.
    pub fn fixed_point(&self) -> Option<f64> {
        fixed_point(self.additive, self.lag1, self.lag2)
    }
}

/// A finite run of terms, indexed from n = 0. Nonempty, all entries finite.
#[derive(Debug, Clone, PartialEq)]
pub struct TermSequence {
    terms: Vec<f64>,
}

impl TermSequence {
    pub fn new(terms: Vec<f64>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::TooShort { needed: 1, got: 0 });
        }
        for &t in &terms {
            if !t.is_finite() {
                return Err(Error::NonFinite { name: "term", value: t });
            }
        }
        Ok(Self { terms })
    }

    /// Index of the first term; sequences always start at n = 0.
    pub fn start_index(&self) -> usize {
        0
    }

    pub fn terms(&self) -> &[f64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Iterates the recurrence, producing exactly `count >= 2` terms.
///
/// Growing (non-periodic) parameter sets eventually leave the finite f64
/// range; generation stops with [`Error::Overflow`] at the first offending
/// index instead of emitting infinities.
pub fn generate(params: &RecurrenceParams, count: usize) -> Result<TermSequence> {
    params.validate()?;
    if count < 2 {
        return Err(Error::TooShort { needed: 2, got: count });
    }
    let mut terms = Vec::with_capacity(count);
    terms.push(params.f0);
    terms.push(params.f1);
    for n in 2..count {
        let next = params.additive + params.lag1 * terms[n - 1] + params.lag2 * terms[n - 2];
        if !next.is_finite() {
            return Err(Error::Overflow { index: n });
        }
        terms.push(next);
    }
    Ok(TermSequence { terms })
}

/// Roots of the characteristic polynomial `r^2 - B*r - C = 0` of the
/// homogeneous part, with their magnitudes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootAnalysis {
    pub roots: (Complex64, Complex64),
    pub magnitudes: (f64, f64),
    /// Whether each root magnitude is 1 within [`UNIT_CIRCLE_TOL`].
    pub on_unit_circle: (bool, bool),
    /// `B^2 + 4C`; complex pair iff negative.
    pub discriminant: f64,
}

pub fn characteristic_roots(lag1: f64, lag2: f64) -> RootAnalysis {
    let discriminant = lag1 * lag1 + 4.0 * lag2;
    let (r1, r2) = if discriminant >= 0.0 {
        let s = discriminant.sqrt();
        (
            Complex64::new((lag1 + s) / 2.0, 0.0),
            Complex64::new((lag1 - s) / 2.0, 0.0),
        )
    } else {
        let s = (-discriminant).sqrt() / 2.0;
        (
            Complex64::new(lag1 / 2.0, s),
            Complex64::new(lag1 / 2.0, -s),
        )
    };
    let magnitudes = (r1.norm(), r2.norm());
    RootAnalysis {
        roots: (r1, r2),
        magnitudes,
        on_unit_circle: (
            (magnitudes.0 - 1.0).abs() <= UNIT_CIRCLE_TOL,
            (magnitudes.1 - 1.0).abs() <= UNIT_CIRCLE_TOL,
        ),
        discriminant,
    }
}

/// Structural periodicity verdict for a parameter set.
///
/// The verdict depends on the coefficients (and, for `Constant` and
/// `Alternating`, the initial values), not on any generated data.
#[derive(Debug, Clone, PartialEq)]
pub enum PeriodClassification {
    /// Period 1: `A = 0, B = 1, C = 0` with `f0 = f1`.
    Constant,
    /// Period 2: `B = C - 1`, `C != 1`, and every consecutive pair sums to
    /// `D = A/(1 - C)`.
    Alternating {
        /// The pair sum `D`.
        pair_sum: f64,
    },
    /// `C = -1`, `|B| < 2`: samples of a sinusoid with continuous period
    /// `T = 2*pi/omega`, `omega = arccos(B/2)`.
    SampledPeriodic {
        period: f64,
        omega: f64,
        /// Smallest integer `p` with `F[n+p] = F[n]`, present only when
        /// `T` is rational `p/q` (denominator up to
        /// [`MAX_PERIOD_DENOMINATOR`], tested to [`RATIONAL_PERIOD_TOL`]).
        integer_period: Option<u64>,
    },
    /// Everything else; characteristic roots attached for diagnosis.
    NonPeriodic {
        roots: RootAnalysis,
        /// Set when the coefficients have the period-2 shape `B = C - 1`
        /// but the initial values miss `f0 + f1 = D`, so the orbit carries
        /// a transient instead of alternating from the start.
        alternating_transient: bool,
    },
}

impl PeriodClassification {
    /// Continuous period, when one exists: 1, 2, or `T = 2*pi/omega`.
    pub fn period(&self) -> Option<f64> {
        match self {
            Self::Constant => Some(1.0),
            Self::Alternating { .. } => Some(2.0),
            Self::SampledPeriodic { period, .. } => Some(*period),
            Self::NonPeriodic { .. } => None,
        }
    }

    pub fn variant_name(&self) -> &'static str {
        match self {
            Self::Constant => "Constant",
            Self::Alternating { .. } => "Alternating",
            Self::SampledPeriodic { .. } => "SampledPeriodic",
            Self::NonPeriodic { .. } => "NonPeriodic",
        }
    }
}

/// Classifies the periodicity structure of a parameter set.
///
/// Coefficient tests are exact comparisons: coefficients are user-supplied
/// constants, and a tolerance band would silently switch the mathematical
/// regime. Only the initial-value constraint of the period-2 case uses a
/// tolerance ([`ALTERNATING_INIT_TOL`]).
pub fn classify(params: &RecurrenceParams) -> PeriodClassification {
    let (a, b, c) = (params.additive, params.lag1, params.lag2);
    if a == 0.0 && b == 1.0 && c == 0.0 && params.f0 == params.f1 {
        return PeriodClassification::Constant;
    }
    let alternating_shape = c != 1.0 && b == c - 1.0;
    if alternating_shape {
        let pair_sum = a / (1.0 - c);
        if (params.f0 + params.f1 - pair_sum).abs() <= ALTERNATING_INIT_TOL {
            return PeriodClassification::Alternating { pair_sum };
        }
    }
    if c == -1.0 && b.abs() < 2.0 {
        let omega = (b / 2.0).acos();
        let period = std::f64::consts::TAU / omega;
        return PeriodClassification::SampledPeriodic {
            period,
            omega,
            integer_period: integer_period_of(period),
        };
    }
    PeriodClassification::NonPeriodic {
        roots: characteristic_roots(b, c),
        alternating_transient: alternating_shape,
    }
}

/// Continuous period `T = 2*pi/arccos(B/2)` of the `C = -1` regime;
/// `None` outside `|B| < 2`.
pub fn continuous_period(lag1: f64) -> Option<f64> {
    (lag1.abs() < 2.0).then(|| std::f64::consts::TAU / (lag1 / 2.0).acos())
}

fn integer_period_of(period: f64) -> Option<u64> {
    let (p, q) = best_rational(period, MAX_PERIOD_DENOMINATOR)?;
    let approx = p as f64 / q as f64;
    ((period - approx).abs() < RATIONAL_PERIOD_TOL).then_some(p)
}

/// Best continued-fraction convergent `p/q` of `x > 0` with `q <= max_den`.
fn best_rational(x: f64, max_den: u64) -> Option<(u64, u64)> {
    if !x.is_finite() || x <= 0.0 {
        return None;
    }
    let (mut p_prev, mut q_prev) = (1u64, 0u64);
    let (mut p, mut q) = (x.floor() as u64, 1u64);
    let mut frac = x.fract();
    // Any approximation within RATIONAL_PERIOD_TOL shows up as a convergent
    // long before the fractional parts shrink to this floor.
    while frac > 1e-15 {
        let recip = frac.recip();
        let a = recip.floor() as u64;
        let p_next = a.checked_mul(p)?.checked_add(p_prev)?;
        let q_next = a.checked_mul(q)?.checked_add(q_prev)?;
        if q_next > max_den {
            break;
        }
        (p_prev, q_prev, p, q) = (p, q, p_next, q_next);
        frac = recip.fract();
    }
    Some((p, q))
}

/// Fixed point `A/(1 - B - C)`; `None` when `B + C = 1` (within
/// [`FIXED_POINT_TOL`]).
pub fn fixed_point(additive: f64, lag1: f64, lag2: f64) -> Option<f64> {
    let denom = 1.0 - lag1 - lag2;
    (denom.abs() > FIXED_POINT_TOL).then(|| additive / denom)
}

/// The sinusoid `a0 + a1*cos(omega*n) + b1*sin(omega*n)` solving the
/// recurrence in the `C = -1`, `|B| < 2` regime.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormSolution {
    /// Mean level `a0 = A/(2 - B)`.
    pub mean: f64,
    /// Cosine amplitude `a1`.
    pub cos_amp: f64,
    /// Sine amplitude `b1`.
    pub sin_amp: f64,
    /// Angular frequency `arccos(B/2)`, in `(0, pi)`.
    pub omega: f64,
}

impl ClosedFormSolution {
    /// Value at integer index `n`.
    pub fn evaluate(&self, n: usize) -> f64 {
        let phase = self.omega * n as f64;
        self.mean + self.cos_amp * phase.cos() + self.sin_amp * phase.sin()
    }

    /// Continuous period `2*pi/omega` of the sinusoid.
    pub fn period(&self) -> f64 {
        std::f64::consts::TAU / self.omega
    }
}

/// Builds the closed form for `C = -1`, `|B| < 2`; the two amplitudes are
/// fixed by matching `f0` at n = 0 and `f1` at n = 1.
pub fn closed_form(params: &RecurrenceParams) -> Result<ClosedFormSolution> {
    params.validate()?;
    if params.lag2 != -1.0 {
        return Err(Error::Domain { condition: "closed form requires C = -1" });
    }
    if params.lag1.abs() >= 2.0 {
        return Err(Error::Domain { condition: "closed form requires |B| < 2" });
    }
    let omega = (params.lag1 / 2.0).acos();
    let mean = params.additive / (2.0 - params.lag1);
    let cos_amp = params.f0 - mean;
    // sin(omega) != 0 because omega is strictly inside (0, pi).
    let sin_amp = (params.f1 - mean - cos_amp * omega.cos()) / omega.sin();
    Ok(ClosedFormSolution { mean, cos_amp, sin_amp, omega })
}

/// Smallest `p` with `1 <= p <= len/2` such that `|F[n+p] - F[n]| <= tol`
/// for every valid `n`; `None` when no lag repeats within the window.
pub fn detect_exact_period(seq: &TermSequence, tol: f64) -> Option<usize> {
    let t = seq.terms();
    let n = t.len();
    (1..=n / 2).find(|&p| (0..n - p).all(|i| (t[i + p] - t[i]).abs() <= tol))
}

/// Least-squares recovery of `(A, B, C)` from an observed sequence.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceFit {
    /// Recovered coefficients; `f0`, `f1` copied from the input.
    pub params: RecurrenceParams,
    /// Root-mean-square of `F[n+2] - A - B*F[n+1] - C*F[n]` over all rows.
    pub residual_rms: f64,
}

/// Default tolerance for [`RecurrenceFit::snapped_params`].
pub const SNAP_TOL: f64 = 1e-9;

impl RecurrenceFit {
    /// Fitted parameters with each coefficient snapped onto the nearest
    /// integer (and `B` onto `C - 1`) when within `tol`.
    ///
    /// [`classify`] compares coefficients exactly, while least-squares
    /// output misses structural values like `C = -1` by rounding noise;
    /// snapping bridges the two when classifying a fit. The raw solution
    /// stays in `params`.
    pub fn snapped_params(&self, tol: f64) -> RecurrenceParams {
        let snap = |x: f64| {
            let nearest = x.round();
            if (x - nearest).abs() <= tol { nearest } else { x }
        };
        let additive = snap(self.params.additive);
        let lag2 = snap(self.params.lag2);
        let mut lag1 = snap(self.params.lag1);
        if (lag1 - (lag2 - 1.0)).abs() <= tol {
            lag1 = lag2 - 1.0;
        }
        RecurrenceParams { additive, lag1, lag2, ..self.params }
    }
}

/// Fits `(A, B, C)` by least squares over rows `(1, F[n+1], F[n]) -> F[n+2]`,
/// solving the 3x3 normal equations.
///
/// Rank comes from the singular values of the design matrix (threshold
/// [`RANK_TOL_REL`] relative to the largest); constant or alternating inputs
/// are rank-deficient and rejected, since `(A, B, C)` is not identifiable
/// from them.
pub fn fit_recurrence(seq: &TermSequence) -> Result<RecurrenceFit> {
    let t = seq.terms();
    if t.len() < 5 {
        return Err(Error::TooShort { needed: 5, got: t.len() });
    }
    let rows = t.len() - 2;
    let design = DMatrix::from_fn(rows, 3, |r, c| match c {
        0 => 1.0,
        1 => t[r + 1],
        _ => t[r],
    });
    let rhs = DVector::from_fn(rows, |r, _| t[r + 2]);

    let singular = design.clone().svd(false, false).singular_values;
    let largest = singular.iter().fold(0.0f64, |m, &s| m.max(s));
    let rank = singular.iter().filter(|&&s| s > RANK_TOL_REL * largest).count();
    if rank < 3 {
        return Err(Error::DegenerateData { rank });
    }

    let normal = design.transpose() * &design;
    let moment = design.transpose() * &rhs;
    let coeffs = normal
        .lu()
        .solve(&moment)
        .ok_or(Error::DegenerateData { rank })?;

    let residual = &design * &coeffs - &rhs;
    let residual_rms = (residual.norm_squared() / rows as f64).sqrt();
    Ok(RecurrenceFit {
        params: RecurrenceParams {
            additive: coeffs[0],
            lag1: coeffs[1],
            lag2: coeffs[2],
            f0: t[0],
            f1: t[1],
        },
        residual_rms,
    })
}

/// Conserved quantity of the `C = -1`, `|B| < 2` regime: with
/// `g = F[n] - a0`, `h = F[n+1] - a0`, the value `g^2 - B*g*h + h^2` is the
/// same for every consecutive pair of an orbit (a discrete energy).
pub fn casimir_invariant(params: &RecurrenceParams, term: f64, next_term: f64) -> Result<f64> {
    if params.lag2 != -1.0 {
        return Err(Error::Domain { condition: "casimir invariant requires C = -1" });
    }
    if params.lag1.abs() >= 2.0 {
        return Err(Error::Domain { condition: "casimir invariant requires |B| < 2" });
    }
    let mean = params
        .fixed_point()
        .ok_or(Error::Domain { condition: "casimir invariant requires a fixed point" })?;
    let g = term - mean;
    let h = next_term - mean;
    Ok(g * g - params.lag1 * g * h + h * h)
}
