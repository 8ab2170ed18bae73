//! Leapfrog scheme for the 1D wave equation on path and cycle lattices.
//!
//! The update `u_i' = 2*u_i + c^2*(u_{i-1} - 2*u_i + u_{i+1}) - u_i''`
//! (primes denote the next and previous time levels) decouples over the
//! eigenmodes of the lattice Laplacian: the coefficient of each eigenvector
//! obeys `g[n+2] = B*g[n+1] - g[n]` with `B = 2 - c^2*lambda`. Each mode is
//! therefore a Fibonacci-like sequence in time, periodic exactly when
//! `|B| < 2`, which ties the scheme's stability window to the periodicity
//! criterion of the recurrence module.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::recurrence::continuous_period;

/// Lattice topology for the spatial discretization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Topology {
    /// Open chain with zero-displacement (Dirichlet) ghost boundaries.
    PathDirichlet,
    /// Closed ring; neighbor indices wrap.
    Cycle,
}

/// Spatial grid plus the Courant number `c = k * dt / dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveLattice {
    node_count: usize,
    topology: Topology,
    courant: f64,
}

impl WaveLattice {
    pub fn new(topology: Topology, node_count: usize, courant: f64) -> Result<Self> {
        let min_nodes = match topology {
            Topology::PathDirichlet => 2,
            Topology::Cycle => 3,
        };
        if node_count < min_nodes {
            return Err(Error::Domain {
                condition: "lattice too small: paths need >= 2 nodes, cycles >= 3",
            });
        }
        if !courant.is_finite() || courant <= 0.0 {
            return Err(Error::Domain { condition: "courant number must be finite and positive" });
        }
        Ok(Self { node_count, topology, courant })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn courant(&self) -> f64 {
        self.courant
    }

    /// Modal recurrence coefficient `B = 2 - c^2 * lambda`.
    pub fn modal_coefficient(&self, eigenvalue: f64) -> f64 {
        2.0 - self.courant * self.courant * eigenvalue
    }
}

/// Two consecutive time levels of the field.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    /// Field at time level `time_index`.
    pub current: Vec<f64>,
    /// Field at time level `time_index - 1`.
    pub previous: Vec<f64>,
    pub time_index: usize,
}

impl WaveState {
    pub fn new(current: Vec<f64>, previous: Vec<f64>) -> Result<Self> {
        if current.len() != previous.len() {
            return Err(Error::LengthMismatch { expected: current.len(), got: previous.len() });
        }
        for &v in current.iter().chain(previous.iter()) {
            if !v.is_finite() {
                return Err(Error::NonFinite { name: "field value", value: v });
            }
        }
        Ok(Self { current, previous, time_index: 0 })
    }
}

/// Advances the field one time step with the leapfrog update.
///
/// A non-finite result means the scheme has blown up (possible when
/// `c^2 * lambda_max > 4`); that is reported as [`Error::Instability`]
/// carrying the time index of the failed level.
pub fn step(lattice: &WaveLattice, state: &WaveState) -> Result<WaveState> {
    let n = lattice.node_count();
    if state.current.len() != n {
        return Err(Error::LengthMismatch { expected: n, got: state.current.len() });
    }
    let c2 = lattice.courant * lattice.courant;
    let u = &state.current;
    let time_index = state.time_index + 1;
    let mut next = Vec::with_capacity(n);
    for i in 0..n {
        let (left, right) = match lattice.topology {
            Topology::PathDirichlet => (
                if i == 0 { 0.0 } else { u[i - 1] },
                if i + 1 == n { 0.0 } else { u[i + 1] },
            ),
            Topology::Cycle => (u[(i + n - 1) % n], u[(i + 1) % n]),
        };
        let value = 2.0 * u[i] + c2 * (left - 2.0 * u[i] + right) - state.previous[i];
        if !value.is_finite() {
            return Err(Error::Instability { time_index });
        }
        next.push(value);
    }
    Ok(WaveState { previous: u.clone(), current: next, time_index })
}

/// Runs `steps` leapfrog updates, returning all `steps + 1` snapshots
/// including the initial state.
pub fn run(
    lattice: &WaveLattice,
    initial_current: Vec<f64>,
    initial_previous: Vec<f64>,
    steps: usize,
) -> Result<Vec<WaveState>> {
    if initial_current.len() != lattice.node_count() {
        return Err(Error::LengthMismatch {
            expected: lattice.node_count(),
            got: initial_current.len(),
        });
    }
    let initial = WaveState::new(initial_current, initial_previous)?;
    let mut snapshots = Vec::with_capacity(steps + 1);
    snapshots.push(initial);
    for _ in 0..steps {
        let next = step(lattice, snapshots.last().expect("nonempty"))?;
        snapshots.push(next);
    }
    Ok(snapshots)
}

/// One eigenpair of the lattice Laplacian.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenMode {
    /// Natural mode number: `1..=N` on a path, `0..N` on a cycle.
    pub index: usize,
    /// Laplacian eigenvalue, in `[0, 4]`.
    pub eigenvalue: f64,
    /// Unit eigenvector with its first nonzero entry positive.
    pub vector: Vec<f64>,
}

/// Closed-form Laplacian eigenmodes of the lattice, sorted by eigenvalue
/// ascending (ties broken by natural mode number).
///
/// Path with Dirichlet ends: `lambda_m = 4*sin^2(m*pi / (2*(N+1)))` with
/// eigenvector entries `sin(m*i*pi/(N+1))`, `m = 1..=N`. Cycle:
/// `lambda_m = 2 - 2*cos(2*pi*m/N)` with cosine vectors for `m <= N/2` and
/// sine vectors for the mirrored indices, `m = 0..N`.
pub fn laplacian_eigenmodes(lattice: &WaveLattice) -> Vec<EigenMode> {
    let n = lattice.node_count();
    let mut modes: Vec<EigenMode> = match lattice.topology {
        Topology::PathDirichlet => (1..=n)
            .map(|m| {
                let theta = m as f64 * PI / (n as f64 + 1.0);
                let eigenvalue = 4.0 * (theta / 2.0).sin().powi(2);
                let vector = (1..=n).map(|i| (theta * i as f64).sin()).collect();
                EigenMode { index: m, eigenvalue, vector }
            })
            .collect(),
        Topology::Cycle => (0..n)
            .map(|m| {
                let eigenvalue = 2.0 - 2.0 * (TAU * m as f64 / n as f64).cos();
                EigenMode { index: m, eigenvalue, vector: cycle_vector(n, m) }
            })
            .collect(),
    };
    for mode in &mut modes {
        normalize(&mut mode.vector);
    }
    modes.sort_by(|a, b| {
        a.eigenvalue
            .total_cmp(&b.eigenvalue)
            .then(a.index.cmp(&b.index))
    });
    modes
}

fn cycle_vector(n: usize, m: usize) -> Vec<f64> {
    if m == 0 {
        vec![1.0; n]
    } else if 2 * m <= n {
        (0..n).map(|i| (TAU * (m * i) as f64 / n as f64).cos()).collect()
    } else {
        let mirror = n - m;
        (0..n).map(|i| (TAU * (mirror * i) as f64 / n as f64).sin()).collect()
    }
}

fn normalize(vector: &mut [f64]) {
    let norm = vector.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in vector.iter_mut() {
        *v /= norm;
    }
    // Deterministic orientation: first entry of visible size fixes the sign.
    if let Some(first) = vector.iter().find(|v| v.abs() > 1e-12) {
        if *first < 0.0 {
            for v in vector.iter_mut() {
                *v = -*v;
            }
        }
    }
}

/// Time series of one mode's coefficient along a trajectory.
#[derive(Debug, Clone, PartialEq)]
pub struct ModalSeries {
    pub mode_index: usize,
    pub eigenvalue: f64,
    /// Projection of each snapshot's current level onto the unit eigenvector.
    pub coefficients: Vec<f64>,
}

/// Projects every snapshot of `trajectory` onto `mode`'s eigenvector.
pub fn modal_coefficients(trajectory: &[WaveState], mode: &EigenMode) -> Result<ModalSeries> {
    for snapshot in trajectory {
        if snapshot.current.len() != mode.vector.len() {
            return Err(Error::LengthMismatch {
                expected: mode.vector.len(),
                got: snapshot.current.len(),
            });
        }
    }
    let coefficients = trajectory
        .iter()
        .map(|s| s.current.iter().zip(&mode.vector).map(|(u, v)| u * v).sum())
        .collect();
    Ok(ModalSeries { mode_index: mode.index, eigenvalue: mode.eigenvalue, coefficients })
}

/// Max of `|g[t+2] - B*g[t+1] + g[t]|` with `B = 2 - c^2*lambda` over the
/// series; zero for series shorter than 3.
pub fn verify_modal_recurrence(series: &ModalSeries, courant: f64) -> f64 {
    let b = 2.0 - courant * courant * series.eigenvalue;
    series
        .coefficients
        .windows(3)
        .map(|w| (w[2] - b * w[1] + w[0]).abs())
        .fold(0.0, f64::max)
}

/// Continuous time period `2*pi / arccos(B/2)` of a mode, with
/// `B = 2 - c^2 * lambda`; `None` on or outside the `|B| = 2` boundary
/// (the constant mode and unstable modes).
pub fn modal_period(courant: f64, eigenvalue: f64) -> Option<f64> {
    continuous_period(2.0 - courant * courant * eigenvalue)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::{
        casimir_invariant, detect_exact_period, RecurrenceParams, TermSequence,
    };
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    fn path(n: usize, courant: f64) -> WaveLattice {
        WaveLattice::new(Topology::PathDirichlet, n, courant).unwrap()
    }

    fn cycle(n: usize, courant: f64) -> WaveLattice {
        WaveLattice::new(Topology::Cycle, n, courant).unwrap()
    }

    fn mode_initial(lattice: &WaveLattice, natural_index: usize) -> Vec<f64> {
        laplacian_eigenmodes(lattice)
            .into_iter()
            .find(|m| m.index == natural_index)
            .expect("mode exists")
            .vector
    }

    #[test]
    fn lattice_validation() {
        assert!(WaveLattice::new(Topology::PathDirichlet, 1, 1.0).is_err());
        assert!(WaveLattice::new(Topology::Cycle, 2, 1.0).is_err());
        assert!(WaveLattice::new(Topology::Cycle, 3, 0.0).is_err());
        assert!(WaveLattice::new(Topology::Cycle, 3, f64::NAN).is_err());
    }

    #[test]
    fn step_preserves_the_zero_state() {
        let lattice = path(4, 0.7);
        let state = WaveState::new(vec![0.0; 4], vec![0.0; 4]).unwrap();
        let next = step(&lattice, &state).unwrap();
        assert_eq!(next.current, vec![0.0; 4]);
        assert_eq!(next.time_index, 1);
    }

    #[test]
    fn step_center_impulse_on_a_three_node_path() {
        let lattice = path(3, 1.0);
        let state = WaveState::new(vec![0.0, 1.0, 0.0], vec![0.0, 1.0, 0.0]).unwrap();
        let next = step(&lattice, &state).unwrap();
        assert_eq!(next.current, vec![1.0, -1.0, 1.0]);
        assert_eq!(next.previous, vec![0.0, 1.0, 0.0]);
    }

    #[test]
    fn step_constant_mode_on_a_cycle_is_stationary() {
        let lattice = cycle(4, 1.0);
        let state = WaveState::new(vec![1.0; 4], vec![1.0; 4]).unwrap();
        let next = step(&lattice, &state).unwrap();
        assert_eq!(next.current, vec![1.0; 4]);
    }

    #[test]
    fn step_rejects_mismatched_state() {
        let lattice = path(3, 1.0);
        let state = WaveState::new(vec![0.0; 4], vec![0.0; 4]).unwrap();
        assert!(matches!(step(&lattice, &state), Err(Error::LengthMismatch { .. })));
    }

    #[test]
    fn run_returns_steps_plus_one_snapshots() {
        let lattice = path(3, 1.0);
        let snapshots = run(&lattice, vec![0.0; 3], vec![0.0; 3], 7).unwrap();
        assert_eq!(snapshots.len(), 8);
        for (t, s) in snapshots.iter().enumerate() {
            assert_eq!(s.time_index, t);
            assert_eq!(s.current, vec![0.0; 3]);
        }
    }

    #[test]
    fn mode_one_standing_wave_has_period_eight() {
        // lambda_1 = 4*sin^2(pi/8) gives B = sqrt(2), so T = 8.
        let lattice = path(3, 1.0);
        let v = mode_initial(&lattice, 1);
        let trajectory = run(&lattice, v.clone(), v, 16).unwrap();
        let mode = &laplacian_eigenmodes(&lattice)[0];
        let series = modal_coefficients(&trajectory, mode).unwrap();
        let seq = TermSequence::new(series.coefficients.clone()).unwrap();
        assert_eq!(detect_exact_period(&seq, 1e-9), Some(8));
    }

    #[test]
    fn cycle_impulse_stays_finite_at_the_stability_boundary() {
        // Even cycles reach lambda = 4, i.e. B = -2: linear modal growth,
        // still finite. The simulator flags such modes instead of failing.
        let lattice = cycle(6, 1.0);
        let mut init = vec![0.0; 6];
        init[0] = 1.0;
        let snapshots = run(&lattice, init.clone(), init, 50).unwrap();
        assert_eq!(snapshots.len(), 51);
        assert!(snapshots.iter().all(|s| s.current.iter().all(|v| v.is_finite())));
        assert_eq!(modal_period(1.0, 4.0), None);
    }

    #[test]
    fn path_three_spectrum() {
        let modes = laplacian_eigenmodes(&path(3, 1.0));
        let expected = [0.5857864376269049, 2.0, 3.414213562373095];
        for (mode, want) in modes.iter().zip(expected) {
            assert_relative_eq!(mode.eigenvalue, want, epsilon = 1e-12);
        }
        assert_eq!(modes[0].index, 1);
        // Unit norm and fixed orientation.
        for mode in &modes {
            let norm: f64 = mode.vector.iter().map(|v| v * v).sum();
            assert_relative_eq!(norm, 1.0, epsilon = 1e-12);
            assert!(mode.vector[0] > 0.0);
        }
    }

    #[test]
    fn cycle_four_spectrum() {
        let modes = laplacian_eigenmodes(&cycle(4, 1.0));
        let eigenvalues: Vec<f64> = modes.iter().map(|m| m.eigenvalue).collect();
        let expected = [0.0, 2.0, 2.0, 4.0];
        for (got, want) in eigenvalues.iter().zip(expected) {
            assert_abs_diff_eq!(got, &want, epsilon = 1e-12);
        }
        let indices: Vec<usize> = modes.iter().map(|m| m.index).collect();
        assert_eq!(indices, vec![0, 1, 3, 2]);
    }

    #[test]
    fn path_two_spectrum() {
        let modes = laplacian_eigenmodes(&path(2, 1.0));
        assert_relative_eq!(modes[0].eigenvalue, 1.0, epsilon = 1e-12);
        assert_relative_eq!(modes[1].eigenvalue, 3.0, epsilon = 1e-12);
    }

    #[test]
    fn eigenmodes_are_orthonormal() {
        for lattice in [path(5, 1.0), path(8, 0.5), cycle(5, 1.0), cycle(6, 0.9)] {
            let modes = laplacian_eigenmodes(&lattice);
            assert_eq!(modes.len(), lattice.node_count());
            for (i, a) in modes.iter().enumerate() {
                for (j, b) in modes.iter().enumerate() {
                    let dot: f64 = a.vector.iter().zip(&b.vector).map(|(x, y)| x * y).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert_abs_diff_eq!(dot, expected, epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn modal_projection_isolates_the_started_mode() {
        let lattice = path(5, 1.0);
        let modes = laplacian_eigenmodes(&lattice);
        let v = modes[2].vector.clone();
        let trajectory = run(&lattice, v.clone(), v, 30).unwrap();
        for (i, mode) in modes.iter().enumerate() {
            let series = modal_coefficients(&trajectory, mode).unwrap();
            let peak = series.coefficients.iter().fold(0.0f64, |m, c| m.max(c.abs()));
            if i == 2 {
                assert!(peak > 0.5);
            } else {
                assert!(peak < 1e-12, "mode {i} leaked: {peak}");
            }
        }
    }

    #[test]
    fn constant_trajectory_projects_to_sqrt_n() {
        let lattice = cycle(4, 1.0);
        let trajectory = run(&lattice, vec![1.0; 4], vec![1.0; 4], 5).unwrap();
        let zero_mode = &laplacian_eigenmodes(&lattice)[0];
        let series = modal_coefficients(&trajectory, zero_mode).unwrap();
        for c in &series.coefficients {
            assert_relative_eq!(*c, 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn modal_series_obey_their_recurrence() {
        let lattice = path(3, 1.0);
        // Mixed-mode initial data.
        let current = vec![0.3, -0.8, 0.5];
        let previous = vec![0.1, 0.2, -0.4];
        let trajectory = run(&lattice, current, previous, 40).unwrap();
        for mode in laplacian_eigenmodes(&lattice) {
            let series = modal_coefficients(&trajectory, &mode).unwrap();
            let residual = verify_modal_recurrence(&series, lattice.courant());
            assert!(residual < 1e-12, "mode {}: residual {residual}", mode.index);
        }
    }

    #[test]
    fn zero_series_has_zero_residual() {
        let series =
            ModalSeries { mode_index: 0, eigenvalue: 1.0, coefficients: vec![0.0; 10] };
        assert_eq!(verify_modal_recurrence(&series, 1.0), 0.0);
    }

    #[test]
    fn modal_period_closed_forms() {
        let lambda1 = 4.0 * (PI / 8.0).sin().powi(2);
        assert_abs_diff_eq!(modal_period(1.0, lambda1).unwrap(), 8.0, epsilon = 1e-9);
        assert_abs_diff_eq!(modal_period(1.0, 2.0).unwrap(), 4.0, epsilon = 1e-12);
        assert_eq!(modal_period(1.0, 0.0), None);
    }

    #[test]
    fn sub_unit_courant_keeps_every_path_mode_periodic() {
        for courant in [0.5, 0.9, 1.0] {
            let lattice = path(6, courant);
            for mode in laplacian_eigenmodes(&lattice) {
                let b = lattice.modal_coefficient(mode.eigenvalue);
                assert!(b.abs() < 2.0, "mode {} escaped: B = {b}", mode.index);
                assert!(modal_period(courant, mode.eigenvalue).is_some());
            }
        }
    }

    #[test]
    fn cycle_modal_series_repeat_at_their_continuous_periods() {
        // Cycle N = 6 at c = 1: lambda in {0, 1, 1, 3, 3, 4}, so the interior
        // modes have T = 6 and T = 3 while the boundary modes carry none.
        let lattice = cycle(6, 1.0);
        let current = vec![0.6, -0.1, 0.3, 0.2, -0.5, 0.1];
        let previous = vec![0.2, 0.4, -0.3, 0.1, 0.0, -0.2];
        let trajectory = run(&lattice, current, previous, 36).unwrap();
        for mode in laplacian_eigenmodes(&lattice) {
            let series = modal_coefficients(&trajectory, &mode).unwrap();
            let seq = TermSequence::new(series.coefficients.clone()).unwrap();
            match modal_period(1.0, mode.eigenvalue) {
                Some(period) => {
                    let p = period.round();
                    assert!((period - p).abs() < 1e-9, "mode {}", mode.index);
                    assert_eq!(
                        detect_exact_period(&seq, 1e-9),
                        Some(p as usize),
                        "mode {}",
                        mode.index
                    );
                }
                None => assert!(
                    mode.eigenvalue < 1e-12 || (mode.eigenvalue - 4.0).abs() < 1e-12,
                    "only the B = +-2 boundary modes lack a period"
                ),
            }
        }
    }

    #[test]
    fn modal_casimir_is_conserved_over_long_runs() {
        let lattice = path(4, 0.8);
        let current = vec![0.9, -0.2, 0.4, 0.1];
        let previous = vec![0.3, 0.3, -0.5, 0.2];
        let trajectory = run(&lattice, current, previous, 10_000).unwrap();
        for mode in laplacian_eigenmodes(&lattice) {
            let b = lattice.modal_coefficient(mode.eigenvalue);
            let series = modal_coefficients(&trajectory, &mode).unwrap();
            let params = RecurrenceParams::new(
                0.0,
                b,
                -1.0,
                series.coefficients[0],
                series.coefficients[1],
            )
            .unwrap();
            let g = &series.coefficients;
            let reference = casimir_invariant(&params, g[0], g[1]).unwrap();
            let scale = reference.abs().max(1.0);
            for w in g.windows(2) {
                let k = casimir_invariant(&params, w[0], w[1]).unwrap();
                assert!(
                    (k - reference).abs() <= 1e-9 * scale,
                    "mode {} drifted: {} vs {}",
                    mode.index,
                    k,
                    reference
                );
            }
        }
    }

    proptest! {
        #[test]
        fn stepping_is_linear(
            a in proptest::collection::vec(-2.0f64..2.0, 5),
            b in proptest::collection::vec(-2.0f64..2.0, 5),
            alpha in -3.0f64..3.0,
            beta in -3.0f64..3.0,
        ) {
            let lattice = cycle(5, 0.9);
            let zero = vec![0.0; 5];
            let u = step(&lattice, &WaveState::new(a.clone(), zero.clone()).unwrap()).unwrap();
            let v = step(&lattice, &WaveState::new(b.clone(), zero.clone()).unwrap()).unwrap();
            let combined: Vec<f64> =
                a.iter().zip(&b).map(|(x, y)| alpha * x + beta * y).collect();
            let w = step(&lattice, &WaveState::new(combined, zero).unwrap()).unwrap();
            for i in 0..5 {
                let expected = alpha * u.current[i] + beta * v.current[i];
                prop_assert!((w.current[i] - expected).abs() < 1e-12);
            }
        }
    }
}
