//! Dense complex linear algebra for small level systems: state types,
//! Schrödinger and Lindblad integrators, and fidelity/distance metrics.
//!
//! All times are in ns and all rates and amplitudes in rad/ns (ħ = 1).
//! Integration is fixed-step fourth-order Runge-Kutta with no renormalization;
//! norm and trace drift are measured diagnostics, not hidden by the solver.

mod evolve;
mod linalg;
mod metrics;

pub use evolve::{evolve_lindblad, evolve_schrodinger};
pub use linalg::hermitian_eigenvalues;
pub use metrics::{fidelity_mixed, fidelity_pure, max_state_distance, transfer_efficiency};

use std::sync::Arc;

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use thiserror::Error;

/// Allowed deviation of `Σ|ψ_n|²` from 1 at construction.
pub const NORM_TOL: f64 = 1e-9;
/// Allowed `max |ρ − ρ†|` entry residual.
pub const HERMITICITY_TOL: f64 = 1e-10;
/// Allowed deviation of `Tr ρ` from 1.
pub const TRACE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum QuantumError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("state not normalized: Σ|ψ|² = {norm_sq}")]
    NotNormalized { norm_sq: f64 },
    #[error("matrix not Hermitian: max |A − A†| = {residual:e}")]
    NotHermitian { residual: f64 },
    #[error("density matrix trace is {trace}, expected 1")]
    BadTrace { trace: f64 },
    #[error("collapse rate must be ≥ 0, got {rate}")]
    NegativeRate { rate: f64 },
    #[error("non-Hermitian Hamiltonian sample at t = {t} ns: max |H − H†| = {residual:e}")]
    NonHermitianSample { t: f64, residual: f64 },
    #[error("invalid time grid: t_start = {t_start}, t_end = {t_end}, n_steps = {n_steps}")]
    InvalidGrid {
        t_start: f64,
        t_end: f64,
        n_steps: usize,
    },
    #[error("trajectories are not on the same time grid")]
    GridMismatch,
    #[error("level {level} out of range for dimension {dim}")]
    LevelOutOfRange { level: usize, dim: usize },
    #[error("matrix is not square: {rows}×{cols}")]
    NotSquare { rows: usize, cols: usize },
}

fn hermiticity_residual(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            let r = (m[[i, j]] - m[[j, i]].conj()).norm();
            if r > worst {
                worst = r;
            }
        }
    }
    worst
}

/// Pure quantum state: a normalized complex amplitude vector.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Array1<C64>,
}

impl StateVector {
    /// Build from amplitudes, rejecting vectors whose quadrature sum deviates
    /// from 1 by more than [`NORM_TOL`].
    pub fn new(amps: Array1<C64>) -> Result<Self, QuantumError> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(QuantumError::NotNormalized { norm_sq });
        }
        Ok(Self { amps })
    }

    /// Basis state `|level⟩` (0-indexed) in `dim` dimensions.
    pub fn basis(dim: usize, level: usize) -> Result<Self, QuantumError> {
        if level >= dim {
            return Err(QuantumError::LevelOutOfRange { level, dim });
        }
        let mut amps = Array1::zeros(dim);
        amps[level] = C64::new(1.0, 0.0);
        Ok(Self { amps })
    }

    /// Normalize an arbitrary nonzero vector.
    pub fn normalized(amps: Array1<C64>) -> Result<Self, QuantumError> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        if norm_sq <= 0.0 {
            return Err(QuantumError::NotNormalized { norm_sq });
        }
        Ok(Self {
            amps: amps / C64::new(norm_sq.sqrt(), 0.0),
        })
    }

    // Integrator output path: drift is tracked as a diagnostic instead of
    // being rejected or renormalized away.
    pub(crate) fn from_integration(amps: Array1<C64>) -> Self {
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64, QuantumError> {
        if self.dim() != other.dim() {
            return Err(QuantumError::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    /// Occupation probability of one level.
    pub fn population(&self, level: usize) -> Result<f64, QuantumError> {
        if level >= self.dim() {
            return Err(QuantumError::LevelOutOfRange {
                level,
                dim: self.dim(),
            });
        }
        Ok(self.amps[level].norm_sqr())
    }
}

/// Mixed quantum state: Hermitian, unit-trace density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    mat: Array2<C64>,
}

impl DensityMatrix {
    /// Build from entries, rejecting matrices that are not square, not
    /// Hermitian within [`HERMITICITY_TOL`], or whose trace deviates from 1
    /// by more than [`TRACE_TOL`].
    pub fn new(mat: Array2<C64>) -> Result<Self, QuantumError> {
        if mat.nrows() != mat.ncols() {
            return Err(QuantumError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let residual = hermiticity_residual(&mat);
        if residual > HERMITICITY_TOL {
            return Err(QuantumError::NotHermitian { residual });
        }
        let trace = mat.diag().iter().map(|z| z.re).sum::<f64>();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(QuantumError::BadTrace { trace });
        }
        Ok(Self { mat })
    }

    /// Projector `|ψ⟩⟨ψ|` onto a pure state.
    pub fn pure(state: &StateVector) -> Self {
        let n = state.dim();
        let mut mat = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                mat[[i, j]] = state.amps[i] * state.amps[j].conj();
            }
        }
        Self { mat }
    }

    /// `I/N`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let mut mat = Array2::zeros((dim, dim));
        for i in 0..dim {
            mat[[i, i]] = C64::new(1.0 / dim as f64, 0.0);
        }
        Self { mat }
    }

    pub(crate) fn from_integration(mat: Array2<C64>) -> Self {
        Self { mat }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn entries(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn trace(&self) -> f64 {
        self.mat.diag().iter().map(|z| z.re).sum()
    }

    pub fn hermiticity_residual(&self) -> f64 {
        hermiticity_residual(&self.mat)
    }

    /// Smallest eigenvalue; negative values beyond integrator tolerance
    /// signal loss of positivity.
    pub fn min_eigenvalue(&self) -> f64 {
        hermitian_eigenvalues(&self.mat)
            .into_iter()
            .fold(f64::INFINITY, f64::min)
    }

    /// Diagonal occupation of one level.
    pub fn population(&self, level: usize) -> Result<f64, QuantumError> {
        if level >= self.dim() {
            return Err(QuantumError::LevelOutOfRange {
                level,
                dim: self.dim(),
            });
        }
        Ok(self.mat[[level, level]].re)
    }
}

type HamiltonianEval = dyn Fn(f64) -> Array2<C64> + Send + Sync;

/// Time-dependent Hamiltonian `t (ns) → H(t)` with entries in rad/ns.
///
/// Every sample must be Hermitian; the integrators reject non-Hermitian
/// samples with a diagnostic.
#[derive(Clone)]
pub struct HamiltonianFn {
    dim: usize,
    eval: Arc<HamiltonianEval>,
}

impl HamiltonianFn {
    pub fn new<F>(dim: usize, eval: F) -> Self
    where
        F: Fn(f64) -> Array2<C64> + Send + Sync + 'static,
    {
        Self {
            dim,
            eval: Arc::new(eval),
        }
    }

    /// Constant Hamiltonian; the matrix is validated once here.
    pub fn constant(mat: Array2<C64>) -> Result<Self, QuantumError> {
        if mat.nrows() != mat.ncols() {
            return Err(QuantumError::NotSquare {
                rows: mat.nrows(),
                cols: mat.ncols(),
            });
        }
        let residual = hermiticity_residual(&mat);
        if residual > 1e-12 {
            return Err(QuantumError::NotHermitian { residual });
        }
        let dim = mat.nrows();
        Ok(Self::new(dim, move |_| mat.clone()))
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(dim, move |_| Array2::zeros((dim, dim)))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn sample(&self, t: f64) -> Array2<C64> {
        (self.eval)(t)
    }
}

impl std::fmt::Debug for HamiltonianFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HamiltonianFn(dim = {})", self.dim)
    }
}

/// Lindblad operator plus rate, in the half-rate convention
/// `ρ̇ ⊇ (rate/2)·(2AρA† − A†Aρ − ρA†A)`.
#[derive(Debug, Clone)]
pub struct CollapseChannel {
    operator: Array2<C64>,
    rate: f64,
}

impl CollapseChannel {
    pub fn new(operator: Array2<C64>, rate: f64) -> Result<Self, QuantumError> {
        if operator.nrows() != operator.ncols() {
            return Err(QuantumError::NotSquare {
                rows: operator.nrows(),
                cols: operator.ncols(),
            });
        }
        if rate < 0.0 {
            return Err(QuantumError::NegativeRate { rate });
        }
        Ok(Self { operator, rate })
    }

    pub fn operator(&self) -> &Array2<C64> {
        &self.operator
    }

    pub fn rate(&self) -> f64 {
        self.rate
    }

    pub fn dim(&self) -> usize {
        self.operator.nrows()
    }
}

/// Collective decay `S₋ = Σ_m |m⟩⟨N|` from the shared excited level into
/// every lower level.
pub fn collective_decay(dim: usize, rate: f64) -> Result<CollapseChannel, QuantumError> {
    let mut op = Array2::zeros((dim, dim));
    for m in 0..dim - 1 {
        op[[m, dim - 1]] = C64::new(1.0, 0.0);
    }
    CollapseChannel::new(op, rate)
}

/// Dephasing projector `S₊ = Σ_{m≥1} |m⟩⟨m|` onto everything above the
/// lowest level.
pub fn excited_dephasing(dim: usize, rate: f64) -> Result<CollapseChannel, QuantumError> {
    let mut op = Array2::zeros((dim, dim));
    for m in 1..dim {
        op[[m, m]] = C64::new(1.0, 0.0);
    }
    CollapseChannel::new(op, rate)
}

/// Uniform time grid over `[t_start, t_end]` with `n_steps` equal steps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeGrid {
    t_start: f64,
    t_end: f64,
    n_steps: usize,
}

/// Default integration step count per protocol duration.
pub const DEFAULT_STEPS: usize = 4000;

impl TimeGrid {
    pub fn new(t_start: f64, t_end: f64, n_steps: usize) -> Result<Self, QuantumError> {
        if !(t_end > t_start) || n_steps == 0 || !t_start.is_finite() || !t_end.is_finite() {
            return Err(QuantumError::InvalidGrid {
                t_start,
                t_end,
                n_steps,
            });
        }
        Ok(Self {
            t_start,
            t_end,
            n_steps,
        })
    }

    /// `[0, duration]` at the default step density.
    pub fn protocol(duration: f64) -> Result<Self, QuantumError> {
        Self::new(0.0, duration, DEFAULT_STEPS)
    }

    pub fn t_start(&self) -> f64 {
        self.t_start
    }

    pub fn t_end(&self) -> f64 {
        self.t_end
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> f64 {
        (self.t_end - self.t_start) / self.n_steps as f64
    }

    /// Node time `t_k = t_start + k·dt`, for `k = 0..=n_steps`.
    pub fn time(&self, k: usize) -> f64 {
        self.t_start + k as f64 * self.dt()
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..=self.n_steps).map(move |k| self.time(k))
    }
}

/// Time-ordered sequence of states aligned to a [`TimeGrid`]:
/// `states[k]` is the state at `grid.time(k)`.
#[derive(Debug, Clone)]
pub struct Trajectory<S> {
    grid: TimeGrid,
    states: Vec<S>,
}

impl<S> Trajectory<S> {
    pub fn new(grid: TimeGrid, states: Vec<S>) -> Result<Self, QuantumError> {
        if states.len() != grid.n_steps() + 1 {
            return Err(QuantumError::InvalidGrid {
                t_start: grid.t_start(),
                t_end: grid.t_end(),
                n_steps: grid.n_steps(),
            });
        }
        Ok(Self { grid, states })
    }

    pub fn grid(&self) -> &TimeGrid {
        &self.grid
    }

    pub fn states(&self) -> &[S] {
        &self.states
    }

    pub fn final_state(&self) -> &S {
        self.states.last().expect("trajectory is never empty")
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }
}

impl Trajectory<StateVector> {
    /// Largest deviation of the state norm from 1 over the whole run.
    pub fn norm_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

impl Trajectory<DensityMatrix> {
    /// Largest deviation of the trace from 1 over the whole run.
    pub fn trace_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| (s.trace() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Largest Hermiticity residual over the whole run.
    pub fn hermiticity_drift(&self) -> f64 {
        self.states
            .iter()
            .map(|s| s.hermiticity_residual())
            .fold(0.0, f64::max)
    }
}
