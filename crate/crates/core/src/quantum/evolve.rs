//! Fixed-step fourth-order Runge-Kutta integration of the Schrödinger and
//! Lindblad equations.
//!
//! Sign conventions follow `ρ̇ = i[ρ, H] + Σ (Γ/2)·L(A)` with
//! `L(A)ρ = 2AρA† − A†Aρ − ρA†A`, whose pure-state image is `ψ̇ = −iHψ`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use super::{
    hermiticity_residual, CollapseChannel, DensityMatrix, HamiltonianFn, QuantumError,
    StateVector, TimeGrid, Trajectory,
};

fn checked_sample(h: &HamiltonianFn, t: f64) -> Result<Array2<C64>, QuantumError> {
    let m = h.sample(t);
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let residual = hermiticity_residual(&m);
    if residual > 1e-12 * (1.0 + scale) {
        return Err(QuantumError::NonHermitianSample { t, residual });
    }
    Ok(m)
}

/// Integrate `ψ̇ = −iHψ` from `psi0` over `grid`.
///
/// No renormalization is applied; [`Trajectory::norm_drift`] reports the
/// accumulated integrator error.
pub fn evolve_schrodinger(
    h: &HamiltonianFn,
    psi0: &StateVector,
    grid: &TimeGrid,
) -> Result<Trajectory<StateVector>, QuantumError> {
    if h.dim() != psi0.dim() {
        return Err(QuantumError::DimensionMismatch {
            expected: h.dim(),
            found: psi0.dim(),
        });
    }
    let dt = grid.dt();
    let rhs = |m: &Array2<C64>, psi: &Array1<C64>| -> Array1<C64> {
        let mut d = m.dot(psi);
        d.mapv_inplace(|z| z * C64::new(0.0, -1.0));
        d
    };

    let mut states = Vec::with_capacity(grid.n_steps() + 1);
    states.push(psi0.clone());
    let mut psi = psi0.amplitudes().clone();
    let mut h_start = checked_sample(h, grid.time(0))?;
    for k in 0..grid.n_steps() {
        let t = grid.time(k);
        let h_half = checked_sample(h, t + dt / 2.0)?;
        let h_end = checked_sample(h, grid.time(k + 1))?;
        let k1 = rhs(&h_start, &psi);
        let k2 = rhs(&h_half, &(&psi + &(&k1 * C64::from(dt / 2.0))));
        let k3 = rhs(&h_half, &(&psi + &(&k2 * C64::from(dt / 2.0))));
        let k4 = rhs(&h_end, &(&psi + &(&k3 * C64::from(dt))));
        psi = &psi + &((k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(dt / 6.0));
        states.push(StateVector::from_integration(psi.clone()));
        h_start = h_end;
    }
    Trajectory::new(*grid, states)
}

/// Integrate the Lindblad master equation from `rho0` over `grid`.
pub fn evolve_lindblad(
    h: &HamiltonianFn,
    channels: &[CollapseChannel],
    rho0: &DensityMatrix,
    grid: &TimeGrid,
) -> Result<Trajectory<DensityMatrix>, QuantumError> {
    let dim = rho0.dim();
    if h.dim() != dim {
        return Err(QuantumError::DimensionMismatch {
            expected: h.dim(),
            found: dim,
        });
    }
    for ch in channels {
        if ch.dim() != dim {
            return Err(QuantumError::DimensionMismatch {
                expected: dim,
                found: ch.dim(),
            });
        }
        if ch.rate() < 0.0 {
            return Err(QuantumError::NegativeRate { rate: ch.rate() });
        }
    }
    // Precompute A, A†, A†A per channel.
    let prepared: Vec<(Array2<C64>, Array2<C64>, Array2<C64>, f64)> = channels
        .iter()
        .map(|ch| {
            let a = ch.operator().clone();
            let a_dag = a.t().mapv(|z| z.conj());
            let ada = a_dag.dot(&a);
            (a, a_dag, ada, ch.rate())
        })
        .collect();

    let dt = grid.dt();
    let rhs = |m: &Array2<C64>, rho: &Array2<C64>| -> Array2<C64> {
        let mut d = rho.dot(m) - m.dot(rho);
        d.mapv_inplace(|z| z * C64::new(0.0, 1.0));
        for (a, a_dag, ada, rate) in &prepared {
            if *rate == 0.0 {
                continue;
            }
            let jump = a.dot(rho).dot(a_dag);
            let anti = ada.dot(rho) + rho.dot(ada);
            d = d + (jump * C64::from(2.0) - anti) * C64::from(rate / 2.0);
        }
        d
    };

    let mut states = Vec::with_capacity(grid.n_steps() + 1);
    states.push(rho0.clone());
    let mut rho = rho0.entries().clone();
    let mut h_start = checked_sample(h, grid.time(0))?;
    for k in 0..grid.n_steps() {
        let t = grid.time(k);
        let h_half = checked_sample(h, t + dt / 2.0)?;
        let h_end = checked_sample(h, grid.time(k + 1))?;
        let k1 = rhs(&h_start, &rho);
        let k2 = rhs(&h_half, &(&rho + &(&k1 * C64::from(dt / 2.0))));
        let k3 = rhs(&h_half, &(&rho + &(&k2 * C64::from(dt / 2.0))));
        let k4 = rhs(&h_end, &(&rho + &(&k3 * C64::from(dt))));
        rho = &rho + &((k1 + k2 * C64::from(2.0) + k3 * C64::from(2.0) + k4) * C64::from(dt / 6.0));
        states.push(DensityMatrix::from_integration(rho.clone()));
        h_start = h_end;
    }
    Trajectory::new(*grid, states)
}
