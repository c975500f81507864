//! Fidelity and distance metrics for pure and mixed states.

use super::{DensityMatrix, QuantumError, StateVector, Trajectory};

/// `|⟨a|b⟩|²`; invariant under global phase of either argument.
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64, QuantumError> {
    Ok(a.inner(b)?.norm_sqr())
}

/// `⟨target|ρ|target⟩` for a pure target against a mixed state.
pub fn fidelity_mixed(target: &StateVector, rho: &DensityMatrix) -> Result<f64, QuantumError> {
    if target.dim() != rho.dim() {
        return Err(QuantumError::DimensionMismatch {
            expected: target.dim(),
            found: rho.dim(),
        });
    }
    let amps = target.amplitudes();
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for i in 0..target.dim() {
        for j in 0..target.dim() {
            acc += amps[i].conj() * rho.entries()[[i, j]] * amps[j];
        }
    }
    debug_assert!(acc.im.abs() < 1e-10, "fidelity not real: {acc}");
    Ok(acc.re)
}

/// Fidelity of a pure trajectory's final state against a target.
pub fn transfer_efficiency(
    traj: &Trajectory<StateVector>,
    target: &StateVector,
) -> Result<f64, QuantumError> {
    fidelity_pure(traj.final_state(), target)
}

/// Largest trace distance between two pure trajectories over their shared
/// grid; for pure states this is `sqrt(1 − |⟨a|b⟩|²)`.
pub fn max_state_distance(
    a: &Trajectory<StateVector>,
    b: &Trajectory<StateVector>,
) -> Result<f64, QuantumError> {
    if a.grid() != b.grid() {
        return Err(QuantumError::GridMismatch);
    }
    let mut worst = 0.0_f64;
    for (sa, sb) in a.states().iter().zip(b.states().iter()) {
        let overlap = fidelity_pure(sa, sb)?;
        let d_sq = (1.0 - overlap).max(0.0);
        if d_sq > worst {
            worst = d_sq;
        }
    }
    Ok(worst.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{HamiltonianFn, TimeGrid};
    use approx::assert_abs_diff_eq;
    use ndarray::Array1;
    use num_complex::Complex64 as C64;

    #[test]
    fn pure_fidelity_examples() {
        let e0 = StateVector::basis(2, 0).unwrap();
        let e1 = StateVector::basis(2, 1).unwrap();
        let plus = StateVector::normalized(Array1::from_vec(vec![
            C64::new(1.0, 0.0),
            C64::new(1.0, 0.0),
        ]))
        .unwrap();
        assert_abs_diff_eq!(fidelity_pure(&e0, &e0).unwrap(), 1.0);
        assert_abs_diff_eq!(fidelity_pure(&e0, &e1).unwrap(), 0.0);
        assert_abs_diff_eq!(fidelity_pure(&e0, &plus).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn pure_fidelity_global_phase_invariance() {
        let a = StateVector::normalized(Array1::from_vec(vec![
            C64::new(0.6, 0.1),
            C64::new(-0.3, 0.74),
        ]))
        .unwrap();
        let b = StateVector::normalized(Array1::from_vec(vec![
            C64::new(0.2, -0.5),
            C64::new(0.84, 0.1),
        ]))
        .unwrap();
        let base = fidelity_pure(&a, &b).unwrap();
        for k in 0..8 {
            let phi = k as f64 * 0.7853981633974483;
            let rot = C64::from_polar(1.0, phi);
            let b_rot =
                StateVector::new(b.amplitudes().mapv(|z| z * rot)).unwrap();
            assert_abs_diff_eq!(fidelity_pure(&a, &b_rot).unwrap(), base, epsilon = 1e-13);
        }
    }

    #[test]
    fn mixed_fidelity_examples() {
        let target = StateVector::basis(4, 1).unwrap();
        let rho = DensityMatrix::pure(&target);
        assert_abs_diff_eq!(fidelity_mixed(&target, &rho).unwrap(), 1.0);
        let mixed = DensityMatrix::maximally_mixed(4);
        assert_abs_diff_eq!(fidelity_mixed(&target, &mixed).unwrap(), 0.25, epsilon = 1e-14);
    }

    #[test]
    fn mixed_fidelity_at_decay_half_life() {
        // Two-level decay at t = ln2/Γ₁ leaves ⟨e|ρ|e⟩ = 1/2.
        use crate::quantum::{evolve_lindblad, CollapseChannel};
        use ndarray::Array2;
        let gamma1 = 0.04;
        let t_half = std::f64::consts::LN_2 / gamma1;
        let mut op = Array2::zeros((2, 2));
        op[[0, 1]] = C64::new(1.0, 0.0);
        let ch = CollapseChannel::new(op, gamma1).unwrap();
        let excited = StateVector::basis(2, 1).unwrap();
        let rho0 = DensityMatrix::pure(&excited);
        let grid = TimeGrid::new(0.0, t_half, 2000).unwrap();
        let traj = evolve_lindblad(&HamiltonianFn::zero(2), &[ch], &rho0, &grid).unwrap();
        assert_abs_diff_eq!(
            fidelity_mixed(&excited, traj.final_state()).unwrap(),
            0.5,
            epsilon = 1e-6
        );
    }

    #[test]
    fn max_distance_trivial_cases() {
        let grid = TimeGrid::new(0.0, 1.0, 2).unwrap();
        let e0 = StateVector::basis(2, 0).unwrap();
        let e1 = StateVector::basis(2, 1).unwrap();
        let a = Trajectory::new(grid, vec![e0.clone(), e0.clone(), e0.clone()]).unwrap();
        assert_abs_diff_eq!(max_state_distance(&a, &a).unwrap(), 0.0);
        let b = Trajectory::new(grid, vec![e0.clone(), e1.clone(), e0.clone()]).unwrap();
        assert_abs_diff_eq!(max_state_distance(&a, &b).unwrap(), 1.0);

        let other_grid = TimeGrid::new(0.0, 2.0, 2).unwrap();
        let c = Trajectory::new(other_grid, vec![e0.clone(), e0.clone(), e0]).unwrap();
        assert!(matches!(
            max_state_distance(&a, &c),
            Err(QuantumError::GridMismatch)
        ));
    }

    #[test]
    fn transfer_efficiency_endpoints() {
        let grid = TimeGrid::new(0.0, 1.0, 1).unwrap();
        let e0 = StateVector::basis(2, 0).unwrap();
        let e1 = StateVector::basis(2, 1).unwrap();
        let traj = Trajectory::new(grid, vec![e0.clone(), e1.clone()]).unwrap();
        assert_abs_diff_eq!(transfer_efficiency(&traj, &e1).unwrap(), 1.0);
        assert_abs_diff_eq!(transfer_efficiency(&traj, &e0).unwrap(), 0.0);
    }
}
