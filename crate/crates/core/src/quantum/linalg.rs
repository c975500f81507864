//! Small dense Hermitian eigenvalue solver (cyclic Jacobi with complex
//! rotations). Sized for the dim ≤ 64 systems this crate targets.

use ndarray::Array2;
use num_complex::Complex64 as C64;

fn off_diagonal_norm(m: &Array2<C64>) -> f64 {
    let n = m.nrows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                sum += m[[i, j]].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// The anti-Hermitian part of the input is discarded, so callers should
/// validate Hermiticity first when it matters.
pub fn hermitian_eigenvalues(a: &Array2<C64>) -> Vec<f64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "matrix must be square");
    if n == 0 {
        return Vec::new();
    }
    // Work on the Hermitian average so rounding asymmetry cannot bias sweeps.
    let mut m = Array2::<C64>::zeros((n, n));
    for i in 0..n {
        for j in 0..n {
            m[[i, j]] = (a[[i, j]] + a[[j, i]].conj()) * 0.5;
        }
    }
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max).max(1.0);

    for _sweep in 0..100 {
        if off_diagonal_norm(&m) <= 1e-14 * scale {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m[[p, q]];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = m[[p, p]].re;
                let aqq = m[[q, q]].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Columns: B = M G with G_pp = G_qq = c, G_pq = s·phase,
                // G_qp = −s·conj(phase).
                for k in 0..n {
                    let mkp = m[[k, p]];
                    let mkq = m[[k, q]];
                    m[[k, p]] = mkp * c - mkq * s * phase.conj();
                    m[[k, q]] = mkp * s * phase + mkq * c;
                }
                // Rows: M' = G† B.
                for k in 0..n {
                    let mpk = m[[p, k]];
                    let mqk = m[[q, k]];
                    m[[p, k]] = mpk * c - mqk * s * phase;
                    m[[q, k]] = mpk * s * phase.conj() + mqk * c;
                }
                m[[p, q]] = C64::new(0.0, 0.0);
                m[[q, p]] = C64::new(0.0, 0.0);
            }
        }
    }

    let mut eigs: Vec<f64> = m.diag().iter().map(|z| z.re).collect();
    eigs.sort_by(|a, b| a.total_cmp(b));
    eigs
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn pauli_x_eigenvalues() {
        let mut sx = Array2::<C64>::zeros((2, 2));
        sx[[0, 1]] = C64::new(1.0, 0.0);
        sx[[1, 0]] = C64::new(1.0, 0.0);
        let e = hermitian_eigenvalues(&sx);
        assert_abs_diff_eq!(e[0], -1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(e[1], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn complex_hermitian_trace_moments() {
        // Independent oracle: Σλ^k must equal Tr(A^k) for k = 1, 2, 3.
        let entries = [
            [(1.3, 0.0), (0.2, -0.7), (0.0, 0.4)],
            [(0.2, 0.7), (-0.5, 0.0), (1.1, 0.3)],
            [(0.0, -0.4), (1.1, -0.3), (0.8, 0.0)],
        ];
        let mut a = Array2::<C64>::zeros((3, 3));
        for i in 0..3 {
            for j in 0..3 {
                a[[i, j]] = C64::new(entries[i][j].0, entries[i][j].1);
            }
        }
        let e = hermitian_eigenvalues(&a);
        let a2 = a.dot(&a);
        let a3 = a2.dot(&a);
        let tr = |m: &Array2<C64>| m.diag().iter().map(|z| z.re).sum::<f64>();
        assert_abs_diff_eq!(e.iter().sum::<f64>(), tr(&a), epsilon = 1e-10);
        assert_abs_diff_eq!(
            e.iter().map(|x| x * x).sum::<f64>(),
            tr(&a2),
            epsilon = 1e-10
        );
        assert_abs_diff_eq!(
            e.iter().map(|x| x * x * x).sum::<f64>(),
            tr(&a3),
            epsilon = 1e-9
        );
    }
}
