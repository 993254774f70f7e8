//! Dense complex linear algebra for the small (≤ 8×8) Hermitian matrices
//! this crate works with: a cyclic Jacobi eigensolver and a one-sided
//! Jacobi SVD. Both are deterministic and allocation-light; no external
//! eigensolver is pulled in for matrices this small.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = nalgebra::DVector<Complex64>;

/// Maximum cyclic sweeps before the solver gives up.
const MAX_SWEEPS: usize = 60;

/// Off-diagonal Frobenius norm below `JACOBI_TOL * ||H||_F` counts as diagonal.
const JACOBI_TOL: f64 = 1e-13;

/// Hermiticity tolerance on inputs (scaled by max(1, max-entry)).
const HERMITIAN_TOL: f64 = 1e-12;

/// Eigendecomposition of a Hermitian matrix: `values` ascending,
/// `vectors` column-per-eigenvalue, orthonormal.
#[derive(Debug, Clone)]
pub struct Eigh {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

/// Largest entry-wise deviation of `m` from its own adjoint.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut dev: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

fn max_abs_entry(m: &CMatrix) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

pub fn ensure_hermitian(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::InvalidParameter(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let dev = hermitian_deviation(m);
    if dev > HERMITIAN_TOL * max_abs_entry(m).max(1.0) {
        return Err(Error::NotHermitian { max_dev: dev });
    }
    Ok(())
}

/// Largest entry of the commutator `a b - b a`.
pub fn commutator_max(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs_entry(&(a * b - b * a))
}

/// Largest entry-wise difference between two matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    max_abs_entry(&(a - b))
}

fn off_diagonal_norm(a: &CMatrix) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for p in 0..n {
        for q in (p + 1)..n {
            s += a[(p, q)].norm_sqr();
        }
    }
    (2.0 * s).sqrt()
}

/// Rotation parameters (c, s, e^{iφ}) that annihilate the (p,q) entry of the
/// Hermitian 2×2 block [[app, apq], [conj(apq), aqq]].
fn rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let m = apq.norm();
    let phase = apq / m;
    let tau = (aqq - app) / (2.0 * m);
    // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
    let t = if tau.abs() > 1e150 {
        0.5 / tau
    } else if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c, phase)
}

/// Eigendecomposition of a complex Hermitian matrix by cyclic Jacobi
/// rotations. Eigenvalues ascend; degenerate groups (within 1e-12·||H||_F)
/// are ordered by the index of each eigenvector's dominant basis component
/// so the output is deterministic.
pub fn eigh(h: &CMatrix) -> Result<Eigh> {
    ensure_hermitian(h)?;
    let n = h.nrows();
    let scale = h.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let mut a = h.clone();
    let mut v = CMatrix::identity(n, n);

    if scale > 0.0 {
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            if off_diagonal_norm(&a) <= JACOBI_TOL * scale {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a[(p, q)];
                    if apq.norm() == 0.0 {
                        continue;
                    }
                    let (c, s, phase) = rotation(a[(p, p)].re, a[(q, q)].re, apq);
                    let (cs, sp, sm) = (
                        Complex64::new(c, 0.0),
                        s * phase,
                        s * phase.conj(),
                    );
                    // A <- A U  (columns p, q)
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = cs * akp + sm * akq;
                        a[(k, q)] = -sp * akp + cs * akq;
                    }
                    // A <- U† A  (rows p, q)
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = cs * apk + sp * aqk;
                        a[(q, k)] = -sm * apk + cs * aqk;
                    }
                    // exact zeros on the annihilated pair
                    a[(p, q)] = Complex64::new(0.0, 0.0);
                    a[(q, p)] = Complex64::new(0.0, 0.0);
                    // V <- V U
                    for k in 0..n {
                        let vkp = v[(k, p)];
                        let vkq = v[(k, q)];
                        v[(k, p)] = cs * vkp + sm * vkq;
                        v[(k, q)] = -sp * vkp + cs * vkq;
                    }
                }
            }
        }
        if !converged && off_diagonal_norm(&a) > JACOBI_TOL * scale {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));

    // deterministic ordering inside degenerate clusters
    let tie = 1e-12 * scale.max(1.0);
    let dominant = |col: usize| -> usize {
        let mut best = 0;
        let mut mag = -1.0;
        for k in 0..n {
            let nk = v[(k, col)].norm();
            if nk > mag + 1e-15 {
                mag = nk;
                best = k;
            }
        }
        best
    };
    let mut i = 0;
    while i < n {
        let mut j = i + 1;
        while j < n && (diag[order[j]] - diag[order[i]]).abs() <= tie {
            j += 1;
        }
        if j - i > 1 {
            order[i..j].sort_by_key(|&c| dominant(c));
        }
        i = j;
    }

    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &v.column(src));
    }
    Ok(Eigh { values, vectors })
}

/// Singular values of a square complex matrix by one-sided Jacobi,
/// descending. Column pairs are rotated until mutually orthogonal to
/// relative precision, which keeps small singular values accurate in
/// a relative sense instead of drowning them in ||B||-scale noise.
pub fn singular_values(b: &CMatrix) -> Result<Vec<f64>> {
    let n = b.ncols();
    let mut a = b.clone();
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum();
    if total == 0.0 {
        return Ok(vec![0.0; n]);
    }

    let eps = 1e-14;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut gpp = 0.0;
                let mut gqq = 0.0;
                let mut gpq = Complex64::new(0.0, 0.0);
                for k in 0..a.nrows() {
                    gpp += a[(k, p)].norm_sqr();
                    gqq += a[(k, q)].norm_sqr();
                    gpq += a[(k, p)].conj() * a[(k, q)];
                }
                if gpq.norm() <= eps * (gpp * gqq).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s, phase) = rotation(gpp, gqq, gpq);
                let (cs, sp, sm) = (
                    Complex64::new(c, 0.0),
                    s * phase,
                    s * phase.conj(),
                );
                for k in 0..a.nrows() {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = cs * akp + sm * akq;
                    a[(k, q)] = -sp * akp + cs * akq;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
    }

    let mut sigma: Vec<f64> = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    sigma.sort_by(|x, y| y.total_cmp(x));
    Ok(sigma)
}
