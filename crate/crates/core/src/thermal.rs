//! Gibbs states ρ(T) = e^{-H/T}/Z (k_B = 1) plus the closed-form X-state
//! elements and partition function of the effective two-qubit model.

use num_complex::Complex64;
use serde::Serialize;

use crate::effective::EffectiveTwoQubit;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};

/// Temperatures below this are served by the ground-state projector
/// instead of Boltzmann exponentials.
const PROJECTOR_TEMPERATURE: f64 = 1e-6;

/// Degeneracy window when collecting ground levels for the projector path.
const GROUND_DEGENERACY_TOL: f64 = 1e-12;

/// A unit-trace, Hermitian, positive-semidefinite operator. Gibbs-built
/// instances carry ln Z alongside.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: CMatrix,
    log_partition: Option<f64>,
}

impl DensityMatrix {
    /// Thermal state of `h` at temperature `t` via spectral decomposition.
    /// Eigenvalues are shifted by the ground energy before exponentiating;
    /// the shift cancels in the normalization but keeps e^{-E/T} finite.
    pub fn gibbs(h: &CMatrix, t: f64) -> Result<Self> {
        if !(t > 0.0) {
            return Err(Error::NonPositiveTemperature(t));
        }
        let eig = linalg::eigh(h)?;
        let n = eig.values.len();
        let e_min = eig.values.iter().copied().fold(f64::INFINITY, f64::min);

        let (weights, log_partition) = if t < PROJECTOR_TEMPERATURE {
            let mut w = vec![0.0; n];
            let mut count = 0.0;
            for (i, &e) in eig.values.iter().enumerate() {
                if e - e_min <= GROUND_DEGENERACY_TOL {
                    w[i] = 1.0;
                    count += 1.0;
                }
            }
            for x in &mut w {
                *x /= count;
            }
            (w, -e_min / t + count.ln())
        } else {
            let mut w: Vec<f64> = eig.values.iter().map(|&e| (-(e - e_min) / t).exp()).collect();
            let z: f64 = w.iter().sum();
            for x in &mut w {
                *x /= z;
            }
            (w, -e_min / t + z.ln())
        };

        let mut rho = CMatrix::zeros(n, n);
        for (i, &p) in weights.iter().enumerate() {
            if p == 0.0 {
                continue;
            }
            let v = eig.vectors.column(i);
            for r in 0..n {
                for c in 0..n {
                    rho[(r, c)] += Complex64::new(p, 0.0) * v[r] * v[c].conj();
                }
            }
        }
        // symmetrize away accumulation noise
        let rho = (&rho + rho.adjoint()).scale(0.5);
        let trace = rho.trace().re;
        Ok(Self { matrix: rho.scale(1.0 / trace), log_partition: Some(log_partition) })
    }

    /// Wrap an externally built density matrix, validating all invariants.
    pub fn from_matrix(matrix: CMatrix) -> Result<Self> {
        linalg::ensure_hermitian(&matrix).map_err(|_| {
            Error::InvalidDensityMatrix("matrix is not Hermitian".into())
        })?;
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
            return Err(Error::InvalidDensityMatrix(format!(
                "trace is {} instead of 1",
                trace.re
            )));
        }
        let eig = linalg::eigh(&matrix)?;
        if let Some(&min) = eig.values.first() {
            if min < -1e-12 {
                return Err(Error::InvalidDensityMatrix(format!(
                    "negative eigenvalue {min:.3e}"
                )));
            }
        }
        Ok(Self { matrix, log_partition: None })
    }

    pub(crate) fn from_parts(matrix: CMatrix, log_partition: Option<f64>) -> Self {
        Self { matrix, log_partition }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.matrix[(i, j)]
    }

    /// ln Z for Gibbs-built states.
    pub fn log_partition(&self) -> Option<f64> {
        self.log_partition
    }

    /// Z = tr e^{-H/T} for Gibbs-built states; may overflow to infinity at
    /// very low temperature, ln Z never does.
    pub fn partition(&self) -> Option<f64> {
        self.log_partition.map(f64::exp)
    }

    /// tr ρ².
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Row-major JSON dump with entries as (re, im) pairs.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Dump {
            dim: usize,
            entries: Vec<[f64; 2]>,
            log_partition: Option<f64>,
        }
        let n = self.dim();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let z = self.matrix[(r, c)];
                entries.push([z.re, z.im]);
            }
        }
        serde_json::to_string(&Dump { dim: n, entries, log_partition: self.log_partition })
            .expect("density matrix dump cannot fail")
    }
}

/// Partition function of the effective model, Z = 2[cosh(α/2T) + cosh(γ/2T)].
pub fn partition_function(e: &EffectiveTwoQubit, t: f64) -> Result<f64> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature(t));
    }
    Ok(2.0 * ((e.alpha() / (2.0 * t)).cosh() + (e.gamma() / (2.0 * t)).cosh()))
}

/// Unnormalized elements of the thermal X state of the effective model.
/// The corners are Boltzmann factors of ±α/2; the middle block is the
/// exact 2×2 exponential, so `r22` and `r33` differ by the sign of the
/// ω̃ sinh term and `r23` carries the sign -(2g̃/γ) sinh(γ/2T).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateElements {
    pub r11: f64,
    pub r22: f64,
    pub r33: f64,
    pub r44: f64,
    pub r23: f64,
    pub z: f64,
}

pub fn xstate_elements(e: &EffectiveTwoQubit, t: f64) -> Result<XStateElements> {
    if !(t > 0.0) {
        return Err(Error::NonPositiveTemperature(t));
    }
    let a = e.alpha() / (2.0 * t);
    let gamma = e.gamma();
    let (r22, r33, r23) = if gamma == 0.0 {
        (1.0, 1.0, 0.0)
    } else {
        let x = gamma / (2.0 * t);
        let (ch, sh) = (x.cosh(), x.sinh());
        let w_over_gamma = e.omega_diff() / gamma;
        (
            ch - w_over_gamma * sh,
            ch + w_over_gamma * sh,
            -(2.0 * e.coupling / gamma) * sh,
        )
    };
    Ok(XStateElements {
        r11: (-a).exp(),
        r22,
        r33,
        r44: a.exp(),
        r23,
        z: partition_function(e, t)?,
    })
}
