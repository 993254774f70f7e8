//! Schrieffer-Wolff reduction of the three-mode chain to an effective
//! two-qubit model, and the closed-form eigensystem of that model.
//!
//! Convention: σᶻ = diag(1, -1) on (|0⟩, |1⟩), so the 4×4 effective
//! Hamiltonian carries +α/2 on |00⟩. The source's E₁/E₂ and E₃/E₄ labels
//! are swapped relative to this matrix; eigenpairs returned here are
//! consistent with the matrix itself.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Advisory bound on |g_j/Δ_j| beyond which the dispersive reduction
/// becomes questionable.
pub const DISPERSIVE_RATIO: f64 = 0.1;

/// The bare three-mode exchange chain: two qubits, one tunable coupler.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeModeSpins {
    pub omega_1: f64,
    pub omega_2: f64,
    pub omega_c: f64,
    pub g_1: f64,
    pub g_2: f64,
    pub g_12: f64,
}

impl ThreeModeSpins {
    /// Detunings Δ_j = ω_j - ω_c.
    pub fn detunings(&self) -> (f64, f64) {
        (self.omega_1 - self.omega_c, self.omega_2 - self.omega_c)
    }

    /// Schrieffer-Wolff reduction: Lamb-shifted frequencies
    /// ω̃_j = ω_j + g_j²/Δ_j and effective coupling
    /// g̃ = g₁g₂(1/Δ₁ + 1/Δ₂) + g₁₂.
    pub fn swt_reduce(&self) -> Result<EffectiveTwoQubit> {
        let (d1, d2) = self.detunings();
        if d1 == 0.0 {
            return Err(Error::ResonantCoupler { qubit: 1 });
        }
        if d2 == 0.0 {
            return Err(Error::ResonantCoupler { qubit: 2 });
        }
        Ok(EffectiveTwoQubit {
            omega_1: self.omega_1 + self.g_1 * self.g_1 / d1,
            omega_2: self.omega_2 + self.g_2 * self.g_2 / d2,
            coupling: self.g_1 * self.g_2 * (1.0 / d1 + 1.0 / d2) + self.g_12,
        })
    }

    /// One advisory per qubit whose coupling-to-detuning ratio exceeds the
    /// dispersive bound. Warnings only; the reduction still runs.
    pub fn dispersive_advisories(&self) -> Vec<String> {
        let (d1, d2) = self.detunings();
        let mut out = Vec::new();
        for (j, g, d) in [(1, self.g_1, d1), (2, self.g_2, d2)] {
            if d != 0.0 && (g / d).abs() > DISPERSIVE_RATIO {
                out.push(format!(
                    "dispersive assumption strained for qubit {j}: |g_{j}/Δ_{j}| = {:.3} > {DISPERSIVE_RATIO}",
                    (g / d).abs()
                ));
            }
        }
        out
    }
}

/// The reduced two-qubit model: Lamb-shifted frequencies and the
/// effective exchange coupling g̃.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTwoQubit {
    pub omega_1: f64,
    pub omega_2: f64,
    pub coupling: f64,
}

impl EffectiveTwoQubit {
    pub fn new(omega_1: f64, omega_2: f64, coupling: f64) -> Self {
        Self { omega_1, omega_2, coupling }
    }

    /// α = ω̃₁ + ω̃₂.
    pub fn alpha(&self) -> f64 {
        self.omega_1 + self.omega_2
    }

    /// ω̃ = ω̃₁ - ω̃₂.
    pub fn omega_diff(&self) -> f64 {
        self.omega_1 - self.omega_2
    }

    /// γ = √(4g̃² + ω̃²).
    pub fn gamma(&self) -> f64 {
        let w = self.omega_diff();
        let g2 = 2.0 * self.coupling;
        (g2 * g2 + w * w).sqrt()
    }

    /// ξ = γ - ω̃ ≥ 0, evaluated without cancellation.
    pub fn xi(&self) -> f64 {
        let w = self.omega_diff();
        let gamma = self.gamma();
        if w > 0.0 {
            4.0 * self.coupling * self.coupling / (gamma + w)
        } else {
            gamma - w
        }
    }

    /// ζ = -(ω̃ + γ) ≤ 0, evaluated without cancellation.
    pub fn zeta(&self) -> f64 {
        let w = self.omega_diff();
        let gamma = self.gamma();
        if w < 0.0 {
            -4.0 * self.coupling * self.coupling / (gamma - w)
        } else {
            -(w + gamma)
        }
    }

    /// The 4×4 matrix diag(α/2, ω̃/2, -ω̃/2, -α/2) with g̃ coupling the
    /// middle block, in basis |00⟩, |01⟩, |10⟩, |11⟩. Traceless, Hermitian.
    pub fn hamiltonian(&self) -> CMatrix {
        let re = |x: f64| Complex64::new(x, 0.0);
        let mut h = CMatrix::zeros(4, 4);
        let (a, w) = (self.alpha(), self.omega_diff());
        h[(0, 0)] = re(0.5 * a);
        h[(1, 1)] = re(0.5 * w);
        h[(2, 2)] = re(-0.5 * w);
        h[(3, 3)] = re(-0.5 * a);
        h[(1, 2)] = re(self.coupling);
        h[(2, 1)] = re(self.coupling);
        h
    }

    /// Closed-form eigensystem of [`Self::hamiltonian`].
    pub fn eigensystem(&self) -> EigenSystem4 {
        let (a, w, g) = (self.alpha(), self.omega_diff(), self.coupling);
        let gamma = self.gamma();
        let re = |x: f64| Complex64::new(x, 0.0);

        let mut states = CMatrix::zeros(4, 4);
        states[(3, 0)] = re(1.0); // |11⟩ at -α/2
        states[(0, 1)] = re(1.0); // |00⟩ at +α/2

        let degenerate = gamma == 0.0;
        if degenerate {
            // g̃ = ω̃ = 0: the middle block is zero, any basis works;
            // report the computational one.
            states[(1, 2)] = re(1.0);
            states[(2, 3)] = re(1.0);
        } else if g == 0.0 {
            // pure detuning: middle eigenvectors are the basis states
            let (lo, hi) = if w > 0.0 { (2, 1) } else { (1, 2) };
            states[(lo, 2)] = re(1.0);
            states[(hi, 3)] = re(1.0);
        } else {
            // φ₊ ∝ |01⟩ + ξ/(2g̃) |10⟩ at +γ/2; φ₋ ∝ |01⟩ + ζ/(2g̃) |10⟩
            // at -γ/2. Built from the cancellation-free ξ, ζ and
            // canonicalized so the dominant component is positive.
            let tp = self.xi() / (2.0 * g);
            let tm = self.zeta() / (2.0 * g);
            for (col, t) in [(3usize, tp), (2usize, tm)] {
                let norm = (1.0 + t * t).sqrt();
                let (mut c01, mut c10) = (1.0 / norm, t / norm);
                let dominant = if c10.abs() > c01.abs() { c10 } else { c01 };
                if dominant < 0.0 {
                    c01 = -c01;
                    c10 = -c10;
                }
                states[(1, col)] = re(c01);
                states[(2, col)] = re(c10);
            }
        }

        EigenSystem4 {
            energies: [-0.5 * a, 0.5 * a, -0.5 * gamma, 0.5 * gamma],
            states,
            degenerate,
        }
    }
}

/// Eigensystem of the effective Hamiltonian in the source's labeling
/// (E₁..E₄) = (-α/2, +α/2, -γ/2, +γ/2); `states` holds the matching
/// eigenvectors as columns, orthonormal.
#[derive(Debug, Clone)]
pub struct EigenSystem4 {
    pub energies: [f64; 4],
    pub states: CMatrix,
    pub degenerate: bool,
}

/// Full numeric eigensystem of a Hermitian matrix; the independent
/// cross-check for the closed forms above and the workhorse for the 8×8
/// chain benchmark.
pub fn numeric_eigensystem(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    let eig = crate::linalg::eigh(h)?;
    Ok((eig.values, eig.vectors))
}
