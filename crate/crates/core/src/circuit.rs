//! Circuit-level model: flux-tunable junction energies, transmon mode
//! frequencies, the 3×3 capacitance matrix of the qubit–coupler–qubit
//! layout, and the coupling strengths it induces.
//!
//! All energies are dimensionless (ħ = 1); flux is given in units of the
//! superconducting flux quantum Φ₀, so only the ratio Φ_e/Φ₀ ever enters.

use std::f64::consts::PI;

use nalgebra::Matrix3;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ratio above which one capacitance no longer counts as "much smaller"
/// than another in the hierarchy check.
pub const HIERARCHY_RATIO: f64 = 0.2;

/// A two-junction SQUID loop: left/right Josephson energies plus the
/// external flux bias threading the loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JunctionPair {
    e_j_left: f64,
    e_j_right: f64,
    flux_bias: f64,
}

impl JunctionPair {
    pub fn new(e_j_left: f64, e_j_right: f64, flux_bias: f64) -> Result<Self> {
        if !(e_j_left >= 0.0) || !(e_j_right >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "junction energies must be non-negative, got ({e_j_left}, {e_j_right})"
            )));
        }
        if e_j_left + e_j_right == 0.0 {
            return Err(Error::InvalidParameter(
                "junction energies sum to zero; asymmetry undefined".into(),
            ));
        }
        Ok(Self { e_j_left, e_j_right, flux_bias })
    }

    /// Sum of the two junction energies.
    pub fn total_energy(&self) -> f64 {
        self.e_j_left + self.e_j_right
    }

    /// Junction asymmetry d ∈ [-1, 1].
    pub fn asymmetry(&self) -> f64 {
        (self.e_j_left - self.e_j_right) / self.total_energy()
    }

    pub fn flux_bias(&self) -> f64 {
        self.flux_bias
    }

    /// Flux-tunable effective Josephson energy
    /// E_J = E_{J,T} √(cos²(πf) + d² sin²(πf)).
    ///
    /// Periodic in the flux bias with period 1 and even about 0; ranges
    /// from |E_L - E_R| at half-integer flux to E_L + E_R at integer flux.
    pub fn tunable_energy(&self) -> f64 {
        let (s, c) = (PI * self.flux_bias).sin_cos();
        let d = self.asymmetry();
        self.total_energy() * (c * c + d * d * s * s).sqrt()
    }
}

/// A single transmon mode in the quartic (Duffing) truncation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransmonMode {
    e_c: f64,
    e_j: f64,
}

impl TransmonMode {
    pub fn new(e_c: f64, e_j: f64) -> Result<Self> {
        if !(e_c > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "charging energy must be positive, got {e_c}"
            )));
        }
        if !(e_j >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "Josephson energy must be non-negative, got {e_j}"
            )));
        }
        Ok(Self { e_c, e_j })
    }

    /// Transition frequency ω = √(8 E_J E_C) - E_C. Negative when
    /// E_J/E_C < 1/8; that regime is kept, downstream sweeps use it.
    pub fn frequency(&self) -> f64 {
        (8.0 * self.e_j * self.e_c).sqrt() - self.e_c
    }

    /// Anharmonicity α = -E_C.
    pub fn anharmonicity(&self) -> f64 {
        -self.e_c
    }

    pub fn charging_energy(&self) -> f64 {
        self.e_c
    }

    pub fn josephson_energy(&self) -> f64 {
        self.e_j
    }
}

/// Capacitance layout of the two qubits and the coupler: self
/// capacitances, the two qubit–coupler bridges, and the direct
/// qubit–qubit capacitance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircuitTopology {
    pub c_1: f64,
    pub c_2: f64,
    pub c_c: f64,
    pub c_1c: f64,
    pub c_2c: f64,
    pub c_12: f64,
}

/// Coupling strengths induced by the topology at given mode frequencies.
/// `eta` is absent when there is no direct qubit–qubit capacitance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingSet {
    pub g_1: f64,
    pub g_2: f64,
    pub g_12: f64,
    pub eta: Option<f64>,
}

impl CircuitTopology {
    pub fn new(c_1: f64, c_2: f64, c_c: f64, c_1c: f64, c_2c: f64, c_12: f64) -> Result<Self> {
        for (name, v) in [("c_1", c_1), ("c_2", c_2), ("c_c", c_c)] {
            if !(v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "self capacitance {name} must be positive, got {v}"
                )));
            }
        }
        for (name, v) in [("c_1c", c_1c), ("c_2c", c_2c), ("c_12", c_12)] {
            if !(v >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "coupling capacitance {name} must be non-negative, got {v}"
                )));
            }
        }
        Ok(Self { c_1, c_2, c_c, c_1c, c_2c, c_12 })
    }

    /// The 3×3 capacitance matrix in mode order (1, c, 2). Each row sums
    /// to the bare self capacitance of its mode.
    pub fn capacitance_matrix(&self) -> Matrix3<f64> {
        Matrix3::new(
            self.c_1 + self.c_12 + self.c_1c, -self.c_1c, -self.c_12,
            -self.c_1c, self.c_c + self.c_2c + self.c_1c, -self.c_2c,
            -self.c_12, -self.c_2c, self.c_2 + self.c_12 + self.c_2c,
        )
    }

    /// Inverse of the capacitance matrix; fails only if the matrix is
    /// singular, which a valid topology never produces.
    pub fn inverse_capacitance_matrix(&self) -> Result<Matrix3<f64>> {
        self.capacitance_matrix()
            .try_inverse()
            .ok_or_else(|| Error::InvalidParameter("capacitance matrix is singular".into()))
    }

    /// Whether the capacitance matrix is positive definite (Cholesky).
    pub fn is_positive_definite(&self) -> bool {
        nalgebra::Cholesky::new(self.capacitance_matrix()).is_some()
    }

    /// Ratio η = C_1c C_2c / (C_12 C_c); absent when C_12 = 0.
    pub fn eta(&self) -> Option<f64> {
        (self.c_12 > 0.0).then(|| (self.c_1c * self.c_2c) / (self.c_12 * self.c_c))
    }

    /// Coupling strengths at the given mode frequencies:
    /// g_j = ½ (C_jc/√(C_j C_c)) √(ω_j ω_c) and
    /// g_12 = ½ (1+η) (C_12/√(C_1 C_2)) √(ω_1 ω_2).
    pub fn coupling_strengths(&self, omega_1: f64, omega_2: f64, omega_c: f64) -> Result<CouplingSet> {
        for (pair, prod) in [
            ("ω_1·ω_c", omega_1 * omega_c),
            ("ω_2·ω_c", omega_2 * omega_c),
            ("ω_1·ω_2", omega_1 * omega_2),
        ] {
            if prod < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "negative radicand {pair} = {prod}; coupling strengths undefined"
                )));
            }
        }
        let g_1 = 0.5 * (self.c_1c / (self.c_1 * self.c_c).sqrt()) * (omega_1 * omega_c).sqrt();
        let g_2 = 0.5 * (self.c_2c / (self.c_2 * self.c_c).sqrt()) * (omega_2 * omega_c).sqrt();
        let eta = self.eta();
        let g_12 = match eta {
            Some(eta) => {
                0.5 * (1.0 + eta) * (self.c_12 / (self.c_1 * self.c_2).sqrt())
                    * (omega_1 * omega_2).sqrt()
            }
            None => 0.0,
        };
        Ok(CouplingSet { g_1, g_2, g_12, eta })
    }

    /// Advisory check of the capacitance hierarchy C_12 ≪ C_jc ≪ C_λ.
    /// Returns one warning per violated inequality; never an error, the
    /// downstream math stays well defined.
    pub fn hierarchy_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let mut check = |small: f64, big: f64, what: &str| {
            if small > HIERARCHY_RATIO * big {
                warnings.push(format!(
                    "capacitance hierarchy violated: {what} (ratio {:.3} > {HIERARCHY_RATIO})",
                    small / big
                ));
            }
        };
        check(self.c_12, self.c_1c, "c_12 should be much smaller than c_1c");
        check(self.c_12, self.c_2c, "c_12 should be much smaller than c_2c");
        check(self.c_1c, self.c_1, "c_1c should be much smaller than c_1");
        check(self.c_1c, self.c_c, "c_1c should be much smaller than c_c");
        check(self.c_2c, self.c_2, "c_2c should be much smaller than c_2");
        check(self.c_2c, self.c_c, "c_2c should be much smaller than c_c");
        warnings
    }
}

/// Which of the three circuit modes is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Qubit1,
    Qubit2,
    Coupler,
}

/// Full circuit description as ingested from JSON: capacitances, per-mode
/// charging energies, junction energies and flux biases. Field names are
/// the JSON keys.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircuitParams {
    pub c_1: f64,
    pub c_2: f64,
    pub c_c: f64,
    pub c_1c: f64,
    pub c_2c: f64,
    pub c_12: f64,
    pub e_c_1: f64,
    pub e_c_2: f64,
    pub e_c_c: f64,
    pub e_j_left_1: f64,
    pub e_j_right_1: f64,
    #[serde(default)]
    pub flux_bias_1: f64,
    pub e_j_left_2: f64,
    pub e_j_right_2: f64,
    #[serde(default)]
    pub flux_bias_2: f64,
    pub e_j_left_c: f64,
    pub e_j_right_c: f64,
    #[serde(default)]
    pub flux_bias_c: f64,
}

impl CircuitParams {
    pub fn topology(&self) -> Result<CircuitTopology> {
        CircuitTopology::new(self.c_1, self.c_2, self.c_c, self.c_1c, self.c_2c, self.c_12)
    }

    pub fn junction(&self, mode: Mode) -> Result<JunctionPair> {
        let (l, r, f) = match mode {
            Mode::Qubit1 => (self.e_j_left_1, self.e_j_right_1, self.flux_bias_1),
            Mode::Qubit2 => (self.e_j_left_2, self.e_j_right_2, self.flux_bias_2),
            Mode::Coupler => (self.e_j_left_c, self.e_j_right_c, self.flux_bias_c),
        };
        JunctionPair::new(l, r, f)
    }

    /// Transmon mode at the flux-tuned Josephson energy.
    pub fn transmon(&self, mode: Mode) -> Result<TransmonMode> {
        let e_c = match mode {
            Mode::Qubit1 => self.e_c_1,
            Mode::Qubit2 => self.e_c_2,
            Mode::Coupler => self.e_c_c,
        };
        TransmonMode::new(e_c, self.junction(mode)?.tunable_energy())
    }

    /// Mode frequencies (ω_1, ω_2, ω_c) from the flux-tuned junctions.
    pub fn frequencies(&self) -> Result<(f64, f64, f64)> {
        Ok((
            self.transmon(Mode::Qubit1)?.frequency(),
            self.transmon(Mode::Qubit2)?.frequency(),
            self.transmon(Mode::Coupler)?.frequency(),
        ))
    }

    /// Collapse the whole circuit into the three-mode spin model.
    pub fn to_spins(&self) -> Result<crate::effective::ThreeModeSpins> {
        let (w1, w2, wc) = self.frequencies()?;
        let g = self.topology()?.coupling_strengths(w1, w2, wc)?;
        Ok(crate::effective::ThreeModeSpins {
            omega_1: w1,
            omega_2: w2,
            omega_c: wc,
            g_1: g.g_1,
            g_2: g.g_2,
            g_12: g.g_12,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn tunable_energy_examples() {
        let j = JunctionPair::new(10.0, 10.0, 0.0).unwrap();
        assert_relative_eq!(j.tunable_energy(), 20.0, max_relative = 1e-14);

        let j = JunctionPair::new(12.0, 8.0, 0.5).unwrap();
        assert_relative_eq!(j.tunable_energy(), 4.0, max_relative = 1e-12);

        // independent evaluation: E_T = 20, d = 0.2, 20 sqrt(0.5 + 0.04*0.5)
        let j = JunctionPair::new(12.0, 8.0, 0.25).unwrap();
        assert_relative_eq!(j.tunable_energy(), 14.422205101855958, max_relative = 1e-13);
    }

    #[test]
    fn junction_rejects_zero_sum_and_negative() {
        assert!(JunctionPair::new(0.0, 0.0, 0.0).is_err());
        assert!(JunctionPair::new(-1.0, 2.0, 0.0).is_err());
        assert!(JunctionPair::new(f64::NAN, 2.0, 0.0).is_err());
    }

    #[test]
    fn transmon_examples() {
        let m = TransmonMode::new(0.2, 20.0).unwrap();
        assert_relative_eq!(m.frequency(), 5.45685424949238, max_relative = 1e-13);
        assert_relative_eq!(m.anharmonicity(), -0.2);

        // E_J = E_C/8 sits exactly at zero frequency
        let m = TransmonMode::new(0.4, 0.05).unwrap();
        assert!(m.frequency().abs() < 1e-14);

        let m = TransmonMode::new(1.0, 0.0).unwrap();
        assert_relative_eq!(m.frequency(), -1.0);
        assert_relative_eq!(m.anharmonicity(), -1.0);
    }

    #[test]
    fn transmon_rejects_bad_input() {
        assert!(TransmonMode::new(0.0, 1.0).is_err());
        assert!(TransmonMode::new(0.2, -1.0).is_err());
    }

    #[test]
    fn capacitance_matrix_examples() {
        let t = CircuitTopology::new(100.0, 100.0, 100.0, 0.0, 0.0, 0.0).unwrap();
        let m = t.capacitance_matrix();
        assert_eq!(m, Matrix3::from_diagonal_element(100.0));

        let t = CircuitTopology::new(100.0, 100.0, 200.0, 5.0, 5.0, 0.5).unwrap();
        let m = t.capacitance_matrix();
        assert_eq!(m[(0, 0)], 105.5);
        assert_eq!(m[(1, 1)], 210.0);
        assert_eq!(m[(2, 2)], 105.5);
        assert_eq!(m[(0, 1)], -5.0);
        assert_eq!(m[(0, 2)], -0.5);
        assert_eq!(m[(1, 2)], -5.0);
        assert_eq!(m, m.transpose());
        assert!(t.is_positive_definite());
        assert!(t.inverse_capacitance_matrix().is_ok());
    }

    #[test]
    fn coupling_examples() {
        let t = CircuitTopology::new(100.0, 100.0, 100.0, 0.0, 5.0, 0.5).unwrap();
        let g = t.coupling_strengths(1.0, 1.0, 2.0).unwrap();
        assert_eq!(g.g_1, 0.0);

        let t = CircuitTopology::new(100.0, 100.0, 100.0, 5.0, 5.0, 0.5).unwrap();
        let g = t.coupling_strengths(1.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(g.eta.unwrap(), 0.5, max_relative = 1e-14);
        assert_relative_eq!(g.g_1, 0.03535533905932738, max_relative = 1e-13);
        assert_relative_eq!(g.g_2, 0.03535533905932738, max_relative = 1e-13);
        // ½ (1+η) (C_12/√(C_1 C_2)) √(ω_1 ω_2) = ½ · 1.5 · 0.005 · 1
        assert_relative_eq!(g.g_12, 0.00375, max_relative = 1e-14);

        // doubling c_1c doubles g_1 and eta
        let t2 = CircuitTopology::new(100.0, 100.0, 100.0, 10.0, 5.0, 0.5).unwrap();
        let g2 = t2.coupling_strengths(1.0, 1.0, 2.0).unwrap();
        assert_relative_eq!(g2.g_1, 2.0 * g.g_1, max_relative = 1e-14);
        assert_relative_eq!(g2.eta.unwrap(), 2.0 * g.eta.unwrap(), max_relative = 1e-14);
    }

    #[test]
    fn coupling_without_direct_capacitance() {
        let t = CircuitTopology::new(100.0, 100.0, 100.0, 5.0, 5.0, 0.0).unwrap();
        let g = t.coupling_strengths(1.0, 1.0, 2.0).unwrap();
        assert_eq!(g.g_12, 0.0);
        assert!(g.eta.is_none());
    }

    #[test]
    fn coupling_rejects_negative_radicand() {
        let t = CircuitTopology::new(100.0, 100.0, 100.0, 5.0, 5.0, 0.5).unwrap();
        assert!(t.coupling_strengths(-1.0, 1.0, 2.0).is_err());
        // both qubit frequencies negative is fine, products stay non-negative
        assert!(t.coupling_strengths(-1.0, -1.0, -2.0).is_ok());
    }

    #[test]
    fn hierarchy_warning_examples() {
        let t = CircuitTopology::new(100.0, 100.0, 100.0, 5.0, 5.0, 0.5).unwrap();
        assert!(t.hierarchy_warnings().is_empty());

        let t = CircuitTopology::new(100.0, 100.0, 100.0, 5.0, 5.0, 4.0).unwrap();
        let w = t.hierarchy_warnings();
        assert_eq!(w.len(), 2);
        assert!(w[0].contains("c_12"));

        let t = CircuitTopology::new(100.0, 100.0, 200.0, 50.0, 5.0, 0.5).unwrap();
        let w = t.hierarchy_warnings();
        assert!(w.iter().any(|m| m.contains("c_1c should be much smaller than c_1")));
        assert!(w.iter().any(|m| m.contains("c_1c should be much smaller than c_c")));
    }

    #[test]
    fn circuit_params_json_roundtrip() {
        let json = r#"{
            "c_1": 100.0, "c_2": 100.0, "c_c": 200.0,
            "c_1c": 5.0, "c_2c": 5.0, "c_12": 0.5,
            "e_c_1": 0.2, "e_c_2": 0.2, "e_c_c": 0.3,
            "e_j_left_1": 12.0, "e_j_right_1": 8.0, "flux_bias_1": 0.25,
            "e_j_left_2": 10.0, "e_j_right_2": 10.0,
            "e_j_left_c": 15.0, "e_j_right_c": 15.0, "flux_bias_c": 0.1
        }"#;
        let p: CircuitParams = serde_json::from_str(json).unwrap();
        assert_eq!(p.flux_bias_2, 0.0);
        let spins = p.to_spins().unwrap();
        assert!(spins.omega_c > spins.omega_1);
        let echo = serde_json::to_string(&p).unwrap();
        let p2: CircuitParams = serde_json::from_str(&echo).unwrap();
        assert_eq!(p, p2);
    }

    proptest! {
        #[test]
        fn tunable_energy_periodic_and_even(
            l in 0.1f64..40.0,
            r in 0.0f64..40.0,
            f in -3.0f64..3.0,
        ) {
            let a = JunctionPair::new(l, r, f).unwrap().tunable_energy();
            let b = JunctionPair::new(l, r, f + 1.0).unwrap().tunable_energy();
            let c = JunctionPair::new(l, r, -f).unwrap().tunable_energy();
            prop_assert!((a - b).abs() < 1e-9 * a.max(1.0));
            prop_assert!((a - c).abs() < 1e-9 * a.max(1.0));
            let total = JunctionPair::new(l, r, 0.0).unwrap().tunable_energy();
            let floor = JunctionPair::new(l, r, 0.5).unwrap().tunable_energy();
            prop_assert!(a <= total + 1e-12 * total.max(1.0));
            prop_assert!(a >= floor - 1e-9 * total.max(1.0));
            prop_assert!((total - (l + r)).abs() < 1e-12 * (l + r));
            prop_assert!((floor - (l - r).abs()).abs() < 1e-9 * (l + r));
        }

        #[test]
        fn frequency_increases_with_josephson_energy(
            e_c in 0.01f64..2.0,
            e_j in 0.0f64..50.0,
        ) {
            let m1 = TransmonMode::new(e_c, e_j).unwrap();
            let m2 = TransmonMode::new(e_c, e_j + 0.5).unwrap();
            prop_assert!(m2.frequency() > m1.frequency());
            prop_assert!((m1.frequency() < 0.0) == (e_j / e_c < 0.125));
        }

        #[test]
        fn capacitance_rows_sum_to_self_capacitance(
            c_1 in 1.0f64..500.0,
            c_2 in 1.0f64..500.0,
            c_c in 1.0f64..500.0,
            c_1c in 0.0f64..20.0,
            c_2c in 0.0f64..20.0,
            c_12 in 0.0f64..5.0,
        ) {
            let t = CircuitTopology::new(c_1, c_2, c_c, c_1c, c_2c, c_12).unwrap();
            let m = t.capacitance_matrix();
            let sums = [c_1, c_c, c_2];
            for row in 0..3 {
                let s: f64 = (0..3).map(|col| m[(row, col)]).sum();
                prop_assert!((s - sums[row]).abs() < 1e-9 * sums[row].max(1.0));
            }
            prop_assert!(t.is_positive_definite());
        }

        #[test]
        fn coupling_label_swap_symmetry(
            c_1 in 10.0f64..500.0,
            c_2 in 10.0f64..500.0,
            c_c in 10.0f64..500.0,
            c_1c in 0.0f64..20.0,
            c_2c in 0.0f64..20.0,
            c_12 in 0.001f64..5.0,
            w1 in 0.1f64..8.0,
            w2 in 0.1f64..8.0,
            wc in 0.1f64..8.0,
        ) {
            let t = CircuitTopology::new(c_1, c_2, c_c, c_1c, c_2c, c_12).unwrap();
            let s = CircuitTopology::new(c_2, c_1, c_c, c_2c, c_1c, c_12).unwrap();
            let g = t.coupling_strengths(w1, w2, wc).unwrap();
            let h = s.coupling_strengths(w2, w1, wc).unwrap();
            prop_assert!((g.g_1 - h.g_2).abs() < 1e-12);
            prop_assert!((g.g_2 - h.g_1).abs() < 1e-12);
            prop_assert!((g.g_12 - h.g_12).abs() < 1e-12 * g.g_12.abs().max(1.0));
            prop_assert!((g.eta.unwrap() - h.eta.unwrap()).abs() < 1e-9 * g.eta.unwrap().max(1.0));
        }
    }
}
