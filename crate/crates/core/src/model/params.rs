use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Boundary condition of the 1D cavity array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    Periodic,
    Open,
}

impl Boundary {
    /// Distinct nearest-neighbour pairs `(j, j+1)` of an `n`-site chain.
    ///
    /// On a two-site ring the wrap-around bond is the same pair as the inner
    /// one and appears once.
    pub fn bonds(self, n: usize) -> Vec<(usize, usize)> {
        let mut b: Vec<(usize, usize)> = (0..n.saturating_sub(1)).map(|j| (j, j + 1)).collect();
        if self == Boundary::Periodic && n > 2 {
            b.push((n - 1, 0));
        }
        b
    }

    /// Hopping links exactly as the sum `Σ_{j=1}^{N} (a†_j a_{j+1} + h.c.)`
    /// enumerates them. On a two-site ring the pair appears twice.
    pub fn hopping_links(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Boundary::Periodic if n >= 2 => (0..n).map(|j| (j, (j + 1) % n)).collect(),
            _ => (0..n.saturating_sub(1)).map(|j| (j, j + 1)).collect(),
        }
    }
}

impl std::fmt::Display for Boundary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Boundary::Periodic => "periodic",
            Boundary::Open => "open",
        })
    }
}

impl std::str::FromStr for Boundary {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "periodic" => Ok(Boundary::Periodic),
            "open" => Ok(Boundary::Open),
            other => Err(Error::Config(format!(
                "boundary must be 'periodic' or 'open', got '{other}'"
            ))),
        }
    }
}

fn unit_length() -> f64 {
    1.0
}

/// Physical parameters of the driven cavity array. Rates in GHz.
///
/// The JSON form uses the keys `N`, `omega0`, `omega_c`, `omega_L`, `g`,
/// `Omega`, `Jc`, `n_max`, `boundary` and `lattice_unit`; unknown keys are
/// rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelParams {
    /// Number of atoms (one per cavity).
    #[serde(rename = "N")]
    pub sites: usize,
    /// Atomic transition frequency ω₀.
    pub omega0: f64,
    /// Bare cavity frequency ω_c.
    pub omega_c: f64,
    /// Drive frequency ω_L.
    #[serde(rename = "omega_L")]
    pub omega_l: f64,
    /// Atom–cavity coupling g.
    pub g: f64,
    /// Classical Rabi frequency Ω.
    #[serde(rename = "Omega")]
    pub rabi: f64,
    /// Photon hopping rate J_c.
    #[serde(rename = "Jc")]
    pub hopping: f64,
    /// Fock cutoff per mode.
    pub n_max: usize,
    pub boundary: Boundary,
    /// Lattice constant; fixed to 1 so that k is dimensionless.
    #[serde(default = "unit_length")]
    pub lattice_unit: f64,
}

/// Default Fock cutoff. See the README for the convergence measurements.
pub const DEFAULT_N_MAX: usize = 3;

impl ModelParams {
    /// The two-cavity setting of the reference numerics: Ω = 50, g = 0.1,
    /// J_c = 0.02, ω_c − ω_L = 1 (GHz), ω₀ = ω_L, periodic boundary.
    pub fn fig2() -> Self {
        Self {
            sites: 2,
            omega0: 10.0,
            omega_c: 11.0,
            omega_l: 10.0,
            g: 0.1,
            rabi: 50.0,
            hopping: 0.02,
            n_max: DEFAULT_N_MAX,
            boundary: Boundary::Periodic,
            lattice_unit: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.sites < 2 {
            return Err(Error::InvalidParams(format!("N must be >= 2, got {}", self.sites)));
        }
        if self.n_max < 1 {
            return Err(Error::InvalidParams("n_max must be >= 1".into()));
        }
        let rates = [
            ("omega0", self.omega0),
            ("omega_c", self.omega_c),
            ("omega_L", self.omega_l),
            ("g", self.g),
            ("Omega", self.rabi),
            ("Jc", self.hopping),
        ];
        for (name, v) in rates {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParams(format!("{name} must be finite and >= 0, got {v}")));
            }
        }
        if self.lattice_unit != 1.0 {
            return Err(Error::InvalidParams("lattice_unit is fixed to 1".into()));
        }
        Ok(())
    }

    /// Δ = ω₀ − ω_L.
    pub fn atom_detuning(&self) -> f64 {
        self.omega0 - self.omega_l
    }

    /// ω_c − ω_L, the bare-cavity frequency in the drive frame.
    pub fn cavity_detuning(&self) -> f64 {
        self.omega_c - self.omega_l
    }

    /// Sets ω_c so that ω_c − ω_L equals `detuning`.
    pub fn with_cavity_detuning(mut self, detuning: f64) -> Self {
        self.omega_c = self.omega_l + detuning;
        self
    }

    pub fn from_json(doc: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(doc)?;
        p.validate()?;
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bonds_count_distinct_pairs() {
        assert_eq!(Boundary::Open.bonds(4), vec![(0, 1), (1, 2), (2, 3)]);
        assert_eq!(Boundary::Periodic.bonds(3), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(Boundary::Periodic.bonds(2), vec![(0, 1)]);
        assert_eq!(Boundary::Periodic.hopping_links(2), vec![(0, 1), (1, 0)]);
        assert_eq!(Boundary::Open.hopping_links(2), vec![(0, 1)]);
    }

    #[test]
    fn json_uses_symbol_names() {
        let p = ModelParams::fig2();
        let doc = serde_json::to_string(&p).unwrap();
        for key in ["\"N\"", "\"omega_L\"", "\"Omega\"", "\"Jc\"", "\"n_max\""] {
            assert!(doc.contains(key), "{doc}");
        }
        assert_eq!(ModelParams::from_json(&doc).unwrap(), p);
    }

    #[test]
    fn unknown_keys_rejected() {
        let doc = r#"{"N":2,"omega0":1,"omega_c":1,"omega_L":1,"g":0.1,"Omega":5,
                     "Jc":0.02,"n_max":2,"boundary":"open","kappa":0.1}"#;
        assert!(ModelParams::from_json(doc).is_err());
    }

    #[test]
    fn validation() {
        let mut p = ModelParams::fig2();
        p.sites = 1;
        assert!(p.validate().is_err());
        let mut p = ModelParams::fig2();
        p.g = -0.1;
        assert!(p.validate().is_err());
        let mut p = ModelParams::fig2();
        p.lattice_unit = 2.0;
        assert!(p.validate().is_err());
    }
}
