use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One tensor factor of a composite space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    Qubit,
    /// Bosonic mode truncated to photon numbers `0..=n_max`.
    CavityMode {
        n_max: usize,
    },
}

impl Factor {
    pub fn dim(&self) -> usize {
        match *self {
            Factor::Qubit => 2,
            Factor::CavityMode { n_max } => n_max + 1,
        }
    }
}

/// Ordered tensor-product structure. Basis indices are row-major: the
/// leftmost factor varies slowest.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpaceLayout {
    factors: Vec<Factor>,
    total_dim: usize,
}

impl SpaceLayout {
    pub fn new(factors: Vec<Factor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidParams("a layout needs at least one factor".into()));
        }
        if factors
            .iter()
            .any(|f| matches!(f, Factor::CavityMode { n_max } if *n_max < 1))
        {
            return Err(Error::InvalidParams("Fock cutoff n_max must be >= 1".into()));
        }
        let total_dim = factors.iter().map(Factor::dim).product();
        Ok(Self { factors, total_dim })
    }

    /// `n` qubits and nothing else.
    pub fn qubits(n: usize) -> Self {
        Self::new(vec![Factor::Qubit; n.max(1)]).expect("qubit layout is always valid")
    }

    /// `n` atoms followed by `n` cavity modes, each truncated at `n_max`.
    pub fn atoms_and_modes(n: usize, n_max: usize) -> Result<Self> {
        let mut factors = vec![Factor::Qubit; n];
        factors.extend(std::iter::repeat_n(Factor::CavityMode { n_max }, n));
        Self::new(factors)
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(Factor::dim).collect()
    }

    pub fn dim_of(&self, site: usize) -> Result<usize> {
        self.factors.get(site).map(Factor::dim).ok_or(Error::SiteOutOfRange {
            site,
            len: self.factors.len(),
        })
    }

    /// Number of leading qubit factors.
    pub fn qubit_count(&self) -> usize {
        self.factors.iter().take_while(|f| matches!(f, Factor::Qubit)).count()
    }

    /// Basis index of the product state with the given per-factor digits.
    pub fn index_of(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                expected: self.factors.len(),
                found: digits.len(),
            });
        }
        let mut index = 0;
        for (site, (&d, f)) in digits.iter().zip(&self.factors).enumerate() {
            if d >= f.dim() {
                return Err(Error::InvalidSubsystem(site));
            }
            index = index * f.dim() + d;
        }
        Ok(index)
    }

    /// Inverse of [`index_of`](Self::index_of).
    pub fn digits_of(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.factors.len()];
        for (slot, f) in digits.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim();
            index /= f.dim();
        }
        digits
    }

    /// Product of the dimensions of the factors strictly to the right of `site`.
    pub(crate) fn stride(&self, site: usize) -> usize {
        self.factors[site + 1..].iter().map(Factor::dim).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn total_dim_is_product() {
        let l = SpaceLayout::atoms_and_modes(2, 2).unwrap();
        assert_eq!(l.total_dim(), 36);
        assert_eq!(l.dims(), vec![2, 2, 3, 3]);
        assert_eq!(l.qubit_count(), 2);
    }

    #[test]
    fn index_round_trip() {
        let l = SpaceLayout::atoms_and_modes(2, 2).unwrap();
        for i in 0..l.total_dim() {
            assert_eq!(l.index_of(&l.digits_of(i)).unwrap(), i);
        }
        // leftmost factor is slowest
        assert_eq!(l.index_of(&[1, 0, 0, 0]).unwrap(), 18);
        assert_eq!(l.index_of(&[0, 0, 0, 1]).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_cutoff() {
        assert!(SpaceLayout::atoms_and_modes(2, 0).is_err());
    }
}
