use std::fmt;
use std::str::FromStr;

use crate::cluster::{canonical_cluster_state, generate_cluster_state, ghz_state, plus_state};
use crate::dynamics::Observable;
use crate::error::{Error, Result};
use crate::hilbert::{local, CMatrix, CVector, LinearOp, SpaceLayout, C64};
use crate::model::Boundary;

/// Named target states for `fidelity(...)`, given in the dressed basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetPreset {
    /// All atoms in `|g⟩`, i.e. `⊗|+⟩`.
    Initial,
    /// `U_p(π) ⊗|+⟩`.
    Generated,
    /// Canonical chain cluster state.
    Cluster,
    Ghz,
}

impl TargetPreset {
    const NAMES: [(&'static str, TargetPreset); 4] = [
        ("initial", TargetPreset::Initial),
        ("generated", TargetPreset::Generated),
        ("cluster", TargetPreset::Cluster),
        ("ghz", TargetPreset::Ghz),
    ];

    fn name(self) -> &'static str {
        Self::NAMES.iter().find(|(_, p)| *p == self).expect("listed").0
    }

    /// Target amplitudes in the dressed basis.
    pub fn dressed_state(self, n: usize, boundary: Boundary) -> Result<CVector> {
        Ok(match self {
            TargetPreset::Initial => plus_state(n).into_amplitudes(),
            TargetPreset::Generated => generate_cluster_state(n, boundary)?.into_amplitudes(),
            TargetPreset::Cluster => canonical_cluster_state(n, boundary)?.into_amplitudes(),
            TargetPreset::Ghz => ghz_state(n).into_amplitudes(),
        })
    }
}

/// An observable name from the supported set:
/// `p_g1g2`, `p_basis(<g/e or 0/1 string>)`, `n_photon(<site>)`,
/// `entropy(<sites>)`, `fidelity(<initial|generated|cluster|ghz>)`.
/// Sites are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Channel {
    /// Population of all atoms in `|g⟩`.
    AllGround,
    /// Population of one bare atomic configuration (`false` = g).
    Basis(Vec<bool>),
    /// ⟨a†a⟩ of one cavity (0-based).
    Photon(usize),
    /// Entropy of a set of atoms (0-based, sorted).
    Entropy(Vec<usize>),
    Fidelity(TargetPreset),
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownChannel(s.to_string());
        let s = s.trim();
        if s == "p_g1g2" {
            return Ok(Channel::AllGround);
        }
        let (head, arg) = s.strip_suffix(')').and_then(|r| r.split_once('(')).ok_or_else(bad)?;
        let arg = arg.trim();
        let sites = || -> Result<Vec<usize>> {
            let mut v = arg
                .split(',')
                .map(|x| match x.trim().parse::<usize>() {
                    Ok(k) if k >= 1 => Ok(k - 1),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?;
            v.sort_unstable();
            v.dedup();
            Ok(v)
        };
        match head {
            "p_basis" => {
                let bits = arg
                    .chars()
                    .map(|c| match c {
                        '0' | 'g' => Ok(false),
                        '1' | 'e' => Ok(true),
                        _ => Err(bad()),
                    })
                    .collect::<Result<Vec<_>>>()?;
                if bits.is_empty() {
                    return Err(bad());
                }
                Ok(Channel::Basis(bits))
            }
            "n_photon" => match sites()?.as_slice() {
                [k] => Ok(Channel::Photon(*k)),
                _ => Err(bad()),
            },
            "entropy" => Ok(Channel::Entropy(sites()?)),
            "fidelity" => TargetPreset::NAMES
                .iter()
                .find(|(n, _)| *n == arg)
                .map(|(_, p)| Channel::Fidelity(*p))
                .ok_or_else(bad),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|k| (k + 1).to_string()).collect::<Vec<_>>().join(",");
        match self {
            Channel::AllGround => f.write_str("p_g1g2"),
            Channel::Basis(bits) => {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                write!(f, "p_basis({s})")
            }
            Channel::Photon(k) => write!(f, "n_photon({})", k + 1),
            Channel::Entropy(sites) => write!(f, "entropy({})", join(sites)),
            Channel::Fidelity(p) => write!(f, "fidelity({})", p.name()),
        }
    }
}

impl Channel {
    /// Column stem used in comparison tables, e.g. `n_photon_1`, `entropy`.
    pub fn column_stem(&self) -> String {
        match self {
            Channel::AllGround => "p_g1g2".into(),
            Channel::Basis(bits) => {
                let s: String = bits.iter().map(|&b| if b { '1' } else { '0' }).collect();
                format!("p_{s}")
            }
            Channel::Photon(k) => format!("n_photon_{}", k + 1),
            Channel::Entropy(sites) if sites == &[0] => "entropy".into(),
            Channel::Entropy(sites) => {
                let s: Vec<String> = sites.iter().map(|k| (k + 1).to_string()).collect();
                format!("entropy_{}", s.join("_"))
            }
            Channel::Fidelity(p) => format!("fidelity_{}", p.name()),
        }
    }

    /// Whether the channel exists in the photon-free effective model.
    pub fn in_effective_model(&self) -> bool {
        !matches!(self, Channel::Photon(_))
    }

    /// Extractor on a layout of `atoms` bare-basis qubits, followed by
    /// `atoms` cavity modes when `n_max` is given.
    pub fn observable(&self, atoms: usize, n_max: Option<usize>, boundary: Boundary) -> Result<Observable> {
        let layout = match n_max {
            Some(n) => SpaceLayout::atoms_and_modes(atoms, n)?,
            None => SpaceLayout::qubits(atoms),
        };
        let mode_dim = layout.total_dim() >> atoms;
        let name = self.to_string();
        let check_site = |k: usize| {
            if k >= atoms {
                Err(Error::UnknownChannel(format!("{name}: only {atoms} sites")))
            } else {
                Ok(())
            }
        };
        // diagonal weight depending only on the atomic configuration
        let atomic_projector = |config: usize| -> Result<LinearOp> {
            let diag: Vec<C64> = (0..layout.total_dim())
                .map(|i| C64::new(if i / mode_dim == config { 1.0 } else { 0.0 }, 0.0))
                .collect();
            LinearOp::from_diagonal(&layout, &diag)
        };
        Ok(match self {
            Channel::AllGround => Observable::expectation(name, atomic_projector(0)?),
            Channel::Basis(bits) => {
                if bits.len() != atoms {
                    return Err(Error::UnknownChannel(format!("{name}: need {atoms} atoms")));
                }
                let config = bits.iter().fold(0, |acc, &b| 2 * acc + usize::from(b));
                Observable::expectation(name, atomic_projector(config)?)
            }
            Channel::Photon(k) => {
                check_site(*k)?;
                let n_max = n_max.ok_or_else(|| Error::UnknownChannel(format!("{name}: no cavity modes")))?;
                Observable::expectation(name, LinearOp::embed_local(&layout, atoms + k, &local::number(n_max))?)
            }
            Channel::Entropy(sites) => {
                for &k in sites {
                    check_site(k)?;
                }
                Observable::entropy(name, sites.clone())
            }
            Channel::Fidelity(preset) => {
                let dressed = preset.dressed_state(atoms, boundary)?;
                let bare = hadamard_all(atoms) * dressed;
                let proj = bare.clone() * bare.adjoint();
                let m = proj.kronecker(&local::identity(mode_dim));
                Observable::expectation(name, LinearOp::new(layout, m)?)
            }
        })
    }
}

/// `H^{⊗n}`, mapping dressed amplitudes to bare ones and back.
pub(crate) fn hadamard_all(n: usize) -> CMatrix {
    (0..n).fold(CMatrix::identity(1, 1), |m, _| m.kronecker(&local::hadamard()))
}

pub fn parse_channels(names: &[String]) -> Result<Vec<Channel>> {
    names.iter().map(|s| s.parse()).collect()
}
