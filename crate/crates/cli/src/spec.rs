//! Group specification files.
//!
//! A spec is a TOML document. Complex numbers are `[re, im]` pairs and
//! explicit 2×2 matrices are eight reals `[a_re, a_im, b_re, b_im, c_re, c_im,
//! d_re, d_im]`:
//!
//! ```toml
//! kind = "quasifuchsian"   # schottky | octagon | quasifuchsian | explicit
//! budget = 8               # word budget (optional)
//! tol = 1e-8               # accepted invariance residual (optional)
//! t = 0.2                  # quasifuchsian only
//! seed = 1                 # quasifuchsian only: direction of the deformation
//!
//! [[pairs]]                # schottky / quasifuchsian; default: four-disk group
//! source = { center = [-3.0, 0.0], radius = 0.6 }
//! target = { center = [3.0, 0.0], radius = 0.6 }
//! ```
//!
//! Quasifuchsian specs may give `displacements` (one `[re, im]` per disk,
//! ordered source₀, target₀, source₁, …) instead of a seed. Explicit specs list
//! `generators` and optionally `labels`.

use std::ops::Range;

use serde::{Deserialize, Serialize};
use veronese_core::moebius::{
    four_disk_schottky, genus2_octagon_group, quasifuchsian_family, schottky_group, Certificate, Deformation, DiskPair,
    GroupSpec, MoebiusMap, DEFAULT_DEFORMATION_SEED,
};
use veronese_core::{c, Complex};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Schottky,
    Octagon,
    Quasifuchsian,
    Explicit,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiskSpec {
    pub center: [f64; 2],
    pub radius: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub source: DiskSpec,
    pub target: DiskSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpecFile {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub displacements: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<[f64; 8]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<PairSpec>,
}

fn cx(p: [f64; 2]) -> Complex {
    c(p[0], p[1])
}

/// 1-based line and column of a byte offset.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl GroupSpecFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |Range { start, .. }| line_col(text, start));
            CliError::Parse {
                line,
                column,
                message: e.message().to_string(),
            }
        })
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec files always serialize")
    }

    pub fn named(kind: Kind) -> Self {
        Self {
            kind,
            budget: None,
            tol: None,
            t: None,
            seed: None,
            displacements: None,
            labels: None,
            generators: Vec::new(),
            pairs: Vec::new(),
        }
    }

    fn invalid(&self, msg: impl Into<String>) -> CliError {
        CliError::Spec(msg.into())
    }

    fn disk_pairs(&self) -> Result<Vec<DiskPair>, CliError> {
        self.pairs
            .iter()
            .map(|p| {
                DiskPair::new(
                    (cx(p.source.center), p.source.radius),
                    (cx(p.target.center), p.target.radius),
                )
                .map_err(|e| self.invalid(format!("disk pair: {e}")))
            })
            .collect()
    }

    /// The Schottky group the spec starts from (its own pairs, or the four-disk group).
    pub fn base_group(&self) -> Result<GroupSpec, CliError> {
        if self.pairs.is_empty() {
            Ok(four_disk_schottky())
        } else {
            schottky_group(&self.disk_pairs()?).map_err(|e| self.invalid(format!("not a Schottky group: {e}")))
        }
    }

    /// Deformation direction: explicit displacements, else the seed.
    pub fn deformation(&self, pairs: usize) -> Result<Deformation, CliError> {
        match &self.displacements {
            Some(d) if d.len() != 2 * pairs => {
                Err(self.invalid(format!("{} displacements for {} disks", d.len(), 2 * pairs)))
            }
            Some(d) => Ok(Deformation::new(d.iter().copied().map(cx).collect())),
            None => Ok(Deformation::from_seed(
                pairs,
                self.seed.unwrap_or(DEFAULT_DEFORMATION_SEED),
            )),
        }
    }

    fn forbid(&self, what: &str, present: bool) -> Result<(), CliError> {
        if present {
            Err(self.invalid(format!("`{what}` does not apply to kind {:?}", self.kind).to_lowercase()))
        } else {
            Ok(())
        }
    }

    pub fn build(&self) -> Result<GroupSpec, CliError> {
        let deform_keys = self.t.is_some() || self.seed.is_some() || self.displacements.is_some();
        let mut g = match self.kind {
            Kind::Schottky => {
                self.forbid("t/seed/displacements", deform_keys)?;
                self.forbid("generators", !self.generators.is_empty())?;
                if self.pairs.is_empty() {
                    return Err(self.invalid("schottky spec needs at least one [[pairs]] entry"));
                }
                self.base_group()?
            }
            Kind::Octagon => {
                self.forbid("pairs", !self.pairs.is_empty())?;
                self.forbid("generators", !self.generators.is_empty())?;
                self.forbid("t/seed/displacements", deform_keys)?;
                genus2_octagon_group()
            }
            Kind::Quasifuchsian => {
                self.forbid("generators", !self.generators.is_empty())?;
                let t = self.t.ok_or_else(|| self.invalid("quasifuchsian spec needs `t`"))?;
                let base = self.base_group()?;
                let dir = self.deformation(base.rank())?;
                quasifuchsian_family(&base, t, &dir).map_err(|e| match e {
                    veronese_core::Error::LeavesSchottkyLocus { .. } => CliError::Numerical(e),
                    e => self.invalid(e.to_string()),
                })?
            }
            Kind::Explicit => {
                self.forbid("pairs", !self.pairs.is_empty())?;
                self.forbid("t/seed/displacements", deform_keys)?;
                if self.generators.is_empty() {
                    return Err(self.invalid("explicit spec needs `generators`"));
                }
                let gens = self
                    .generators
                    .iter()
                    .enumerate()
                    .map(|(i, e)| {
                        MoebiusMap::new(c(e[0], e[1]), c(e[2], e[3]), c(e[4], e[5]), c(e[6], e[7]))
                            .map_err(|err| self.invalid(format!("generator {i}: {err}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let labels = match &self.labels {
                    Some(l) => l.clone(),
                    None => (0..gens.len()).map(default_label).collect(),
                };
                GroupSpec::new(gens, labels, 8, Certificate::None).map_err(|e| self.invalid(e.to_string()))?
            }
        };
        if self.kind != Kind::Explicit {
            self.forbid("labels", self.labels.is_some())?;
        }
        if let Some(b) = self.budget {
            if b == 0 {
                return Err(self.invalid("budget must be positive"));
            }
            g.word_budget = b;
        }
        Ok(g)
    }
}

fn default_label(i: usize) -> String {
    if i < 26 {
        char::from(b'a' + i as u8).to_string()
    } else {
        format!("g{i}")
    }
}
