//! Run configuration: JSON file schema plus flag overrides.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use galbox_core::basis::{AugmentKind, BasisSpec, BoundaryCondition};
use galbox_core::error::{Error, Result};
use galbox_core::evolution::TimeValue;
use galbox_core::experiment::ExperimentSpec;

/// JSON schema of a sweep request. Any field left out of the file falls back
/// to the default grid; command-line flags override file values.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// "legendre" | "eigen" | "augmented-constant" | "augmented-cosine"
    #[serde(default)]
    pub basis: Option<String>,
    /// Legendre order (even, >= 4); ignored for eigenbases.
    #[serde(default)]
    pub m: Option<u32>,
    /// "dirichlet" | "neumann" | "periodic" | "antiperiodic"
    #[serde(default)]
    pub bc: Option<String>,
    /// Mode index of the reference eigenvector.
    #[serde(default)]
    pub j: Option<i64>,
    #[serde(default)]
    pub n_values: Option<Vec<usize>>,
    /// Decimal literals or `p/q/pi` tokens.
    #[serde(default)]
    pub t_values: Option<Vec<String>>,
    #[serde(default)]
    pub digits: Option<u32>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    #[serde(default)]
    pub svg: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            basis: None,
            m: None,
            bc: None,
            j: None,
            n_values: None,
            t_values: None,
            digits: None,
            workers: None,
            out: None,
            svg: None,
        }
    }
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(format!("bad config: {e}")))
    }

    /// Overlay non-empty fields of `over` on top of `self`.
    pub fn merged_with(mut self, over: RunConfig) -> Self {
        macro_rules! take {
            ($field:ident) => {
                if over.$field.is_some() {
                    self.$field = over.$field;
                }
            };
        }
        take!(basis);
        take!(m);
        take!(bc);
        take!(j);
        take!(n_values);
        take!(t_values);
        take!(digits);
        take!(workers);
        take!(out);
        take!(svg);
        self
    }

    pub fn digits(&self) -> u32 {
        self.digits.unwrap_or(500)
    }

    pub fn workers(&self) -> Option<usize> {
        self.workers
    }

    /// Resolve into a core experiment spec (grid defaults: the m = 4
    /// Dirichlet j = 5 sweep over n = 8..40 step 2 and
    /// t in {0.1, 0.5, 1.0, 4/pi}).
    pub fn to_experiment(&self) -> Result<ExperimentSpec> {
        let bc = parse_bc(self.bc.as_deref().unwrap_or("dirichlet"))?;
        let m = self.m.unwrap_or(4);
        let basis = match self.basis.as_deref().unwrap_or("legendre") {
            "legendre" => BasisSpec::legendre(m)?,
            "eigen" => BasisSpec::EigenBasis(bc.clone()),
            "augmented-constant" => BasisSpec::augmented(AugmentKind::ConstantPeriodic, m)?,
            "augmented-cosine" => BasisSpec::augmented(AugmentKind::CosineAntiperiodic, m)?,
            other => {
                return Err(Error::InvalidSpec(format!(
                    "unknown basis {other:?} (expected legendre, eigen, augmented-constant or augmented-cosine)"
                )))
            }
        };
        let n_values = self
            .n_values
            .clone()
            .unwrap_or_else(|| (8..=40).step_by(2).collect());
        let t_values: Vec<TimeValue> = match &self.t_values {
            Some(tokens) => tokens
                .iter()
                .map(|s| TimeValue::parse(s))
                .collect::<Result<_>>()?,
            None => vec![
                TimeValue::parse("0.1")?,
                TimeValue::parse("0.5")?,
                TimeValue::parse("1.0")?,
                TimeValue::four_over_pi(),
            ],
        };
        Ok(ExperimentSpec {
            basis,
            bc,
            j: self.j.unwrap_or(5),
            n_values,
            t_values,
            digits: self.digits(),
        })
    }
}

pub fn parse_bc(tag: &str) -> Result<BoundaryCondition> {
    match tag {
        "dirichlet" => Ok(BoundaryCondition::Dirichlet),
        "neumann" => Ok(BoundaryCondition::Neumann),
        "periodic" => Ok(BoundaryCondition::periodic()),
        "antiperiodic" => Ok(BoundaryCondition::antiperiodic()),
        other => Err(Error::InvalidSpec(format!(
            "unknown boundary condition {other:?} (expected dirichlet, neumann, periodic or antiperiodic)"
        ))),
    }
}
