//! Scenario file schema shared by the CLI and the HTTP service.
//!
//! ```json
//! { "scenarios": [ { "name": "Model 1", "regime": "money_supply",
//!                    "params": { "A": 160, "c": 0.5, ... } } ] }
//! ```
//!
//! One to three entries map onto slots in order; absent slots are filled
//! with the defaults. `i_bar` is required for `interest_rate` entries and
//! rejected otherwise. Validation errors carry a path such as
//! `scenarios[0].params.c`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::{ParameterError, ParameterValues, Parameters};
use crate::regime::{PolicyRegime, RateTarget, RegimeError};
use crate::scenario::{Scenario, ScenarioSet, Slot, SLOT_COUNT};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegimeTag {
    MoneySupply,
    InterestRate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioEntry {
    pub name: String,
    pub regime: RegimeTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i_bar: Option<f64>,
    pub params: ParameterValues,
}

impl ScenarioEntry {
    pub fn from_scenario(scenario: &Scenario) -> Self {
        let (regime, i_bar) = match scenario.regime {
            PolicyRegime::MoneySupplyControl => (RegimeTag::MoneySupply, None),
            PolicyRegime::InterestRateControl(t) => (RegimeTag::InterestRate, Some(t.get())),
        };
        Self {
            name: scenario.name.clone(),
            regime,
            i_bar,
            params: *scenario.params.values(),
        }
    }

    fn to_scenario(&self, index: usize) -> Result<Scenario, DocumentError> {
        let at = |field: &str| format!("scenarios[{index}].{field}");
        if self.name.trim().is_empty() {
            return Err(DocumentError::Schema {
                path: at("name"),
                message: "name must not be empty".into(),
            });
        }
        let params = Parameters::new_in_range(self.params).map_err(|source| {
            let path = match source.param() {
                Some(name) => at(&format!("params.{name}")),
                None => at("params"),
            };
            DocumentError::Parameter { path, source }
        })?;
        let regime = match (self.regime, self.i_bar) {
            (RegimeTag::MoneySupply, None) => PolicyRegime::MoneySupplyControl,
            (RegimeTag::MoneySupply, Some(_)) => {
                return Err(DocumentError::Schema {
                    path: at("i_bar"),
                    message: "i_bar is only allowed with the interest_rate regime".into(),
                })
            }
            (RegimeTag::InterestRate, None) => {
                return Err(DocumentError::Schema {
                    path: at("i_bar"),
                    message: "i_bar is required with the interest_rate regime".into(),
                })
            }
            (RegimeTag::InterestRate, Some(rate)) => {
                let target =
                    RateTarget::new_in_range(rate).map_err(|source| DocumentError::Regime {
                        path: at("i_bar"),
                        source,
                    })?;
                PolicyRegime::InterestRateControl(target)
            }
        };
        Ok(Scenario::new(self.name.clone(), params, regime))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDocument {
    pub scenarios: Vec<ScenarioEntry>,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    #[error("malformed scenario document at {path}: {message}")]
    Syntax { path: String, message: String },
    #[error("no scenarios")]
    Empty,
    #[error("at most 3 scenarios are allowed (got {0})")]
    TooMany(usize),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
    #[error("{path}: {source}")]
    Parameter {
        path: String,
        source: ParameterError,
    },
    #[error("{path}: {source}")]
    Regime { path: String, source: RegimeError },
}

impl DocumentError {
    /// Locator of the offending input, e.g. `scenarios[1].params.M`.
    pub fn field_path(&self) -> Option<&str> {
        match self {
            DocumentError::Syntax { path, .. } if path.is_empty() || path == "." => None,
            DocumentError::Syntax { path, .. }
            | DocumentError::Schema { path, .. }
            | DocumentError::Parameter { path, .. }
            | DocumentError::Regime { path, .. } => Some(path),
            DocumentError::Empty | DocumentError::TooMany(_) => Some("scenarios"),
        }
    }

    /// True when the document is well formed but a value breaks a model
    /// invariant or slider range.
    pub fn is_invalid_value(&self) -> bool {
        matches!(
            self,
            DocumentError::Parameter { .. } | DocumentError::Regime { .. }
        )
    }
}

impl ScenarioDocument {
    /// The three default slots.
    pub fn defaults() -> Self {
        Self::from_set(&ScenarioSet::new())
    }

    pub fn from_set(set: &ScenarioSet) -> Self {
        Self {
            scenarios: set
                .iter()
                .map(|(_, s)| ScenarioEntry::from_scenario(s))
                .collect(),
        }
    }

    /// Parses JSON text. Structural errors report the path of the bad field.
    pub fn parse(text: &str) -> Result<Self, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|err| DocumentError::Syntax {
            path: err.path().to_string(),
            message: err.inner().to_string(),
        })
    }

    /// Validates the entries and fills any missing slots with defaults.
    pub fn to_set(&self) -> Result<ScenarioSet, DocumentError> {
        match self.scenarios.len() {
            0 => return Err(DocumentError::Empty),
            n if n > SLOT_COUNT => return Err(DocumentError::TooMany(n)),
            _ => {}
        }
        let defaults = ScenarioSet::new();
        let mut scenarios = Slot::ALL.map(|slot| defaults.get(slot).clone());
        for (index, entry) in self.scenarios.iter().enumerate() {
            let mut scenario = entry.to_scenario(index)?;
            scenario.visible_in = std::mem::take(&mut scenarios[index].visible_in);
            scenarios[index] = scenario;
        }
        for (index, s) in scenarios.iter().enumerate() {
            if scenarios[..index].iter().any(|prev| prev.name == s.name) {
                return Err(DocumentError::Schema {
                    path: format!("scenarios[{index}].name"),
                    message: format!("duplicate scenario name `{}`", s.name),
                });
            }
        }
        Ok(ScenarioSet::from_scenarios(scenarios).expect("names checked above"))
    }

    /// Parse and validate in one step.
    pub fn load(text: &str) -> Result<ScenarioSet, DocumentError> {
        Self::parse(text)?.to_set()
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }
}
