//! Solve results in the shape shared by the CLI's structured output and the
//! HTTP `/solve` endpoint.

use serde::Serialize;

use crate::scenario::ScenarioSet;
use crate::solver::Equilibrium;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScenarioResult {
    pub slot: usize,
    pub name: String,
    pub regime: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i_bar: Option<f64>,
    /// The entered money supply is ignored under interest-rate control.
    pub money_supply_stale: bool,
    #[serde(flatten)]
    pub equilibrium: Equilibrium,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub results: Vec<ScenarioResult>,
}

impl SolveReport {
    /// Solves all three slots.
    pub fn new(set: &ScenarioSet) -> Self {
        let results = set
            .iter()
            .map(|(slot, scenario)| ScenarioResult {
                slot: slot.number(),
                name: scenario.name.clone(),
                regime: scenario.regime.tag(),
                i_bar: scenario.regime.target(),
                money_supply_stale: scenario.money_supply_stale(),
                equilibrium: scenario.solve(),
            })
            .collect();
        Self { results }
    }

    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}
