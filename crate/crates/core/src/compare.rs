//! Side-by-side comparison of solved scenarios.

use serde::Serialize;

use crate::model::GdpComposition;
use crate::scenario::{ScenarioError, ScenarioSet, Slot};
use crate::solver::Equilibrium;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub slot: usize,
    pub name: String,
    #[serde(rename = "Y_star")]
    pub output: f64,
    #[serde(rename = "i_star")]
    pub rate: f64,
    #[serde(rename = "M_realized")]
    pub money_supply: f64,
    pub composition: GdpComposition,
    pub budget_balance: f64,
    pub at_zlb: bool,
}

impl ComparisonRow {
    fn new(slot: Slot, name: &str, eq: &Equilibrium) -> Self {
        Self {
            slot: slot.number(),
            name: name.to_string(),
            output: eq.output,
            rate: eq.rate,
            money_supply: eq.money_supply,
            composition: eq.composition,
            budget_balance: eq.budget_balance,
            at_zlb: eq.at_zlb,
        }
    }
}

/// Change from one selected slot to the next: `to - from` for every field.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonDelta {
    pub from: usize,
    pub to: usize,
    #[serde(rename = "Y_star")]
    pub output: f64,
    #[serde(rename = "i_star")]
    pub rate: f64,
    #[serde(rename = "M_realized")]
    pub money_supply: f64,
    pub composition: GdpComposition,
    pub budget_balance: f64,
}

impl ComparisonDelta {
    fn between(from: &ComparisonRow, to: &ComparisonRow) -> Self {
        let (a, b) = (&from.composition, &to.composition);
        Self {
            from: from.slot,
            to: to.slot,
            output: to.output - from.output,
            rate: to.rate - from.rate,
            money_supply: to.money_supply - from.money_supply,
            composition: GdpComposition {
                consumption: b.consumption - a.consumption,
                investment: b.investment - a.investment,
                government_spending: b.government_spending - a.government_spending,
                net_exports: b.net_exports - a.net_exports,
            },
            budget_balance: to.budget_balance - from.budget_balance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    /// One entry per consecutive pair of rows.
    pub deltas: Vec<ComparisonDelta>,
}

/// Solves the selected slots and lists them in slot order with consecutive
/// deltas.
pub fn compare(set: &ScenarioSet, slots: &[Slot]) -> Result<ComparisonTable, ScenarioError> {
    if slots.is_empty() {
        return Err(ScenarioError::EmptySelection);
    }
    let mut selected = slots.to_vec();
    selected.sort();
    if let Some(w) = selected.windows(2).find(|w| w[0] == w[1]) {
        return Err(ScenarioError::DuplicateSlot(w[0].number()));
    }

    let rows: Vec<ComparisonRow> = selected
        .iter()
        .map(|&slot| {
            let scenario = set.get(slot);
            ComparisonRow::new(slot, &scenario.name, &scenario.solve())
        })
        .collect();
    let deltas = rows
        .windows(2)
        .map(|w| ComparisonDelta::between(&w[0], &w[1]))
        .collect();
    Ok(ComparisonTable { rows, deltas })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walkthrough() -> ScenarioSet {
        let mut set = ScenarioSet::new();
        set.set_parameter(Slot::TWO, "G", 310.0).unwrap();
        set.assign_from_previous(Slot::THREE).unwrap();
        set.set_rate_target(Slot::THREE, 5.0).unwrap();
        set
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() <= 1e-9 * b.abs().max(1.0)
    }

    #[test]
    fn walkthrough_deltas() {
        let table = compare(&walkthrough(), &Slot::ALL).unwrap();
        assert_eq!(table.rows.len(), 3);
        assert_eq!(table.deltas.len(), 2);
        let (d21, d32) = (&table.deltas[0], &table.deltas[1]);
        assert_eq!((d21.from, d21.to, d32.from, d32.to), (1, 2, 2, 3));
        assert!(close(d21.output, 40.0));
        assert!(close(d21.rate, 4.0));
        assert!(close(d21.composition.investment, -40.0));
        assert!(close(d32.output, 80.0));
        assert!(close(d32.rate, -4.0));
        assert!(close(d32.money_supply, 24.0));
    }

    #[test]
    fn deltas_match_row_differences() {
        let table = compare(&walkthrough(), &[Slot::THREE, Slot::ONE]).unwrap();
        assert_eq!(table.rows[0].slot, 1);
        let d = &table.deltas[0];
        assert_eq!(d.output, table.rows[1].output - table.rows[0].output);
        assert_eq!(
            d.budget_balance,
            table.rows[1].budget_balance - table.rows[0].budget_balance
        );
    }

    #[test]
    fn single_slot_has_no_deltas() {
        let table = compare(&ScenarioSet::new(), &[Slot::ONE]).unwrap();
        assert_eq!(table.rows.len(), 1);
        assert!(table.deltas.is_empty());
    }

    #[test]
    fn identical_slots_have_zero_deltas() {
        let table = compare(&ScenarioSet::new(), &Slot::ALL).unwrap();
        for d in &table.deltas {
            assert_eq!(
                (d.output, d.rate, d.money_supply, d.budget_balance),
                (0.0, 0.0, 0.0, 0.0)
            );
        }
    }

    #[test]
    fn bad_selections() {
        let set = ScenarioSet::new();
        assert_eq!(compare(&set, &[]), Err(ScenarioError::EmptySelection));
        assert_eq!(
            compare(&set, &[Slot::TWO, Slot::TWO]),
            Err(ScenarioError::DuplicateSlot(2))
        );
    }
}
