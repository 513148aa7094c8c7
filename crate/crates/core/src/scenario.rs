//! Three parallel model instances with assign/reset semantics.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::curves::Plot;
use crate::params::{ParamName, ParameterError, Parameters};
use crate::regime::{PolicyRegime, RateTarget, RegimeError};
use crate::solver::{solve_equilibrium, Equilibrium};

pub const SLOT_COUNT: usize = 3;

/// One of the three scenario slots, numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Slot(u8);

impl Slot {
    pub const ONE: Slot = Slot(1);
    pub const TWO: Slot = Slot(2);
    pub const THREE: Slot = Slot(3);
    pub const ALL: [Slot; SLOT_COUNT] = [Slot::ONE, Slot::TWO, Slot::THREE];

    pub fn new(number: usize) -> Result<Self, ScenarioError> {
        if (1..=SLOT_COUNT).contains(&number) {
            Ok(Slot(number as u8))
        } else {
            Err(ScenarioError::InvalidSlot {
                slot: number,
                reason: "slots are numbered 1 to 3",
            })
        }
    }

    pub fn number(self) -> usize {
        self.0 as usize
    }

    fn index(self) -> usize {
        self.number() - 1
    }

    /// Default label, "Model k".
    pub fn default_name(self) -> String {
        format!("Model {}", self.0)
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("invalid slot {slot}: {reason}")]
    InvalidSlot { slot: usize, reason: &'static str },
    #[error(transparent)]
    Parameter(#[from] ParameterError),
    #[error("invalid regime: {0}")]
    InvalidRegime(#[from] RegimeError),
    #[error("no slots selected")]
    EmptySelection,
    #[error("slot {0} selected more than once")]
    DuplicateSlot(usize),
    #[error("scenario name `{0}` is used by more than one slot")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: Parameters,
    pub regime: PolicyRegime,
    /// Plots in which this scenario is drawn.
    pub visible_in: BTreeSet<Plot>,
}

impl Scenario {
    pub fn new(name: impl Into<String>, params: Parameters, regime: PolicyRegime) -> Self {
        Self {
            name: name.into(),
            params,
            regime,
            visible_in: BTreeSet::new(),
        }
    }

    pub fn solve(&self) -> Equilibrium {
        solve_equilibrium(&self.params, &self.regime)
    }

    /// Under interest-rate control the stored money supply is kept as entered
    /// but no longer drives the solution.
    pub fn money_supply_stale(&self) -> bool {
        matches!(self.regime, PolicyRegime::InterestRateControl(_))
    }
}

/// Exactly three scenarios. Slot 1 resets to the shipped defaults; slots 2
/// and 3 copy from the slot before them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioSet {
    slots: [Scenario; SLOT_COUNT],
}

impl Default for ScenarioSet {
    fn default() -> Self {
        Self::new()
    }
}

impl ScenarioSet {
    /// Three copies of the defaults under money-supply control. Only slot 1
    /// starts visible.
    pub fn new() -> Self {
        let slots = Slot::ALL.map(|slot| {
            let mut s = Scenario::new(
                slot.default_name(),
                Parameters::default(),
                PolicyRegime::MoneySupplyControl,
            );
            if slot == Slot::ONE {
                s.visible_in = Plot::ALL.into_iter().collect();
            }
            s
        });
        Self { slots }
    }

    pub fn from_scenarios(slots: [Scenario; SLOT_COUNT]) -> Result<Self, ScenarioError> {
        for (k, s) in slots.iter().enumerate() {
            if slots[..k].iter().any(|prev| prev.name == s.name) {
                return Err(ScenarioError::DuplicateName(s.name.clone()));
            }
        }
        Ok(Self { slots })
    }

    pub fn get(&self, slot: Slot) -> &Scenario {
        &self.slots[slot.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Slot, &Scenario)> {
        Slot::ALL.into_iter().zip(self.slots.iter())
    }

    pub fn solve(&self, slot: Slot) -> Equilibrium {
        self.get(slot).solve()
    }

    /// Copies parameters and regime from the previous slot.
    pub fn assign_from_previous(&mut self, slot: Slot) -> Result<(), ScenarioError> {
        if slot == Slot::ONE {
            return Err(ScenarioError::InvalidSlot {
                slot: 1,
                reason: "slot 1 has no previous slot; it resets to defaults instead",
            });
        }
        let source = &self.slots[slot.index() - 1];
        let (params, regime) = (source.params, source.regime);
        let target = &mut self.slots[slot.index()];
        target.params = params;
        target.regime = regime;
        Ok(())
    }

    /// Restores slot 1 to the defaults under money-supply control.
    pub fn reset_defaults(&mut self, slot: Slot) -> Result<(), ScenarioError> {
        if slot != Slot::ONE {
            return Err(ScenarioError::InvalidSlot {
                slot: slot.number(),
                reason: "only slot 1 resets to defaults; other slots copy the previous one",
            });
        }
        let s = &mut self.slots[0];
        s.params = Parameters::default();
        s.regime = PolicyRegime::MoneySupplyControl;
        Ok(())
    }

    /// The slot's top button: reset for slot 1, assign-from-previous otherwise.
    pub fn press_top_button(&mut self, slot: Slot) {
        if slot == Slot::ONE {
            self.reset_defaults(slot)
        } else {
            self.assign_from_previous(slot)
        }
        .expect("top button action matches slot");
    }

    /// Moves one slider. `name` is the document key of the parameter.
    pub fn set_parameter(
        &mut self,
        slot: Slot,
        name: &str,
        value: f64,
    ) -> Result<(), ScenarioError> {
        let name: ParamName = name.parse()?;
        let current = self.slots[slot.index()].params;
        let updated = Parameters::new_in_range(current.values().with(name, value))?;
        self.slots[slot.index()].params = updated;
        Ok(())
    }

    pub fn set_regime(&mut self, slot: Slot, regime: PolicyRegime) -> Result<(), ScenarioError> {
        if let Some(target) = regime.target() {
            RateTarget::new_in_range(target)?;
        }
        self.slots[slot.index()].regime = regime;
        Ok(())
    }

    /// Engages interest-rate control at `target` percent.
    pub fn set_rate_target(&mut self, slot: Slot, target: f64) -> Result<(), ScenarioError> {
        let target = RateTarget::new_in_range(target)?;
        self.set_regime(slot, PolicyRegime::InterestRateControl(target))
    }

    pub fn set_visible(&mut self, slot: Slot, plot: Plot, visible: bool) {
        let set = &mut self.slots[slot.index()].visible_in;
        if visible {
            set.insert(plot);
        } else {
            set.remove(&plot);
        }
    }
}
