//! Closed-form joint equilibrium of the IS and LM relations.
//!
//! The model is linear on each side of the zero-lower-bound kink, so the
//! equilibrium is found by solving the unconstrained intersection and falling
//! back to the `i = 0` branch when that intersection has a negative rate.

use serde::Serialize;
use thiserror::Error;

use crate::model::GdpComposition;
use crate::params::Parameters;
use crate::regime::PolicyRegime;

/// Relative tolerance for closed-form identities.
pub const EPSILON: f64 = 1e-9;

/// Non-fatal conditions worth surfacing next to a solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Diagnostic {
    /// Interest-rate control implies a money stock below zero.
    NegativeImpliedMoneySupply,
    /// The real rate is high enough to push investment below zero.
    NegativeInvestment,
    /// Money demand at the solution is below zero.
    NegativeMoneyDemand,
}

impl Diagnostic {
    /// Stable identifier, as serialized.
    pub fn id(self) -> &'static str {
        match self {
            Diagnostic::NegativeImpliedMoneySupply => "negative_implied_money_supply",
            Diagnostic::NegativeInvestment => "negative_investment",
            Diagnostic::NegativeMoneyDemand => "negative_money_demand",
        }
    }

    pub fn message(self) -> &'static str {
        match self {
            Diagnostic::NegativeImpliedMoneySupply => {
                "the interest rate target implies a negative money supply"
            }
            Diagnostic::NegativeInvestment => "equilibrium investment is negative",
            Diagnostic::NegativeMoneyDemand => "equilibrium money demand is negative",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Equilibrium {
    #[serde(rename = "Y_star")]
    pub output: f64,
    /// Nominal rate, percentage points.
    #[serde(rename = "i_star")]
    pub rate: f64,
    #[serde(rename = "r_star")]
    pub real_rate: f64,
    /// Money stock consistent with the solution. Equal to the input under
    /// money-supply control.
    #[serde(rename = "M_realized")]
    pub money_supply: f64,
    pub at_zlb: bool,
    pub composition: GdpComposition,
    pub budget_balance: f64,
    pub diagnostics: Vec<Diagnostic>,
}

impl Equilibrium {
    pub fn has(&self, diagnostic: Diagnostic) -> bool {
        self.diagnostics.contains(&diagnostic)
    }
}

/// Intersection of IS and the unfloored LM line under money-supply control.
/// Returns `(output, rate)`; the rate may be negative.
pub fn unconstrained_intersection(p: &Parameters) -> (f64, f64) {
    let alpha = p.multiplier();
    let b = p.investment_rate_sensitivity;
    let h1 = p.money_income_sensitivity;
    let h2 = p.money_rate_sensitivity;
    let output =
        alpha * (p.autonomous_demand() + b * p.real_balances() / h2) / (1.0 + alpha * b * h1 / h2);
    (output, p.unconstrained_lm_rate(output))
}

pub fn solve_equilibrium(p: &Parameters, regime: &PolicyRegime) -> Equilibrium {
    let (output, rate, money_supply, at_zlb) = match regime {
        PolicyRegime::MoneySupplyControl => {
            let (output, rate) = unconstrained_intersection(p);
            if rate >= 0.0 {
                (output, rate, p.money_supply, false)
            } else {
                (p.is_output(0.0), 0.0, p.money_supply, true)
            }
        }
        PolicyRegime::InterestRateControl(target) => {
            let rate = target.get();
            let output = p.is_output(rate);
            let money = p.price_level * p.money_demand(output, rate);
            (output, rate, money, rate == 0.0)
        }
    };

    let composition = p.gdp_composition(output, rate);
    let mut diagnostics = Vec::new();
    if money_supply < 0.0 {
        diagnostics.push(Diagnostic::NegativeImpliedMoneySupply);
    }
    if composition.investment < 0.0 {
        diagnostics.push(Diagnostic::NegativeInvestment);
    }
    if matches!(regime, PolicyRegime::MoneySupplyControl) && p.money_demand(output, rate) < 0.0 {
        diagnostics.push(Diagnostic::NegativeMoneyDemand);
    }

    Equilibrium {
        output,
        rate,
        real_rate: p.real_rate(rate),
        money_supply,
        at_zlb,
        composition,
        budget_balance: p.budget_balance(),
        diagnostics,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum MultiplierError {
    /// The equilibrium sits on the LM kink, where dY/dG has different
    /// one-sided values.
    #[error(
        "equilibrium sits exactly at the LM kink: multiplier is {below} for spending cuts and {above} for increases"
    )]
    BranchAmbiguous { below: f64, above: f64 },
}

/// Equilibrium response of output to a unit change in government spending.
pub fn fiscal_multiplier(p: &Parameters, regime: &PolicyRegime) -> Result<f64, MultiplierError> {
    let alpha = p.multiplier();
    match regime {
        PolicyRegime::InterestRateControl(_) => Ok(alpha),
        PolicyRegime::MoneySupplyControl => {
            let interior = alpha
                / (1.0
                    + alpha * p.investment_rate_sensitivity * p.money_income_sensitivity
                        / p.money_rate_sensitivity);
            let (_, rate) = unconstrained_intersection(p);
            let scale = (p.real_balances() / p.money_rate_sensitivity)
                .abs()
                .max(1.0);
            if rate.abs() <= EPSILON * scale {
                Err(MultiplierError::BranchAmbiguous {
                    below: alpha,
                    above: interior,
                })
            } else if rate < 0.0 {
                Ok(alpha)
            } else {
                Ok(interior)
            }
        }
    }
}
