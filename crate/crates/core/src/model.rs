//! Behavioural equations of the goods and financial markets.
//!
//! All rates are in percentage points. The IS relation is left
//! unconstrained (it may return negative rates); only the LM relation
//! carries the zero floor.

use serde::Serialize;

use crate::params::Parameters;

/// Output split into its demand components.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GdpComposition {
    #[serde(rename = "C")]
    pub consumption: f64,
    #[serde(rename = "I")]
    pub investment: f64,
    #[serde(rename = "G")]
    pub government_spending: f64,
    #[serde(rename = "NX")]
    pub net_exports: f64,
}

impl GdpComposition {
    pub fn total(&self) -> f64 {
        self.consumption + self.investment + self.government_spending + self.net_exports
    }
}

impl Parameters {
    /// Keynesian multiplier `1 / (1 - c)`.
    pub fn multiplier(&self) -> f64 {
        1.0 / (1.0 - self.mpc)
    }

    /// Demand that does not depend on output or the nominal rate:
    /// `A + B + G + NX - c T + b pi_e`.
    pub fn autonomous_demand(&self) -> f64 {
        self.autonomous_consumption
            + self.autonomous_investment
            + self.government_spending
            + self.net_exports
            - self.mpc * self.taxes
            + self.investment_rate_sensitivity * self.expected_inflation
    }

    /// Real balances `M / P`.
    pub fn real_balances(&self) -> f64 {
        self.money_supply / self.price_level
    }

    pub fn real_rate(&self, nominal: f64) -> f64 {
        nominal - self.expected_inflation
    }

    pub fn consumption(&self, output: f64) -> f64 {
        self.autonomous_consumption + self.mpc * (output - self.taxes)
    }

    /// May be negative for high real rates.
    pub fn investment(&self, rate: f64) -> f64 {
        self.autonomous_investment - self.investment_rate_sensitivity * self.real_rate(rate)
    }

    pub fn aggregate_demand(&self, output: f64, rate: f64) -> f64 {
        self.consumption(output)
            + self.investment(rate)
            + self.government_spending
            + self.net_exports
    }

    /// Output that clears the goods market at the given nominal rate.
    pub fn is_output(&self, rate: f64) -> f64 {
        let alpha = self.multiplier();
        alpha * self.autonomous_demand() - alpha * self.investment_rate_sensitivity * rate
    }

    /// Inverse of [`Parameters::is_output`]. Not floored at zero.
    pub fn is_rate(&self, output: f64) -> f64 {
        (self.autonomous_demand() - output * (1.0 - self.mpc)) / self.investment_rate_sensitivity
    }

    /// Nominal rate that clears the money market at the given output,
    /// floored at zero.
    pub fn lm_rate(&self, output: f64) -> f64 {
        self.lm_rate_with_money(output, self.money_supply)
    }

    /// LM relation for an arbitrary money stock, e.g. the one implied by an
    /// interest-rate target.
    pub fn lm_rate_with_money(&self, output: f64, money_supply: f64) -> f64 {
        ((self.money_income_sensitivity * output - money_supply / self.price_level)
            / self.money_rate_sensitivity)
            .max(0.0)
    }

    /// LM relation without the zero floor.
    pub fn unconstrained_lm_rate(&self, output: f64) -> f64 {
        (self.money_income_sensitivity * output - self.real_balances())
            / self.money_rate_sensitivity
    }

    /// Output at which the LM curve leaves the zero floor, `M / (h1 P)`.
    pub fn lm_kink_output(&self) -> f64 {
        self.lm_kink_output_with_money(self.money_supply)
    }

    pub fn lm_kink_output_with_money(&self, money_supply: f64) -> f64 {
        money_supply / (self.money_income_sensitivity * self.price_level)
    }

    /// Real money demand `h1 Y - h2 i`. May be negative.
    pub fn money_demand(&self, output: f64, rate: f64) -> f64 {
        self.money_income_sensitivity * output - self.money_rate_sensitivity * rate
    }

    pub fn gdp_composition(&self, output: f64, rate: f64) -> GdpComposition {
        GdpComposition {
            consumption: self.consumption(output),
            investment: self.investment(rate),
            government_spending: self.government_spending,
            net_exports: self.net_exports,
        }
    }

    /// Signed budget balance `T - G`; negative values are deficits.
    pub fn budget_balance(&self) -> f64 {
        self.taxes - self.government_spending
    }
}
