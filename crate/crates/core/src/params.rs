//! Exogenous model inputs and their validation.
//!
//! Two layers of validation exist. [`Parameters::new`] enforces the model
//! invariants that keep every equation well defined (finite values, a
//! marginal propensity to consume strictly inside `(0, 1)`, positive
//! sensitivities and price level, non-negative money stock). The slider
//! ranges in [`ParamName::range`] are a tighter contract used by the scenario
//! engine and by scenario documents.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Raw parameter values as they appear in scenario documents.
///
/// Interest-rate sensitivities are expressed per percentage point, so an
/// interest rate of `5.0` means five percent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterValues {
    /// Autonomous consumption (CU).
    #[serde(rename = "A")]
    pub autonomous_consumption: f64,
    /// Marginal propensity to consume.
    #[serde(rename = "c")]
    pub mpc: f64,
    /// Lump-sum taxes (CU).
    #[serde(rename = "T")]
    pub taxes: f64,
    /// Autonomous investment (CU).
    #[serde(rename = "B")]
    pub autonomous_investment: f64,
    /// Investment response to the real rate (CU per percentage point).
    #[serde(rename = "b")]
    pub investment_rate_sensitivity: f64,
    /// Expected inflation (percentage points).
    #[serde(rename = "pi_e")]
    pub expected_inflation: f64,
    /// Government spending (CU).
    #[serde(rename = "G")]
    pub government_spending: f64,
    /// Net exports (CU).
    #[serde(rename = "NX")]
    pub net_exports: f64,
    /// Money demand response to income.
    #[serde(rename = "h1")]
    pub money_income_sensitivity: f64,
    /// Money demand response to the nominal rate (CU per percentage point).
    #[serde(rename = "h2")]
    pub money_rate_sensitivity: f64,
    /// Nominal money supply (CU).
    #[serde(rename = "M")]
    pub money_supply: f64,
    /// Price level.
    #[serde(rename = "P")]
    pub price_level: f64,
}

impl ParameterValues {
    /// The shipped calibration. Its money-supply-control equilibrium is
    /// output 1050 CU at an interest rate of 5%.
    pub const DEFAULT: ParameterValues = ParameterValues {
        autonomous_consumption: 160.0,
        mpc: 0.5,
        taxes: 200.0,
        autonomous_investment: 215.0,
        investment_rate_sensitivity: 10.0,
        expected_inflation: 0.0,
        government_spending: 250.0,
        net_exports: 50.0,
        money_income_sensitivity: 0.2,
        money_rate_sensitivity: 2.0,
        money_supply: 200.0,
        price_level: 1.0,
    };

    pub fn get(&self, name: ParamName) -> f64 {
        match name {
            ParamName::AutonomousConsumption => self.autonomous_consumption,
            ParamName::Mpc => self.mpc,
            ParamName::Taxes => self.taxes,
            ParamName::AutonomousInvestment => self.autonomous_investment,
            ParamName::InvestmentRateSensitivity => self.investment_rate_sensitivity,
            ParamName::ExpectedInflation => self.expected_inflation,
            ParamName::GovernmentSpending => self.government_spending,
            ParamName::NetExports => self.net_exports,
            ParamName::MoneyIncomeSensitivity => self.money_income_sensitivity,
            ParamName::MoneyRateSensitivity => self.money_rate_sensitivity,
            ParamName::MoneySupply => self.money_supply,
            ParamName::PriceLevel => self.price_level,
        }
    }

    pub fn set(&mut self, name: ParamName, value: f64) {
        let slot = match name {
            ParamName::AutonomousConsumption => &mut self.autonomous_consumption,
            ParamName::Mpc => &mut self.mpc,
            ParamName::Taxes => &mut self.taxes,
            ParamName::AutonomousInvestment => &mut self.autonomous_investment,
            ParamName::InvestmentRateSensitivity => &mut self.investment_rate_sensitivity,
            ParamName::ExpectedInflation => &mut self.expected_inflation,
            ParamName::GovernmentSpending => &mut self.government_spending,
            ParamName::NetExports => &mut self.net_exports,
            ParamName::MoneyIncomeSensitivity => &mut self.money_income_sensitivity,
            ParamName::MoneyRateSensitivity => &mut self.money_rate_sensitivity,
            ParamName::MoneySupply => &mut self.money_supply,
            ParamName::PriceLevel => &mut self.price_level,
        };
        *slot = value;
    }

    /// Returns a copy with one field replaced.
    pub fn with(mut self, name: ParamName, value: f64) -> Self {
        self.set(name, value);
        self
    }

    /// Checks every field against its slider range.
    pub fn check_ranges(&self) -> Result<(), ParameterError> {
        for name in ParamName::ALL {
            name.range().check(name, self.get(name))?;
        }
        Ok(())
    }
}

impl Default for ParameterValues {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// Names of the twelve exogenous inputs, keyed by their document symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ParamName {
    AutonomousConsumption,
    Mpc,
    Taxes,
    AutonomousInvestment,
    InvestmentRateSensitivity,
    ExpectedInflation,
    GovernmentSpending,
    NetExports,
    MoneyIncomeSensitivity,
    MoneyRateSensitivity,
    MoneySupply,
    PriceLevel,
}

impl ParamName {
    pub const ALL: [ParamName; 12] = [
        ParamName::AutonomousConsumption,
        ParamName::Mpc,
        ParamName::Taxes,
        ParamName::AutonomousInvestment,
        ParamName::InvestmentRateSensitivity,
        ParamName::ExpectedInflation,
        ParamName::GovernmentSpending,
        ParamName::NetExports,
        ParamName::MoneyIncomeSensitivity,
        ParamName::MoneyRateSensitivity,
        ParamName::MoneySupply,
        ParamName::PriceLevel,
    ];

    /// The key used in scenario documents.
    pub fn key(self) -> &'static str {
        match self {
            ParamName::AutonomousConsumption => "A",
            ParamName::Mpc => "c",
            ParamName::Taxes => "T",
            ParamName::AutonomousInvestment => "B",
            ParamName::InvestmentRateSensitivity => "b",
            ParamName::ExpectedInflation => "pi_e",
            ParamName::GovernmentSpending => "G",
            ParamName::NetExports => "NX",
            ParamName::MoneyIncomeSensitivity => "h1",
            ParamName::MoneyRateSensitivity => "h2",
            ParamName::MoneySupply => "M",
            ParamName::PriceLevel => "P",
        }
    }

    /// Slider range for this input.
    pub fn range(self) -> ParamRange {
        match self {
            ParamName::Mpc => ParamRange::open(0.01, 0.99),
            ParamName::InvestmentRateSensitivity | ParamName::MoneyRateSensitivity => {
                ParamRange::closed(0.1, 100.0)
            }
            ParamName::MoneyIncomeSensitivity => ParamRange::closed(0.01, 2.0),
            ParamName::PriceLevel => ParamRange::closed(0.1, 10.0),
            ParamName::MoneySupply => ParamRange::closed(0.0, 2000.0),
            ParamName::AutonomousConsumption | ParamName::AutonomousInvestment => {
                ParamRange::closed(0.0, 1000.0)
            }
            ParamName::GovernmentSpending | ParamName::Taxes | ParamName::NetExports => {
                ParamRange::closed(-500.0, 1000.0)
            }
            ParamName::ExpectedInflation => ParamRange::closed(-10.0, 10.0),
        }
    }
}

impl fmt::Display for ParamName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for ParamName {
    type Err = ParameterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ParamName::ALL
            .into_iter()
            .find(|name| name.key() == s)
            .ok_or_else(|| ParameterError::Unknown(s.to_string()))
    }
}

/// Legal interval for a slider. `open` excludes both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParamRange {
    pub min: f64,
    pub max: f64,
    pub open: bool,
}

impl ParamRange {
    pub const fn closed(min: f64, max: f64) -> Self {
        Self {
            min,
            max,
            open: false,
        }
    }

    pub const fn open(min: f64, max: f64) -> Self {
        Self {
            min,
            max,
            open: true,
        }
    }

    pub fn contains(&self, value: f64) -> bool {
        if self.open {
            value > self.min && value < self.max
        } else {
            value >= self.min && value <= self.max
        }
    }

    fn check(&self, name: ParamName, value: f64) -> Result<(), ParameterError> {
        if self.contains(value) {
            Ok(())
        } else {
            Err(ParameterError::OutOfRange {
                name,
                value,
                range: *self,
            })
        }
    }
}

impl fmt::Display for ParamRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.open {
            write!(f, "({}, {})", self.min, self.max)
        } else {
            write!(f, "[{}, {}]", self.min, self.max)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParameterError {
    #[error("{name} = {value} violates {requirement}")]
    Invariant {
        name: ParamName,
        value: f64,
        requirement: &'static str,
    },
    #[error("{name} = {value} is outside the legal range {range}")]
    OutOfRange {
        name: ParamName,
        value: f64,
        range: ParamRange,
    },
    #[error("unknown parameter `{0}`")]
    Unknown(String),
}

impl ParameterError {
    /// The offending parameter, when known.
    pub fn param(&self) -> Option<ParamName> {
        match self {
            ParameterError::Invariant { name, .. } | ParameterError::OutOfRange { name, .. } => {
                Some(*name)
            }
            ParameterError::Unknown(_) => None,
        }
    }
}

/// Parameter values that satisfy the model invariants.
///
/// Every model operation is total on a `Parameters` value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Parameters(ParameterValues);

impl Parameters {
    pub fn new(values: ParameterValues) -> Result<Self, ParameterError> {
        for name in ParamName::ALL {
            let value = values.get(name);
            if !value.is_finite() {
                return Err(ParameterError::Invariant {
                    name,
                    value,
                    requirement: "a finite value",
                });
            }
            let requirement = match name {
                ParamName::Mpc if !(value > 0.0 && value < 1.0) => "0 < c < 1",
                ParamName::InvestmentRateSensitivity if value <= 0.0 => "b > 0",
                ParamName::MoneyIncomeSensitivity if value <= 0.0 => "h1 > 0",
                ParamName::MoneyRateSensitivity if value <= 0.0 => "h2 > 0",
                ParamName::PriceLevel if value <= 0.0 => "P > 0",
                ParamName::MoneySupply if value < 0.0 => "M >= 0",
                _ => continue,
            };
            return Err(ParameterError::Invariant {
                name,
                value,
                requirement,
            });
        }
        Ok(Self(values))
    }

    /// Model invariants plus the slider ranges.
    pub fn new_in_range(values: ParameterValues) -> Result<Self, ParameterError> {
        let params = Self::new(values)?;
        values.check_ranges()?;
        Ok(params)
    }

    pub fn values(&self) -> &ParameterValues {
        &self.0
    }

    /// Revalidates after replacing one field.
    pub fn with(&self, name: ParamName, value: f64) -> Result<Self, ParameterError> {
        Self::new(self.0.with(name, value))
    }
}

impl Default for Parameters {
    fn default() -> Self {
        Self(ParameterValues::DEFAULT)
    }
}

impl Deref for Parameters {
    type Target = ParameterValues;

    fn deref(&self) -> &ParameterValues {
        &self.0
    }
}

impl TryFrom<ParameterValues> for Parameters {
    type Error = ParameterError;

    fn try_from(values: ParameterValues) -> Result<Self, Self::Error> {
        Self::new(values)
    }
}

impl<'de> Deserialize<'de> for Parameters {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let values = ParameterValues::deserialize(deserializer)?;
        Parameters::new(values).map_err(serde::de::Error::custom)
    }
}
