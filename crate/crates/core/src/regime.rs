use std::fmt;

use serde::Serialize;
use thiserror::Error;

/// Upper end of the interest-rate-control slider (percentage points).
pub const MAX_RATE_TARGET: f64 = 30.0;

/// A policy-rate target; never negative.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct RateTarget(f64);

impl RateTarget {
    pub fn new(rate: f64) -> Result<Self, RegimeError> {
        if rate.is_finite() && rate >= 0.0 {
            Ok(Self(rate))
        } else {
            Err(RegimeError::NegativeTarget(rate))
        }
    }

    /// Like [`RateTarget::new`] but also enforces the slider range `[0, 30]`.
    pub fn new_in_range(rate: f64) -> Result<Self, RegimeError> {
        let target = Self::new(rate)?;
        if rate > MAX_RATE_TARGET {
            return Err(RegimeError::OutOfRange(rate));
        }
        Ok(target)
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

/// How the central bank closes the money market.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum PolicyRegime {
    /// Nominal money supply is exogenous; the interest rate adjusts.
    #[default]
    MoneySupplyControl,
    /// The interest rate is pinned; money supply adjusts to clear the market.
    InterestRateControl(RateTarget),
}

impl PolicyRegime {
    pub fn interest_rate(target: f64) -> Result<Self, RegimeError> {
        Ok(Self::InterestRateControl(RateTarget::new(target)?))
    }

    pub fn target(&self) -> Option<f64> {
        match self {
            PolicyRegime::MoneySupplyControl => None,
            PolicyRegime::InterestRateControl(t) => Some(t.get()),
        }
    }

    /// Document tag: `money_supply` or `interest_rate`.
    pub fn tag(&self) -> &'static str {
        match self {
            PolicyRegime::MoneySupplyControl => "money_supply",
            PolicyRegime::InterestRateControl(_) => "interest_rate",
        }
    }
}

impl fmt::Display for PolicyRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolicyRegime::MoneySupplyControl => f.write_str("money supply control"),
            PolicyRegime::InterestRateControl(t) => {
                write!(f, "interest rate control at {}%", t.get())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegimeError {
    #[error("interest rate target {0} must be a finite value >= 0")]
    NegativeTarget(f64),
    #[error("interest rate target {0} is outside the legal range [0, 30]")]
    OutOfRange(f64),
}
