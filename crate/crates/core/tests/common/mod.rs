#![allow(dead_code)]

use islm_core::{ParameterValues, Parameters, PolicyRegime};
use proptest::prelude::*;

/// Valid parameters drawn uniformly inside the slider ranges.
pub fn parameter_values() -> impl Strategy<Value = ParameterValues> {
    (
        (
            0.0..1000.0,
            0.02..0.98,
            -500.0..1000.0,
            0.0..1000.0,
            0.1..100.0,
            -10.0..10.0,
        ),
        (
            -500.0..1000.0,
            -500.0..1000.0,
            0.01..2.0,
            0.1..100.0,
            0.0..2000.0,
            0.1..10.0,
        ),
    )
        .prop_map(
            |((a, c, t, b_auto, b, pi_e), (g, nx, h1, h2, m, p))| ParameterValues {
                autonomous_consumption: a,
                mpc: c,
                taxes: t,
                autonomous_investment: b_auto,
                investment_rate_sensitivity: b,
                expected_inflation: pi_e,
                government_spending: g,
                net_exports: nx,
                money_income_sensitivity: h1,
                money_rate_sensitivity: h2,
                money_supply: m,
                price_level: p,
            },
        )
}

pub fn parameters() -> impl Strategy<Value = Parameters> {
    parameter_values().prop_map(|v| Parameters::new(v).expect("strategy stays in range"))
}

pub fn regime() -> impl Strategy<Value = PolicyRegime> {
    prop_oneof![
        Just(PolicyRegime::MoneySupplyControl),
        (0.0..30.0).prop_map(|t| PolicyRegime::interest_rate(t).unwrap()),
    ]
}

pub fn rel_close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * a.abs().max(b.abs()).max(1.0)
}
