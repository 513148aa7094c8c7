//! Sampled curve data for the IS-LM, money-market and goods-market plots.
//!
//! IS-LM and goods-market plots sample over output; the money-market plot
//! samples over the nominal rate and reports points as
//! `(real balances, rate)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::params::Parameters;
use crate::scenario::{ScenarioSet, Slot};
use crate::solver::Equilibrium;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Plot {
    #[serde(rename = "islm")]
    IsLm,
    #[serde(rename = "money")]
    Money,
    #[serde(rename = "goods")]
    Goods,
}

impl Plot {
    pub const ALL: [Plot; 3] = [Plot::IsLm, Plot::Money, Plot::Goods];

    pub fn id(self) -> &'static str {
        match self {
            Plot::IsLm => "islm",
            Plot::Money => "money",
            Plot::Goods => "goods",
        }
    }
}

impl fmt::Display for Plot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Plot {
    type Err = CurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Plot::ALL
            .into_iter()
            .find(|p| p.id() == s)
            .ok_or_else(|| CurveError::UnknownPlot(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CurveKind {
    #[serde(rename = "IS")]
    Is,
    #[serde(rename = "LM")]
    Lm,
    MoneyDemand,
    MoneySupply,
    AggregateDemand,
    FortyFiveDegree,
}

impl CurveKind {
    pub fn label(self) -> &'static str {
        match self {
            CurveKind::Is => "IS",
            CurveKind::Lm => "LM",
            CurveKind::MoneyDemand => "MoneyDemand",
            CurveKind::MoneySupply => "MoneySupply",
            CurveKind::AggregateDemand => "AggregateDemand",
            CurveKind::FortyFiveDegree => "FortyFiveDegree",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("unknown plot `{0}` (expected islm, money or goods)")]
    UnknownPlot(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// Evenly spaced sample nodes `min, ..., max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl Grid {
    pub const DEFAULT_POINTS: usize = 201;
    pub const MAX_POINTS: usize = 10_000;

    pub fn new(min: f64, max: f64, n: usize) -> Result<Self, CurveError> {
        if !(min.is_finite() && max.is_finite()) {
            return Err(CurveError::InvalidGrid("bounds must be finite".into()));
        }
        if min >= max {
            return Err(CurveError::InvalidGrid(format!(
                "min ({min}) must be below max ({max})"
            )));
        }
        if n < 2 {
            return Err(CurveError::InvalidGrid(format!(
                "n = {n}; at least 2 points are required"
            )));
        }
        if n > Self::MAX_POINTS {
            return Err(CurveError::InvalidGrid(format!(
                "n = {n} exceeds the limit of {}",
                Self::MAX_POINTS
            )));
        }
        Ok(Self { min, max, n })
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let span = self.max - self.min;
        let last = self.n - 1;
        (0..self.n).map(move |k| {
            if k == last {
                self.max
            } else {
                self.min + span * k as f64 / last as f64
            }
        })
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.min && x <= self.max
    }
}

/// Grid bounds where any field may be left to the default.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub n: Option<usize>,
}

impl GridSpec {
    pub fn resolve(&self, default: Grid) -> Result<Grid, CurveError> {
        Grid::new(
            self.min.unwrap_or(default.min),
            self.max.unwrap_or(default.max),
            self.n.unwrap_or(default.n),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveSeries {
    pub curve_kind: CurveKind,
    pub slot: usize,
    pub scenario: String,
    /// `(x, y)` pairs sorted by `x`.
    pub points: Vec<[f64; 2]>,
}

/// Default sampling range for a plot: `[0, 2 * max Y*]` over output (or
/// `[0, max(10, 2 * max i*)]` over the rate for the money market), taken
/// across the requested slot and every slot visible in the plot.
pub fn default_grid(set: &ScenarioSet, slot: Slot, plot: Plot) -> Grid {
    let equilibria: Vec<Equilibrium> = set
        .iter()
        .filter(|(s, scenario)| *s == slot || scenario.visible_in.contains(&plot))
        .map(|(_, scenario)| scenario.solve())
        .collect();
    let (min, max) = match plot {
        Plot::IsLm | Plot::Goods => {
            let lo = equilibria
                .iter()
                .map(|e| 2.0 * e.output)
                .fold(0.0, f64::min);
            let hi = equilibria
                .iter()
                .map(|e| 2.0 * e.output)
                .fold(0.0, f64::max);
            (lo, if hi > lo { hi } else { lo + 1.0 })
        }
        Plot::Money => {
            let hi = equilibria.iter().map(|e| 2.0 * e.rate).fold(10.0, f64::max);
            (0.0, hi)
        }
    };
    Grid {
        min,
        max,
        n: Grid::DEFAULT_POINTS,
    }
}

/// Samples every curve of `plot` for one slot.
pub fn sample_curves(
    set: &ScenarioSet,
    slot: Slot,
    plot: Plot,
    grid: &Grid,
) -> Result<Vec<CurveSeries>, CurveError> {
    let scenario = set.get(slot);
    let p = &scenario.params;
    let series = |curve_kind, points| CurveSeries {
        curve_kind,
        slot: slot.number(),
        scenario: scenario.name.clone(),
        points,
    };

    match plot {
        Plot::IsLm => {
            // Under interest-rate control the LM curve sits where the implied
            // money stock puts it, crossing IS at the target.
            let money = scenario.solve().money_supply;
            let is = grid.nodes().map(|y| [y, p.is_rate(y)]).collect();
            let lm = lm_nodes(p.lm_kink_output_with_money(money), grid)
                .map(|y| [y, p.lm_rate_with_money(y, money)])
                .collect();
            Ok(vec![series(CurveKind::Is, is), series(CurveKind::Lm, lm)])
        }
        Plot::Money => {
            if grid.min < 0.0 {
                return Err(CurveError::InvalidGrid(
                    "the money-market plot samples the nominal rate, which cannot be negative"
                        .into(),
                ));
            }
            let eq = scenario.solve();
            let supply = eq.money_supply / p.price_level;
            let mut demand: Vec<[f64; 2]> = grid
                .nodes()
                .map(|i| [p.money_demand(eq.output, i), i])
                .collect();
            demand.reverse();
            // At the floor the demand schedule runs flat out to the supply line.
            let floor = p.money_demand(eq.output, 0.0);
            if grid.min == 0.0 && supply > floor {
                demand.push([supply, 0.0]);
            }
            let supply_line = grid.nodes().map(|i| [supply, i]).collect();
            Ok(vec![
                series(CurveKind::MoneyDemand, demand),
                series(CurveKind::MoneySupply, supply_line),
            ])
        }
        Plot::Goods => {
            let eq = scenario.solve();
            let zz = grid
                .nodes()
                .map(|y| [y, p.aggregate_demand(y, eq.rate)])
                .collect();
            let diagonal = grid.nodes().map(|y| [y, y]).collect();
            Ok(vec![
                series(CurveKind::AggregateDemand, zz),
                series(CurveKind::FortyFiveDegree, diagonal),
            ])
        }
    }
}

/// Grid nodes with the LM kink inserted when it falls strictly inside.
fn lm_nodes(kink: f64, grid: &Grid) -> impl Iterator<Item = f64> {
    let mut nodes: Vec<f64> = grid.nodes().collect();
    if grid.min < kink && kink < grid.max && !nodes.contains(&kink) {
        let at = nodes.partition_point(|&y| y < kink);
        nodes.insert(at, kink);
    }
    nodes.into_iter()
}

/// Rate implied by the money-demand schedule at real balances `x`, holding
/// output at `output`. Floored at zero, matching the LM relation.
pub fn money_demand_rate(p: &Parameters, output: f64, x: f64) -> f64 {
    ((p.money_income_sensitivity * output - x) / p.money_rate_sensitivity).max(0.0)
}
