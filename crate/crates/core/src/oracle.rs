//! Brute-force equilibrium search used to cross-check the closed-form solver.
//!
//! Only compiled for tests or with the `oracle` feature. The residuals are
//! written out from the raw parameter values here rather than reusing the
//! model functions, so the check stays independent of the solver path.

use crate::params::ParameterValues;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleRegime {
    MoneySupply,
    InterestRate(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSolution {
    pub output: f64,
    pub rate: f64,
    /// Node spacing of the finest grid level.
    pub output_step: f64,
    pub rate_step: f64,
    /// Best combined residual, in cells of the finest level.
    pub residual: f64,
    /// Box around the finest-level nodes that could neighbour the true
    /// solution. The solution lies inside whenever the search succeeded.
    pub output_bracket: (f64, f64),
    pub rate_bracket: (f64, f64),
}

impl OracleSolution {
    /// Whether `(output, rate)` falls inside the final bracket, allowing
    /// `slack` relative rounding on each bound.
    pub fn brackets(&self, output: f64, rate: f64, slack: f64) -> bool {
        let inside = |x: f64, (lo, hi): (f64, f64)| {
            let pad = slack * x.abs().max(1.0);
            x >= lo - pad && x <= hi + pad
        };
        inside(output, self.output_bracket) && inside(rate, self.rate_bracket)
    }

    pub fn output_width(&self) -> f64 {
        self.output_bracket.1 - self.output_bracket.0
    }

    pub fn rate_width(&self) -> f64 {
        self.rate_bracket.1 - self.rate_bracket.0
    }
}

/// Grid layout: a coarse pass followed by zoomed passes.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    pub coarse_nodes: usize,
    pub fine_nodes: usize,
    /// Maximum number of zoom passes after the coarse one.
    pub levels: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            coarse_nodes: 201,
            fine_nodes: 41,
            levels: 12,
        }
    }
}

/// A node within half a cell of the true solution scores at most this much
/// in cell units, so every zoom window is the bounding box of the nodes
/// scoring at or below it.
const CANDIDATE_SCORE: f64 = 0.5;

/// Goods- and money-market residuals at a candidate point: `|ZZ - Y|` in
/// CU and the rate gap to the LM relation (or to the target) in
/// percentage points.
pub fn residuals(v: &ParameterValues, regime: OracleRegime, output: f64, rate: f64) -> (f64, f64) {
    let consumption = v.autonomous_consumption + v.mpc * (output - v.taxes);
    let investment =
        v.autonomous_investment - v.investment_rate_sensitivity * (rate - v.expected_inflation);
    let demand = consumption + investment + v.government_spending + v.net_exports;
    let goods = (demand - output).abs();
    let money = match regime {
        OracleRegime::MoneySupply => {
            let lm = (v.money_income_sensitivity * output / v.money_rate_sensitivity
                - v.money_supply / (v.money_rate_sensitivity * v.price_level))
                .max(0.0);
            (rate - lm).abs()
        }
        OracleRegime::InterestRate(target) => (rate - target).abs(),
    };
    (goods, money)
}

/// `max(goods, money)` with each residual measured in grid cells: divided by
/// the most it can change between this node and any point of its own cell.
/// Keeps the two markets on an equal footing whatever their units.
fn cell_residual(
    v: &ParameterValues,
    regime: OracleRegime,
    output: f64,
    rate: f64,
    dy: f64,
    di: f64,
) -> f64 {
    let (goods, money) = residuals(v, regime, output, rate);
    let goods_scale = (1.0 - v.mpc) * dy + v.investment_rate_sensitivity * di;
    let money_scale = match regime {
        OracleRegime::MoneySupply => {
            let slope = v.money_income_sensitivity / v.money_rate_sensitivity;
            let floor_ends = v.money_supply / (v.money_income_sensitivity * v.price_level);
            // The LM slope only matters if the curve leaves the floor in this cell.
            if output + dy / 2.0 > floor_ends {
                slope * dy + di
            } else {
                di
            }
        }
        OracleRegime::InterestRate(_) => di,
    };
    (goods / goods_scale).max(money / money_scale)
}

fn linspace(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> {
    let step = (hi - lo) / (n - 1) as f64;
    (0..n).map(move |k| if k == n - 1 { hi } else { lo + step * k as f64 })
}

/// Searches `[y_lo, y_hi] x [i_lo, i_hi]` for the point minimising the
/// combined residual.
pub fn grid_search(
    v: &ParameterValues,
    regime: OracleRegime,
    output_range: (f64, f64),
    rate_range: (f64, f64),
    config: SearchConfig,
) -> OracleSolution {
    let (mut y_lo, mut y_hi) = output_range;
    let (mut i_lo, mut i_hi) = rate_range;
    let mut n = config.coarse_nodes;
    let mut best = OracleSolution {
        output: y_lo,
        rate: i_lo,
        output_step: 0.0,
        rate_step: 0.0,
        residual: f64::INFINITY,
        output_bracket: output_range,
        rate_bracket: rate_range,
    };
    for _ in 0..=config.levels {
        let dy = (y_hi - y_lo) / (n - 1) as f64;
        let di = (i_hi - i_lo) / (n - 1) as f64;
        best.residual = f64::INFINITY;
        let mut window = (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        );
        for y in linspace(y_lo, y_hi, n) {
            for i in linspace(i_lo, i_hi, n) {
                let r = cell_residual(v, regime, y, i, dy, di);
                if r <= CANDIDATE_SCORE {
                    window = (
                        window.0.min(y),
                        window.1.max(y),
                        window.2.min(i),
                        window.3.max(i),
                    );
                }
                if r < best.residual {
                    best = OracleSolution {
                        output: y,
                        rate: i,
                        output_step: dy,
                        rate_step: di,
                        residual: r,
                        ..best
                    };
                }
            }
        }
        if best.residual > CANDIDATE_SCORE {
            // No node is close enough; the solution is outside the domain.
            break;
        }
        y_lo = (window.0 - dy).max(output_range.0);
        y_hi = (window.1 + dy).min(output_range.1);
        i_lo = (window.2 - di).max(rate_range.0);
        i_hi = (window.3 + di).min(rate_range.1);
        // A window that barely shrank gets the coarse density again.
        let shrink = ((y_hi - y_lo) / (best.output_bracket.1 - best.output_bracket.0))
            .max((i_hi - i_lo) / (best.rate_bracket.1 - best.rate_bracket.0));
        best.output_bracket = (y_lo, y_hi);
        best.rate_bracket = (i_lo, i_hi);
        n = if shrink > 0.25 {
            config.coarse_nodes
        } else {
            config.fine_nodes
        };
    }
    best
}

/// Default domain `[0, 4 Y*] x [0, 50]`.
pub fn search_around(
    v: &ParameterValues,
    regime: OracleRegime,
    output_hint: f64,
) -> OracleSolution {
    grid_search(
        v,
        regime,
        (0.0, 4.0 * output_hint.max(1.0)),
        (0.0, 50.0),
        SearchConfig::default(),
    )
}
