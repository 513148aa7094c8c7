//! Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Runs without any browser component.

// `!(a <= b)` is deliberate: a NaN must fail a check, not pass it.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::time::{Duration, Instant};

use api::post_solve;
use clap::Parser;
use islm_core::oracle::{search_around, OracleRegime};
use islm_core::{
    default_grid, fiscal_multiplier, sample_curves, solve_equilibrium, unconstrained_intersection,
    CurveKind, CurveSeries, Equilibrium, Grid, ParamName, ParameterValues, Parameters, Plot,
    PolicyRegime, RegimeTag, ScenarioDocument, ScenarioEntry, Slot,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

/// Outcome of one criterion: `Err` carries the first failure found.
type Check = Result<String, String>;

type Criterion = (&'static str, fn() -> Check);

fn main() {
    let criteria: [Criterion; 6] = [
        ("default equilibrium", default_equilibrium),
        ("golden walkthrough", golden_walkthrough),
        ("oracle equivalence", oracle_equivalence),
        ("invariant suite", invariant_suite),
        ("curve faithfulness", curve_faithfulness),
        ("contract parity", contract_parity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name} ({elapsed:.2}s): {detail}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL [{}] {name} ({elapsed:.2}s): {reason}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Drives the CLI in-process, returning stdout.
fn cli(args: &[&str], stdin: &str) -> Result<String, String> {
    let cli = islm_cli::Cli::try_parse_from(std::iter::once("islm").chain(args.iter().copied()))
        .map_err(|e| e.to_string())?;
    let mut out = Vec::new();
    islm_cli::run(cli, &mut stdin.as_bytes(), &mut out).map_err(|e| e.to_string())?;
    String::from_utf8(out).map_err(|e| e.to_string())
}

fn solve_structured(doc: &str) -> Result<Value, String> {
    let text = cli(&["solve", "--format", "structured"], doc)?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn field(v: &Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or(f64::NAN)
}

fn default_equilibrium() -> Check {
    let started = Instant::now();
    let doc = cli(&["defaults"], "")?;
    let report = solve_structured(&doc)?;
    let elapsed = started.elapsed();
    let first = &report["results"][0];
    let (y, i) = (field(first, "Y_star"), field(first, "i_star"));
    ensure!((y - 1050.0).abs() <= 1e-6, "Y* = {y}, expected 1050");
    ensure!((i - 5.0).abs() <= 1e-6, "i* = {i}, expected 5");
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!(
        "Y*={y}, i*={i} in {:.1} ms",
        elapsed.as_secs_f64() * 1e3
    ))
}

fn walkthrough_document() -> ScenarioDocument {
    let mut doc = ScenarioDocument::defaults();
    doc.scenarios[1].params.government_spending = 310.0;
    doc.scenarios[2].params.government_spending = 310.0;
    doc.scenarios[2].regime = RegimeTag::InterestRate;
    doc.scenarios[2].i_bar = Some(5.0);
    doc
}

fn golden_walkthrough() -> Check {
    let doc = walkthrough_document();
    let report = solve_structured(&doc.to_json())?;
    let r = |k: usize| &report["results"][k];
    let investment = |k: usize| r(k)["composition"]["I"].as_f64().unwrap_or(f64::NAN);

    for k in [1, 2] {
        let balance = field(r(k), "budget_balance");
        ensure!(balance == -110.0, "scenario {} balance {balance}", k + 1);
    }
    ensure!(field(r(1), "i_star") > 5.0, "scenario 2 rate did not rise");
    ensure!(investment(1) < investment(0), "no crowding out");
    ensure!(
        field(r(2), "i_star") == 5.0,
        "scenario 3 rate {}",
        field(r(2), "i_star")
    );
    ensure!(
        field(r(2), "Y_star") > field(r(1), "Y_star"),
        "accommodation did not raise output"
    );

    // Independent grid search for the derived magnitudes.
    let expansion = doc.scenarios[1].params;
    let sol = search_around(&expansion, OracleRegime::MoneySupply, 1000.0);
    let (dy, di) = (sol.output_width().max(1e-6), sol.rate_width().max(1e-6));
    ensure!(
        sol.brackets(1090.0, 9.0, 1e-12),
        "oracle {sol:?} excludes (1090, 9)"
    );
    ensure!(
        (sol.output - 1090.0).abs() <= dy,
        "oracle output {}",
        sol.output
    );
    ensure!((sol.rate - 9.0).abs() <= di, "oracle rate {}", sol.rate);
    ensure!(
        (field(r(1), "Y_star") - sol.output).abs() <= dy,
        "solver vs oracle output"
    );
    ensure!(
        (field(r(1), "i_star") - sol.rate).abs() <= di,
        "solver vs oracle rate"
    );

    let sol = search_around(&expansion, OracleRegime::InterestRate(5.0), 1000.0);
    let dy = sol.output_width().max(1e-6);
    let implied = expansion.price_level
        * (expansion.money_income_sensitivity * sol.output
            - expansion.money_rate_sensitivity * sol.rate);
    let dm = expansion.price_level * expansion.money_income_sensitivity * dy + 1e-9;
    ensure!(
        (sol.output - 1170.0).abs() <= dy,
        "oracle output {}",
        sol.output
    );
    ensure!((implied - 224.0).abs() <= dm, "oracle money {implied}");
    ensure!(
        (field(r(2), "Y_star") - sol.output).abs() <= dy,
        "solver vs oracle output"
    );
    ensure!(
        (field(r(2), "M_realized") - implied).abs() <= dm,
        "solver vs oracle money"
    );

    Ok("balance -110 twice; (1090, 9) and (1170, M=224) confirmed by grid search".into())
}

/// Uniform over the slider ranges; `c` stays inside its open interval.
fn draw_values(rng: &mut ChaCha8Rng) -> ParameterValues {
    let mut v = ParameterValues::DEFAULT;
    for name in ParamName::ALL {
        let range = name.range();
        let (lo, hi) = if range.open {
            let pad = 1e-6 * (range.max - range.min);
            (range.min + pad, range.max - pad)
        } else {
            (range.min, range.max)
        };
        v.set(name, rng.gen_range(lo..=hi));
    }
    v
}

fn draw_regime(rng: &mut ChaCha8Rng) -> PolicyRegime {
    if rng.gen_bool(0.3) {
        PolicyRegime::interest_rate(rng.gen_range(0.0..=30.0)).expect("target in range")
    } else {
        PolicyRegime::MoneySupplyControl
    }
}

fn oracle_regime(regime: &PolicyRegime) -> OracleRegime {
    regime
        .target()
        .map_or(OracleRegime::MoneySupply, OracleRegime::InterestRate)
}

fn oracle_equivalence() -> Check {
    const DRAWS: usize = 1000;
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x15_4c4d);
    let (mut accepted, mut rejected) = (0, 0);
    let (mut zlb, mut interior, mut rate_control) = (0, 0, 0);
    let mut worst_width = 0.0f64;
    while accepted < DRAWS {
        let v = draw_values(&mut rng);
        let regime = draw_regime(&mut rng);
        let p = Parameters::new(v).map_err(|e| e.to_string())?;
        let eq = solve_equilibrium(&p, &regime);
        // The search domain is [0, 4 Y*] x [0, 50].
        if eq.output <= 0.0 || eq.rate > 50.0 {
            rejected += 1;
            continue;
        }
        accepted += 1;
        match (&regime, eq.at_zlb) {
            (PolicyRegime::InterestRateControl(_), _) => rate_control += 1,
            (_, true) => zlb += 1,
            (_, false) => interior += 1,
        }
        let sol = search_around(&v, oracle_regime(&regime), eq.output);
        ensure!(
            sol.brackets(eq.output, eq.rate, 1e-12),
            "draw {accepted}: closed form ({}, {}) outside oracle bracket {:?} x {:?}; {v:?} {regime:?}",
            eq.output,
            eq.rate,
            sol.output_bracket,
            sol.rate_bracket
        );
        let width = (sol.output_width() / eq.output.max(1.0)).max(sol.rate_width());
        ensure!(
            width <= 1e-6,
            "draw {accepted}: oracle bracket too wide ({width:e})"
        );
        worst_width = worst_width.max(width);
    }
    let elapsed = started.elapsed();
    ensure!(
        zlb > 0 && interior > 0 && rate_control > 0,
        "draws do not span both regimes and branches"
    );
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(format!(
        "{DRAWS} draws ({interior} interior, {zlb} zero-bound, {rate_control} rate control; {rejected} outside domain skipped), widest bracket {worst_width:.1e}"
    ))
}

fn rel_close(a: f64, b: f64, eps: f64) -> bool {
    (a - b).abs() <= eps * a.abs().max(b.abs()).max(1.0)
}

fn with(p: &Parameters, changes: &[(ParamName, f64)]) -> Parameters {
    let v = changes
        .iter()
        .fold(*p.values(), |v, &(name, x)| v.with(name, x));
    Parameters::new(v).expect("still valid")
}

fn invariant_suite() -> Check {
    const CASES: usize = 5000;
    const EPS: f64 = 1e-9;
    let mut rng = ChaCha8Rng::seed_from_u64(0x01a7_a11d);
    let msc = PolicyRegime::MoneySupplyControl;
    let mut counts = [0usize; 6];
    for case in 0..CASES {
        let p = Parameters::new(draw_values(&mut rng)).map_err(|e| e.to_string())?;
        let regime = draw_regime(&mut rng);
        let eq = solve_equilibrium(&p, &regime);

        // Residuals in both markets.
        let goods = (p.aggregate_demand(eq.output, eq.rate) - eq.output).abs();
        ensure!(
            goods <= EPS * eq.output.abs().max(1.0),
            "case {case}: goods residual {goods}"
        );
        let real_money = eq.money_supply / p.price_level;
        let demand = p.money_demand(eq.output, eq.rate);
        if eq.at_zlb {
            ensure!(
                real_money >= demand - EPS * real_money.max(1.0),
                "case {case}: excess demand at the floor"
            );
        } else {
            ensure!(
                (real_money - demand).abs() <= EPS * real_money.abs().max(1.0),
                "case {case}: money residual {}",
                real_money - demand
            );
        }
        counts[0] += 1;

        // Branch classification.
        let base = solve_equilibrium(&p, &msc);
        let (_, unconstrained) = unconstrained_intersection(&p);
        ensure!(
            base.at_zlb == (unconstrained < 0.0),
            "case {case}: ZLB flag vs sign of {unconstrained}"
        );
        ensure!(base.rate >= 0.0, "case {case}: negative rate");
        counts[1] += 1;

        // Pegging the rate the money stock produced gives back that money stock.
        if !base.at_zlb {
            let pegged = solve_equilibrium(
                &p,
                &PolicyRegime::interest_rate(base.rate).map_err(|e| e.to_string())?,
            );
            ensure!(
                rel_close(pegged.output, base.output, EPS),
                "case {case}: round-trip output"
            );
            ensure!(
                rel_close(pegged.money_supply, p.money_supply, EPS),
                "case {case}: round-trip money"
            );
            counts[2] += 1;
        }

        // Multiplier against a finite difference on the same branch.
        if let Ok(m) = fiscal_multiplier(&p, &regime) {
            let delta = 1e-3;
            let bumped = with(
                &p,
                &[(ParamName::GovernmentSpending, p.government_spending + delta)],
            );
            let shifted = solve_equilibrium(&bumped, &regime);
            if shifted.at_zlb == eq.at_zlb {
                let fd = (shifted.output - eq.output) / delta;
                ensure!(
                    (m - fd).abs() <= 1e-6,
                    "case {case}: multiplier {m} vs {fd}"
                );
                counts[3] += 1;
            }
        }

        // Scaling M and P together changes nothing real.
        let scale = rng.gen_range(0.1..10.0);
        let scaled = with(
            &p,
            &[
                (ParamName::MoneySupply, p.money_supply * scale),
                (ParamName::PriceLevel, p.price_level * scale),
            ],
        );
        let eq_scaled = solve_equilibrium(&scaled, &regime);
        ensure!(
            rel_close(eq.output, eq_scaled.output, EPS)
                && (eq.rate - eq_scaled.rate).abs() <= EPS * eq.rate.max(1.0)
                && eq.at_zlb == eq_scaled.at_zlb,
            "case {case}: nominal scaling by {scale} moved the equilibrium"
        );
        counts[4] += 1;

        // Comparative statics on the interior branch.
        if !base.at_zlb {
            let step = rng.gen_range(0.5..20.0);
            let shift = |name: ParamName| {
                solve_equilibrium(&with(&p, &[(name, p.values().get(name) + step)]), &msc)
            };
            let g = shift(ParamName::GovernmentSpending);
            ensure!(
                g.output > base.output && g.rate > base.rate,
                "case {case}: G up"
            );
            let t = shift(ParamName::Taxes);
            ensure!(
                t.output < base.output && t.rate <= base.rate,
                "case {case}: T up"
            );
            let m = shift(ParamName::MoneySupply);
            ensure!(
                m.output > base.output && m.rate < base.rate,
                "case {case}: M up"
            );
            counts[5] += 1;
        }
    }
    Ok(format!(
        "{CASES} cases: residuals {}, classification {}, round trip {}, multiplier {}, neutrality {}, statics {}",
        counts[0], counts[1], counts[2], counts[3], counts[4], counts[5]
    ))
}

/// Linear interpolation of `y` at `x`; `None` outside the series.
fn interpolate(points: &[[f64; 2]], x: f64) -> Option<f64> {
    points.windows(2).find_map(|w| {
        let ([x0, y0], [x1, y1]) = (w[0], w[1]);
        if x == x0 {
            Some(y0)
        } else if x == x1 {
            Some(y1)
        } else if x0 < x && x < x1 {
            Some(y0 + (y1 - y0) * (x - x0) / (x1 - x0))
        } else {
            None
        }
    })
}

fn find(series: &[CurveSeries], kind: CurveKind) -> &CurveSeries {
    series
        .iter()
        .find(|s| s.curve_kind == kind)
        .expect("curve present")
}

fn curve_faithfulness() -> Check {
    const SETS: usize = 300;
    const EPS: f64 = 1e-9;
    let tol = |x: f64| EPS * x.abs().max(1.0);
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0_4e5);
    let (mut points, mut kinks) = (0usize, 0usize);
    for case in 0..SETS {
        let mut doc = ScenarioDocument::defaults();
        for entry in &mut doc.scenarios {
            entry.params = draw_values(&mut rng);
            if let Some(t) = draw_regime(&mut rng).target() {
                entry.regime = RegimeTag::InterestRate;
                entry.i_bar = Some(t);
            }
        }
        let set = doc.to_set().map_err(|e| e.to_string())?;
        for slot in Slot::ALL {
            let p = set.get(slot).params;
            let eq: Equilibrium = set.solve(slot);
            let here = format!("case {case} slot {}", slot.number());

            // Random grid: every point must satisfy its equation.
            let lo = rng.gen_range(-1000.0..3000.0);
            let grid = Grid::new(lo, lo + rng.gen_range(1.0..6000.0), rng.gen_range(2..500))
                .map_err(|e| e.to_string())?;
            let islm = sample_curves(&set, slot, Plot::IsLm, &grid).map_err(|e| e.to_string())?;
            for &[y, i] in &find(&islm, CurveKind::Is).points {
                ensure!(
                    (p.is_rate(y) - i).abs() <= tol(i),
                    "{here}: IS point ({y}, {i})"
                );
            }
            let lm = find(&islm, CurveKind::Lm);
            for &[y, i] in &lm.points {
                let expected = p.lm_rate_with_money(y, eq.money_supply);
                ensure!(
                    (expected - i).abs() <= tol(i),
                    "{here}: LM point ({y}, {i})"
                );
            }
            points += islm.iter().map(|s| s.points.len()).sum::<usize>();
            let kink = p.lm_kink_output_with_money(eq.money_supply);
            if grid.contains(kink) {
                ensure!(
                    lm.points.iter().any(|&[y, _]| y == kink),
                    "{here}: LM kink {kink} missing"
                );
                kinks += 1;
            }
            let goods = sample_curves(&set, slot, Plot::Goods, &grid).map_err(|e| e.to_string())?;
            for &[y, z] in &find(&goods, CurveKind::AggregateDemand).points {
                let expected = p.aggregate_demand(y, eq.rate);
                ensure!(
                    (expected - z).abs() <= tol(z),
                    "{here}: ZZ point ({y}, {z})"
                );
            }
            ensure!(
                find(&goods, CurveKind::FortyFiveDegree)
                    .points
                    .iter()
                    .all(|&[x, y]| x == y),
                "{here}: 45-degree line"
            );

            // Default grids: the equilibrium lies on both curves of every plot.
            let on = |series: &CurveSeries, x: f64, y: f64| {
                interpolate(&series.points, x)
                    .is_some_and(|v| (v - y).abs() <= EPS * y.abs().max(1.0))
            };
            let sampled = |plot| {
                sample_curves(&set, slot, plot, &default_grid(&set, slot, plot))
                    .map_err(|e| e.to_string())
            };
            let islm = sampled(Plot::IsLm)?;
            for kind in [CurveKind::Is, CurveKind::Lm] {
                ensure!(
                    on(find(&islm, kind), eq.output, eq.rate),
                    "{here}: equilibrium off {kind}"
                );
            }
            let goods = sampled(Plot::Goods)?;
            for kind in [CurveKind::AggregateDemand, CurveKind::FortyFiveDegree] {
                ensure!(
                    on(find(&goods, kind), eq.output, eq.output),
                    "{here}: equilibrium off {kind}"
                );
            }
            let money = sampled(Plot::Money)?;
            let real = eq.money_supply / p.price_level;
            ensure!(
                on(find(&money, CurveKind::MoneyDemand), real, eq.rate),
                "{here}: equilibrium off money demand"
            );
            let supply = &find(&money, CurveKind::MoneySupply).points;
            let (lo, hi) = (supply[0][1], supply[supply.len() - 1][1]);
            ensure!(
                supply.iter().all(|&[x, _]| x == real) && lo <= eq.rate && eq.rate <= hi,
                "{here}: equilibrium off money supply"
            );
        }
    }
    Ok(format!(
        "{SETS} random sets x 3 slots, {points} IS/LM points, {kinks} kinks in range"
    ))
}

fn random_document(rng: &mut ChaCha8Rng) -> ScenarioDocument {
    let count = rng.gen_range(1..=3);
    let scenarios = (0..count)
        .map(|k| {
            let regime = draw_regime(rng);
            ScenarioEntry {
                name: format!("Case {k}-{}", rng.gen_range(0..1000)),
                regime: if regime.target().is_some() {
                    RegimeTag::InterestRate
                } else {
                    RegimeTag::MoneySupply
                },
                i_bar: regime.target(),
                params: draw_values(rng),
            }
        })
        .collect();
    ScenarioDocument { scenarios }
}

fn contract_parity() -> Check {
    const DOCUMENTS: usize = 50;
    let runtime = tokio::runtime::Builder::new_current_thread()
        .build()
        .map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a_41);
    let mut fields = 0usize;
    for case in 0..DOCUMENTS {
        let body = random_document(&mut rng).to_json();
        let from_cli = cli(&["solve", "--format", "structured"], &body)?;
        let (status, from_api) = runtime.block_on(post_solve(body));
        ensure!(
            status == 200,
            "case {case}: API status {status}: {from_api}"
        );
        let a: Value = serde_json::from_str(&from_cli).map_err(|e| e.to_string())?;
        let b: Value = serde_json::from_str(&from_api).map_err(|e| e.to_string())?;
        ensure!(
            a == b,
            "case {case}: CLI and API differ\n{from_cli}\n{from_api}"
        );
        fields += count_leaves(&a);
    }
    Ok(format!("{DOCUMENTS} documents, {fields} fields identical"))
}

fn count_leaves(v: &Value) -> usize {
    match v {
        Value::Array(items) => items.iter().map(count_leaves).sum(),
        Value::Object(map) => map.values().map(count_leaves).sum(),
        _ => 1,
    }
}

mod api {
    use axum::body::Body;
    use axum::http::Request;
    use http_body_util::BodyExt;
    use tower::ServiceExt;

    pub async fn post_solve(body: String) -> (u16, String) {
        let request = Request::post("/api/v1/solve")
            .header("content-type", "application/json")
            .body(Body::from(body))
            .expect("valid request");
        let response = islm_server::router()
            .oneshot(request)
            .await
            .expect("infallible");
        let status = response.status().as_u16();
        let bytes = response
            .into_body()
            .collect()
            .await
            .expect("body")
            .to_bytes();
        (status, String::from_utf8_lossy(&bytes).into_owned())
    }
}
