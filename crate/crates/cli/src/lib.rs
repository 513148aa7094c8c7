//! Batch front end: solve scenario files, compare slots and export curve data.
//!
//! [`run`] does all the work against caller-supplied streams so the binary is
//! a thin wrapper and tests can drive it in-process.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use islm_core::{
    compare, default_grid, sample_curves, ComparisonTable, CurveError, CurveSeries, DocumentError,
    GridSpec, Plot, ScenarioDocument, ScenarioError, ScenarioSet, Slot, SolveReport,
};
use thiserror::Error;

#[derive(Debug, Parser)]
#[command(name = "islm", version, about = "Solve and compare IS-LM scenarios")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the default three-slot scenario document.
    Defaults,
    /// Solve every slot of a scenario document.
    Solve {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Export the curves of one slot's plot.
    Curves {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1)]
        slot: usize,
        /// islm, money or goods.
        #[arg(long, default_value = "islm")]
        plot: String,
        #[arg(long)]
        grid_min: Option<f64>,
        #[arg(long)]
        grid_max: Option<f64>,
        #[arg(long)]
        grid_n: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Columns)]
        format: Format,
    },
    /// Compare selected slots side by side, with consecutive deltas.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
        slots: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Args)]
pub struct Input {
    /// Scenario document path, or `-` for standard input.
    #[arg(short = 'f', long = "file", default_value = "-")]
    pub file: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Aligned text, two decimals.
    Table,
    /// JSON, full precision.
    Structured,
    /// CSV with a header row.
    Columns,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("write failed: {0}")]
    Write(#[from] io::Error),
    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),
}

pub fn run(cli: Cli, stdin: &mut dyn Read, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Defaults => out.write_all(ScenarioDocument::defaults().to_json().as_bytes())?,
        Command::Solve { input, format } => {
            let set = load(&input, stdin)?;
            render_report(&SolveReport::new(&set), format, out)?;
        }
        Command::Curves {
            input,
            slot,
            plot,
            grid_min,
            grid_max,
            grid_n,
            format,
        } => {
            let slot = Slot::new(slot)?;
            let plot: Plot = plot.parse()?;
            let set = load(&input, stdin)?;
            let spec = GridSpec {
                min: grid_min,
                max: grid_max,
                n: grid_n,
            };
            let grid = spec.resolve(default_grid(&set, slot, plot))?;
            render_curves(&sample_curves(&set, slot, plot, &grid)?, format, out)?;
        }
        Command::Compare {
            input,
            slots,
            format,
        } => {
            let slots = slots
                .into_iter()
                .map(Slot::new)
                .collect::<Result<Vec<_>, _>>()?;
            let set = load(&input, stdin)?;
            render_comparison(&compare(&set, &slots)?, format, out)?;
        }
    }
    Ok(())
}

fn load(input: &Input, stdin: &mut dyn Read) -> Result<ScenarioSet, CliError> {
    let mut text = String::new();
    let read = if input.file.as_os_str() == "-" {
        stdin.read_to_string(&mut text).map(|_| ())
    } else {
        fs::read_to_string(&input.file).map(|t| text = t)
    };
    read.map_err(|source| CliError::Read {
        path: input.file.display().to_string(),
        source,
    })?;
    Ok(ScenarioDocument::load(&text)?)
}

fn json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output types serialize");
    s.push('\n');
    s
}

fn render_report(
    report: &SolveReport,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Structured => out.write_all(report.to_json().as_bytes())?,
        Format::Table => {
            let header = [
                "slot",
                "name",
                "regime",
                "Y*",
                "i*",
                "M",
                "C",
                "I",
                "G",
                "NX",
                "T-G",
                "ZLB",
                "diagnostics",
            ];
            let rows = report
                .results
                .iter()
                .map(|r| {
                    let eq = &r.equilibrium;
                    let c = &eq.composition;
                    let mut row = vec![r.slot.to_string(), r.name.clone(), r.regime.to_string()];
                    row.extend(
                        [
                            eq.output,
                            eq.rate,
                            eq.money_supply,
                            c.consumption,
                            c.investment,
                            c.government_spending,
                            c.net_exports,
                            eq.budget_balance,
                        ]
                        .map(two_decimals),
                    );
                    row.push(if eq.at_zlb { "yes" } else { "no" }.to_string());
                    row.push(diagnostic_list(eq));
                    row
                })
                .collect::<Vec<_>>();
            out.write_all(table(&header, &rows).as_bytes())?;
        }
        Format::Columns => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "slot",
                "name",
                "regime",
                "i_bar",
                "Y_star",
                "i_star",
                "M_realized",
                "C",
                "I",
                "G",
                "NX",
                "budget_balance",
                "at_zlb",
                "diagnostics",
            ])?;
            for r in &report.results {
                let eq = &r.equilibrium;
                let c = &eq.composition;
                let mut record = vec![
                    r.slot.to_string(),
                    r.name.clone(),
                    r.regime.to_string(),
                    r.i_bar.map(|t| t.to_string()).unwrap_or_default(),
                ];
                record.extend(
                    [
                        eq.output,
                        eq.rate,
                        eq.money_supply,
                        c.consumption,
                        c.investment,
                        c.government_spending,
                        c.net_exports,
                        eq.budget_balance,
                    ]
                    .map(|x| x.to_string()),
                );
                record.push(eq.at_zlb.to_string());
                record.push(diagnostic_list(eq));
                w.write_record(&record)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn render_curves(
    series: &[CurveSeries],
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    match format {
        Format::Structured => out.write_all(json_line(&series).as_bytes())?,
        Format::Columns => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["x", "y", "curve_kind", "scenario"])?;
            for s in series {
                for &[x, y] in &s.points {
                    w.write_record([
                        x.to_string(),
                        y.to_string(),
                        s.curve_kind.to_string(),
                        s.scenario.clone(),
                    ])?;
                }
            }
            w.flush()?;
        }
        Format::Table => {
            let rows = series
                .iter()
                .flat_map(|s| {
                    s.points.iter().map(|&[x, y]| {
                        vec![
                            two_decimals(x),
                            two_decimals(y),
                            s.curve_kind.to_string(),
                            s.scenario.clone(),
                        ]
                    })
                })
                .collect::<Vec<_>>();
            out.write_all(table(&["x", "y", "curve", "scenario"], &rows).as_bytes())?;
        }
    }
    Ok(())
}

fn render_comparison(
    t: &ComparisonTable,
    format: Format,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    const FIELDS: [&str; 9] = ["Y*", "i*", "M", "C", "I", "G", "NX", "T-G", "ZLB"];
    match format {
        Format::Structured => out.write_all(json_line(t).as_bytes())?,
        Format::Table => {
            let mut header = vec!["row".to_string()];
            header.extend(FIELDS.map(String::from));
            let mut rows: Vec<Vec<String>> = t
                .rows
                .iter()
                .map(|r| {
                    let c = &r.composition;
                    let mut row = vec![format!("{} {}", r.slot, r.name)];
                    row.extend(
                        [
                            r.output,
                            r.rate,
                            r.money_supply,
                            c.consumption,
                            c.investment,
                            c.government_spending,
                            c.net_exports,
                            r.budget_balance,
                        ]
                        .map(two_decimals),
                    );
                    row.push(if r.at_zlb { "yes" } else { "no" }.to_string());
                    row
                })
                .collect();
            rows.extend(t.deltas.iter().map(|d| {
                let c = &d.composition;
                let mut row = vec![format!("Δ {}→{}", d.from, d.to)];
                row.extend(
                    [
                        d.output,
                        d.rate,
                        d.money_supply,
                        c.consumption,
                        c.investment,
                        c.government_spending,
                        c.net_exports,
                        d.budget_balance,
                    ]
                    .map(signed_two_decimals),
                );
                row.push(String::new());
                row
            }));
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            out.write_all(table(&header, &rows).as_bytes())?;
        }
        Format::Columns => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "kind",
                "slot",
                "name",
                "Y_star",
                "i_star",
                "M_realized",
                "C",
                "I",
                "G",
                "NX",
                "budget_balance",
                "at_zlb",
            ])?;
            for r in &t.rows {
                let c = &r.composition;
                let mut record = vec!["value".to_string(), r.slot.to_string(), r.name.clone()];
                record.extend(
                    [
                        r.output,
                        r.rate,
                        r.money_supply,
                        c.consumption,
                        c.investment,
                        c.government_spending,
                        c.net_exports,
                        r.budget_balance,
                    ]
                    .map(|x| x.to_string()),
                );
                record.push(r.at_zlb.to_string());
                w.write_record(&record)?;
            }
            for d in &t.deltas {
                let c = &d.composition;
                let mut record = vec![
                    "delta".to_string(),
                    format!("{}-{}", d.from, d.to),
                    String::new(),
                ];
                record.extend(
                    [
                        d.output,
                        d.rate,
                        d.money_supply,
                        c.consumption,
                        c.investment,
                        c.government_spending,
                        c.net_exports,
                        d.budget_balance,
                    ]
                    .map(|x| x.to_string()),
                );
                record.push(String::new());
                w.write_record(&record)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

fn diagnostic_list(eq: &islm_core::Equilibrium) -> String {
    eq.diagnostics
        .iter()
        .map(|d| d.id())
        .collect::<Vec<_>>()
        .join(",")
}

fn two_decimals(x: f64) -> String {
    // Avoid printing "-0.00" for tiny negatives.
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".to_string()
    } else {
        s
    }
}

fn signed_two_decimals(x: f64) -> String {
    let s = two_decimals(x);
    if s.starts_with('-') {
        s
    } else {
        format!("+{s}")
    }
}

/// Left-aligned first columns, right-aligned numbers; widths fit the content.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let numeric = |cell: &str| cell.parse::<f64>().is_ok();
    let mut out = String::new();
    let mut line = |cells: &mut dyn Iterator<Item = &str>| {
        let parts: Vec<String> = cells
            .zip(&widths)
            .map(|(cell, &w)| {
                if numeric(cell) {
                    format!("{cell:>w$}")
                } else {
                    format!("{cell:<w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&mut header.iter().copied());
    for row in rows {
        line(&mut row.iter().map(String::as_str));
    }
    out
}
