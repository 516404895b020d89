use qseries::exec::Execution;
use qseries::expansion::AsymptoticExpansion;
use qseries::oracle::{direct_sum_with, DEFAULT_TERM_CAP};
use qseries::selftest::{self, Context};
use qseries::specfun::cache;

use crate::args::{Fault, Format};
use crate::config::{CommandKind, RunConfig};
use crate::error::CliError;
use crate::output::{self, CompareRow, EvalRow, ExpansionDoc};

/// Rendered output, notes for standard error, and whether a numerical check
/// failed.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub warnings: Vec<String>,
    pub failed: bool,
}

pub fn execute(config: &RunConfig) -> Result<Outcome, CliError> {
    let mut outcome = match config.command {
        CommandKind::Expand => run_expand(config),
        CommandKind::Eval => run_eval(config),
        CommandKind::Compare => run_compare(config, Execution::Sequential),
        CommandKind::Sweep => run_compare(config, Execution::default()),
        CommandKind::Selftest => run_selftest(config),
    }?;
    let mut warnings = config.warnings.clone();
    warnings.append(&mut outcome.warnings);
    outcome.warnings = warnings;
    Ok(outcome)
}

pub fn run_expand(config: &RunConfig) -> Result<Outcome, CliError> {
    let e = config.expansion(config.orders[0])?;
    let body = match config.format {
        Format::Text => output::expansion_text(&e),
        _ => ExpansionDoc::from(&e).to_json()?,
    };
    Ok(Outcome {
        body,
        ..Outcome::default()
    })
}

/// One expansion per order, with its warnings collected once.
fn expansions(config: &RunConfig) -> Result<(Vec<AsymptoticExpansion>, Vec<String>), CliError> {
    let mut warnings = Vec::new();
    let mut out = Vec::with_capacity(config.orders.len());
    for &n in &config.orders {
        let e = config.expansion(n)?;
        for w in &e.warnings {
            if !warnings.contains(w) {
                warnings.push(w.clone());
            }
        }
        out.push(e);
    }
    Ok((out, warnings))
}

pub fn run_eval(config: &RunConfig) -> Result<Outcome, CliError> {
    let (exps, warnings) = expansions(config)?;
    let rows: Vec<EvalRow> = config
        .points
        .iter()
        .flat_map(|p| {
            exps.iter().map(move |e| EvalRow {
                point: *p,
                order: e.max_index,
                expansion: e.evaluate(p.x),
                estimate: e.error_estimate(p.x),
            })
        })
        .collect();
    let body = match config.format {
        Format::Csv => output::eval_csv(&rows)?,
        Format::Json => output::eval_json(&rows)?,
        Format::Text => output::eval_text(&rows),
    };
    Ok(Outcome {
        body,
        warnings,
        failed: false,
    })
}

/// Point-major rows; the oracle runs once per point.
pub fn run_compare(config: &RunConfig, exec: Execution) -> Result<Outcome, CliError> {
    let (exps, mut warnings) = expansions(config)?;
    let spec = config.spec.as_ref().expect("spec-bearing command");
    let per_point = exec.map(&config.points, |p| {
        let oracle = direct_sum_with(spec, p.x, config.tol, DEFAULT_TERM_CAP, Execution::Sequential)
            .map_err(|e| e.to_string());
        exps.iter()
            .map(|e| CompareRow {
                point: *p,
                order: e.max_index,
                expansion: e.evaluate(p.x),
                estimate: e.error_estimate(p.x),
                oracle: oracle.clone(),
            })
            .collect::<Vec<_>>()
    });
    let rows: Vec<CompareRow> = per_point.into_iter().flatten().collect();
    for r in &rows {
        if let Err(e) = &r.oracle {
            let w = format!("oracle failed at x = {}: {e}", r.point.x);
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
    }
    let failed = rows.iter().any(|r| !r.passed());
    let body = match config.format {
        Format::Csv => output::compare_csv(&rows)?,
        Format::Json => output::compare_json(&rows)?,
        Format::Text => output::compare_text(&rows),
    };
    Ok(Outcome {
        body,
        warnings,
        failed,
    })
}

pub fn run_selftest(config: &RunConfig) -> Result<Outcome, CliError> {
    let faulty;
    let cache = match config.fault {
        None => cache::global(),
        Some(Fault::Bernoulli) => {
            let mut c = cache::global().clone();
            c.inject_bernoulli_fault();
            faulty = c;
            &faulty
        }
    };
    let ctx = Context {
        cache,
        exec: Execution::default(),
    };
    let report = selftest::run(config.filter.as_deref(), &ctx);
    if report.results.is_empty() {
        return Err(CliError::Usage(format!(
            "no check matches filter `{}`",
            config.filter.as_deref().unwrap_or_default()
        )));
    }
    Ok(Outcome {
        body: format!("{report}\n"),
        warnings: Vec::new(),
        failed: !report.all_passed(),
    })
}
