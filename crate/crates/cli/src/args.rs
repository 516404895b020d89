use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use qseries::{ZetaFactor, C64};

#[derive(Debug, Parser)]
#[command(
    name = "qseries",
    version,
    about = "Asymptotic expansions of zeta-product q-series as x → 0⁺"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the expansion and print its terms.
    Expand(ExpandArgs),
    /// Evaluate the expansion at the given points.
    Eval(PointArgs),
    /// Compare the expansion with direct summation, one row per (x, order).
    Compare(PointArgs),
    /// Like `compare`, over a grid of points crossed with a list of orders.
    Sweep(PointArgs),
    /// Run the named consistency checks and the acceptance grid.
    Selftest(SelftestArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// Exponent `a` in `exp(-n^a x)`.
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub a: f64,
    /// Shift `b` in `n^{-b}`; complex values as `1+2i`.
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_negative_numbers = true)]
    pub b: C64,
    /// Coefficients `σ_α(n)`, i.e. the product `ζ(s)ζ(s-α)`.
    #[arg(long, value_parser = parse_complex, conflicts_with = "factors", allow_negative_numbers = true)]
    pub alpha: Option<C64>,
    /// Explicit product `Π ζ(a_j s + b_j)` as `a1:b1,a2:b2,...`.
    #[arg(long, value_parser = parse_factors, allow_negative_numbers = true)]
    pub factors: Option<FactorList>,
    /// Use the closed-form constructors instead of the residue engine.
    #[arg(long)]
    pub closed_form: bool,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    /// Keep terms with `Re(exponent) ≤ N + 1/2`.
    #[arg(long, default_value_t = 4)]
    pub order: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_delimiter = ',', default_value = "4")]
    pub order: Vec<usize>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub x: Vec<f64>,
    /// Points given as `q = e^{-x}`.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub q: Vec<f64>,
    /// `lo:hi:n`, or `lo:hi:n:log` for geometric spacing.
    #[arg(long, value_parser = parse_grid)]
    pub x_grid: Option<Grid>,
    #[arg(long, value_parser = parse_grid)]
    pub q_grid: Option<Grid>,
    /// Tolerance for the direct-sum oracle.
    #[arg(long, default_value_t = 1e-14)]
    pub tol: f64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SelftestArgs {
    /// Run only checks in this module or whose name contains this text.
    #[arg(long)]
    pub filter: Option<String>,
    #[arg(long, hide = true, value_enum)]
    pub inject_fault: Option<Fault>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Fault {
    Bernoulli,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FactorList(pub Vec<ZetaFactor>);

/// Evenly spaced points, or geometrically spaced with `log`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub lo: f64,
    pub hi: f64,
    pub n: usize,
    pub log: bool,
}

impl Grid {
    pub fn points(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.lo];
        }
        let steps = (self.n - 1) as f64;
        (0..self.n)
            .map(|i| {
                let t = i as f64 / steps;
                if self.log {
                    (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp()
                } else {
                    self.lo + t * (self.hi - self.lo)
                }
            })
            .collect()
    }
}

pub fn parse_complex(s: &str) -> Result<C64, String> {
    C64::from_str(s.trim()).map_err(|_| format!("`{s}` is not a number (use forms like 1.5, -2, 0.5+3i)"))
}

pub fn parse_factors(s: &str) -> Result<FactorList, String> {
    s.split(',')
        .map(|item| {
            let (a, b) = item
                .split_once(':')
                .ok_or_else(|| format!("factor `{item}` must look like a:b"))?;
            let a: u32 = a
                .trim()
                .parse()
                .map_err(|_| format!("factor `{item}`: a_j must be a positive integer"))?;
            if a == 0 {
                return Err(format!("factor `{item}`: a_j must be a positive integer"));
            }
            Ok(ZetaFactor::new(a, parse_complex(b)?))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(FactorList)
}

pub fn parse_grid(s: &str) -> Result<Grid, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let log = match parts.as_slice() {
        [_, _, _] => false,
        [_, _, _, "log"] => true,
        _ => return Err(format!("grid `{s}` must be lo:hi:n or lo:hi:n:log")),
    };
    let num = |p: &str| {
        p.trim()
            .parse::<f64>()
            .map_err(|_| format!("grid `{s}`: `{p}` is not a number"))
    };
    let (lo, hi) = (num(parts[0])?, num(parts[1])?);
    let n: usize = parts[2]
        .trim()
        .parse()
        .map_err(|_| format!("grid `{s}`: point count must be a positive integer"))?;
    if n == 0 {
        return Err(format!("grid `{s}`: point count must be a positive integer"));
    }
    if !(lo.is_finite() && hi.is_finite()) || lo > hi {
        return Err(format!("grid `{s}`: need finite lo ≤ hi"));
    }
    if log && lo <= 0.0 {
        return Err(format!("grid `{s}`: log spacing needs lo > 0"));
    }
    Ok(Grid { lo, hi, n, log })
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn complex_and_factor_parsing() {
        assert_eq!(parse_complex("-1.5").unwrap(), C64::new(-1.5, 0.0));
        assert_eq!(parse_complex("0.5+2i").unwrap(), C64::new(0.5, 2.0));
        assert!(parse_complex("one").is_err());
        let f = parse_factors("1:0,2:-0.5").unwrap();
        assert_eq!(
            f.0,
            vec![
                ZetaFactor::new(1, C64::new(0.0, 0.0)),
                ZetaFactor::new(2, C64::new(-0.5, 0.0))
            ]
        );
        assert!(parse_factors("0:1").is_err());
        assert!(parse_factors("1").is_err());
    }

    #[test]
    fn grids() {
        let g = parse_grid("0.1:0.3:3").unwrap();
        let p = g.points();
        assert_eq!(p.len(), 3);
        assert!((p[1] - 0.2).abs() < 1e-15);
        let g = parse_grid("0.01:1:3:log").unwrap();
        assert!((g.points()[1] - 0.1).abs() < 1e-15);
        assert_eq!(parse_grid("0.5:0.5:1").unwrap().points(), vec![0.5]);
        for bad in ["1:2", "1:2:0", "2:1:3", "0:1:3:log", "1:2:3:lin"] {
            assert!(parse_grid(bad).is_err(), "{bad}");
        }
    }
}
