//! Validated run configuration.

use std::path::PathBuf;

use qseries::expansion::{corollary2, corollary3, corollary4, expand_general, AsymptoticExpansion};
use qseries::{q_to_x, SeriesSpec, ZetaFactor, C64};

use crate::args::{Command, ExpandArgs, Fault, Format, PointArgs, SelftestArgs, SpecArgs};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Expand,
    Eval,
    Compare,
    Sweep,
    Selftest,
}

/// An evaluation point; `q` is kept when the point was given as `q`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub q: Option<f64>,
}

/// Which closed form reproduces a spec.
#[derive(Debug, Clone, Copy, PartialEq)]
enum ClosedForm {
    Zeta,
    ZetaSquared,
    Sigma(C64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub spec: Option<SeriesSpec>,
    closed_form: Option<ClosedForm>,
    pub orders: Vec<usize>,
    pub points: Vec<Point>,
    pub tol: f64,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub filter: Option<String>,
    pub fault: Option<Fault>,
    /// Notes produced while validating, e.g. dropped duplicate points.
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn from_command(command: Command) -> Result<Self, CliError> {
        match command {
            Command::Expand(a) => Self::expand(a),
            Command::Eval(a) => Self::points(CommandKind::Eval, a),
            Command::Compare(a) => Self::points(CommandKind::Compare, a),
            Command::Sweep(a) => Self::points(CommandKind::Sweep, a),
            Command::Selftest(a) => Ok(Self::selftest(a)),
        }
    }

    fn blank(command: CommandKind, format: Format) -> Self {
        Self {
            command,
            spec: None,
            closed_form: None,
            orders: Vec::new(),
            points: Vec::new(),
            tol: 0.0,
            format,
            out: None,
            filter: None,
            fault: None,
            warnings: Vec::new(),
        }
    }

    fn expand(args: ExpandArgs) -> Result<Self, CliError> {
        let format = args.output.format.unwrap_or(Format::Json);
        if format == Format::Csv {
            return Err(CliError::Usage("expand writes json or text, not csv".into()));
        }
        let (spec, closed_form) = build_spec(&args.spec)?;
        Ok(Self {
            spec: Some(spec),
            closed_form,
            orders: vec![args.order],
            out: args.output.out,
            ..Self::blank(CommandKind::Expand, format)
        })
    }

    fn points(command: CommandKind, args: PointArgs) -> Result<Self, CliError> {
        let (spec, closed_form) = build_spec(&args.spec)?;
        if args.order.is_empty() {
            return Err(CliError::Usage("--order needs at least one value".into()));
        }
        if !(args.tol > 0.0 && args.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol {} must be positive", args.tol)));
        }
        let has_grid = args.x_grid.is_some() || args.q_grid.is_some();
        if command == CommandKind::Sweep && !has_grid {
            return Err(CliError::Usage("sweep needs --x-grid or --q-grid".into()));
        }

        let mut raw = Vec::new();
        for &x in &args.x {
            raw.push(x_point(x)?);
        }
        for &q in &args.q {
            raw.push(q_point(q)?);
        }
        for x in args.x_grid.iter().flat_map(|g| g.points()) {
            raw.push(x_point(x)?);
        }
        for q in args.q_grid.iter().flat_map(|g| g.points()) {
            raw.push(q_point(q)?);
        }
        if raw.is_empty() {
            return Err(CliError::Usage(
                "give at least one point with --x, --q, --x-grid or --q-grid".into(),
            ));
        }

        let mut warnings = Vec::new();
        let mut points: Vec<Point> = Vec::with_capacity(raw.len());
        for p in raw {
            if points.iter().any(|o| o.x == p.x) {
                warnings.push(format!("duplicate point x = {} dropped", p.x));
            } else {
                points.push(p);
            }
        }
        let mut orders = Vec::with_capacity(args.order.len());
        for n in args.order {
            if orders.contains(&n) {
                warnings.push(format!("duplicate order {n} dropped"));
            } else {
                orders.push(n);
            }
        }

        let format = args.output.format.unwrap_or(match command {
            CommandKind::Eval => Format::Text,
            _ => Format::Csv,
        });
        Ok(Self {
            spec: Some(spec),
            closed_form,
            orders,
            points,
            tol: args.tol,
            out: args.output.out,
            warnings,
            ..Self::blank(command, format)
        })
    }

    fn selftest(args: SelftestArgs) -> Self {
        Self {
            out: args.output.out,
            filter: args.filter,
            fault: args.inject_fault,
            ..Self::blank(CommandKind::Selftest, Format::Text)
        }
    }

    /// The expansion through order `n`, from the engine or the closed forms.
    pub fn expansion(&self, n: usize) -> qseries::Result<AsymptoticExpansion> {
        let spec = self.spec.as_ref().expect("spec-bearing command");
        match self.closed_form {
            None => expand_general(spec, n),
            Some(ClosedForm::Zeta) => corollary2(spec.a(), spec.b(), n),
            Some(ClosedForm::ZetaSquared) => corollary3(spec.a(), spec.b(), n),
            Some(ClosedForm::Sigma(alpha)) => corollary4(spec.a(), spec.b(), alpha, n),
        }
    }
}

fn x_point(x: f64) -> Result<Point, CliError> {
    if x > 0.0 && x.is_finite() {
        Ok(Point { x, q: None })
    } else {
        Err(CliError::Usage(format!("x = {x} must be positive")))
    }
}

fn q_point(q: f64) -> Result<Point, CliError> {
    let x = q_to_x(q).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Point { x, q: Some(q) })
}

fn build_spec(args: &SpecArgs) -> Result<(SeriesSpec, Option<ClosedForm>), CliError> {
    let usage = |e: qseries::Error| CliError::Usage(e.to_string());
    let spec = match (&args.factors, args.alpha) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "--alpha and --factors are mutually exclusive".into(),
            ))
        }
        (Some(f), None) => SeriesSpec::new(f.0.clone(), args.a, args.b),
        (None, Some(alpha)) => SeriesSpec::zeta_zeta_shift(args.a, args.b, alpha),
        (None, None) => SeriesSpec::zeta(args.a, args.b),
    }
    .map_err(usage)?;
    if !args.closed_form {
        return Ok((spec, None));
    }
    let zero = C64::new(0.0, 0.0);
    let plain = ZetaFactor::new(1, zero);
    let form = match spec.factors() {
        [f] if *f == plain => ClosedForm::Zeta,
        [f, g] if *f == plain && *g == plain => ClosedForm::ZetaSquared,
        [f, g] if *f == plain && g.a == 1 => ClosedForm::Sigma(-g.b),
        _ => {
            return Err(CliError::Usage(format!(
                "--closed-form covers ζ(s), ζ(s)² and ζ(s)ζ(s-α) only, not {spec}"
            )))
        }
    };
    Ok((spec, Some(form)))
}
