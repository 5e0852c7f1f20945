//! Experiment runner and table emission for the benchmark CLI.

use crate::error::{Error, Result};
use crate::inner::InnerSolve;
use crate::outer::{
    bicgstab_solve, hss_solve, mrhss_solve, splitting_preconditioner, SolveReport, SolverOptions,
    SplittingKind,
};
use crate::problems::{Family, ProblemSpec};
use crate::sylvester::{select_alpha, SylvesterProblem};
use std::fmt;
use std::io::Write;
use std::str::FromStr;

/// The solver configurations the benchmark driver knows about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Hss,
    Mrhss,
    Bicgstab,
    HssBicgstab,
    MrhssBicgstab,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Hss,
        Method::Mrhss,
        Method::Bicgstab,
        Method::HssBicgstab,
        Method::MrhssBicgstab,
    ];

    fn needs_alpha(self) -> bool {
        !matches!(self, Method::Bicgstab)
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Hss => "hss",
            Method::Mrhss => "mrhss",
            Method::Bicgstab => "bicgstab",
            Method::HssBicgstab => "hss-bicgstab",
            Method::MrhssBicgstab => "mrhss-bicgstab",
        };
        f.write_str(name)
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "hss" => Ok(Method::Hss),
            "mrhss" => Ok(Method::Mrhss),
            "bicgstab" => Ok(Method::Bicgstab),
            "hss-bicgstab" => Ok(Method::HssBicgstab),
            "mrhss-bicgstab" => Ok(Method::MrhssBicgstab),
            other => Err(Error::InvalidInput(format!("unknown method '{other}'"))),
        }
    }
}

/// Per-run parameter overrides; `alpha: None` means the shift is selected
/// from the spectrum of the Hermitian part.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub alpha: Option<f64>,
    pub outer_tol: f64,
    pub inner_tol: f64,
    pub maxit: usize,
    pub precond_eps: f64,
    pub precond_sweeps: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            alpha: None,
            outer_tol: 1e-8,
            inner_tol: 1e-3,
            maxit: 10000,
            precond_eps: 1e-3,
            precond_sweeps: 10,
            seed: 0,
        }
    }
}

/// One table row: how one method did on one problem, with enough metadata to
/// re-run it exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRow {
    pub example: String,
    pub n: usize,
    pub m: usize,
    pub method: String,
    pub alpha: f64,
    pub iterations: usize,
    pub wall_time_ms: f64,
    pub res_norm: f64,
    pub converged: bool,
    pub extra: Vec<(String, String)>,
}

impl ExperimentRow {
    /// Rows that could not run at all (generation/load/configuration
    /// failures), as opposed to legitimate non-converged outcomes.
    pub fn failed(&self) -> bool {
        self.extra.iter().any(|(k, _)| k == "error")
    }
}

fn family_label(family: Family) -> &'static str {
    match family {
        Family::Example1 => "example1",
        Family::Example2 => "example2",
        Family::External => "external",
    }
}

fn base_extra(spec: &ProblemSpec, cfg: &RunConfig) -> Vec<(String, String)> {
    let mut extra = vec![
        ("outer_tol".to_string(), format!("{}", cfg.outer_tol)),
        ("inner_tol".to_string(), format!("{}", cfg.inner_tol)),
        ("maxit".to_string(), format!("{}", cfg.maxit)),
        ("seed".to_string(), format!("{}", cfg.seed)),
    ];
    match spec.family {
        Family::Example1 => extra.push(("r".to_string(), format!("{}", spec.r))),
        Family::Example2 => {
            extra.push(("r".to_string(), format!("{}", spec.r)));
            extra.push(("t".to_string(), format!("{}", spec.t)));
        }
        Family::External => {
            if let Some(p) = &spec.path {
                extra.push(("path".to_string(), p.display().to_string()));
            }
        }
    }
    extra
}

fn run_method(
    method: Method,
    problem: &SylvesterProblem,
    alpha: f64,
    cfg: &RunConfig,
) -> Result<SolveReport> {
    let opts = SolverOptions {
        outer_tol: cfg.outer_tol,
        maxit: cfg.maxit,
        inner: InnerSolve::iterative(cfg.inner_tol),
    };
    let report = match method {
        Method::Hss => hss_solve(problem, alpha, &opts)?.1,
        Method::Mrhss => mrhss_solve(problem, alpha, &opts)?.1,
        Method::Bicgstab => bicgstab_solve(problem, None, &opts)?.1,
        Method::HssBicgstab | Method::MrhssBicgstab => {
            let kind = if method == Method::HssBicgstab {
                SplittingKind::Hss
            } else {
                SplittingKind::Mrhss
            };
            let pc = splitting_preconditioner(kind, problem, alpha, cfg.precond_eps, cfg.precond_sweeps)?
                .with_inner(InnerSolve::iterative(cfg.inner_tol));
            bicgstab_solve(problem, Some(&pc), &opts)?.1
        }
    };
    Ok(report)
}

/// Run every requested method on the problem `spec` describes. Failures are
/// recorded per row; the run continues with the remaining methods.
pub fn run_experiment(spec: &ProblemSpec, methods: &[Method], cfg: &RunConfig) -> Vec<ExperimentRow> {
    let example = family_label(spec.family).to_string();
    let extra0 = base_extra(spec, cfg);

    let make_row = |method: Method| ExperimentRow {
        example: example.clone(),
        n: spec.n,
        m: spec.m,
        method: method.to_string(),
        alpha: f64::NAN,
        iterations: 0,
        wall_time_ms: 0.0,
        res_norm: f64::NAN,
        converged: false,
        extra: extra0.clone(),
    };

    let problem = match spec.build() {
        Ok(p) => p,
        Err(e) => {
            return methods
                .iter()
                .map(|&m| {
                    let mut row = make_row(m);
                    row.extra.push(("error".to_string(), e.to_string()));
                    row
                })
                .collect();
        }
    };

    let selected_alpha = if cfg.alpha.is_none() && methods.iter().any(|m| m.needs_alpha()) {
        Some(select_alpha(problem.a(), problem.b()))
    } else {
        None
    };

    let mut rows = Vec::with_capacity(methods.len());
    for &method in methods {
        let mut row = ExperimentRow {
            n: problem.n(),
            m: problem.m(),
            ..make_row(method)
        };
        let alpha = if method.needs_alpha() {
            match (cfg.alpha, &selected_alpha) {
                (Some(a), _) => a,
                (None, Some(Ok(a))) => *a,
                (None, Some(Err(e))) => {
                    row.extra.push(("error".to_string(), e.to_string()));
                    rows.push(row);
                    continue;
                }
                (None, None) => unreachable!("alpha selection precomputed"),
            }
        } else {
            f64::NAN
        };
        row.alpha = alpha;
        match run_method(method, &problem, alpha, cfg) {
            Ok(report) => {
                row.iterations = report.iterations;
                row.wall_time_ms = report.wall_time.as_secs_f64() * 1e3;
                row.res_norm = report.final_residual;
                row.converged = report.converged;
            }
            Err(e) => {
                row.extra.push(("note".to_string(), e.to_string()));
            }
        }
        rows.push(row);
    }
    rows
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_lowercase().as_str() {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            other => Err(Error::InvalidInput(format!("unknown format '{other}'"))),
        }
    }
}

const FIXED_COLUMNS: [&str; 9] = [
    "example",
    "n",
    "m",
    "method",
    "alpha",
    "iterations",
    "wall_time_ms",
    "res_norm",
    "converged",
];

fn metadata_columns(rows: &[ExperimentRow]) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for row in rows {
        for (k, _) in &row.extra {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    keys.sort();
    keys
}

/// Write rows in the requested format. The CSV schema is the fixed columns
/// followed by the sorted union of metadata keys; NaN residuals serialize as
/// the literal `NaN`.
pub fn emit_table(rows: &[ExperimentRow], format: TableFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        TableFormat::Csv => emit_csv(rows, out),
        TableFormat::Markdown => emit_markdown(rows, out),
    }
}

fn emit_csv(rows: &[ExperimentRow], out: &mut dyn Write) -> Result<()> {
    let meta = metadata_columns(rows);
    let mut header: Vec<&str> = FIXED_COLUMNS.to_vec();
    for k in &meta {
        header.push(k);
    }
    writeln!(out, "{}", header.join(","))?;
    for row in rows {
        let mut fields = vec![
            row.example.clone(),
            row.n.to_string(),
            row.m.to_string(),
            row.method.clone(),
            format!("{}", row.alpha),
            row.iterations.to_string(),
            format!("{}", row.wall_time_ms),
            format!("{}", row.res_norm),
            row.converged.to_string(),
        ];
        for k in &meta {
            let v = row
                .extra
                .iter()
                .find(|(key, _)| key == k)
                .map(|(_, v)| v.replace(',', ";"))
                .unwrap_or_default();
            fields.push(v);
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

fn emit_markdown(rows: &[ExperimentRow], out: &mut dyn Write) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::InvalidInput("no rows to group into a markdown table".into()));
    }
    // methods become column groups, problems become rows; first-seen order
    let mut methods: Vec<String> = Vec::new();
    let mut problems: Vec<(String, usize, usize)> = Vec::new();
    for row in rows {
        if !methods.contains(&row.method) {
            methods.push(row.method.clone());
        }
        let key = (row.example.clone(), row.n, row.m);
        if !problems.contains(&key) {
            problems.push(key);
        }
    }

    let mut header = String::from("| example | (n,m) |");
    let mut rule = String::from("|---|---|");
    for m in &methods {
        header.push_str(&format!(" {m} IT | {m} CPU(ms) | {m} res-norm |"));
        rule.push_str("---|---|---|");
    }
    writeln!(out, "{header}")?;
    writeln!(out, "{rule}")?;

    for (example, n, m) in &problems {
        let mut line = format!("| {example} | ({n},{m}) |");
        for method in &methods {
            let cell = rows
                .iter()
                .find(|r| &r.example == example && r.n == *n && r.m == *m && &r.method == method);
            match cell {
                Some(r) if r.failed() => line.push_str(" failed | failed | failed |"),
                Some(r) => {
                    let it = if r.converged {
                        format!("{}", r.iterations)
                    } else if r.res_norm.is_nan() {
                        "\u{2020}".to_string()
                    } else {
                        format!(">{}", r.iterations)
                    };
                    line.push_str(&format!(
                        " {it} | {:.2} | {:.4e} |",
                        r.wall_time_ms, r.res_norm
                    ));
                }
                None => line.push_str(" - | - | - |"),
            }
        }
        writeln!(out, "{line}")?;
    }
    Ok(())
}

/// Parse CSV produced by [`emit_table`] back into rows; empty metadata cells
/// are dropped.
pub fn parse_csv(text: &str) -> Result<Vec<ExperimentRow>> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse {
            line: 1,
            msg: "empty csv".into(),
        })?
        .split(',')
        .map(str::to_string)
        .collect::<Vec<_>>();
    if header.len() < FIXED_COLUMNS.len()
        || header[..FIXED_COLUMNS.len()] != FIXED_COLUMNS.map(String::from)
    {
        return Err(Error::Parse {
            line: 1,
            msg: "unexpected csv header".into(),
        });
    }
    let meta_keys = &header[FIXED_COLUMNS.len()..];

    let mut rows = Vec::new();
    for (idx, line) in lines.enumerate() {
        let line_no = idx + 2;
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != header.len() {
            return Err(Error::Parse {
                line: line_no,
                msg: format!("expected {} fields, got {}", header.len(), fields.len()),
            });
        }
        let parse_f = |s: &str, what: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad {what} '{s}'"),
            })
        };
        let parse_u = |s: &str, what: &str| -> Result<usize> {
            s.parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad {what} '{s}'"),
            })
        };
        let mut extra = Vec::new();
        for (k, v) in meta_keys.iter().zip(&fields[FIXED_COLUMNS.len()..]) {
            if !v.is_empty() {
                extra.push((k.clone(), v.to_string()));
            }
        }
        rows.push(ExperimentRow {
            example: fields[0].to_string(),
            n: parse_u(fields[1], "n")?,
            m: parse_u(fields[2], "m")?,
            method: fields[3].to_string(),
            alpha: parse_f(fields[4], "alpha")?,
            iterations: parse_u(fields[5], "iterations")?,
            wall_time_ms: parse_f(fields[6], "wall_time_ms")?,
            res_norm: parse_f(fields[7], "res_norm")?,
            converged: fields[8].parse().map_err(|_| Error::Parse {
                line: line_no,
                msg: format!("bad converged flag '{}'", fields[8]),
            })?,
            extra,
        });
    }
    Ok(rows)
}
