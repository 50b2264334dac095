//! The `flatjava` command line.
//!
//! Exit status: 0 on success, 1 when `--strict` and warnings were issued,
//! 2 on usage, parse, model, resolution or flattening errors.

use crate::advisory::{advise, Application};
use crate::diag::Diagnostic;
use crate::emit::{EmitOptions, Indent};
use crate::flatten::{flatten_all, plans_to_json, FlattenOutcome};
use crate::metrics::{compare, measure_flattened, measure_original, View};
use crate::pipeline::{analyze, Analysis, Problem};
use crate::report::{compare_report, metrics_report, Format};
use clap::{Parser, Subcommand};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_WARNINGS: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "flatjava", version, about = "Flatten Java classes and compare their metrics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the flattened form of every class
    Flatten {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        /// Directory for `<Class>.flat.java` files and `plan.json`; without it
        /// the classes go to stdout
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the plan (defaults to `<out>/plan.json`)
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Mark every pulled member with a `// pulled from` comment
        #[arg(long)]
        provenance: bool,
        /// Exit with status 1 if any warning was issued
        #[arg(long)]
        strict: bool,
        /// Indentation width (2 or 4)
        #[arg(long, default_value_t = 4, value_parser = parse_indent)]
        indent: usize,
    },
    /// Metrics of one view of every class
    Metrics {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value = "flattened", value_parser = |s: &str| s.parse::<View>())]
        view: View,
        #[arg(long, default_value = "json", value_parser = |s: &str| s.parse::<Format>())]
        format: Format,
    },
    /// Original and flattened metrics side by side, with rule counts
    Compare {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long, default_value = "json", value_parser = |s: &str| s.parse::<Format>())]
        format: Format,
    },
    /// Which view to measure for an application
    Advise {
        #[arg(value_parser = |s: &str| s.parse::<Application>())]
        application: Application,
        #[arg(long)]
        json: bool,
    },
}

fn parse_indent(s: &str) -> Result<usize, String> {
    let n: usize = s.parse().map_err(|_| format!("not a number: {s}"))?;
    Indent::from_width(n).map(|_| n).ok_or_else(|| "indent must be 2 or 4".to_string())
}

/// Output streams plus the color setting.
pub struct Io<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
    pub color: bool,
}

impl Io<'_> {
    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn problems(&mut self, problems: &[Problem]) -> i32 {
        for p in problems {
            let line = p.to_string().replacen("error:", &self.paint("1;31", "error:"), 1);
            let _ = writeln!(self.err, "{line}");
        }
        EXIT_ERROR
    }

    fn warnings<'d>(&mut self, diags: impl IntoIterator<Item = &'d Diagnostic>) -> usize {
        let mut n = 0;
        for d in diags {
            let line = d.to_string().replacen("warning", &self.paint("1;33", "warning"), 1);
            let _ = writeln!(self.err, "{line}");
            n += 1;
        }
        n
    }
}

/// `FLATJAVA_COLOR=1` turns on ANSI colors for diagnostics; anything else
/// (or unset) leaves them off.
pub fn color_from_env() -> bool {
    std::env::var("FLATJAVA_COLOR").is_ok_and(|v| v == "1")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(io.err, "{text}");
            } else {
                let _ = write!(io.out, "{text}");
            }
            return e.exit_code();
        }
    };
    match cli.command {
        Command::Flatten {
            paths,
            out,
            plan,
            provenance,
            strict,
            indent,
        } => {
            let opts = EmitOptions {
                provenance,
                indent: Indent::from_width(indent).unwrap_or_default(),
                ..EmitOptions::default()
            };
            cmd_flatten(&paths, out, plan, &opts, strict, io)
        }
        Command::Metrics { paths, view, format } => cmd_metrics(&paths, view, format, io),
        Command::Compare { paths, format } => cmd_compare(&paths, format, io),
        Command::Advise { application, json } => {
            let a = advise(application);
            let text = if json {
                serde_json::to_string_pretty(&a).expect("advisory serializes")
            } else {
                a.to_string()
            };
            let _ = writeln!(io.out, "{text}");
            EXIT_OK
        }
    }
}

fn flattened(analysis: &Analysis, io: &mut Io<'_>) -> Result<FlattenOutcome, i32> {
    let outcome = flatten_all(&analysis.model);
    if outcome.errors.is_empty() {
        return Ok(outcome);
    }
    let problems: Vec<Problem> = outcome
        .errors
        .iter()
        .map(|(class, e)| analysis.flatten_problem(class, e))
        .collect();
    Err(io.problems(&problems))
}

fn write_file(path: &std::path::Path, text: &str, io: &mut Io<'_>) -> Result<(), i32> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| io_problem(path, e, io))?;
        }
    }
    std::fs::write(path, text).map_err(|e| io_problem(path, e, io))
}

fn io_problem(path: &std::path::Path, e: std::io::Error, io: &mut Io<'_>) -> i32 {
    io.problems(&[Problem {
        path: path.display().to_string(),
        span: None,
        message: e.to_string(),
    }])
}

pub fn cmd_flatten(
    paths: &[PathBuf],
    out: Option<PathBuf>,
    plan: Option<PathBuf>,
    opts: &EmitOptions,
    strict: bool,
    io: &mut Io<'_>,
) -> i32 {
    let analysis = match analyze(paths) {
        Ok(a) => a,
        Err(p) => return io.problems(&p),
    };
    let outcome = match flattened(&analysis, io) {
        Ok(o) => o,
        Err(code) => return code,
    };
    let order = analysis.model.topological_order();
    let plans = order.iter().filter_map(|c| outcome.plans.get(c));
    let plan_json = plans_to_json(plans);
    let result = (|| -> Result<(), i32> {
        match &out {
            Some(dir) => {
                for (name, flat) in &outcome.classes {
                    write_file(&dir.join(format!("{name}.flat.java")), &flat.emit(opts), io)?;
                }
            }
            None => {
                for name in order {
                    let _ = writeln!(io.out, "// {name}.flat.java");
                    let _ = write!(io.out, "{}", outcome.classes[name].emit(opts));
                }
            }
        }
        let plan_path = plan.or_else(|| out.as_ref().map(|d| d.join("plan.json")));
        if let Some(p) = plan_path {
            write_file(&p, &plan_json, io)?;
        }
        Ok(())
    })();
    if let Err(code) = result {
        return code;
    }
    let warned = io.warnings(analysis.model.diagnostics().iter().chain(outcome.diagnostics()));
    if strict && warned > 0 {
        EXIT_WARNINGS
    } else {
        EXIT_OK
    }
}

pub fn cmd_metrics(paths: &[PathBuf], view: View, format: Format, io: &mut Io<'_>) -> i32 {
    let analysis = match analyze(paths) {
        Ok(a) => a,
        Err(p) => return io.problems(&p),
    };
    let model = &analysis.model;
    let mut rows = Vec::new();
    match view {
        View::Original => {
            for c in model.classes() {
                match measure_original(model, &c.name) {
                    Ok(r) => rows.push(r),
                    Err(e) => return io.problems(&[analysis.resolve_problem(&c.name, &e)]),
                }
            }
        }
        View::Flattened => {
            let outcome = match flattened(&analysis, io) {
                Ok(o) => o,
                Err(code) => return code,
            };
            for (name, flat) in &outcome.classes {
                match measure_flattened(model, flat) {
                    Ok(r) => rows.push(r),
                    Err(e) => return io.problems(&[analysis.resolve_problem(name, &e)]),
                }
            }
        }
    }
    let _ = write!(io.out, "{}", metrics_report(&rows, format));
    EXIT_OK
}

pub fn cmd_compare(paths: &[PathBuf], format: Format, io: &mut Io<'_>) -> i32 {
    let analysis = match analyze(paths) {
        Ok(a) => a,
        Err(p) => return io.problems(&p),
    };
    let outcome = match flattened(&analysis, io) {
        Ok(o) => o,
        Err(code) => return code,
    };
    match compare(&analysis.model, &outcome) {
        Ok(cmp) => {
            let _ = write!(io.out, "{}", compare_report(&cmp, format));
            EXIT_OK
        }
        Err(e) => io.problems(&[Problem {
            path: analysis.sources.path(e.span().file).to_string(),
            span: Some(e.span()),
            message: e.to_string(),
        }]),
    }
}

/// Entry point for the binary: real arguments, stdout/stderr, color from
/// the environment.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let mut io = Io {
        out: &mut out,
        err: &mut err,
        color: color_from_env(),
    };
    run(std::env::args_os(), &mut io)
}
