//! heatq: heat content with singular boundary data on model domains.
//!
//! Subcommands evaluate the boundary coefficient c_{a1,a2}, sample Q(t) on
//! the ball/interval, fit sampled data against the predicted exponent
//! series, assemble boundary invariants, and run the verification suite.
//! Numeric output uses 17 significant digits so every printed value parses
//! back to the identical f64.

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use heatq_core::fit::TermOrigin;
use heatq_core::verify;
use heatq_core::{
    ball_b_coeffs, ball_geometry, beta_boundary, build_log_template, build_template, bump_cutoff,
    c_at, c_coef, epsilon_table, fit_series, interval_geometry, log_grid, q_grid, solve_epsilon,
    AlphaPair, QConfig, QSample,
};

const USAGE: &str = "\
heatq - heat content Q(t) with singular boundary data

USAGE:
    heatq <COMMAND> [OPTIONS]

COMMANDS:
    c-coef       boundary coefficient c for exponents (a1, a2)
                   --a1 X --a2 Y [--format csv|json]
    ball-q       sample ball heat content on a log-spaced t-grid
                   --a1 X --a2 Y --radius A --tmin T --tmax T --pts N
                   [--tol EPS] [--output PATH] [--format csv|json]
    interval-q   sample interval heat content with bump cutoffs
                   --a1 X --a2 Y --radius A --eps-in E --eps-out E
                   --tmin T --tmax T --pts N [--tol EPS] [--output PATH]
                   [--format csv|json]
    fit          least-squares fit of a sampled CSV (columns t,value,err)
                   --input PATH --template auto|log [--a1 X --a2 Y]
                   [--J n] [--N n] [--format csv|json]
    predict      boundary invariants beta_0..beta_2 for a geometry
                   --geometry ball|interval --a1 X --a2 Y [--radius A]
    verify-epsilon  re-derive the epsilon table from the relation system
                   --a1 X --a2 Y
    verify       run acceptance checks; nonzero exit on failure
                   --suite all|kernels|coeffs|ball|logcase

OPTIONS (all commands):
    --config PATH   key=value file supplying defaults for any option
    --help          print this message

Numbers print in scientific notation with 17 significant digits; CSV and
JSON carry identical values. HC_THREADS caps parallel evaluation (0 = auto).

EXIT CODES: 0 success, 1 verification/computation failure, 2 usage error.";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("run `heatq --help` for usage");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

enum CliError {
    Usage(String),
    Failed(String),
}

impl From<heatq_core::Error> for CliError {
    fn from(e: heatq_core::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Full-precision scientific notation: 17 significant digits round-trips f64.
fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

// ---------------------------------------------------------------------------
// option parsing: --key value pairs over config-file defaults
// ---------------------------------------------------------------------------

struct Options {
    values: BTreeMap<String, String>,
}

impl Options {
    fn parse(args: &[String]) -> Result<Options, CliError> {
        let mut values = BTreeMap::new();
        let mut i = 0;
        while i < args.len() {
            let arg = &args[i];
            let Some(key) = arg.strip_prefix("--") else {
                return usage(format!("unexpected argument `{arg}`"));
            };
            if key == "help" {
                values.insert("help".into(), "1".into());
                i += 1;
                continue;
            }
            let Some(val) = args.get(i + 1) else {
                return usage(format!("missing value for --{key}"));
            };
            values.insert(key.to_string(), val.clone());
            i += 2;
        }
        // config file supplies defaults; explicit flags win
        if let Some(path) = values.get("config").cloned() {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::Usage(format!("cannot read config {path}: {e}")))?;
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return usage(format!("bad config line `{line}` (want key=value)"));
                };
                values.entry(k.trim().to_string()).or_insert_with(|| v.trim().to_string());
            }
        }
        Ok(Options { values })
    }

    fn has_help(&self) -> bool {
        self.values.contains_key("help")
    }

    fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|s| s.as_str())
    }

    fn f64_req(&self, key: &str) -> Result<f64, CliError> {
        let raw = self.get(key).ok_or(CliError::Usage(format!("missing --{key}")))?;
        raw.parse().map_err(|_| CliError::Usage(format!("--{key}: cannot parse `{raw}` as a number")))
    }

    fn f64_or(&self, key: &str, default: f64) -> Result<f64, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Usage(format!("--{key}: cannot parse `{raw}` as a number"))),
        }
    }

    fn usize_or(&self, key: &str, default: usize) -> Result<usize, CliError> {
        match self.get(key) {
            None => Ok(default),
            Some(raw) => raw
                .parse()
                .map_err(|_| CliError::Usage(format!("--{key}: cannot parse `{raw}` as an integer"))),
        }
    }

    fn format(&self) -> Result<OutFormat, CliError> {
        match self.get("format").unwrap_or("csv") {
            "csv" => Ok(OutFormat::Csv),
            "json" => Ok(OutFormat::Json),
            other => usage(format!("--format must be csv or json, got `{other}`")),
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum OutFormat {
    Csv,
    Json,
}

fn alpha_pair(opts: &Options) -> Result<AlphaPair, CliError> {
    let a1 = opts.f64_req("a1")?;
    let a2 = opts.f64_req("a2")?;
    AlphaPair::new(a1, a2).map_err(|e| CliError::Usage(e.to_string()))
}

fn write_out(opts: &Options, text: &str) -> Result<(), CliError> {
    match opts.get("output") {
        None => {
            print!("{text}");
            std::io::stdout().flush().ok();
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Failed(format!("cannot write {path}: {e}"))),
    }
}

// ---------------------------------------------------------------------------
// commands
// ---------------------------------------------------------------------------

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(cmd) = args.first() else {
        println!("{USAGE}");
        return usage("no command given");
    };
    if cmd == "--help" || cmd == "help" {
        println!("{USAGE}");
        return Ok(());
    }
    let opts = Options::parse(&args[1..])?;
    if opts.has_help() {
        println!("{USAGE}");
        return Ok(());
    }
    match cmd.as_str() {
        "c-coef" => cmd_c_coef(&opts),
        "ball-q" => cmd_ball_q(&opts),
        "interval-q" => cmd_interval_q(&opts),
        "fit" => cmd_fit(&opts),
        "predict" => cmd_predict(&opts),
        "verify-epsilon" => cmd_verify_epsilon(&opts),
        "verify" => cmd_verify(&opts),
        other => usage(format!("unknown command `{other}`")),
    }
}

fn cmd_c_coef(opts: &Options) -> Result<(), CliError> {
    let ap = alpha_pair(opts)?;
    let c = c_coef(&ap)?;
    match opts.format()? {
        OutFormat::Csv => write_out(opts, &format!("{}\n", fmt(c))),
        OutFormat::Json => write_out(
            opts,
            &format!(
                "{{\"alpha1\":{},\"alpha2\":{},\"c\":{}}}\n",
                fmt(ap.alpha1()),
                fmt(ap.alpha2()),
                fmt(c)
            ),
        ),
    }
}

fn grid_times(opts: &Options) -> Result<Vec<f64>, CliError> {
    let tmin = opts.f64_req("tmin")?;
    let tmax = opts.f64_req("tmax")?;
    let pts = opts.usize_or("pts", 20)?;
    log_grid(tmin, tmax, pts).map_err(|e| CliError::Usage(e.to_string()))
}

fn samples_text(samples: &[QSample], format: OutFormat) -> String {
    match format {
        OutFormat::Csv => {
            let mut out = String::from("t,value,err\n");
            for s in samples {
                out.push_str(&format!("{},{},{}\n", fmt(s.t), fmt(s.value), fmt(s.err)));
            }
            out
        }
        OutFormat::Json => {
            let rows: Vec<String> = samples
                .iter()
                .map(|s| {
                    format!("{{\"t\":{},\"value\":{},\"err\":{}}}", fmt(s.t), fmt(s.value), fmt(s.err))
                })
                .collect();
            format!("[{}]\n", rows.join(","))
        }
    }
}

fn cmd_ball_q(opts: &Options) -> Result<(), CliError> {
    let ap = alpha_pair(opts)?;
    let radius = opts.f64_req("radius")?;
    let tol = opts.f64_or("tol", 1e-7)?;
    let ts = grid_times(opts)?;
    let cfg = QConfig::Ball { ap, a: radius, tol };
    let samples = q_grid(&cfg, &ts)?;
    write_out(opts, &samples_text(&samples, opts.format()?))
}

fn cmd_interval_q(opts: &Options) -> Result<(), CliError> {
    let ap = alpha_pair(opts)?;
    let radius = opts.f64_req("radius")?;
    let eps_in = opts.f64_req("eps-in")?;
    let eps_out = opts.f64_req("eps-out")?;
    let tol = opts.f64_or("tol", 1e-8)?;
    let chi = bump_cutoff(eps_in, eps_out).map_err(|e| CliError::Usage(e.to_string()))?;
    let ts = grid_times(opts)?;
    let cfg = QConfig::Interval { ap, chi1: chi, chi2: chi, a: radius, tol };
    let samples = q_grid(&cfg, &ts)?;
    write_out(opts, &samples_text(&samples, opts.format()?))
}

fn read_samples_csv(path: &str) -> Result<Vec<QSample>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
    let mut samples = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with("t,") {
            continue;
        }
        let cols: Vec<&str> = line.split(',').collect();
        if cols.len() < 2 {
            return usage(format!("{path}:{}: want t,value[,err]", lineno + 1));
        }
        let parse = |s: &str| -> Result<f64, CliError> {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{path}:{}: bad number `{s}`", lineno + 1)))
        };
        samples.push(QSample {
            t: parse(cols[0])?,
            value: parse(cols[1])?,
            err: if cols.len() > 2 { parse(cols[2])? } else { 0.0 },
        });
    }
    if samples.is_empty() {
        return usage(format!("{path}: no samples"));
    }
    Ok(samples)
}

fn origin_tag(origin: TermOrigin) -> &'static str {
    match origin {
        TermOrigin::Interior(_) => "interior",
        TermOrigin::Boundary(_) => "boundary",
        TermOrigin::Custom => "custom",
    }
}

fn cmd_fit(opts: &Options) -> Result<(), CliError> {
    let input = opts.get("input").ok_or(CliError::Usage("missing --input".into()))?;
    let samples = read_samples_csv(input)?;
    let tmpl = match opts.get("template").unwrap_or("auto") {
        "auto" => {
            let ap = alpha_pair(opts)?;
            let j = opts.usize_or("J", 2)? as u32;
            let n = opts.usize_or("N", 1)? as u32;
            build_template(&ap, j, n)?
        }
        "log" => build_log_template(opts.usize_or("N", 1)? as u32)?,
        other => return usage(format!("--template must be auto or log, got `{other}`")),
    };
    let fit = fit_series(&samples, &tmpl)?;
    match opts.format()? {
        OutFormat::Json => {
            let coeffs: Vec<String> = fit
                .template
                .terms
                .iter()
                .zip(fit.coefficients.iter().zip(&fit.uncertainties))
                .map(|(b, (c, u))| {
                    format!(
                        "{{\"exponent\":{},\"log\":{},\"origin\":\"{}\",\"value\":{},\"uncertainty\":{}}}",
                        fmt(b.exponent),
                        b.with_log,
                        origin_tag(b.origin),
                        fmt(*c),
                        fmt(*u)
                    )
                })
                .collect();
            write_out(
                opts,
                &format!(
                    "{{\"coefficients\":[{}],\"residual_norm\":{},\"condition\":{},\"ill_conditioned\":{},\"samples\":{}}}\n",
                    coeffs.join(","),
                    fmt(fit.residual_norm),
                    fmt(fit.condition_estimate),
                    fit.ill_conditioned,
                    fit.n_samples
                ),
            )
        }
        OutFormat::Csv => {
            let mut out = String::from("exponent,log,origin,value,uncertainty\n");
            for (b, (c, u)) in fit
                .template
                .terms
                .iter()
                .zip(fit.coefficients.iter().zip(&fit.uncertainties))
            {
                out.push_str(&format!(
                    "{},{},{},{},{}\n",
                    fmt(b.exponent),
                    b.with_log,
                    origin_tag(b.origin),
                    fmt(*c),
                    fmt(*u)
                ));
            }
            write_out(opts, &out)
        }
    }
}

fn cmd_predict(opts: &Options) -> Result<(), CliError> {
    let ap = alpha_pair(opts)?;
    let geom = match opts.get("geometry") {
        Some("ball") => {
            let radius = opts.f64_or("radius", 1.0)?;
            ball_geometry(radius).map_err(|e| CliError::Usage(e.to_string()))?
        }
        Some("interval") => interval_geometry(),
        Some(other) => return usage(format!("--geometry must be ball or interval, got `{other}`")),
        None => return usage("missing --geometry"),
    };
    let provider = |x1: f64, x2: f64| c_at(x1, x2);
    let tab = epsilon_table(&ap, &provider)?;
    let bt = beta_boundary(&geom, &tab)?;
    let eps_json: Vec<String> = tab.eps.iter().map(|e| fmt(*e)).collect();
    let mut extra = String::new();
    if opts.get("geometry") == Some("ball") {
        if let Ok(bc) = ball_b_coeffs(&ap) {
            extra = format!(
                ",\"ball_b\":[{},{},{},{}]",
                fmt(bc.b[0]),
                fmt(bc.b[1]),
                fmt(bc.b[2]),
                fmt(bc.b[3])
            );
        }
    }
    write_out(
        opts,
        &format!(
            "{{\"beta\":[{},{},{}],\"exponents\":[{},{},{}],\"epsilon\":[{}]{extra}}}\n",
            fmt(bt.beta[0]),
            fmt(bt.beta[1]),
            fmt(bt.beta[2]),
            fmt(bt.exponents[0]),
            fmt(bt.exponents[1]),
            fmt(bt.exponents[2]),
            eps_json.join(",")
        ),
    )
}

fn cmd_verify_epsilon(opts: &Options) -> Result<(), CliError> {
    let ap = alpha_pair(opts)?;
    let provider = |x1: f64, x2: f64| c_at(x1, x2);
    let direct = epsilon_table(&ap, &provider)?;
    let (solved, report) = solve_epsilon(&ap, &provider)?;
    let two_path = direct
        .eps
        .iter()
        .zip(&solved.eps)
        .map(|(d, s)| (d - s).abs() / d.abs().max(1.0))
        .fold(0.0_f64, f64::max);
    let rows: Vec<String> = report
        .residuals
        .iter()
        .map(|(label, r)| format!("{{\"relation\":\"{label}\",\"residual\":{}}}", fmt(*r)))
        .collect();
    println!(
        "{{\"max_residual\":{},\"solver_vs_table\":{},\"sigma_min\":{},\"sigma_max\":{},\"relations\":[{}]}}",
        fmt(report.max_residual),
        fmt(two_path),
        fmt(report.sigma_min),
        fmt(report.sigma_max),
        rows.join(",")
    );
    if report.max_residual <= 1e-10 && two_path <= 1e-10 {
        Ok(())
    } else {
        Err(CliError::Failed(format!(
            "epsilon relation residual {:.2e} or two-path gap {:.2e} above 1e-10",
            report.max_residual, two_path
        )))
    }
}

fn cmd_verify(opts: &Options) -> Result<(), CliError> {
    let suite = opts.get("suite").unwrap_or("all");
    let Some(results) = verify::run_suite(suite) else {
        return usage(format!("unknown suite `{suite}` (want all|kernels|coeffs|ball|logcase)"));
    };
    let mut all_pass = true;
    for r in &results {
        println!("{}", r.line());
        all_pass &= r.pass;
    }
    if all_pass {
        Ok(())
    } else {
        Err(CliError::Failed("verification failed".into()))
    }
}
