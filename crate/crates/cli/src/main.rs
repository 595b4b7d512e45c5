//! Command-line front end: constants, alpha profiles, kernel values, bounds,
//! verification suites, sharpness runs, disk constants and the headline table,
//! emitted as JSON or CSV with deterministic formatting.

mod output;
mod suites;

use std::f64::consts::FRAC_PI_2;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use realpart_core::constants::{
    bounds_even, k_alpha, k_sharp, k_sharp_quadrature, ConstantQuery, ExponentP,
};
use realpart_core::qkernel::{q_closed, q_maximize, q_numeric, QSpec, Regime};
use realpart_core::sharpness::{
    density_report, disk_constant, disk_verify, extremal_density, BoundaryDensity,
    HalfPlanePoint, TrigPoly,
};
use realpart_core::{Complex64, Error as CoreError, QuadratureConfig};

use output::{emit, fmt17, rows_to_csv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "realpart",
    about = "Sharp constants in real-part estimates for derivatives of analytic functions on the half-plane",
    version
)]
struct Cli {
    /// Relative quadrature tolerance (absolute gets tol/10).
    /// Overrides the REALPART_TOL environment variable.
    #[arg(long, global = true)]
    tol: Option<f64>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// The sharp constant K_{n,p} (or K_{n,p}(alpha) at a fixed alpha).
    K {
        #[arg(long)]
        n: u32,
        /// Exponent p: "inf", an integer, a decimal, or an exact rational "a/b".
        #[arg(long)]
        p: String,
        /// Evaluate at this alpha instead of maximizing.
        #[arg(long)]
        alpha: Option<f64>,
        /// Force the pure quadrature + maximization path (no closed-form registry).
        #[arg(long)]
        quadrature: bool,
    },
    /// The alpha profile K_{n,p}(alpha) on a uniform grid over [0, pi/2].
    Profile {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        /// Number of grid points.
        #[arg(long, default_value_t = 256)]
        points: usize,
    },
    /// The kernel integral Q_{2m,n,gamma}(beta) and its regime.
    Q {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        gamma: f64,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        /// Maximize over beta in [0, pi/2] instead of evaluating at --beta.
        #[arg(long)]
        maximize: bool,
    },
    /// Two-sided bounds for K_{2m,inf}, with the quadrature value when feasible.
    Bounds {
        #[arg(long)]
        m: u32,
        /// Skip the quadrature evaluation of K_{2m,inf}.
        #[arg(long)]
        skip_sharp: bool,
    },
    /// Run a named verification suite; exits 0 iff all checks pass.
    Verify {
        #[arg(long, value_parser = suites::parse_suite)]
        suite: suites::Suite,
    },
    /// Near-extremal density sharpness run at z = i.
    Sharpness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        /// Truncation half-width T of the boundary density.
        #[arg(long, default_value_t = 1e4)]
        t_max: f64,
        /// Number of uniform samples.
        #[arg(long, default_value_t = 1 << 20)]
        samples: usize,
        /// Evaluate this `t,u` CSV density instead of constructing the extremal one.
        #[arg(long)]
        density: Option<PathBuf>,
        /// Export the boundary density that was evaluated as `t,u` CSV.
        #[arg(long)]
        density_out: Option<PathBuf>,
    },
    /// The disk constant C_{n,p}, optionally verifying a trig-poly density.
    Disk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: String,
        /// Run the kernel check at z = z_re + i z_im (|z| < 1).
        #[arg(long, requires = "z_im")]
        z_re: Option<f64>,
        #[arg(long, requires = "z_re")]
        z_im: Option<f64>,
        /// Constant term of the boundary density.
        #[arg(long, default_value_t = 0.0)]
        u_const: f64,
        /// cos(kt) terms of the boundary density, as k:amplitude (repeatable).
        #[arg(long, value_parser = parse_term)]
        u_cos: Vec<(u32, f64)>,
        /// sin(kt) terms of the boundary density, as k:amplitude (repeatable).
        #[arg(long, value_parser = parse_term)]
        u_sin: Vec<(u32, f64)>,
    },
    /// Headline table: K_{n,1}, K_{n,2}, K_{n,inf} and the L/U ratios.
    Table {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
    },
}

fn parse_term(s: &str) -> Result<(u32, f64), String> {
    let (k, amp) = s
        .split_once(':')
        .ok_or_else(|| format!("expected k:amplitude, got {s:?}"))?;
    let k = k.trim().parse().map_err(|e| format!("bad index: {e}"))?;
    let amp = amp.trim().parse().map_err(|e| format!("bad amplitude: {e}"))?;
    Ok((k, amp))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<CoreError>() {
                Some(CoreError::Convergence { .. }) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}

#[derive(Serialize)]
struct ConstantOut {
    n: u32,
    p: String,
    value: f64,
    method: String,
    alpha_star: Option<f64>,
    err_estimate: f64,
}

#[derive(Serialize)]
struct QOut {
    m: u32,
    n: u32,
    gamma: f64,
    beta: f64,
    value: f64,
    regime: String,
    closed_form: Option<f64>,
    beta_star: Option<f64>,
}

#[derive(Serialize)]
struct BoundsOut {
    m: u32,
    lower: f64,
    upper: f64,
    k_sharp: Option<f64>,
    k_over_lower: Option<f64>,
}

#[derive(Serialize)]
struct ReportOut {
    lhs: f64,
    rhs: f64,
    ratio: f64,
    ok: bool,
    tail_bound: f64,
}

#[derive(Serialize)]
struct DiskOut {
    n: u32,
    p: String,
    c_np: f64,
    verify: Option<ReportOut>,
}

#[derive(Serialize)]
struct TableRow {
    n: u32,
    k_p1: f64,
    k_p2: f64,
    k_inf: Option<f64>,
    lower_over_k: Option<f64>,
    upper_over_k: Option<f64>,
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let tol = cli
        .tol
        .or_else(|| {
            std::env::var("REALPART_TOL")
                .ok()
                .and_then(|s| s.parse().ok())
        })
        .unwrap_or(1e-10);
    if !(tol > 0.0) || !tol.is_finite() {
        anyhow::bail!("tolerance must be a positive finite number, got {tol}");
    }
    let cfg = QuadratureConfig::with_tol(tol);

    match cli.command {
        Command::K {
            n,
            p,
            alpha,
            quadrature,
        } => {
            let p = ExponentP::parse(&p)?;
            let r = if let Some(alpha) = alpha {
                k_sharp(&ConstantQuery::at_alpha(n, p, alpha), &cfg)?
            } else if quadrature {
                k_sharp_quadrature(n, &p, &cfg)?
            } else {
                k_sharp(&ConstantQuery::new(n, p), &cfg)?
            };
            let out = ConstantOut {
                n,
                p: p.to_string(),
                value: r.value,
                method: r.method.to_string(),
                alpha_star: r.alpha_star,
                err_estimate: r.err_estimate,
            };
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&out)?)?,
                Format::Csv => {
                    let rows = vec![vec![
                        out.n.to_string(),
                        out.p.clone(),
                        fmt17(out.value),
                        out.method.clone(),
                        out.alpha_star.map(fmt17).unwrap_or_default(),
                        fmt17(out.err_estimate),
                    ]];
                    emit(
                        &cli.out,
                        &rows_to_csv(
                            &["n", "p", "value", "method", "alpha_star", "err_estimate"],
                            &rows,
                        ),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Profile { n, p, points } => {
            let p = ExponentP::parse(&p)?;
            anyhow::ensure!(points >= 2, "profile needs at least 2 points");
            // a profile is an alpha sweep; validate that request up front
            ConstantQuery::at_alpha(n, p, 0.0).validate()?;
            let mut rows = Vec::with_capacity(points);
            let mut json_rows = Vec::with_capacity(points);
            for i in 0..points {
                let alpha = FRAC_PI_2 * i as f64 / (points as f64 - 1.0);
                let v = k_alpha(n, &p, alpha, &cfg)?;
                rows.push(vec![fmt17(alpha), fmt17(v)]);
                json_rows.push(serde_json::json!({ "alpha": alpha, "value": v }));
            }
            match cli.format {
                Format::Json => emit(
                    &cli.out,
                    &serde_json::to_string_pretty(&serde_json::Value::Array(json_rows))?,
                )?,
                Format::Csv => emit(&cli.out, &rows_to_csv(&["alpha", "k_alpha"], &rows))?,
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Q {
            m,
            n,
            gamma,
            beta,
            maximize,
        } => {
            let spec = QSpec::new(m, n, gamma, beta)?;
            let regime = match spec.regime() {
                Regime::Low => "low",
                Regime::High => "high",
            };
            let closed_form = q_closed(m, n, gamma).ok();
            let (value, beta_star) = if maximize {
                let (bs, v) = q_maximize(m, n, gamma, &cfg)?;
                (v, Some(bs))
            } else {
                (q_numeric(&spec, &cfg)?, None)
            };
            let out = QOut {
                m,
                n,
                gamma,
                beta,
                value,
                regime: regime.into(),
                closed_form,
                beta_star,
            };
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&out)?)?,
                Format::Csv => {
                    let rows = vec![vec![
                        m.to_string(),
                        n.to_string(),
                        fmt17(gamma),
                        fmt17(beta),
                        fmt17(value),
                        regime.to_string(),
                        closed_form.map(fmt17).unwrap_or_default(),
                        beta_star.map(fmt17).unwrap_or_default(),
                    ]];
                    emit(
                        &cli.out,
                        &rows_to_csv(
                            &[
                                "m",
                                "n",
                                "gamma",
                                "beta",
                                "value",
                                "regime",
                                "closed_form",
                                "beta_star",
                            ],
                            &rows,
                        ),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Bounds { m, skip_sharp } => {
            let b = bounds_even(m)?;
            let k = if skip_sharp || m > 16 {
                None
            } else {
                Some(k_sharp_quadrature(2 * m, &ExponentP::Infinite, &cfg)?.value)
            };
            let out = BoundsOut {
                m,
                lower: b.lower,
                upper: b.upper,
                k_sharp: k,
                k_over_lower: k.map(|k| k / b.lower),
            };
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&out)?)?,
                Format::Csv => {
                    let rows = vec![vec![
                        m.to_string(),
                        fmt17(out.lower),
                        fmt17(out.upper),
                        out.k_sharp.map(fmt17).unwrap_or_default(),
                        out.k_over_lower.map(fmt17).unwrap_or_default(),
                    ]];
                    emit(
                        &cli.out,
                        &rows_to_csv(&["m", "lower", "upper", "k_sharp", "k_over_lower"], &rows),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }

        Command::Verify { suite } => {
            let checks = suites::run_suite(suite, &cfg, cli.seed)?;
            let all_pass = checks.iter().all(|c| c.pass);
            let payload = serde_json::json!({
                "suite": suite.name(),
                "pass": all_pass,
                "checks": checks,
            });
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&payload)?)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = checks
                        .iter()
                        .map(|c| {
                            vec![
                                c.name.clone(),
                                if c.pass { "pass" } else { "fail" }.into(),
                                c.detail.clone(),
                            ]
                        })
                        .collect();
                    emit(&cli.out, &rows_to_csv(&["check", "status", "detail"], &rows))?;
                }
            }
            Ok(if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Sharpness {
            n,
            p,
            alpha,
            t_max,
            samples,
            density,
            density_out,
        } => {
            let p = ExponentP::parse(&p)?;
            let u = match &density {
                Some(path) => {
                    let file = std::fs::File::open(path)
                        .with_context(|| format!("opening {}", path.display()))?;
                    BoundaryDensity::read_csv(std::io::BufReader::new(file), p)?
                }
                None => {
                    let z = HalfPlanePoint::new(0.0, 1.0)?;
                    extremal_density(n, &p, alpha, z, t_max, samples)?
                }
            };
            if let Some(path) = &density_out {
                let file = std::fs::File::create(path)
                    .with_context(|| format!("creating {}", path.display()))?;
                u.write_csv(std::io::BufWriter::new(file))?;
            }
            let r = density_report(&u, n, alpha, &cfg)?;
            let out = ReportOut {
                lhs: r.lhs,
                rhs: r.rhs,
                ratio: r.ratio,
                ok: r.ok,
                tail_bound: r.tail_bound,
            };
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&out)?)?,
                Format::Csv => {
                    let rows = vec![vec![
                        fmt17(out.lhs),
                        fmt17(out.rhs),
                        fmt17(out.ratio),
                        out.ok.to_string(),
                        fmt17(out.tail_bound),
                    ]];
                    emit(
                        &cli.out,
                        &rows_to_csv(&["lhs", "rhs", "ratio", "ok", "tail_bound"], &rows),
                    )?;
                }
            }
            Ok(if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Command::Disk {
            n,
            p,
            z_re,
            z_im,
            u_const,
            u_cos,
            u_sin,
        } => {
            let p = ExponentP::parse(&p)?;
            let c_np = disk_constant(n, &p, &cfg)?;
            let verify = match (z_re, z_im) {
                (Some(re), Some(im)) => {
                    let mut u = TrigPoly::constant(u_const);
                    for (k, amp) in &u_cos {
                        if u.cos.len() <= *k as usize {
                            u.cos.resize(*k as usize + 1, 0.0);
                        }
                        u.cos[*k as usize] += amp;
                    }
                    for (k, amp) in &u_sin {
                        if u.sin.len() <= *k as usize {
                            u.sin.resize(*k as usize + 1, 0.0);
                        }
                        u.sin[*k as usize] += amp;
                    }
                    if u_cos.is_empty() && u_sin.is_empty() && u_const == 0.0 {
                        // nothing specified: default to the first harmonic
                        u = TrigPoly::cosine(1, 1.0);
                    }
                    let r = disk_verify(&u, n, &p, Complex64::new(re, im), &cfg)?;
                    Some(ReportOut {
                        lhs: r.lhs,
                        rhs: r.rhs,
                        ratio: r.ratio,
                        ok: r.ok,
                        tail_bound: r.tail_bound,
                    })
                }
                _ => None,
            };
            let failed = verify.as_ref().is_some_and(|v| !v.ok);
            let out = DiskOut {
                n,
                p: p.to_string(),
                c_np,
                verify,
            };
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&out)?)?,
                Format::Csv => {
                    let v = out.verify.as_ref();
                    let rows = vec![vec![
                        n.to_string(),
                        out.p.clone(),
                        fmt17(c_np),
                        v.map(|v| fmt17(v.lhs)).unwrap_or_default(),
                        v.map(|v| fmt17(v.rhs)).unwrap_or_default(),
                        v.map(|v| v.ok.to_string()).unwrap_or_default(),
                    ]];
                    emit(
                        &cli.out,
                        &rows_to_csv(&["n", "p", "c_np", "lhs", "rhs", "ok"], &rows),
                    )?;
                }
            }
            Ok(if failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }

        Command::Table { n_max } => {
            let one = ExponentP::from_int(1).expect("p = 1");
            let two = ExponentP::from_int(2).expect("p = 2");
            let mut rows = Vec::new();
            for n in 0..=n_max {
                let k_p1 = k_sharp(&ConstantQuery::new(n, one), &cfg)?.value;
                let k_p2 = k_sharp(&ConstantQuery::new(n, two), &cfg)?.value;
                let k_inf = if n == 0 {
                    None
                } else {
                    Some(k_sharp(&ConstantQuery::new(n, ExponentP::Infinite), &cfg)?.value)
                };
                let (lower_over_k, upper_over_k) = if n >= 2 && n % 2 == 0 {
                    let b = bounds_even(n / 2)?;
                    let k = k_inf.context("even n >= 2 always has K_{n,inf}")?;
                    (Some(b.lower / k), Some(b.upper / k))
                } else {
                    (None, None)
                };
                rows.push(TableRow {
                    n,
                    k_p1,
                    k_p2,
                    k_inf,
                    lower_over_k,
                    upper_over_k,
                });
            }
            match cli.format {
                Format::Json => emit(&cli.out, &serde_json::to_string_pretty(&rows)?)?,
                Format::Csv => {
                    let csv_rows: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| {
                            vec![
                                r.n.to_string(),
                                fmt17(r.k_p1),
                                fmt17(r.k_p2),
                                r.k_inf.map(fmt17).unwrap_or_default(),
                                r.lower_over_k.map(fmt17).unwrap_or_default(),
                                r.upper_over_k.map(fmt17).unwrap_or_default(),
                            ]
                        })
                        .collect();
                    emit(
                        &cli.out,
                        &rows_to_csv(
                            &["n", "k_p1", "k_p2", "k_inf", "lower_over_k", "upper_over_k"],
                            &csv_rows,
                        ),
                    )?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
