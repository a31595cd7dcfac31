//! `tessera`: orbits, periods, levels, necklaces, verification suites and
//! pictures of the piecewise rotations `F(x, y) = R_α(x - sign(y), y)`.

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use tessera_core::dynamics::orbit;
use tessera_core::necklace::{cached_necklace, perfect_beads};
use tessera_core::oracle::{
    default_max_iter, period_report, verify_boundary, verify_integral, verify_necklace,
    verify_periods, verify_rotation_orders, verify_tile_itineraries, PeriodSweep,
};
use tessera_core::tiling::{
    adjacent_tiles, critical_multiplicity, level, locate, tile_center, tile_shape,
};
use tessera_core::{
    render_fractal, render_levels, Case, ExactPoint, RenderOptions, SampleSpec, VerifyReport,
    Window,
};

#[derive(Parser)]
#[command(
    name = "tessera",
    version,
    about = "Exact dynamics of pointwise periodic piecewise rotations"
)]
struct Cli {
    /// Worker threads for parallel work (0 = available parallelism).
    #[arg(long, global = true, env = "TESSERA_THREADS", default_value_t = 0)]
    threads: usize,

    /// Line-delimited JSON records instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate a point until its orbit closes.
    Orbit {
        #[command(flatten)]
        at: PointArgs,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Analytic period with an oracle cross-check.
    Period {
        #[command(flatten)]
        at: PointArgs,
        /// Skip the brute-force cross-check.
        #[arg(long)]
        no_oracle: bool,
        #[arg(long)]
        max_iter: Option<usize>,
    },
    /// Level, tile address, shape and center of a point.
    Level {
        #[command(flatten)]
        at: PointArgs,
    },
    /// Beads and periods of one level set.
    Necklace {
        #[arg(long, value_parser = parse_case)]
        case: Case,
        #[arg(long)]
        level: u64,
    },
    /// Run a verification suite against the brute-force oracle.
    Verify(VerifyArgs),
    /// SVG of the tiles meeting a window, colored by level.
    Render {
        #[arg(long, value_parser = parse_case)]
        case: Case,
        #[arg(long, value_parser = parse_window, default_value = "-6,6,-6,6", allow_hyphen_values = true)]
        window: Window,
        #[arg(long)]
        out: PathBuf,
        /// Label each tile with "level (center period)".
        #[arg(long)]
        labels: bool,
    },
    /// SVG of the preimages of the critical line for any angle.
    Fractal {
        /// Rotation angle in radians; `pi/3` and `2pi/5` style fractions are accepted.
        #[arg(long, value_parser = parse_alpha, allow_hyphen_values = true)]
        alpha: f64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        #[arg(long, value_parser = parse_window, default_value = "-6,6,-6,6", allow_hyphen_values = true)]
        window: Window,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct PointArgs {
    #[arg(long, value_parser = parse_case)]
    case: Case,
    /// Exact point "X,Y"; coordinates like `1/2`, `-5/6s3` or `3+1/2s3`.
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    point: ExactPoint,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Invariance,
    Necklace,
    Periods,
    Boundary,
    Itineraries,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_parser = parse_case)]
    case: Case,
    #[arg(long, value_enum)]
    suite: Suite,
    /// Sample points (invariance) or points per tile (periods, itineraries).
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Sampling window (invariance) or boundary window (periods).
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<Window>,
    /// Highest level checked (necklace, boundary, itineraries).
    #[arg(long)]
    levels: Option<u64>,
}

fn parse_case(s: &str) -> Result<Case, String> {
    s.parse()
}

fn parse_point(s: &str) -> Result<ExactPoint, String> {
    s.parse().map_err(|e: tessera_core::Error| e.to_string())
}

fn parse_window(s: &str) -> Result<Window, String> {
    s.parse().map_err(|e: tessera_core::Error| e.to_string())
}

/// A float, or `[k]pi[/n]` with integer `k` and `n`.
fn parse_alpha(s: &str) -> Result<f64, String> {
    let t = s.trim();
    if let Some((k, rest)) = t.split_once("pi") {
        let k: f64 = match k {
            "" => 1.0,
            "-" => -1.0,
            k => k.parse().map_err(|_| format!("bad multiplier in {s:?}"))?,
        };
        let n: f64 = match rest.strip_prefix('/') {
            Some(n) => n.parse().map_err(|_| format!("bad divisor in {s:?}"))?,
            None if rest.is_empty() => 1.0,
            None => return Err(format!("cannot read angle {s:?}")),
        };
        return in_range(k * std::f64::consts::PI / n);
    }
    in_range(t.parse().map_err(|_| format!("cannot read angle {s:?}"))?)
}

fn in_range(alpha: f64) -> Result<f64, String> {
    if alpha > 0.0 && alpha < std::f64::consts::PI {
        Ok(alpha)
    } else {
        Err(format!(
            "alpha must lie strictly between 0 and pi (got {alpha})"
        ))
    }
}

macro_rules! outln {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).expect("writing to a String")
    };
}

/// `Ok(true)` on success, `Ok(false)` on a verification failure.
fn run(cli: Cli, out: &mut String) -> Result<bool> {
    let json = cli.json;
    match cli.command {
        Command::Orbit { at, max_iter } => {
            let budget = max_iter.unwrap_or_else(|| default_max_iter(level(at.case, &at.point)));
            let o = orbit(at.case, &at.point, budget)?;
            if json {
                outln!(
                    out,
                    "{}",
                    json!({
                        "record": "orbit",
                        "case": at.case,
                        "point": at.point,
                        "period": o.period(),
                        "orbit": o.points,
                    })
                );
            } else {
                for p in &o.points {
                    outln!(out, "{p}");
                }
                outln!(out, "period {}", o.period());
            }
            Ok(true)
        }
        Command::Period {
            at,
            no_oracle,
            max_iter,
        } => {
            let r = if no_oracle {
                tessera_core::analytic_period(at.case, &at.point)
            } else {
                period_report(at.case, &at.point, max_iter)
            };
            let unresolved = !no_oracle && r.oracle_period.is_none();
            let ok = !r.disagrees() && !unresolved;
            if json {
                let mut v = serde_json::to_value(&r)?;
                v["record"] = json!("period");
                v["agree"] = json!(ok);
                outln!(out, "{v}");
            } else {
                outln!(out, "case      {}", r.case);
                outln!(out, "point     {}", r.point);
                outln!(out, "category  {}", r.category);
                outln!(out, "level     {}", r.level);
                outln!(out, "analytic  {}", r.analytic_period);
                match (no_oracle, r.oracle_period) {
                    (true, _) => {}
                    (false, Some(o)) => outln!(out, "oracle    {o}"),
                    (false, None) => outln!(out, "oracle    did not close"),
                }
                if let Some(p) = r.period() {
                    outln!(out, "period {p}");
                }
                if r.disagrees() {
                    eprintln!(
                        "error: analytic period {} but the orbit closes after {}",
                        r.analytic_period,
                        r.oracle_period.unwrap_or_default()
                    );
                } else if unresolved {
                    eprintln!("error: the orbit did not close within the iteration budget");
                }
            }
            Ok(ok)
        }
        Command::Level { at } => {
            let v = level(at.case, &at.point);
            match locate(at.case, &at.point) {
                Ok(t) => {
                    let shape = tile_shape(at.case, &t)?;
                    let center = tile_center(at.case, &t)?;
                    if json {
                        outln!(
                            out,
                            "{}",
                            json!({
                                "record": "level",
                                "case": at.case,
                                "point": at.point,
                                "critical": false,
                                "level": v,
                                "tile": t.to_string(),
                                "shape": shape.to_string(),
                                "center": center,
                            })
                        );
                    } else {
                        outln!(out, "level   {v}");
                        outln!(out, "tile    {t}");
                        outln!(out, "shape   {shape}");
                        outln!(out, "center  {center}");
                    }
                }
                Err(_) => {
                    let tiles: Vec<String> = adjacent_tiles(at.case, &at.point)
                        .iter()
                        .map(|t| t.to_string())
                        .collect();
                    let lines = critical_multiplicity(at.case, &at.point);
                    if json {
                        outln!(
                            out,
                            "{}",
                            json!({
                                "record": "level",
                                "case": at.case,
                                "point": at.point,
                                "critical": true,
                                "level": v,
                                "grid_lines": lines,
                                "adjacent": tiles,
                            })
                        );
                    } else {
                        outln!(
                            out,
                            "critical point: on {lines} grid line(s), in no open tile"
                        );
                        outln!(out, "level formula  {v}");
                        outln!(out, "adjacent       {}", tiles.join(" "));
                    }
                }
            }
            Ok(true)
        }
        Command::Necklace { case, level } => {
            let n = cached_necklace(case, level);
            let perfect = perfect_beads(case, level).unwrap_or_default();
            if json {
                let mut v = serde_json::to_value(&*n)?;
                v["record"] = json!("necklace");
                v["beads"] = json!(n.beads.iter().map(|t| t.to_string()).collect::<Vec<_>>());
                v["perfect"] = json!(perfect);
                outln!(out, "{v}");
            } else {
                outln!(out, "case             {case}");
                outln!(out, "level            {level}");
                outln!(out, "M                {}", n.m);
                outln!(out, "u                {}", n.u);
                outln!(out, "center period    {}", n.center_period);
                outln!(out, "center orbits    {}", n.center_orbit_count);
                outln!(out, "other period     {}", n.noncenter_period);
                outln!(out, "rotation order   {}", n.rotation_order);
                if !perfect.is_empty() {
                    let list: Vec<String> = perfect.iter().map(|i| i.to_string()).collect();
                    outln!(out, "perfect beads    {}", list.join(" "));
                }
                for (i, (t, c)) in n.beads.iter().zip(&n.centers).enumerate() {
                    outln!(out, "{:>4}  {t}  center {c}", i + 1);
                }
            }
            Ok(true)
        }
        Command::Verify(args) => {
            let report = verify(&args)?;
            if json {
                out.push_str(&report.to_json_lines());
            } else {
                for f in &report.failures {
                    outln!(
                        out,
                        "FAIL {}  expected {}  got {}",
                        f.point,
                        f.expected,
                        f.got
                    );
                }
                outln!(
                    out,
                    "{} {} {}: {} checked, {} failures ({:.2} s)",
                    if report.passed() { "PASS" } else { "FAIL" },
                    report.suite,
                    report.case,
                    report.checked,
                    report.failure_count,
                    report.elapsed.as_secs_f64()
                );
            }
            Ok(report.passed())
        }
        Command::Render {
            case,
            window,
            out: path,
            labels,
        } => {
            let svg = render_levels(
                case,
                &window,
                &RenderOptions {
                    labels,
                    ..Default::default()
                },
            );
            write_svg(&path, &svg, json, out)
        }
        Command::Fractal {
            alpha,
            depth,
            window,
            out: path,
        } => {
            let svg = render_fractal(alpha, depth, &window)?;
            write_svg(&path, &svg, json, out)
        }
    }
}

fn verify(args: &VerifyArgs) -> Result<VerifyReport> {
    let case = args.case;
    let report = match args.suite {
        Suite::Invariance => {
            let window = args.window.clone().unwrap_or(Window::square(15)?);
            let spec = SampleSpec::new(window, 97, args.samples.unwrap_or(1000), args.seed);
            verify_integral(case, &spec)
        }
        Suite::Necklace => {
            let c = args.levels.unwrap_or(12);
            verify_necklace(case, c).merge(verify_rotation_orders(case, c))
        }
        Suite::Periods => {
            let defaults = PeriodSweep::default();
            let sweep = PeriodSweep {
                samples_per_tile: args.samples.unwrap_or(defaults.samples_per_tile),
                boundary_window: args
                    .window
                    .clone()
                    .unwrap_or(defaults.boundary_window.clone()),
                seed: args.seed,
                ..defaults
            };
            verify_periods(case, &sweep)
        }
        Suite::Boundary => verify_boundary(case, args.levels.unwrap_or(6)),
        Suite::Itineraries => {
            let per_tile = args.samples.unwrap_or(20);
            (0..=args.levels.unwrap_or(4))
                .map(|c| verify_tile_itineraries(case, c, per_tile, args.seed))
                .reduce(VerifyReport::merge)
                .expect("at least one level")
        }
    };
    Ok(report)
}

fn write_svg(path: &PathBuf, svg: &str, json: bool, out: &mut String) -> Result<bool> {
    fs::write(path, svg).with_context(|| format!("writing {}", path.display()))?;
    if json {
        outln!(
            out,
            "{}",
            json!({"record": "render", "out": path.display().to_string(), "bytes": svg.len()})
        );
    } else {
        outln!(out, "wrote {} ({} bytes)", path.display(), svg.len());
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads)
        .build_global()
    {
        eprintln!("error: cannot start worker pool: {e}");
        return ExitCode::from(2);
    }
    let mut out = String::new();
    let result = run(cli, &mut out);
    // A closed pipe (`tessera necklace ... | head`) is not an error.
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn angles() {
        assert_eq!(parse_alpha("pi/2"), Ok(PI / 2.0));
        assert_eq!(parse_alpha("2pi/5"), Ok(2.0 * PI / 5.0));
        assert_eq!(parse_alpha("1.25"), Ok(1.25));
        assert!(parse_alpha("pi").is_err());
        assert!(parse_alpha("-pi/3").is_err());
        assert!(parse_alpha("pi/x").is_err());
    }

    #[test]
    fn clap_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
