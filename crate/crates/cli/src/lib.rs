//! The `sitedual` command line.
//!
//! Exit status is 0 when everything checked passes, 1 when a property
//! fails (the offending grid goes to standard output), 2 on bad usage or
//! unreadable input.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sitedual_core::boundary::outermost_boundary_in;
use sitedual_core::components::{component_of, is_finite, lambda_sets, Adjacency};
use sitedual_core::duality::dual_fence;
use sitedual_core::io::grid_text::{emit_grid, parse_grid};
use sitedual_core::io::report_json::{
    component_json, report_json, squares_json, to_json, AnalysisJson, ANALYSIS_SCHEMA,
};
use sitedual_core::io::svg::{render_svg, Overlay};
use sitedual_core::oracle::{audit_grid, enumerate_window, mc_duality, random_grid, trial_rng, EnumSpec, McSpec};
use sitedual_core::GridConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

pub const SEED_ENV: &str = "LATTICE_SEED";

#[derive(Debug, Parser)]
#[command(name = "sitedual", version, about = "Star/plus duality on square lattice site configurations")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sample a random grid with the origin occupied.
    Gen {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        size: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Components, outermost boundaries and vacant neighbours of the origin.
    Analyze(Input),
    /// Build the vacant star cycle around the origin's plus component.
    Dual {
        #[command(flatten)]
        input: Input,
        /// Record the build time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Run every check on a grid.
    Verify(Input),
    /// Check every occupancy pattern of a small block.
    Enum {
        /// Side of a square block; overridden by --width/--height.
        #[arg(long, default_value_t = 4)]
        size: i32,
        #[arg(long)]
        width: Option<i32>,
        #[arg(long)]
        height: Option<i32>,
        #[arg(long, default_value_t = 3)]
        margin: i32,
        /// Worker threads, 0 for one per core.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Random grids: the fence exists exactly when the component is finite.
    Mc {
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 24)]
        size: i32,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Draw a grid and its boundaries as SVG.
    Render(Input),
}

#[derive(Debug, Args)]
struct Input {
    /// Grid file, or `-` for standard input.
    file: PathBuf,
}

struct Usage(String);

fn usage<T>(msg: impl Into<String>) -> Result<T, Usage> {
    Err(Usage(msg.into()))
}

fn read_grid(input: &Input) -> Result<GridConfig, Usage> {
    let mut text = String::new();
    let read = if input.file.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(&input.file).map(|t| text = t)
    };
    if let Err(e) = read {
        return usage(format!("{}: {e}", input.file.display()));
    }
    parse_grid(&text).map_err(|e| Usage(format!("{}: {e}", input.file.display())))
}

/// `LATTICE_SEED`, when set, wins over the flag.
fn effective_seed(flag: u64) -> Result<u64, Usage> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .or_else(|_| usage(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(flag),
    }
}

fn check_p(p: f64) -> Result<(), Usage> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        usage(format!("--p {p} is outside [0, 1]"))
    }
}

struct Outcome {
    stdout: String,
    code: i32,
}

fn ok(stdout: String) -> Result<Outcome, Usage> {
    Ok(Outcome { stdout, code: EXIT_OK })
}

/// Runs the command line `args` (program name first), writing to the given
/// streams, and returns the exit status.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.stdout.as_bytes());
            o.code
        }
        Err(Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome, Usage> {
    match &cli.command {
        Command::Gen { p, size, seed } => {
            check_p(*p)?;
            if *size < 1 {
                return usage("--size must be positive");
            }
            let seed = effective_seed(*seed)?;
            ok(emit_grid(&random_grid(&mut trial_rng(seed, 0), *size, *p)))
        }
        Command::Analyze(input) => analyze(&read_grid(input)?, cli.format),
        Command::Dual { input, timing } => dual(&read_grid(input)?, cli.format, *timing),
        Command::Verify(input) => verify(&read_grid(input)?, cli.format),
        Command::Enum {
            size,
            width,
            height,
            margin,
            jobs,
        } => {
            let spec = EnumSpec::new(width.unwrap_or(*size), height.unwrap_or(*size), *margin);
            if *margin < 0 {
                return usage("--margin must not be negative");
            }
            let r = enumerate_window(&spec, *jobs).or_else(|e| usage(e.to_string()))?;
            let code = if r.passed() { EXIT_OK } else { EXIT_FAILED };
            let stdout = match cli.format {
                Format::Json => to_json(&r),
                Format::Text => {
                    let mut s = format!(
                        "configs {}\nchecked {}\nwindow too tight {}\nfailures {}\n",
                        r.configs, r.checked, r.window_too_tight, r.failure_count
                    );
                    for c in &r.failures {
                        let _ = writeln!(s, "\npattern {}", c.pattern);
                        for v in &c.failed {
                            let _ = writeln!(s, "FAIL {}: {}", v.name, v.detail.as_deref().unwrap_or(""));
                        }
                        s.push_str(&c.grid);
                    }
                    s
                }
            };
            Ok(Outcome { stdout, code })
        }
        Command::Mc {
            p,
            size,
            trials,
            seed,
            jobs,
        } => {
            check_p(*p)?;
            if *size < 1 || *trials < 1 {
                return usage("--size and --trials must be positive");
            }
            let spec = McSpec {
                p: *p,
                size: *size,
                trials: *trials,
                seed: effective_seed(*seed)?,
            };
            let s = mc_duality(&spec, *jobs);
            let code = if s.all_passed() { EXIT_OK } else { EXIT_FAILED };
            let stdout = match cli.format {
                Format::Json => to_json(&s),
                Format::Text => {
                    let mut t = format!(
                        "trials {}\nfinite {} ({:.4})\napplicable {}\npassed {}\nfailures {}\n",
                        s.trials,
                        s.finite,
                        s.finite_fraction(),
                        s.applicable,
                        s.passed,
                        s.failure_count
                    );
                    for f in &s.failures {
                        let _ = writeln!(t, "\ntrial {}: {}", f.trial, f.reason);
                        t.push_str(&f.grid);
                    }
                    t
                }
            };
            Ok(Outcome { stdout, code })
        }
        Command::Render(input) => ok(render(&read_grid(input)?)),
    }
}

fn analyze(grid: &GridConfig, format: Format) -> Result<Outcome, Usage> {
    let plus = component_of(grid, grid.origin(), Adjacency::Plus).expect("origin occupied");
    let star = component_of(grid, grid.origin(), Adjacency::Star).expect("origin occupied");
    let pb = outermost_boundary_in(grid, &plus).ok();
    let sb = outermost_boundary_in(grid, &star).ok();
    let lambdas = pb
        .as_ref()
        .and_then(|b| b.cycles.first())
        .map(|outer| lambda_sets(grid, &plus, outer));
    let doc = AnalysisJson {
        schema: ANALYSIS_SCHEMA.into(),
        plus: component_json(&plus, is_finite(grid, &plus), pb.as_ref()),
        star: component_json(&star, is_finite(grid, &star), sb.as_ref()),
        boundary_edge_count: sitedual_core::boundary::boundary_edges(grid, &plus).len(),
        lambda_all: lambdas.as_ref().map_or_else(Vec::new, |l| squares_json(&l.lambda_all)),
        lambda_exterior: lambdas.as_ref().map_or_else(Vec::new, |l| squares_json(&l.lambda_exterior)),
    };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Text => {
            let mut s = String::new();
            for (name, c) in [("plus", &doc.plus), ("star", &doc.star)] {
                let _ = writeln!(
                    s,
                    "{name} component: {} squares, {}, {} boundary cycles, {} pinch vertices",
                    c.squares.len(),
                    if c.finite { "finite" } else { "touches window side" },
                    c.boundary.len(),
                    c.pinch_vertices.len()
                );
            }
            let _ = writeln!(s, "plus boundary edges: {}", doc.boundary_edge_count);
            let _ = writeln!(
                s,
                "vacant neighbours: {} ({} outside the boundary)",
                doc.lambda_all.len(),
                doc.lambda_exterior.len()
            );
            s
        }
    };
    ok(stdout)
}

fn dual(grid: &GridConfig, format: Format, timing: bool) -> Result<Outcome, Usage> {
    let start = Instant::now();
    let report = match dual_fence(grid) {
        Ok(r) => r,
        Err(e) => {
            return Ok(Outcome {
                stdout: format!("{e}\n"),
                code: EXIT_FAILED,
            })
        }
    };
    let micros = timing.then(|| start.elapsed().as_micros() as u64);
    let doc = report_json(&report, &[], micros);
    let code = if doc.checks.values().all(|c| c.passed) { EXIT_OK } else { EXIT_FAILED };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Text => {
            let mut s = format!(
                "component squares {}\nfence squares {}\nfence boundary edges {}\nmerge steps {}\n",
                doc.component.len(),
                doc.q,
                doc.boundary_edges,
                doc.merge_steps
            );
            let sq: Vec<String> = doc.h_out.iter().map(|(x, y)| format!("({x},{y})")).collect();
            let _ = writeln!(s, "fence {}", sq.join(" "));
            if let Some(us) = micros {
                let _ = writeln!(s, "time {us} us");
            }
            s
        }
    };
    Ok(Outcome { stdout, code })
}

fn verify(grid: &GridConfig, format: Format) -> Result<Outcome, Usage> {
    let audit = audit_grid(grid);
    let passed = audit.passed();
    let counterexample = (!passed).then(|| emit_grid(grid));
    let stdout = match format {
        Format::Json => to_json(&serde_json::json!({
            "precondition": audit.precondition.as_ref().map(|e| e.to_string()),
            "verdicts": audit.verdicts,
            "counterexample": counterexample,
        })),
        Format::Text => {
            let mut s = String::new();
            if let Some(e) = &audit.precondition {
                let _ = writeln!(s, "fence not applicable: {e}");
            }
            for v in &audit.verdicts {
                match &v.detail {
                    Some(d) => {
                        let _ = writeln!(s, "FAIL {}: {d}", v.name);
                    }
                    None => {
                        let _ = writeln!(s, "ok   {}", v.name);
                    }
                }
            }
            if let Some(g) = &counterexample {
                let _ = write!(s, "\ncounterexample:\n{g}");
            }
            s
        }
    };
    Ok(Outcome {
        stdout,
        code: if passed { EXIT_OK } else { EXIT_FAILED },
    })
}

fn render(grid: &GridConfig) -> String {
    let plus = component_of(grid, grid.origin(), Adjacency::Plus).expect("origin occupied");
    let mut overlay = Overlay::default();
    match dual_fence(grid) {
        Ok(r) => {
            overlay.lambda = r.lambdas.lambda_all.clone();
            overlay.outer = vec![r.outer.clone()];
            overlay.fence = Some(r.partial_h.clone());
        }
        Err(_) => {
            if let Ok(b) = outermost_boundary_in(grid, &plus) {
                overlay.lambda = lambda_sets(grid, &plus, &b.cycles[0]).lambda_all;
                overlay.outer = b.cycles;
            }
        }
    }
    render_svg(grid, &overlay)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run_cli(std::iter::once("sitedual").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn density_bounds() {
        assert!(check_p(0.0).is_ok() && check_p(1.0).is_ok());
        assert!(check_p(-0.1).is_err() && check_p(f64::NAN).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["--version"]).0, EXIT_OK);
        let (code, out, err) = call(&["gen", "--p", "2", "--size", "3"]);
        assert_eq!((code, out.as_str()), (EXIT_USAGE, ""));
        assert!(err.starts_with("error: --p"));
        assert_eq!(call(&["enum", "--size", "0"]).0, EXIT_USAGE);
    }
}
