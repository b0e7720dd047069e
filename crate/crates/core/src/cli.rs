//! Command-line front end.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::band::{Band, BandElement};
use crate::cayley::CayleyTable;
use crate::error::{Error, Result};
use crate::expr;
use crate::grassmann::annihilator_even;
use crate::green::{band_greens, eggbox, RelationSpec};
use crate::verify::{self, Format, RunConfig, Tier};

/// Exit status of a successful run.
pub const EXIT_OK: i32 = 0;
/// Some verified property failed.
pub const EXIT_FAILURE: i32 = 1;
/// Bad arguments, configuration or input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "superband",
    version,
    about = "Exact supermatrix band semigroups and their Green's relations"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// `key = value` configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<FormatArg>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Number of Grassmann generators.
    #[arg(short = 'n', long, global = true)]
    pub generators: Option<usize>,
    /// The odd element α, e.g. `θ1` or `g1 + g1.g2.g3`.
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// Print generators as `g1` instead of `θ1`.
    #[arg(long, global = true)]
    pub ascii: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
    Csv,
    Dot,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
            FormatArg::Dot => Format::Dot,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run the verification suite.
    Verify {
        #[arg(long, conflicts_with = "full")]
        quick: bool,
        #[arg(long)]
        full: bool,
    },
    /// Evaluate an element or supermatrix expression.
    Eval { expr: String },
    /// Print the Cayley table of a band family.
    Cayley {
        #[arg(value_enum)]
        family: FamilyArg,
        /// Arity n of the `(n|n)` band.
        arity: Option<usize>,
        /// Classes per side: `3` or `KxM`.
        #[arg(long)]
        grid: Option<String>,
        /// Formal wreath table over the symbols t, u, v, w.
        #[arg(long)]
        symbolic: bool,
    },
    /// Eggbox diagram of an `(n|n)` band grid.
    Eggbox {
        /// Band shape, `(1|1)`, `(2|2)` or just `n`.
        shape: String,
        /// Comma-separated relations, e.g. `R,L` or `R1,R2,L1`.
        #[arg(long, default_value = "R,L")]
        axes: String,
        /// Classes per parameter.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Basis of the even annihilator of α.
    Ann,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Wreath,
    Band,
    Null,
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok((text, code)) => match emit(&cli.global, &text) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(global: &GlobalArgs, text: &str) -> std::io::Result<()> {
    match &global.out {
        Some(path) => std::fs::write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_config(global: &GlobalArgs) -> Result<RunConfig> {
    let mut cfg = match &global.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(n) = global.generators {
        cfg.n_generators = n;
    }
    if let Some(a) = &global.alpha {
        cfg.alpha = a.clone();
    }
    if let Some(s) = global.seed {
        cfg.seed = s;
    }
    if let Some(f) = global.format {
        cfg.format = f.into();
    }
    Ok(cfg)
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn json(v: &serde_json::Value) -> String {
    with_newline(serde_json::to_string_pretty(v).expect("JSON values serialize"))
}

/// Runs the command, returning its output and exit code.
pub fn run(cli: &Cli) -> Result<(String, i32)> {
    let mut cfg = load_config(&cli.global)?;
    let ascii = cli.global.ascii;
    match &cli.command {
        Command::Verify { quick, full } => {
            if *full {
                cfg.tier = Tier::Full;
            } else if *quick {
                cfg.tier = Tier::Quick;
            }
            let report = verify::run(&cfg)?;
            let text = match cfg.format {
                Format::Json => with_newline(report.to_json()),
                Format::Text => report.to_text(),
                f => return Err(Error::Config(format!("verify cannot write {f:?}"))),
            };
            let code = if report.all_passed() {
                EXIT_OK
            } else {
                EXIT_FAILURE
            };
            Ok((text, code))
        }
        Command::Eval { expr: src } => {
            let v = expr::eval(src, cfg.n_generators)?;
            let text = match cfg.format {
                Format::Json => json(&serde_json::json!({ "result": v.to_text(ascii) })),
                _ => with_newline(v.to_text(ascii)),
            };
            Ok((text, EXIT_OK))
        }
        Command::Cayley {
            family,
            arity,
            grid,
            symbolic,
        } => {
            let table = cayley_table(&cfg, *family, *arity, grid.as_deref(), *symbolic)?;
            let text = match cfg.format {
                Format::Text => with_newline(table.to_text()),
                Format::Csv => table.to_csv()?,
                Format::Json => json(&table.to_json()),
                Format::Dot => return Err(Error::Config("Cayley tables have no DOT form".into())),
            };
            Ok((text, EXIT_OK))
        }
        Command::Eggbox { shape, axes, grid } => {
            let n = parse_shape(shape)?;
            let band = Band::new(cfg.alpha_element()?)?;
            let per = grid.unwrap_or(if n == 1 { cfg.grid_double } else { 2 });
            let elems = band_grid(&band, &cfg, n, per, per)?;
            let greens = band_greens(&elems)?;
            let labels: Vec<String> = elems.iter().map(|x| x.label()).collect();
            let axes = axes
                .split(',')
                .map(|a| {
                    let spec: RelationSpec = a.trim().parse()?;
                    Ok((spec.to_string(), spec.evaluate(&elems, &greens)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let diagram = eggbox(&labels, &axes)?;
            let text = match cfg.format {
                Format::Dot => diagram.to_dot()?,
                Format::Csv => return Err(Error::Config("eggboxes have no CSV form".into())),
                _ => json(&diagram.to_json()),
            };
            Ok((with_newline(text), EXIT_OK))
        }
        Command::Ann => {
            let alpha = cfg.alpha_element()?;
            let ann = annihilator_even(&alpha)?;
            let basis: Vec<String> = ann
                .basis()
                .iter()
                .map(|b| b.to_text(ascii, false))
                .collect();
            let text = match cfg.format {
                Format::Json => json(&serde_json::json!({
                    "alpha": alpha.to_text(ascii, false),
                    "n_generators": cfg.n_generators,
                    "dimension": ann.dim(),
                    "basis": basis,
                })),
                _ => {
                    let mut s = format!(
                        "alpha: {}\ngenerators: {}\ndimension: {}\nbasis:\n",
                        alpha.to_text(ascii, false),
                        cfg.n_generators,
                        ann.dim()
                    );
                    for b in &basis {
                        s.push_str(&format!("  {b}\n"));
                    }
                    s
                }
            };
            Ok((text, EXIT_OK))
        }
    }
}

/// Accepts `(n|n)`, `n|n` or `n`.
fn parse_shape(shape: &str) -> Result<usize> {
    let s = shape.trim().trim_start_matches('(').trim_end_matches(')');
    let (a, b) = s.split_once('|').unwrap_or((s, s));
    let bad = || Error::Config(format!("bad band shape {shape:?}, expected (n|n)"));
    let a: usize = a.trim().parse().map_err(|_| bad())?;
    let b: usize = b.trim().parse().map_err(|_| bad())?;
    if a != b || a == 0 {
        return Err(bad());
    }
    Ok(a)
}

/// `3` gives 3 x 3; `2x3` gives 2 and 3.
fn parse_grid(grid: &str) -> Result<(usize, usize)> {
    let bad = || Error::Config(format!("bad grid {grid:?}, expected K or KxM"));
    let (a, b) = grid.split_once(['x', 'X']).unwrap_or((grid, grid));
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    Ok((a, b))
}

fn classes(band: &Band, cfg: &RunConfig, count: usize) -> Result<Vec<crate::GrassmannElement>> {
    let c = crate::band::even_candidates(band, &cfg.coefficient_pool, count, true);
    if c.len() < count {
        return Err(Error::Degenerate(format!(
            "only {} parameter classes available, {count} requested",
            c.len()
        )));
    }
    Ok(c)
}

/// Every `f[t;u]` with `k` classes per left index and `m` per right index.
fn band_grid(
    band: &Band,
    cfg: &RunConfig,
    n: usize,
    k: usize,
    m: usize,
) -> Result<Vec<BandElement>> {
    let t = classes(band, cfg, k)?;
    let u = classes(band, cfg, m)?;
    let mut out = Vec::new();
    let total = k.pow(n as u32) * m.pow(n as u32);
    for mut code in 0..total {
        let mut ts = Vec::with_capacity(n);
        let mut us = Vec::with_capacity(n);
        for _ in 0..n {
            ts.push(t[code % k].clone());
            code /= k;
        }
        for _ in 0..n {
            us.push(u[code % m].clone());
            code /= m;
        }
        out.push(band.f(&ts, &us)?);
    }
    Ok(out)
}

fn cayley_table(
    cfg: &RunConfig,
    family: FamilyArg,
    arity: Option<usize>,
    grid: Option<&str>,
    symbolic: bool,
) -> Result<CayleyTable> {
    if symbolic {
        if family != FamilyArg::Wreath {
            return Err(Error::Config(
                "--symbolic applies to the wreath family".into(),
            ));
        }
        return Ok(CayleyTable::symbolic_wreath());
    }
    let band = Band::new(cfg.alpha_element()?)?;
    let table = match family {
        FamilyArg::Null => {
            let (k, _) = parse_grid(grid.unwrap_or("3"))?;
            let mut elems = vec![band.zero()];
            for t in crate::band::even_candidates(&band, &cfg.coefficient_pool, k, false) {
                elems.push(band.y(&t)?);
            }
            CayleyTable::of_band(&elems)?
        }
        FamilyArg::Wreath => {
            let (k, m) = parse_grid(grid.unwrap_or("2"))?;
            let t = classes(&band, cfg, k)?;
            let u = classes(&band, cfg, m)?;
            let mut elems = vec![band.e()];
            for x in &t {
                elems.push(band.p(x)?);
            }
            for y in &u {
                elems.push(band.q(y)?);
            }
            for x in &t {
                for y in &u {
                    elems.push(band.r(x, y)?);
                }
            }
            CayleyTable::of_band(&elems)?
        }
        FamilyArg::Band => {
            let n = arity.unwrap_or(1);
            if n == 0 {
                return Err(Error::Config("band arity must be at least 1".into()));
            }
            let (k, m) = parse_grid(grid.unwrap_or("2"))?;
            CayleyTable::of_band(&band_grid(&band, cfg, n, k, m)?)?
        }
    };
    // the built-in families are closed on any product grid
    debug_assert!(table.is_closed());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_and_grids() {
        assert_eq!(parse_shape("(2|2)").unwrap(), 2);
        assert_eq!(parse_shape("3").unwrap(), 3);
        assert!(parse_shape("(1|2)").is_err());
        assert_eq!(parse_grid("2x3").unwrap(), (2, 3));
        assert_eq!(parse_grid("4").unwrap(), (4, 4));
        assert!(parse_grid("x").is_err());
    }
}
