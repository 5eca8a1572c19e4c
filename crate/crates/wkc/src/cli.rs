//! Argument parsing and dispatch.

use std::path::PathBuf;

use anyhow::{bail, Context as _, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use wkc_core::abelian::{EnumerationMode, PointedBijection};
use wkc_core::enumerator::DEFAULT_MAX_COSETS;
use wkc_core::presentations::{build_pairs_presentation, PairSet, Presentation};
use wkc_core::regular::RegularGroup;
use wkc_core::structure::analyze;

use crate::cache::{Cache, CACHE_ENV};
use crate::commands::{self, analysis_json, analysis_text, elementary, Context};
use crate::formats::parse_bijection;
use crate::report::Outcome;
use crate::sweep::options_for;

/// Exit status when a command ran but one of its checks failed.
pub const EXIT_CHECK_FAILED: i32 = 2;
pub const EXIT_ERROR: i32 = 1;

#[derive(Parser, Debug)]
#[command(name = "wkc", version, about = "Weak-commutativity groups: tables, classifications and checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    /// Coset limit for each enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Result cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    PlainLex,
    GradedLex,
}

impl From<Mode> for EnumerationMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::PlainLex => EnumerationMode::PlainLex,
            Mode::GradedLex => EnumerationMode::GradedLex,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    A23,
    A24,
    A33,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long)]
    pub k: usize,
    /// Element enumeration order behind cycle labels.
    #[arg(long, value_enum, default_value = "graded-lex")]
    pub mode: Mode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Reproduce a classification table.
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        /// Convention; `a24` runs both when omitted.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Analyse every double-coset representative of `A_{p,k}`.
    Classify {
        #[command(flatten)]
        group: GroupArgs,
        /// Write the sweep as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Allow A_{2,4}, whose representatives exceed the default index cap.
        #[arg(long)]
        stretch: bool,
    },
    /// Analyse one G(A;f), or a presentation read from a file.
    Analyze {
        #[arg(long, required_unless_present = "presentation")]
        p: Option<u32>,
        #[arg(long, required_unless_present = "presentation")]
        k: Option<usize>,
        #[arg(long, value_enum, default_value = "graded-lex")]
        mode: Mode,
        /// Cycle string, `transposition` or a bijection file.
        #[arg(long, default_value = "()")]
        f: String,
        #[arg(long, conflicts_with_all = ["p", "k"])]
        presentation: Option<PathBuf>,
    },
    /// Double cosets of the automorphism group in the symmetric group.
    Dcosets {
        #[command(subcommand)]
        op: DcosetOp,
    },
    /// Bases, incidence matrices and matchings.
    Combinat {
        #[command(subcommand)]
        op: CombinatOp,
    },
    /// G(F; x -> 1/x) for the field of order q.
    Fieldinv {
        #[arg(long)]
        q: u32,
    },
    /// The rank-k central extension compared with chi(A_{2,k}).
    Extension {
        #[arg(long)]
        k: usize,
    },
    /// Check the affine matrix representation.
    VerifyMatrix,
    /// Random instances of the generalized presentation.
    Sanov {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Theorem checkers and worked examples.
    Check {
        #[command(subcommand)]
        op: CheckOp,
    },
}

#[derive(Subcommand, Debug)]
pub enum DcosetOp {
    /// Number of double cosets (Burnside).
    Count {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
    },
    /// Canonical representatives.
    Reps {
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Whether two bijections lie in one double coset.
    Same {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum CombinatOp {
    /// An f-independent basis and the normalized bijection.
    Basis {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        f: String,
    },
    /// Count of f-independent ordered bases against the lower bound.
    Bound {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        f: String,
        /// Estimate from this many random tuples instead of counting.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Incidence matrix on cyclic subgroups and the power-compatible maps.
    Extract {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        f: String,
    },
    /// Total singularity of a square matrix given as `1,0;0,1`.
    Singular {
        #[arg(long)]
        matrix: String,
    },
    /// The generating set S(m,n) and the pairs for a permutation of it.
    Su {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "()")]
        f: String,
    },
    /// Randomized property sweep.
    Suite {
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CheckOp {
    /// Central-extension theorem; instances chiK, toy, toy-swap.
    ExtTheorem {
        #[arg(long, value_delimiter = ',', default_value = "chi3,toy,toy-swap")]
        instances: Vec<String>,
    },
    /// Rank bound for the normal closure of M and N.
    RankTheorem {
        #[arg(long, value_delimiter = ',', default_value = "chi3,toy,toy-swap")]
        instances: Vec<String>,
    },
    /// Class of G/G'' at most |A|.
    Metab,
    /// The last transposition against chi(A_{2,k}).
    Transposition {
        #[arg(long)]
        k: usize,
    },
    /// chi(A,S;2) against chi(A), and the A_{2,2} contrast.
    ChiReduction,
    /// The six-relator group over A_{p,3}.
    Example1 {
        #[arg(long, default_value_t = 3)]
        p: u32,
    },
    /// Orbit identities of the inversion maps.
    Fieldlab,
}

impl Global {
    pub fn context(&self) -> Result<Context> {
        let cache = match &self.cache_dir {
            Some(d) => Some(Cache::new(d).with_context(|| format!("opening cache {}", d.display()))?),
            None => None,
        };
        Ok(Context { jobs: self.jobs.max(1), cache, max_cosets: self.max_cosets, ..Context::default() })
    }
}

fn instances(names: &[String]) -> Result<Vec<commands::groups::Instance>> {
    names.iter().map(|s| commands::groups::Instance::parse(s.trim())).collect()
}

fn analyze_command(ctx: &Context, p: Option<u32>, k: Option<usize>, mode: Mode, f: &str, presentation: Option<&PathBuf>) -> Result<Outcome> {
    let (pres, label, order_of_a) = match presentation {
        Some(path) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            (Presentation::parse(&text)?, path.display().to_string(), 0)
        }
        None => {
            let (p, k) = (p.expect("clap requires p"), k.expect("clap requires k"));
            let a = elementary(p, k)?;
            let mode = EnumerationMode::from(mode);
            let fb: PointedBijection = parse_bijection(f, &a, mode)?;
            let label = fb.to_cycle_string(&a.ordering(mode));
            (build_pairs_presentation(&PairSet::graph(&fb))?, format!("G(A_{{{p},{k}}};{label})"), a.order())
        }
    };
    let g = RegularGroup::from_presentation(&pres, options_for(order_of_a, ctx.max_cosets))?;
    let an = analyze(&g);
    Ok(Outcome {
        report: serde_json::json!({"command": "analyze", "group": label, "analysis": analysis_json(&an)}),
        text: format!("{label}: {}\n", analysis_text(&an)),
        checks: Vec::new(),
    })
}

/// Runs one command; the second value is CSV output when requested.
pub fn dispatch(cli: &Cli) -> Result<Outcome> {
    let ctx = cli.global.context()?;
    let out = match &cli.command {
        Command::Tables { which, mode } => match which {
            Table::A23 => commands::tables::a23(&ctx, mode.map_or(EnumerationMode::GradedLex, Into::into))?,
            Table::A24 => {
                let modes = match mode {
                    Some(m) => vec![(*m).into()],
                    None => vec![EnumerationMode::GradedLex, EnumerationMode::PlainLex],
                };
                commands::tables::a24(&ctx, &modes)?
            }
            Table::A33 => commands::tables::a33(&ctx, mode.map_or(EnumerationMode::GradedLex, Into::into))?,
        },
        Command::Classify { group, csv, stretch } => {
            let (out, table) = commands::tables::classify(&ctx, group.p, group.k, group.mode.into(), *stretch)?;
            if let Some(path) = csv {
                std::fs::write(path, table).with_context(|| format!("writing {}", path.display()))?;
            }
            out
        }
        Command::Analyze { p, k, mode, f, presentation } => analyze_command(&ctx, *p, *k, *mode, f, presentation.as_ref())?,
        Command::Dcosets { op } => match op {
            DcosetOp::Count { p, k } => commands::dcosets::count(*p, *k)?,
            DcosetOp::Reps { group } => commands::dcosets::reps(&ctx, group.p, group.k, group.mode.into())?,
            DcosetOp::Same { group, f, g } => commands::dcosets::same(group.p, group.k, group.mode.into(), f, g)?,
        },
        Command::Combinat { op } => match op {
            CombinatOp::Basis { group, f } => commands::combinat::basis(group.p, group.k, group.mode.into(), f)?,
            CombinatOp::Bound { group, f, samples, seed } => {
                commands::combinat::bound(group.p, group.k, group.mode.into(), f, *samples, *seed)?
            }
            CombinatOp::Extract { group, f } => commands::combinat::extract(group.p, group.k, group.mode.into(), f)?,
            CombinatOp::Singular { matrix } => commands::combinat::singular(matrix)?,
            CombinatOp::Su { m, n, f } => commands::combinat::su(*m, *n, f)?,
            CombinatOp::Suite { samples, seed } => commands::combinat::suite(&ctx, *samples, *seed)?,
        },
        Command::Fieldinv { q } => commands::fields::fieldinv(&ctx, *q)?,
        Command::Extension { k } => commands::groups::extension(&ctx, *k)?,
        Command::VerifyMatrix => commands::matrix::verify_matrix(&ctx)?,
        Command::Sanov { p, k, count, seed } => commands::sanov::sanov(&ctx, *p, *k, *count, *seed)?,
        Command::Check { op } => match op {
            CheckOp::ExtTheorem { instances: names } => commands::groups::ext_theorem(&ctx, &instances(names)?)?,
            CheckOp::RankTheorem { instances: names } => commands::groups::rank_theorem(&ctx, &instances(names)?)?,
            CheckOp::Metab => commands::groups::metab(&ctx)?,
            CheckOp::Transposition { k } => commands::groups::transposition(&ctx, *k)?,
            CheckOp::ChiReduction => commands::groups::chi_reduction(&ctx)?,
            CheckOp::Example1 { p } => {
                if *p > 5 {
                    bail!("example1 is limited to p <= 5");
                }
                commands::groups::example1(&ctx, *p)?
            }
            CheckOp::Fieldlab => commands::fields::suite()?,
        },
    };
    Ok(out)
}

/// Prints the outcome and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    match dispatch(cli) {
        Ok(out) => {
            let json = serde_json::to_string_pretty(&out.json()).expect("report serializes");
            if let Some(path) = &cli.global.out {
                if let Err(e) = std::fs::write(path, format!("{json}\n")) {
                    eprintln!("error: writing {}: {e}", path.display());
                    return EXIT_ERROR;
                }
            }
            if cli.global.json {
                println!("{json}");
            } else {
                print!("{}", out.text);
                if out.text.is_empty() || !out.checks.iter().all(|c| out.text.contains(&c.name)) {
                    print!("{}", out.check_lines());
                }
            }
            if out.all_pass() {
                0
            } else {
                for c in out.failures() {
                    eprintln!("check failed: {}: expected {}, observed {}", c.name, c.expected, c.observed);
                }
                EXIT_CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    }
}
