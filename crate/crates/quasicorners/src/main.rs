use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use quasicorners::config::{
    CoverArg, ExperimentConfig, FrameArg, FunctionSource, GroupSource, KindArg, ModeArg, SetSource, SyndeticTarget,
    Task,
};
use quasicorners::formats::{write_file, write_gtbl, write_subm};
use quasicorners::run::{load_group_source, load_set, EXIT_USAGE};
use quasicorners::{run, CliError, Result, RunOptions};

#[derive(Parser)]
#[command(
    name = "quasicorners",
    version,
    about = "Corner censuses and syndeticity experiments over finite groups"
)]
struct Cli {
    /// Master seed; every unset task seed defaults to it.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (the report does not depend on this).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Output file; stdout when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Exit with status 4 when every check in the report is vacuous.
    #[arg(long, global = true)]
    strict_nonvacuous: bool,
    /// Record wall-clock time per task.
    #[arg(long, global = true)]
    timings: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or describe a group.
    #[command(subcommand)]
    Group(GroupCmd),
    /// Generate subsets of G × G.
    #[command(subcommand)]
    Set(SetCmd),
    /// Corner counts for every common difference.
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "both")]
        kind: Kind,
    },
    /// Check the good-difference theorems on a set.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Run one of the proof pipelines.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// A box norm of a function on G × G.
    Boxnorm {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = ["1,2", "1,12", "12,2"])]
        frame: String,
        #[arg(long, value_enum, default_value = "auto")]
        mode: Mode,
        #[arg(long)]
        restarts: Option<usize>,
        #[arg(long, value_enum, default_value = "balanced")]
        function: Function,
    },
    /// Weak-regularity decomposition in one frame.
    Regularize {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        frame: u8,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        cell_cap: Option<usize>,
        #[arg(long, value_enum, default_value = "balanced")]
        function: Function,
    },
    /// A syndeticity certificate for a subset of G.
    Syndetic {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "punctured")]
        target: Target,
        /// Required for the good-difference targets.
        #[arg(long)]
        epsilon: Option<f64>,
        /// `SUBG` file for `--target file`.
        #[arg(long)]
        subset: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "greedy")]
        method: Cover,
        #[arg(long)]
        max_k: Option<usize>,
    },
    /// Every supporting inequality on a range of seeds.
    Suite {
        #[arg(long)]
        group: String,
        #[arg(long, default_value_t = 1)]
        from: u64,
        #[arg(long, default_value_t = 10)]
        to: u64,
    },
    /// Run a JSON experiment config.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Write the Cayley table of a built-in family as GTBL.
    Make { spec: String },
    /// Order, conjugacy classes and irreducible degrees.
    Info { group: String },
}

#[derive(Subcommand)]
enum SetCmd {
    /// A random subset of G × G as SUBM.
    Gen {
        #[arg(long)]
        group: String,
        #[arg(long)]
        density: f64,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Naive corners.
    ThmB {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        epsilon: f64,
    },
    /// BMZ corners.
    ThmC {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        min_d: Option<u64>,
    },
}

#[derive(Subcommand)]
enum PipelineCmd {
    ThmC {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        cell_cap: Option<usize>,
        #[arg(long)]
        restarts: Option<usize>,
    },
    ThmD {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        epsilon: f64,
        #[arg(long)]
        k_cap: Option<usize>,
        #[arg(long)]
        cell_cap: Option<usize>,
        #[arg(long)]
        max_attempts: Option<usize>,
        #[arg(long, value_enum, default_value = "greedy")]
        cover: Cover,
    },
}

/// A group (family spec or GTBL path) and a subset of G × G.
#[derive(Args)]
struct Input {
    /// Family spec such as `psl2(7)`, or a GTBL file.
    #[arg(long)]
    group: String,
    /// SUBM file.
    #[arg(long, group = "set_source")]
    set: Option<PathBuf>,
    /// Random set with this density.
    #[arg(long, group = "set_source")]
    density: Option<f64>,
    /// `E = G × G`.
    #[arg(long, group = "set_source")]
    full: bool,
    /// `E = ∅`.
    #[arg(long, group = "set_source")]
    empty: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Naive,
    Bmz,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Heuristic,
    Auto,
}

#[derive(Clone, Copy, ValueEnum)]
enum Function {
    Indicator,
    Balanced,
    RandomSigns,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    BmzGood,
    NaiveGood,
    Punctured,
    File,
}

#[derive(Clone, Copy, ValueEnum)]
enum Cover {
    Greedy,
    Exact,
}

impl From<Cover> for CoverArg {
    fn from(c: Cover) -> Self {
        match c {
            Cover::Greedy => CoverArg::Greedy,
            Cover::Exact => CoverArg::Exact,
        }
    }
}

fn group_source(s: &str) -> GroupSource {
    if Path::new(s).is_file() {
        GroupSource::File { file: s.into() }
    } else {
        GroupSource::Spec(s.into())
    }
}

impl Input {
    fn set_source(&self) -> Option<SetSource> {
        if let Some(p) = &self.set {
            Some(SetSource::File { path: p.clone() })
        } else if let Some(d) = self.density {
            Some(SetSource::Random { density: d, seed: None })
        } else if self.full {
            Some(SetSource::Full)
        } else if self.empty {
            Some(SetSource::Empty)
        } else {
            None
        }
    }
}

fn function_source(f: Function) -> FunctionSource {
    match f {
        Function::Indicator => FunctionSource::Indicator,
        Function::Balanced => FunctionSource::Balanced,
        Function::RandomSigns => FunctionSource::RandomSigns { seed: None },
    }
}

fn frame_arg(s: &str) -> FrameArg {
    match s {
        "1,2" => FrameArg::X12,
        "1,12" => FrameArg::X1_12,
        _ => FrameArg::X12_2,
    }
}

fn single(cli: &Cli, group: &str, set: Option<SetSource>, task: Task) -> ExperimentConfig {
    ExperimentConfig {
        group: group_source(group),
        set,
        tasks: vec![task],
        seed: cli.seed,
        output: None,
        timings: cli.timings,
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: &Cli) -> Result<i32> {
    let config = match &cli.command {
        Command::Group(GroupCmd::Make { spec }) => {
            let (g, _) = load_group_source(&GroupSource::Spec(spec.clone()))?;
            emit(cli.out.as_deref(), &write_gtbl(&g))?;
            return Ok(0);
        }
        Command::Set(SetCmd::Gen { group, density }) => {
            let (g, _) = load_group_source(&group_source(group))?;
            if !(0.0..=1.0).contains(density) {
                return Err(CliError::Config(format!("density {density} outside [0, 1]")));
            }
            let seed = cli.seed.unwrap_or(quasicorners_core::rng::DEFAULT_SEED);
            let src = SetSource::Random {
                density: *density,
                seed: Some(seed),
            };
            emit(cli.out.as_deref(), &write_subm(&load_set(&src, g.order())?))?;
            return Ok(0);
        }
        Command::Group(GroupCmd::Info { group }) => single(cli, group, None, Task::GroupInfo),
        Command::Census { input, kind } => {
            let kind = match kind {
                Kind::Naive => KindArg::Naive,
                Kind::Bmz => KindArg::Bmz,
                Kind::Both => KindArg::Both,
            };
            single(cli, &input.group, input.set_source(), Task::Census { kind: Some(kind) })
        }
        Command::Verify(VerifyCmd::ThmB { input, epsilon }) => single(
            cli,
            &input.group,
            input.set_source(),
            Task::VerifyThmB { epsilon: *epsilon },
        ),
        Command::Verify(VerifyCmd::ThmC { input, epsilon, min_d }) => single(
            cli,
            &input.group,
            input.set_source(),
            Task::VerifyThmC {
                epsilon: *epsilon,
                min_d: *min_d,
            },
        ),
        Command::Pipeline(PipelineCmd::ThmC {
            input,
            epsilon,
            cell_cap,
            restarts,
        }) => single(
            cli,
            &input.group,
            input.set_source(),
            Task::ThmCPipeline {
                epsilon: *epsilon,
                cell_cap: *cell_cap,
                restarts: *restarts,
                seed: None,
            },
        ),
        Command::Pipeline(PipelineCmd::ThmD {
            input,
            epsilon,
            k_cap,
            cell_cap,
            max_attempts,
            cover,
        }) => single(
            cli,
            &input.group,
            input.set_source(),
            Task::ThmDPipeline {
                epsilon: *epsilon,
                k_cap: *k_cap,
                cell_cap: *cell_cap,
                max_attempts: *max_attempts,
                cover: Some((*cover).into()),
                seed: None,
            },
        ),
        Command::Boxnorm {
            input,
            frame,
            mode,
            restarts,
            function,
        } => {
            let mode = match mode {
                Mode::Exact => ModeArg::Exact,
                Mode::Heuristic => ModeArg::Heuristic,
                Mode::Auto => ModeArg::Auto,
            };
            let task = Task::Boxnorm {
                frame: frame_arg(frame),
                mode: Some(mode),
                restarts: *restarts,
                function: Some(function_source(*function)),
                seed: None,
            };
            single(cli, &input.group, input.set_source(), task)
        }
        Command::Regularize {
            input,
            frame,
            eta,
            cell_cap,
            function,
        } => {
            let task = Task::Regularize {
                frame: *frame,
                eta: *eta,
                cell_cap: *cell_cap,
                function: Some(function_source(*function)),
                seed: None,
            };
            single(cli, &input.group, input.set_source(), task)
        }
        Command::Syndetic {
            input,
            target,
            epsilon,
            subset,
            method,
            max_k,
        } => {
            let need_eps = || epsilon.ok_or_else(|| CliError::Config("--epsilon is required for this target".into()));
            let target = match target {
                Target::BmzGood => SyndeticTarget::BmzGood { epsilon: need_eps()? },
                Target::NaiveGood => SyndeticTarget::NaiveGood { epsilon: need_eps()? },
                Target::Punctured => SyndeticTarget::Punctured,
                Target::File => SyndeticTarget::File {
                    path: subset
                        .clone()
                        .ok_or_else(|| CliError::Config("--subset is required".into()))?,
                },
            };
            let task = Task::Syndetic {
                target,
                method: Some((*method).into()),
                max_k: *max_k,
            };
            single(cli, &input.group, input.set_source(), task)
        }
        Command::Suite { group, from, to } => single(
            cli,
            group,
            None,
            Task::LemmaSuite {
                seeds: Some([*from, *to]),
            },
        ),
        Command::Run { config } => {
            let text = std::fs::read_to_string(config).map_err(|source| CliError::Io {
                path: config.clone(),
                source,
            })?;
            let mut c: ExperimentConfig =
                serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", config.display())))?;
            // A seed in the file wins over the command line.
            if c.seed.is_none() {
                c.seed = cli.seed;
            }
            c.timings |= cli.timings;
            c.normalize()?;
            c
        }
    };
    let opts = RunOptions {
        threads: cli.threads,
        strict_nonvacuous: cli.strict_nonvacuous,
    };
    let report = run(&config, &opts)?;
    let out = cli.out.clone().or_else(|| config.output.clone());
    emit(out.as_deref(), &report.to_json()?)?;
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("quasicorners: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
