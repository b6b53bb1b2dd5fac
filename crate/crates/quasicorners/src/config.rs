//! Experiment configuration: one group, an optional set, a task list.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use quasicorners_core::boxnorm::{BoxFrame, DEFAULT_RESTARTS};
use quasicorners_core::rng::DEFAULT_SEED;

use crate::error::{CliError, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupSource,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub set: Option<SetSource>,
    pub tasks: Vec<Task>,
    /// Default for every task seed left unset.
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Record wall-clock timings (makes reports run-dependent).
    #[serde(default)]
    pub timings: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSource {
    /// A family spec such as `psl2(7)`.
    Spec(String),
    File {
        file: PathBuf,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SetSource {
    /// Each pair independently with probability `density`.
    Random {
        density: f64,
        seed: Option<u64>,
    },
    /// `U × V`.
    Product {
        u: Vec<usize>,
        v: Vec<usize>,
    },
    /// A `SUBM` file.
    File {
        path: PathBuf,
    },
    Full,
    Empty,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Naive,
    Bmz,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FrameArg {
    #[serde(rename = "1,2")]
    X12,
    #[serde(rename = "1,12")]
    X1_12,
    #[serde(rename = "12,2")]
    X12_2,
}

impl From<FrameArg> for BoxFrame {
    fn from(f: FrameArg) -> Self {
        match f {
            FrameArg::X12 => BoxFrame::X12,
            FrameArg::X1_12 => BoxFrame::X1_12,
            FrameArg::X12_2 => BoxFrame::X12_2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Exact,
    Heuristic,
    /// Exact when `n` is small enough, heuristic otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoverArg {
    Greedy,
    Exact,
}

/// The function on `G × G` a box-norm or regularity task acts on.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FunctionSource {
    /// `1_E`
    Indicator,
    /// `1_E − δ`
    Balanced,
    RandomSigns {
        seed: Option<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub enum SyndeticTarget {
    /// `{g : BMZ measure ≥ δ⁴ − ε}`
    BmzGood { epsilon: f64 },
    /// `{g : naive measure ≥ δ³ − ε}`
    NaiveGood { epsilon: f64 },
    /// `G ∖ {e}`
    Punctured,
    /// A `SUBG` file.
    File { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "task", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Task {
    GroupInfo,
    Census {
        kind: Option<KindArg>,
    },
    VerifyThmB {
        epsilon: f64,
    },
    VerifyThmC {
        epsilon: f64,
        /// Explicit minimum `D` for the hypothesis; the partition bound
        /// with trivial partitions otherwise.
        min_d: Option<u64>,
    },
    ThmCPipeline {
        epsilon: f64,
        cell_cap: Option<usize>,
        restarts: Option<usize>,
        seed: Option<u64>,
    },
    ThmDPipeline {
        epsilon: f64,
        k_cap: Option<usize>,
        cell_cap: Option<usize>,
        max_attempts: Option<usize>,
        cover: Option<CoverArg>,
        seed: Option<u64>,
    },
    Boxnorm {
        frame: FrameArg,
        mode: Option<ModeArg>,
        restarts: Option<usize>,
        function: Option<FunctionSource>,
        seed: Option<u64>,
    },
    Regularize {
        frame: u8,
        eta: f64,
        cell_cap: Option<usize>,
        function: Option<FunctionSource>,
        seed: Option<u64>,
    },
    Syndetic {
        target: SyndeticTarget,
        method: Option<CoverArg>,
        max_k: Option<usize>,
    },
    LemmaSuite {
        /// Inclusive range of seeds.
        seeds: Option<[u64; 2]>,
    },
}

impl Task {
    pub fn name(&self) -> &'static str {
        match self {
            Task::GroupInfo => "group-info",
            Task::Census { .. } => "census",
            Task::VerifyThmB { .. } => "verify-thm-b",
            Task::VerifyThmC { .. } => "verify-thm-c",
            Task::ThmCPipeline { .. } => "thm-c-pipeline",
            Task::ThmDPipeline { .. } => "thm-d-pipeline",
            Task::Boxnorm { .. } => "boxnorm",
            Task::Regularize { .. } => "regularize",
            Task::Syndetic { .. } => "syndetic",
            Task::LemmaSuite { .. } => "lemma-suite",
        }
    }

    pub fn needs_set(&self) -> bool {
        match self {
            Task::GroupInfo | Task::LemmaSuite { .. } => false,
            Task::Syndetic { target, .. } => matches!(
                target,
                SyndeticTarget::BmzGood { .. } | SyndeticTarget::NaiveGood { .. }
            ),
            Task::Boxnorm { function, .. } | Task::Regularize { function, .. } => {
                !matches!(function, Some(FunctionSource::RandomSigns { .. }))
            }
            _ => true,
        }
    }
}

fn fill<T: Copy>(slot: &mut Option<T>, value: T) {
    slot.get_or_insert(value);
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let mut c: ExperimentConfig = serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        c.normalize()?;
        Ok(c)
    }

    /// Validates and injects every default, so the echo in a report is the
    /// fully resolved configuration.
    pub fn normalize(&mut self) -> Result<()> {
        let seed = *self.seed.get_or_insert(DEFAULT_SEED);
        if let Some(SetSource::Random { density, seed: s }) = &mut self.set {
            if !(0.0..=1.0).contains(density) {
                return Err(CliError::Config(format!("density {density} outside [0, 1]")));
            }
            fill(s, seed);
        }
        if self.tasks.is_empty() {
            return Err(CliError::Config("empty task list".into()));
        }
        for t in &mut self.tasks {
            let needs_set = t.needs_set();
            match t {
                Task::GroupInfo | Task::VerifyThmB { .. } | Task::VerifyThmC { .. } => {}
                Task::Census { kind } => fill(kind, KindArg::Both),
                Task::ThmCPipeline {
                    cell_cap,
                    restarts,
                    seed: s,
                    ..
                } => {
                    fill(cell_cap, quasicorners_core::regularity::DEFAULT_CELL_CAP);
                    fill(restarts, DEFAULT_RESTARTS);
                    fill(s, seed);
                }
                Task::ThmDPipeline {
                    k_cap,
                    cell_cap,
                    max_attempts,
                    cover,
                    seed: s,
                    ..
                } => {
                    let d = quasicorners_core::syndetic::PipelineDOptions::new(seed);
                    fill(k_cap, d.k_cap);
                    fill(cell_cap, d.cell_cap);
                    fill(max_attempts, d.max_attempts);
                    fill(cover, CoverArg::Greedy);
                    fill(s, seed);
                }
                Task::Boxnorm {
                    mode,
                    restarts,
                    function,
                    seed: s,
                    ..
                } => {
                    fill(mode, ModeArg::Auto);
                    fill(restarts, DEFAULT_RESTARTS);
                    fill(function, FunctionSource::Balanced);
                    fill(s, seed);
                }
                Task::Regularize {
                    frame,
                    eta,
                    cell_cap,
                    function,
                    seed: s,
                } => {
                    if !(1..=3).contains(frame) {
                        return Err(CliError::Config(format!("frame {frame} is not 1, 2 or 3")));
                    }
                    if !(*eta > 0.0) {
                        return Err(CliError::Config("eta must be positive".into()));
                    }
                    fill(cell_cap, quasicorners_core::regularity::DEFAULT_CELL_CAP);
                    fill(function, FunctionSource::Balanced);
                    fill(s, seed);
                }
                Task::Syndetic { method, .. } => fill(method, CoverArg::Greedy),
                Task::LemmaSuite { seeds } => fill(seeds, [1, 10]),
            }
            let inner_seed = match t {
                Task::Boxnorm {
                    function: Some(FunctionSource::RandomSigns { seed: s }),
                    ..
                }
                | Task::Regularize {
                    function: Some(FunctionSource::RandomSigns { seed: s }),
                    ..
                } => Some(s),
                _ => None,
            };
            if let Some(s) = inner_seed {
                fill(s, seed);
            }
            if needs_set && self.set.is_none() {
                return Err(CliError::Config(format!("task {} needs a set", t.name())));
            }
        }
        Ok(())
    }
}
