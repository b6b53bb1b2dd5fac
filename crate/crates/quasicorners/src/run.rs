//! Executes an [`ExperimentConfig`] and assembles the report.

use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use quasicorners_core::boxnorm::{box_norm, BoxMode, EXACT_CAP};
use quasicorners_core::corners::{good_set, CHypothesis, CornerCensus, CornerKind};
use quasicorners_core::group::{build_group, BuildOptions};
use quasicorners_core::regularity::{theorem_c_pipeline, weak_regularity, DecompositionOptions, RegFrame};
use quasicorners_core::spectral::{quasirandomness_degree, DegreeOptions, QuasirandomDegree};
use quasicorners_core::syndetic::{syndetic_cover, theorem_d_pipeline, CoverMethod, PipelineDOptions};
use quasicorners_core::{FunctionGG, GroupSpec, GroupTable, SubsetG, SubsetGG};

use crate::config::{
    CoverArg, ExperimentConfig, FunctionSource, GroupSource, KindArg, ModeArg, SetSource, SyndeticTarget, Task,
};
use crate::error::{CliError, Result};
use crate::formats::{load_group, load_subg, load_subm_for};
use crate::parallel::{par_census, par_verify_theorem_b, par_verify_theorem_c};
use crate::suite::lemma_suite;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exit status: nothing asserted failed.
pub const EXIT_OK: i32 = 0;
/// Exit status: some asserted, non-vacuous check failed.
pub const EXIT_VIOLATION: i32 = 1;
/// Exit status: bad config, unreadable or malformed input.
pub const EXIT_USAGE: i32 = 2;
/// Exit status under `--strict-nonvacuous` when no check carried information.
pub const EXIT_ALL_VACUOUS: i32 = 4;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `None` uses the rayon default.
    pub threads: Option<usize>,
    pub strict_nonvacuous: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckSummary {
    pub checks: usize,
    pub vacuous: usize,
    pub passed: usize,
    pub violations: usize,
    /// Failed checks that are not asserted (hypothesis unmet or heuristic).
    pub observational_failures: usize,
    /// JSON pointers of the vacuous checks.
    pub vacuous_checks: Vec<String>,
    pub violating_checks: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TaskReport {
    pub task: &'static str,
    pub status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub result: Value,
    pub checks: CheckSummary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupSummary {
    pub source: String,
    pub order: usize,
    pub abelian: bool,
    pub class_count: usize,
    pub degrees: Vec<u64>,
    #[serde(rename = "D")]
    pub d: u64,
    pub degree_source: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SetSummary {
    pub n: usize,
    pub cardinality: usize,
    pub density: quasicorners_core::Fraction,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunSummary {
    pub tasks: usize,
    pub task_errors: usize,
    pub checks: usize,
    pub vacuous: usize,
    pub violations: usize,
    pub observational_failures: usize,
    pub all_vacuous: bool,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ExperimentConfig,
    pub group: GroupSummary,
    pub set: Option<SetSummary>,
    pub tasks: Vec<TaskReport>,
    pub summary: RunSummary,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        self.summary.exit_code
    }

    pub fn to_json(&self) -> Result<String> {
        crate::json::to_canonical(self)
    }
}

/// Runs every task in order on a dedicated thread pool.
///
/// Config, IO and group errors abort the run. Errors inside a task are
/// recorded in that task's entry and the run moves on.
pub fn run(config: &ExperimentConfig, opts: &RunOptions) -> Result<Report> {
    let mut config = config.clone();
    config.normalize()?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = opts.threads {
        builder = builder.num_threads(t);
    }
    let pool = builder.build().map_err(|e| CliError::Config(e.to_string()))?;
    pool.install(|| run_in_pool(config, opts))
}

fn run_in_pool(config: ExperimentConfig, opts: &RunOptions) -> Result<Report> {
    let seed = config.seed.expect("normalized");
    let (g, source) = load_group_source(&config.group)?;
    let degree = quasirandomness_degree(&g, seed, &DegreeOptions::default())?;
    let e = match &config.set {
        Some(s) => Some(load_set(s, g.order())?),
        None => None,
    };
    let ctx = Ctx {
        g: &g,
        d: degree.d,
        e: e.as_ref(),
        degree: &degree,
    };

    let mut tasks = Vec::with_capacity(config.tasks.len());
    for task in &config.tasks {
        let start = Instant::now();
        let outcome = run_task(&ctx, task);
        let elapsed = config.timings.then(|| start.elapsed().as_secs_f64() * 1e3);
        let (status, error, result) = match outcome {
            Ok(v) => ("ok", None, v),
            Err(err) => ("error", Some(err.to_string()), Value::Null),
        };
        let checks = scan_checks(&result);
        tasks.push(TaskReport {
            task: task.name(),
            status,
            error,
            result,
            checks,
            elapsed_ms: elapsed,
        });
    }

    let summary = summarize(&tasks, opts.strict_nonvacuous);
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        group: GroupSummary {
            source,
            order: g.order(),
            abelian: g.is_abelian(),
            class_count: degree.degrees.class_count,
            degrees: degree.degrees.degrees.clone(),
            d: degree.d,
            degree_source: serde_json::to_value(degree.source)?,
        },
        set: e.as_ref().map(|e| SetSummary {
            n: e.n(),
            cardinality: e.cardinality(),
            density: e.density(),
        }),
        config,
        tasks,
        summary,
    })
}

pub fn load_group_source(src: &GroupSource) -> Result<(GroupTable, String)> {
    match src {
        GroupSource::Spec(s) => {
            let spec = GroupSpec::parse(s)?;
            Ok((build_group(&spec, &BuildOptions::default())?, spec.to_string()))
        }
        GroupSource::File { file } => Ok((load_group(file)?, file.display().to_string())),
    }
}

pub fn load_set(src: &SetSource, n: usize) -> Result<SubsetGG> {
    Ok(match src {
        SetSource::Random { density, seed } => SubsetGG::random(n, *density, seed.expect("normalized")),
        SetSource::Product { u, v } => {
            let u = SubsetG::from_indices(n, u.iter().copied())?;
            let v = SubsetG::from_indices(n, v.iter().copied())?;
            SubsetGG::product(&u, &v)?
        }
        SetSource::File { path } => load_subm_for(path, n)?,
        SetSource::Full => SubsetGG::full(n),
        SetSource::Empty => SubsetGG::empty(n),
    })
}

struct Ctx<'a> {
    g: &'a GroupTable,
    d: u64,
    e: Option<&'a SubsetGG>,
    degree: &'a QuasirandomDegree,
}

impl Ctx<'_> {
    fn set(&self) -> &SubsetGG {
        self.e.expect("normalized config supplies a set")
    }
}

fn census_json(c: &CornerCensus) -> Value {
    let nn = (c.n * c.n) as f64;
    json!({
        "kind": c.kind,
        "n": c.n,
        "delta": c.delta,
        "cardinality": c.cardinality,
        "counts": c.counts,
        "normalized": c.counts.iter().map(|&x| x as f64 / nn).collect::<Vec<_>>(),
    })
}

fn function_for(ctx: &Ctx, source: FunctionSource) -> FunctionGG {
    let n = ctx.g.order();
    match source {
        FunctionSource::Indicator => ctx.set().indicator(),
        FunctionSource::Balanced => {
            let e = ctx.set();
            let delta = e.density().to_f64();
            e.indicator().map(|v| v - delta)
        }
        FunctionSource::RandomSigns { seed } => FunctionGG::random_signs(n, seed.expect("normalized")),
    }
}

fn cover_method(c: CoverArg) -> CoverMethod {
    match c {
        CoverArg::Greedy => CoverMethod::Greedy,
        CoverArg::Exact => CoverMethod::Exact,
    }
}

fn run_task(ctx: &Ctx, task: &Task) -> Result<Value> {
    let g = ctx.g;
    let n = g.order();
    let value = match task {
        Task::GroupInfo => json!({
            "order": n,
            "abelian": g.is_abelian(),
            "degree": ctx.degree,
            "sum_of_squares": ctx.degree.degrees.sum_of_squares(),
            "element_orders": g.element_orders(),
        }),
        Task::Census { kind } => {
            let kinds: &[CornerKind] = match kind.expect("normalized") {
                KindArg::Naive => &[CornerKind::Naive],
                KindArg::Bmz => &[CornerKind::Bmz],
                KindArg::Both => &[CornerKind::Naive, CornerKind::Bmz],
            };
            let mut out = Vec::new();
            for &k in kinds {
                out.push(census_json(&par_census(g, ctx.set(), k)?));
            }
            json!({ "censuses": out })
        }
        Task::VerifyThmB { epsilon } => serde_json::to_value(par_verify_theorem_b(g, ctx.d, ctx.set(), *epsilon)?)?,
        Task::VerifyThmC { epsilon, min_d } => {
            let hyp = match min_d {
                Some(m) => CHypothesis::ExplicitMinD { min_d: *m as f64 },
                None => CHypothesis::default(),
            };
            serde_json::to_value(par_verify_theorem_c(g, ctx.d, ctx.set(), *epsilon, &hyp)?)?
        }
        Task::ThmCPipeline {
            epsilon,
            cell_cap,
            restarts,
            seed,
        } => {
            let mut opts = DecompositionOptions::new(f64::NAN, seed.expect("normalized"));
            opts.cell_cap = cell_cap.expect("normalized");
            opts.restarts = restarts.expect("normalized");
            serde_json::to_value(theorem_c_pipeline(g, ctx.d, ctx.set(), *epsilon, &opts)?)?
        }
        Task::ThmDPipeline {
            epsilon,
            k_cap,
            cell_cap,
            max_attempts,
            cover,
            seed,
        } => {
            let mut opts = PipelineDOptions::new(seed.expect("normalized"));
            opts.k_cap = k_cap.expect("normalized");
            opts.cell_cap = cell_cap.expect("normalized");
            opts.max_attempts = max_attempts.expect("normalized");
            opts.cover = cover_method(cover.expect("normalized"));
            serde_json::to_value(theorem_d_pipeline(g, ctx.d, ctx.set(), *epsilon, &opts)?)?
        }
        Task::Boxnorm {
            frame,
            mode,
            restarts,
            function,
            seed,
        } => {
            let f = function_for(ctx, function.expect("normalized"));
            let restarts = restarts.expect("normalized");
            let mode = match mode.expect("normalized") {
                ModeArg::Exact => BoxMode::Exact,
                ModeArg::Heuristic => BoxMode::Heuristic { restarts },
                ModeArg::Auto if n <= EXACT_CAP => BoxMode::Exact,
                ModeArg::Auto => BoxMode::Heuristic { restarts },
            };
            let r = box_norm(g, &f, (*frame).into(), mode, seed.expect("normalized"))?;
            json!({ "seed": seed, "mode": mode, "result": r })
        }
        Task::Regularize {
            frame,
            eta,
            cell_cap,
            function,
            seed,
        } => {
            let f = function_for(ctx, function.expect("normalized"));
            let mut opts = DecompositionOptions::new(*eta, seed.expect("normalized"));
            opts.cell_cap = cell_cap.expect("normalized");
            let dec = weak_regularity(g, &f, RegFrame::try_from(*frame)?, &opts)?;
            json!({
                "seed": seed,
                "cells": dec.cell_count(),
                "iterations": dec.iterations(),
                "stop": dec.stop,
                "residual_exact": dec.residual_exact,
                "decomposition": dec.export(),
            })
        }
        Task::Syndetic { target, method, max_k } => {
            let b = match target {
                SyndeticTarget::BmzGood { epsilon } => {
                    let c = par_census(g, ctx.set(), CornerKind::Bmz)?;
                    good_set(&c, c.delta.to_f64().powi(4) - epsilon)
                }
                SyndeticTarget::NaiveGood { epsilon } => {
                    let c = par_census(g, ctx.set(), CornerKind::Naive)?;
                    good_set(&c, c.delta.to_f64().powi(3) - epsilon)
                }
                SyndeticTarget::Punctured => SubsetG::from_predicate(n, |h| h != g.identity()),
                SyndeticTarget::File { path } => {
                    let s = load_subg(path)?;
                    if s.group_order() != n {
                        return Err(CliError::Config(format!(
                            "{}: subset of a group of order {}, expected {n}",
                            path.display(),
                            s.group_order()
                        )));
                    }
                    s
                }
            };
            let cert = syndetic_cover(g, &b, cover_method(method.expect("normalized")), max_k.unwrap_or(n))?;
            let valid = cert.verify(g, &b);
            json!({ "set": b, "certificate": cert, "certificate_valid": valid })
        }
        Task::LemmaSuite { seeds } => {
            let [lo, hi] = seeds.expect("normalized");
            json!({ "seeds": [lo, hi], "entries": lemma_suite(g, ctx.d, lo..=hi) })
        }
    };
    Ok(value)
}

/// Finds every object carrying boolean `vacuous`, `pass` and `asserted`
/// fields, in document order.
pub fn scan_checks(v: &Value) -> CheckSummary {
    let mut s = CheckSummary {
        checks: 0,
        vacuous: 0,
        passed: 0,
        violations: 0,
        observational_failures: 0,
        vacuous_checks: Vec::new(),
        violating_checks: Vec::new(),
    };
    walk(v, &mut String::new(), &mut s);
    s
}

fn flag(m: &Map<String, Value>, key: &str) -> Option<bool> {
    m.get(key).and_then(Value::as_bool)
}

fn walk(v: &Value, path: &mut String, s: &mut CheckSummary) {
    let len = path.len();
    match v {
        Value::Object(m) => {
            if let (Some(vacuous), Some(pass), Some(asserted)) =
                (flag(m, "vacuous"), flag(m, "pass"), flag(m, "asserted"))
            {
                s.checks += 1;
                s.passed += pass as usize;
                if vacuous {
                    s.vacuous += 1;
                    s.vacuous_checks.push(path.clone());
                }
                if !pass && asserted && !vacuous {
                    s.violations += 1;
                    s.violating_checks.push(path.clone());
                } else if !pass && !asserted {
                    s.observational_failures += 1;
                }
            }
            for (k, child) in m {
                path.push('/');
                path.push_str(&k.replace('~', "~0").replace('/', "~1"));
                walk(child, path, s);
                path.truncate(len);
            }
        }
        Value::Array(a) => {
            for (i, child) in a.iter().enumerate() {
                path.push('/');
                path.push_str(&i.to_string());
                walk(child, path, s);
                path.truncate(len);
            }
        }
        _ => {}
    }
}

fn summarize(tasks: &[TaskReport], strict_nonvacuous: bool) -> RunSummary {
    let sum = |f: fn(&CheckSummary) -> usize| tasks.iter().map(|t| f(&t.checks)).sum::<usize>();
    let checks = sum(|c| c.checks);
    let vacuous = sum(|c| c.vacuous);
    let violations = sum(|c| c.violations);
    let all_vacuous = vacuous == checks;
    let exit_code = if violations > 0 {
        EXIT_VIOLATION
    } else if strict_nonvacuous && all_vacuous {
        EXIT_ALL_VACUOUS
    } else {
        EXIT_OK
    };
    RunSummary {
        tasks: tasks.len(),
        task_errors: tasks.iter().filter(|t| t.error.is_some()).count(),
        checks,
        vacuous,
        violations,
        observational_failures: sum(|c| c.observational_failures),
        all_vacuous,
        exit_code,
    }
}
