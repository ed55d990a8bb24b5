use std::collections::BTreeMap;
use std::io::{self, Write};
use std::sync::mpsc;
use std::time::Instant;

use faber_core::combinatorics::{faber_constant, faber_constant_cross_check};
use faber_core::identities::{
    a_vectors, build_a, faber_sum_check, lemma_check, proposition_check, random_lemma_spec,
    t_s_consistency_check, theorem1_check, theorem2_check, FaberInstance, PolySpec,
};
use faber_core::report::params;
use faber_core::CheckReport;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{Format, RunConfig, Suite};
use crate::render::render_report;

/// Largest power `a` in the random lemma polynomials.
const LEMMA_MAX_POWER: u32 = 4;

#[derive(Debug, Clone)]
pub enum Job {
    Faber(FaberInstance),
    Proposition(FaberInstance),
    Consistency(FaberInstance),
    Theorem1 { n: usize, degree: u32 },
    Theorem2 { n: usize, degree: u32 },
    Lemma { trial: usize, seed: u64, degree: u32, spec: PolySpec },
    Constant { g: usize },
}

impl Job {
    pub fn execute(&self) -> CheckReport {
        match self {
            Job::Faber(inst) => faber_sum_check(inst),
            Job::Proposition(inst) => proposition_check(inst),
            Job::Consistency(inst) => t_s_consistency_check(inst)
                .unwrap_or_else(|e| CheckReport::error("consistency", instance_params(inst), &e.to_string())),
            Job::Theorem1 { n, degree } => theorem1_check(*n, *n as u32 + 1, *degree).unwrap_or_else(|e| {
                CheckReport::error("theorem1", params([("N", (*n).into())]), &e.to_string())
            }),
            Job::Theorem2 { n, degree } => theorem2_check(*n, *n as u32 + 1, *degree).unwrap_or_else(|e| {
                CheckReport::error("theorem2", params([("N", (*n).into())]), &e.to_string())
            }),
            Job::Lemma { trial, seed, degree, spec } => {
                let mut report = lemma_check(&build_a(spec), *degree)
                    .unwrap_or_else(|e| CheckReport::error("lemma", Vec::new(), &e.to_string()));
                let powers: Vec<usize> = spec.terms().iter().map(|t| t.power as usize).collect();
                let coeffs: Vec<String> = spec.terms().iter().map(|t| t.coeff.to_string()).collect();
                report.params.insert(0, ("trial".into(), (*trial).into()));
                report.params.insert(1, ("seed".into(), (*seed as i64).into()));
                report.params.push(("powers".into(), powers.as_slice().into()));
                report.params.push(("coeffs".into(), coeffs.join(",").as_str().into()));
                report
            }
            Job::Constant { g } => {
                let start = Instant::now();
                let g = *g as i64;
                let p = params([("g", g.into())]);
                match (faber_constant_cross_check(g), faber_constant(g)) {
                    (Ok(expected), Ok(computed)) => {
                        CheckReport::from_rationals("constants", p, &expected, &computed).with_elapsed(start.elapsed())
                    }
                    (Err(e), _) | (_, Err(e)) => CheckReport::error("constants", p, &e.to_string()),
                }
            }
        }
    }
}

fn instance_params(inst: &FaberInstance) -> Vec<(String, faber_core::ParamValue)> {
    params([("g", inst.g().into()), ("n", inst.n().into()), ("a", inst.a().into())])
}

/// Expands the configuration into independent check instances, in a fixed order.
pub fn plan(config: &RunConfig) -> Vec<Job> {
    let mut jobs = Vec::new();
    let instances = || {
        config
            .g
            .iter()
            .flat_map(move |g| config.n.iter().flat_map(move |n| a_vectors(g, n)))
    };
    for &suite in &config.suites {
        match suite {
            Suite::Faber => jobs.extend(instances().map(Job::Faber)),
            Suite::Proposition => jobs.extend(instances().map(Job::Proposition)),
            Suite::Consistency => jobs.extend(instances().map(Job::Consistency)),
            Suite::Theorem1 => {
                jobs.extend(config.big_n.iter().map(|&n| Job::Theorem1 { n, degree: config.degree }))
            }
            Suite::Theorem2 => {
                jobs.extend(config.big_n.iter().map(|&n| Job::Theorem2 { n, degree: config.degree }))
            }
            Suite::Lemma => {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                for trial in 0..config.trials {
                    let spec = random_lemma_spec(&mut rng, LEMMA_MAX_POWER, config.degree);
                    jobs.push(Job::Lemma { trial, seed: config.seed, degree: config.degree, spec });
                }
            }
            Suite::Constants => jobs.extend(config.g.iter().map(|g| Job::Constant { g })),
            Suite::All => unreachable!("expanded by RunConfig"),
        }
    }
    jobs
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunSummary {
    pub total: usize,
    pub failed: usize,
}

impl RunSummary {
    /// 0 when every record passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.failed == 0 {
            0
        } else {
            1
        }
    }
}

/// Executes every planned check on a pool of `config.jobs` workers and writes one
/// record per check to `out` from this thread only.
pub fn run(config: &RunConfig, out: &mut dyn Write) -> io::Result<RunSummary> {
    let jobs = plan(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(io::Error::other)?;
    let mut summary = RunSummary::default();
    let mut emit = |report: &CheckReport, out: &mut dyn Write| -> io::Result<()> {
        summary.total += 1;
        if !report.is_pass() {
            summary.failed += 1;
        }
        writeln!(out, "{}", render_report(report, config.format, config.bench))
    };

    std::thread::scope(|scope| -> io::Result<()> {
        let (tx, rx) = mpsc::channel::<(usize, CheckReport)>();
        let jobs = &jobs;
        scope.spawn(move || {
            pool.install(|| {
                jobs.par_iter().enumerate().for_each_with(tx, |tx, (i, job)| {
                    let mut report = job.execute();
                    if config.inject_fault {
                        report = report.with_injected_fault();
                    }
                    let _ = tx.send((i, report));
                });
            });
        });

        let mut pending: BTreeMap<usize, CheckReport> = BTreeMap::new();
        let mut next = 0;
        for (i, report) in rx {
            if !config.sorted {
                emit(&report, out)?;
                continue;
            }
            pending.insert(i, report);
            while let Some(report) = pending.remove(&next) {
                emit(&report, out)?;
                next += 1;
            }
        }
        Ok(())
    })?;

    if config.format == Format::Text {
        writeln!(out, "{} checks, {} failed", summary.total, summary.failed)?;
    }
    Ok(summary)
}
