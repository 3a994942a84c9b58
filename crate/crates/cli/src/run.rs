//! Experiment execution.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use qwalk_core::classical::{binomial_walk_distribution, correlated_walk_distribution, sample_histogram};
use qwalk_core::coins::entanglement_entropy;
use qwalk_core::engine::{evolve, position_distribution};
use qwalk_core::{Distribution, Site};

use crate::config::{load, ExperimentConfig, Mode};
use crate::error::CliError;
use crate::output::{render_comparison, render_distribution, render_entropy, write_output, Metadata};

/// Seed used for sampling when a config sets `samples` without `seed`.
pub const DEFAULT_SEED: u64 = 0;

/// A finished experiment: rendered text and where it goes.
#[derive(Clone, Debug, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub path: Option<PathBuf>,
}

/// Runs the config at `path` and returns the process exit status.
pub fn run(path: &Path, overrides: &[String], quiet: bool) -> u8 {
    match run_file(path, overrides) {
        Ok(outputs) => {
            if !quiet {
                for out in outputs.iter().filter_map(|o| o.path.as_ref()) {
                    eprintln!("wrote {}", out.display());
                }
            }
            0
        }
        Err(e) => {
            eprintln!("qwalk: {e}");
            e.exit_code()
        }
    }
}

pub fn run_file(path: &Path, overrides: &[String]) -> Result<Vec<Rendered>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    run_str(&text, overrides)
}

/// Parses, validates, executes and writes every experiment in `text`.
/// Nothing is executed unless all experiments validate.
pub fn run_str(text: &str, overrides: &[String]) -> Result<Vec<Rendered>, CliError> {
    let configs = load(text, overrides)?;
    let batch = configs.len() > 1 || text_has_batch(text, overrides)?;
    for (i, cfg) in configs.iter().enumerate() {
        cfg.validate().map_err(|e| label(e, batch, i))?;
    }
    let results: Vec<Result<Rendered, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = configs
            .iter()
            .enumerate()
            .map(|(i, cfg)| {
                scope.spawn(move || {
                    let text = execute(cfg)?;
                    let path = cfg.output_path.as_deref().map(|p| output_path(p, batch.then_some(i)));
                    if let Some(p) = &path {
                        write_output(&text, Some(p))?;
                    }
                    Ok(Rendered { text, path })
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("experiment thread panicked")).collect()
    });
    let mut outputs = Vec::with_capacity(results.len());
    for (i, r) in results.into_iter().enumerate() {
        let r = r.map_err(|e| label(e, batch, i))?;
        if r.path.is_none() {
            write_output(&r.text, None)?;
        }
        outputs.push(r);
    }
    Ok(outputs)
}

fn text_has_batch(text: &str, overrides: &[String]) -> Result<bool, CliError> {
    let doc: toml::Table = toml::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
    Ok(doc.contains_key("batch") || overrides.iter().any(|o| o.starts_with("batch")))
}

fn label(e: CliError, batch: bool, i: usize) -> CliError {
    if !batch {
        return e;
    }
    match e {
        CliError::Parse(m) => CliError::Parse(format!("batch[{i}]: {m}")),
        CliError::Validation(m) => CliError::Validation(format!("batch[{i}]: {m}")),
        CliError::Io(m) => CliError::Io(format!("batch[{i}]: {m}")),
    }
}

/// `out/run.csv` becomes `out/run_3.csv` for batch entry 3.
pub fn output_path(base: &str, index: Option<usize>) -> PathBuf {
    let base = PathBuf::from(base);
    let Some(i) = index else { return base };
    let stem = base.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let name = match base.extension() {
        Some(ext) => format!("{stem}_{i}.{}", ext.to_string_lossy()),
        None => format!("{stem}_{i}"),
    };
    base.with_file_name(name)
}

fn metadata(cfg: &ExperimentConfig, steps: u64, norm: f64) -> Metadata {
    let mode = serde_json::to_value(cfg.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    Metadata { mode, steps, norm, config: serde_json::to_value(cfg).expect("config serializes") }
}

/// Renders one experiment to text in its configured format.
pub fn execute(cfg: &ExperimentConfig) -> Result<String, CliError> {
    match cfg.mode {
        Mode::Quantum => {
            let (d, norm) = quantum_distribution(cfg)?;
            Ok(render_distribution(&d, cfg.output_format, &metadata(cfg, cfg.steps, norm)))
        }
        Mode::Classical => {
            let d = lift(&classical_distribution(cfg)?)?;
            Ok(render_distribution(&d, cfg.output_format, &metadata(cfg, cfg.classical_steps(), d.total())))
        }
        Mode::Compare => {
            let (q, norm) = quantum_distribution(cfg)?;
            let c = classical_distribution(&ExperimentConfig { classical: cfg.classical.clone(), ..cfg.clone() })?;
            let positions: BTreeSet<i64> = match &cfg.compare.positions {
                Some(list) => list.iter().copied().collect(),
                None => c.support().chain(q.support().filter_map(|s| s.coords().first().copied())).collect(),
            };
            let rows: Vec<(i64, f64, f64)> =
                positions.into_iter().map(|k| (k, c.get(&k), q.get(&Site::Line(k)))).collect();
            Ok(render_comparison(&rows, cfg.output_format, &metadata(cfg, cfg.steps, norm)))
        }
        Mode::Entropy => {
            let coin = cfg.coin_state()?;
            let rows = (1..coin.qubits())
                .map(|cut| Ok((cut, entanglement_entropy(&coin, cut)?)))
                .collect::<Result<Vec<_>, CliError>>()?;
            Ok(render_entropy(&rows, cfg.output_format, &metadata(cfg, 0, coin.norm_sqr())))
        }
    }
}

/// Position distribution of the configured quantum walk, and the state norm.
pub fn quantum_distribution(cfg: &ExperimentConfig) -> Result<(Distribution<Site>, f64), CliError> {
    let state = evolve(&cfg.walk()?);
    let exact = position_distribution(&state);
    let d = match cfg.samples {
        Some(draws) => exact.resample(draws, cfg.seed.unwrap_or(DEFAULT_SEED)),
        None => exact,
    };
    Ok((d, state.norm()))
}

/// Endpoint distribution of the configured classical walk: the coin-pair
/// walk when `rho` is set, otherwise the single-coin binomial walk.
pub fn classical_distribution(cfg: &ExperimentConfig) -> Result<Distribution<i64>, CliError> {
    let n = cfg.classical_steps();
    let seed = cfg.seed.unwrap_or(DEFAULT_SEED);
    match cfg.coin_pair()? {
        Some(pair) => Ok(match cfg.samples {
            Some(draws) => sample_histogram(n, &pair, &cfg.moves(), draws, seed),
            None => correlated_walk_distribution(n, &pair, &cfg.moves()),
        }),
        None => {
            let exact = binomial_walk_distribution(n, cfg.step_probability()?)?;
            Ok(match cfg.samples {
                Some(draws) => exact.resample(draws, seed),
                None => exact,
            })
        }
    }
}

fn lift(d: &Distribution<i64>) -> Result<Distribution<Site>, CliError> {
    Ok(Distribution::from_weights(d.iter().map(|(k, p)| (Site::Line(k), p)).collect())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn batch_suffix_goes_before_extension() {
        assert_eq!(output_path("out/run.csv", Some(3)), PathBuf::from("out/run_3.csv"));
        assert_eq!(output_path("run", Some(0)), PathBuf::from("run_0"));
        assert_eq!(output_path("a/b.tar.gz", Some(1)), PathBuf::from("a/b.tar_1.gz"));
        assert_eq!(output_path("run.csv", None), PathBuf::from("run.csv"));
    }

    #[test]
    fn entropy_rows_per_cut() {
        let cfgs = load("mode = \"entropy\"\n[coin]\npreset = \"ghz3\"\n", &[]).unwrap();
        let text = execute(&cfgs[0]).unwrap();
        assert_eq!(text, "cut,entropy\n1,1\n2,1\n");
    }
}
