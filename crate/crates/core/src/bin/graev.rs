use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use graev::checks::{run_suite, CheckConfig};
use graev::formats::{parse_space, read_text, EmbeddingFile, GroupFile, SpaceFile, TopologyFile};
use graev::graev::{
    abelian_norm_matching, abelian_norm_oracle, norm_dp, norm_oracle_with, OracleOptions,
};
use graev::quniform::lemma3_check;
use graev::words::{AbelianWord, Word};
use graev::{extend, Error, Result};

/// Exact Graev quasi-prenorms over finite quasi-pseudometric spaces.
#[derive(Parser)]
#[command(name = "graev", version)]
struct Cli {
    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a space, topology, group or embedding file.
    Validate { path: PathBuf },
    /// Norm of a word (token syntax) or, with --abelian, of a coefficient map.
    Norm {
        space: PathBuf,
        word: String,
        #[arg(long)]
        abelian: bool,
        /// Compute the value by brute force.
        #[arg(long)]
        oracle: bool,
        /// Extra padding levels for the brute-force search.
        #[arg(long, default_value_t = 0)]
        widen: usize,
    },
    /// Run a property suite.
    Check {
        /// prenorm, invariance, restriction, dp-vs-oracle, matching-vs-oracle,
        /// frink, lemma2, lemma3, lemma4, catalan or embedding.
        suite: String,
        #[arg(long, env = "GRAEV_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 3)]
        max_x: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_n: usize,
    },
    /// Extend a quasi-pseudometric from a subspace.
    Extend { instance: PathBuf },
}

// Witnesses come from the brute-force search; past this length it is skipped.
const WITNESS_LIMIT: usize = 8;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            if cli.json {
                println!("{}", json!({"error": err.to_string(), "input_error": err.is_input_error()}));
            } else {
                eprintln!("error: {err}");
            }
            ExitCode::from(if err.is_input_error() { 2 } else { 1 })
        }
    }
}

fn emit(json_mode: bool, value: &Value, human: impl FnOnce() -> String) {
    if json_mode {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        println!("{}", human());
    }
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Validate { path } => validate(cli.json, path),
        Command::Norm {
            space,
            word,
            abelian,
            oracle,
            widen,
        } => norm(cli.json, space, word, *abelian, *oracle, *widen),
        Command::Check {
            suite,
            seed,
            trials,
            max_x,
            max_len,
            max_n,
        } => {
            let cfg = CheckConfig {
                seed: *seed,
                trials: *trials,
                max_x: *max_x,
                max_len: *max_len,
                max_n: *max_n,
            };
            let report = run_suite(suite, &cfg)?;
            emit(cli.json, &serde_json::to_value(&report)?, || {
                let mut lines = vec![format!("suite {} (seed {})", report.suite, report.seed)];
                for p in &report.properties {
                    let status = if p.passed { "PASS" } else { "FAIL" };
                    let mut line = format!("{status} {} [{} cases]", p.name, p.cases);
                    if let Some(d) = &p.details {
                        line.push_str(&format!(" {d}"));
                    }
                    lines.push(line);
                    if let Some(c) = &p.counterexample {
                        lines.push(format!("  counterexample: {c}"));
                    }
                }
                lines.join("\n")
            });
            Ok(report.passed)
        }
        Command::Extend { instance } => extend_cmd(cli.json, instance),
    }
}

fn validate(json_mode: bool, path: &Path) -> Result<bool> {
    let text = read_text(path)?;
    let value: Value = serde_json::from_str(&text)?;
    let kind = if value.get("subspace").is_some() {
        "embedding"
    } else if value.get("matrix").is_some() {
        "space"
    } else if value.get("table").is_some() {
        "group"
    } else if value.get("opens").is_some() || value.get("min_nbhd").is_some() {
        "topology"
    } else {
        return Err(Error::Parse("unrecognized file: expected a space, topology, group or embedding".into()));
    };
    let summary = match kind {
        "space" => {
            let qpm = serde_json::from_value::<SpaceFile>(value)?.to_qpm()?;
            format!("valid quasi-pseudometric on {} points", qpm.size())
        }
        "topology" => {
            let t = serde_json::from_value::<TopologyFile>(value)?.to_topology()?;
            format!("valid topology on {} points", t.size())
        }
        "group" => {
            let file = serde_json::from_value::<GroupFile>(value)?;
            let (group, chain) = file.to_group()?;
            if let (Some(ks), Some(r)) = (&file.ks, file.r) {
                if !lemma3_check(&group, &chain, ks, r)? {
                    return Err(Error::PostconditionFailed(format!("product of V_k over {ks:?} is not inside V_{r}")));
                }
            }
            format!("valid group of order {} with {} subsets", group.order(), chain.len())
        }
        _ => {
            let inst = serde_json::from_value::<EmbeddingFile>(value)?.to_instance()?;
            format!(
                "valid embedding instance: {} of {} points",
                inst.subset.len(),
                inst.y_space.size()
            )
        }
    };
    emit(json_mode, &json!({"kind": kind, "valid": true}), || format!("ok: {summary}"));
    Ok(true)
}

fn norm(json_mode: bool, space: &Path, word: &str, abelian: bool, oracle: bool, widen: usize) -> Result<bool> {
    let rho = parse_space(&read_text(space)?)?;
    let labels = rho.labels().to_vec();
    let (value, witness) = if abelian {
        let h = AbelianWord::parse_json(word, &labels)?;
        let witness = (oracle || h.len() <= WITNESS_LIMIT).then(|| abelian_norm_oracle(&h, &rho)).transpose()?;
        let value = match &witness {
            Some(w) if oracle => w.value.clone(),
            _ => abelian_norm_matching(&h, &rho)?,
        };
        (value, witness.map(|w| (w.witness_word, w.witness_scheme.to_string())))
    } else {
        let g = Word::parse(word, &labels)?.reduce();
        let opts = OracleOptions { extra_levels: widen };
        let witness = (oracle || g.len() <= WITNESS_LIMIT).then(|| norm_oracle_with(&g, &rho, opts)).transpose()?;
        let value = match &witness {
            Some(w) if oracle => w.value.clone(),
            _ => norm_dp(&g, &rho)?,
        };
        (value, witness.map(|w| (w.witness_word, w.witness_scheme.to_string())))
    };
    let witness_text = witness.as_ref().map(|(w, s)| (w.display(&labels).to_string(), s.clone()));
    let out = json!({
        "value": value.to_string(),
        "witness_word": witness_text.as_ref().map(|(w, _)| w.clone()),
        "witness_scheme": witness_text.as_ref().map(|(_, s)| s.clone()),
    });
    emit(json_mode, &out, || match &witness_text {
        Some((w, s)) => format!("{value}\nwitness: {w}\nscheme: {s}"),
        None => value.to_string(),
    });
    Ok(true)
}

fn extend_cmd(json_mode: bool, path: &Path) -> Result<bool> {
    let file: EmbeddingFile = serde_json::from_str(&read_text(path)?)?;
    let inst = file.to_instance()?;
    let ext = extend::extend_qpm(&inst)?;
    let restricted = ext.d_tilde.restrict(&inst.subset)?;
    if restricted.matrix() != inst.d.matrix() {
        return Err(Error::PostconditionFailed("restriction to the subspace differs from d".into()));
    }
    let out = json!({
        "d_tilde": SpaceFile::from_qpm(&ext.d_tilde),
        "series_depth": ext.series_depth,
        "normalization": ext.normalization.to_string(),
    });
    emit(json_mode, &out, || {
        let labels = ext.d_tilde.labels();
        let width = ext
            .d_tilde
            .matrix()
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain(labels.iter().map(|l| l.len()))
            .max()
            .unwrap_or(1);
        let mut lines = vec![format!("{:width$} {}", "", labels.iter().map(|l| format!("{l:>width$}")).collect::<Vec<_>>().join(" "))];
        for (label, row) in labels.iter().zip(ext.d_tilde.matrix()) {
            let cells: Vec<String> = row.iter().map(|v| format!("{:>width$}", v.to_string())).collect();
            lines.push(format!("{label:>width$} {}", cells.join(" ")));
        }
        lines.join("\n")
    });
    Ok(true)
}
