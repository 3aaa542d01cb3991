//! Command-line driver for the worm-chain library: trajectory sampling,
//! median-of-means estimation, and exact verification on small graphs.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 verification
//! failure (an exact check reported a violated inequality).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use worm_ising::{
    congestion, enumerate, fpras, mixing_report, run, sample_rng, susceptibility, theorem1_bound,
    transition_matrix, verify_theorem_chain, ChainParams, Event, FprasPlan, Graph,
    GraphKind, RunOptions, WormState, RNG_ID,
};

#[derive(Parser)]
#[command(name = "worm-ising", version, about = "Worm-chain sampler and verifier for the zero-field ferromagnetic Ising model")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run the chain and emit a (strided) trajectory trace plus a summary
    Sample {
        #[command(flatten)]
        common: CommonArgs,
        /// number of chain steps
        #[arg(long, default_value_t = 100_000)]
        steps: u64,
        /// record every STRIDE-th state in the trace
        #[arg(long, default_value_t = 1)]
        stride: u64,
    },
    /// Median-of-means estimate of the susceptibility or a two-point function
    Fpras {
        #[command(flatten)]
        common: CommonArgs,
        /// relative accuracy
        #[arg(long, default_value_t = 0.2)]
        epsilon: f64,
        /// failure probability
        #[arg(long, default_value_t = 0.2)]
        eta: f64,
        /// estimate <sigma_u sigma_v> for this pair instead of chi, as "u,v"
        #[arg(long)]
        pair: Option<String>,
        /// cap the per-sample run length (the proven length can be impractical)
        #[arg(long)]
        max_steps: Option<u64>,
    },
    /// Exact checks: stationarity, detailed balance, mixing times, step bound
    Oracle {
        #[command(flatten)]
        common: CommonArgs,
        /// total-variation thresholds, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.25])]
        delta: Vec<f64>,
    },
    /// Canonical-path congestion and the full flow-argument verification
    Flows {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 0.25)]
        delta: f64,
    },
    /// Measure raw step throughput
    Bench {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value_t = 10_000_000)]
        steps: u64,
    },
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// generator spec: k<n>, path<n>, cycle<n>, grid<r>x<c>, torus<r>x<c>
    #[arg(long)]
    graph: Option<String>,
    /// edge-list file ("n m" header, one "u v" pair per line)
    #[arg(long, conflicts_with = "graph")]
    graph_file: Option<PathBuf>,
    /// high-temperature parameter, in (0,1)
    #[arg(long)]
    x: Option<f64>,
    /// inverse temperature; converted to x = tanh(beta) at parse time
    #[arg(long, conflicts_with = "x")]
    beta: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
    /// write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// JSON file providing defaults for the flags above; explicit flags win
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

/// Optional defaults loadable from --config.
#[derive(Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    graph: Option<String>,
    graph_file: Option<PathBuf>,
    x: Option<f64>,
    beta: Option<f64>,
    seed: Option<u64>,
    format: Option<Format>,
}

/// Fully resolved run parameters; hashed into the provenance block.
struct Resolved {
    graph: Graph,
    graph_spec: String,
    params: ChainParams,
    seed: u64,
    out: Option<PathBuf>,
    format: Format,
}

#[derive(Serialize)]
struct Provenance {
    version: &'static str,
    command: String,
    graph: String,
    graph_sha256: String,
    x: f64,
    beta: f64,
    seed: u64,
    rng: &'static str,
    config_sha256: String,
}

fn parse_graph_spec(s: &str) -> Result<GraphKind, String> {
    let err = || format!("unrecognized graph spec '{s}' (expected k<n>, path<n>, cycle<n>, grid<r>x<c>, torus<r>x<c>)");
    let grid_like = |rest: &str| -> Result<(usize, usize), String> {
        let (r, c) = rest.split_once('x').ok_or_else(err)?;
        Ok((r.parse().map_err(|_| err())?, c.parse().map_err(|_| err())?))
    };
    if let Some(rest) = s.strip_prefix("torus") {
        let (r, c) = grid_like(rest)?;
        Ok(GraphKind::Torus(r, c))
    } else if let Some(rest) = s.strip_prefix("grid") {
        let (r, c) = grid_like(rest)?;
        Ok(GraphKind::Grid(r, c))
    } else if let Some(rest) = s.strip_prefix("path") {
        Ok(GraphKind::Path(rest.parse().map_err(|_| err())?))
    } else if let Some(rest) = s.strip_prefix("cycle") {
        Ok(GraphKind::Cycle(rest.parse().map_err(|_| err())?))
    } else if let Some(rest) = s.strip_prefix("k") {
        Ok(GraphKind::Complete(rest.parse().map_err(|_| err())?))
    } else {
        Err(err())
    }
}

fn sha256_hex(data: &str) -> String {
    let mut h = Sha256::new();
    h.update(data.as_bytes());
    format!("{:x}", h.finalize())
}

fn resolve(common: &CommonArgs) -> Result<Resolved, String> {
    let file: FileConfig = match &common.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            serde_json::from_str(&text).map_err(|e| format!("bad config {}: {e}", p.display()))?
        }
        None => FileConfig::default(),
    };
    let graph_spec = common.graph.clone().or(file.graph);
    let graph_file = common.graph_file.clone().or(file.graph_file);
    let x = common.x.or(file.x);
    let beta = common.beta.or(file.beta);
    let seed = common.seed.or(file.seed).unwrap_or(1);
    let format = common.format.or(file.format).unwrap_or(Format::Csv);

    let (graph, spec_name) = match (&graph_spec, &graph_file) {
        (Some(_), Some(_)) => return Err("give either --graph or --graph-file, not both".into()),
        (Some(spec), None) => (
            Graph::generate(parse_graph_spec(spec)?).map_err(|e| e.to_string())?,
            spec.clone(),
        ),
        (None, Some(path)) => {
            let text = fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            (
                Graph::from_edge_list_text(&text).map_err(|e| e.to_string())?,
                format!("file:{}", path.display()),
            )
        }
        (None, None) => return Err("a graph is required (--graph or --graph-file)".into()),
    };
    let params = match (x, beta) {
        (Some(_), Some(_)) => return Err("give exactly one of --x and --beta".into()),
        (Some(x), None) => ChainParams::from_x(x).map_err(|e| e.to_string())?,
        (None, Some(b)) => ChainParams::from_beta(b).map_err(|e| e.to_string())?,
        (None, None) => return Err("a temperature is required (--x or --beta)".into()),
    };
    Ok(Resolved {
        graph,
        graph_spec: spec_name,
        params,
        seed,
        out: common.out.clone(),
        format,
    })
}

impl Resolved {
    fn provenance(&self, command: &str, extra: &impl Serialize) -> Provenance {
        let config_doc = serde_json::json!({
            "command": command,
            "graph": self.graph.to_edge_list_text(),
            "x": self.params.x(),
            "seed": self.seed,
            "params": serde_json::to_value(extra).unwrap(),
        });
        Provenance {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            graph: self.graph_spec.clone(),
            graph_sha256: sha256_hex(&self.graph.to_edge_list_text()),
            x: self.params.x(),
            beta: self.params.beta(),
            seed: self.seed,
            rng: RNG_ID,
            config_sha256: sha256_hex(&config_doc.to_string()),
        }
    }

    fn emit(&self, text: &str) -> Result<(), String> {
        match &self.out {
            Some(p) => fs::write(p, text).map_err(|e| format!("cannot write {}: {e}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn cmd_sample(common: &CommonArgs, steps: u64, stride: u64) -> Result<ExitCode, String> {
    if stride == 0 {
        return Err("--stride must be positive".into());
    }
    let r = resolve(common)?;
    let prov = r.provenance("sample", &serde_json::json!({"steps": steps, "stride": stride}));
    let mut s = WormState::empty(&r.graph);
    let mut rng = sample_rng(r.seed, 0, 0);
    let mut trace: Vec<(u64, usize, Option<(u32, u32)>)> = Vec::new();
    let t0 = Instant::now();
    let stats = run(
        &r.graph,
        &mut s,
        steps,
        &r.params,
        &mut rng,
        RunOptions { track_defect_pairs: true },
        |t, st| {
            if t % stride == 0 {
                trace.push((t, st.edge_count(), st.defects()));
            }
        },
    );
    eprintln!("sampled {steps} steps in {:.3}s", t0.elapsed().as_secs_f64());

    let counts = stats.defect_pair_counts.as_ref().unwrap();
    let mut keys: Vec<_> = counts.keys().collect();
    keys.sort();
    let mut pair_counts = serde_json::Map::new();
    for k in keys {
        pair_counts.insert(format!("{}-{}", k.0, k.1), serde_json::json!(counts[k]));
    }
    let summary = serde_json::json!({
        "provenance": prov,
        "steps": stats.steps,
        "accepted": stats.accepted,
        "c0_fraction": stats.c0_fraction(),
        "mean_edge_count": stats.mean_edge_count(),
        "defect_pair_counts": pair_counts,
    });

    match r.format {
        Format::Csv => {
            let mut out = String::new();
            out.push_str(&format!(
                "# version={} graph={} graph_sha256={} x={} seed={} rng={} config_sha256={}\n",
                prov.version, prov.graph, prov.graph_sha256, prov.x, prov.seed, prov.rng,
                prov.config_sha256
            ));
            out.push_str("t,edges,defect_u,defect_v\n");
            for (t, edges, defects) in &trace {
                match defects {
                    Some((u, v)) => out.push_str(&format!("{t},{edges},{u},{v}\n")),
                    None => out.push_str(&format!("{t},{edges},,\n")),
                }
            }
            r.emit(&out)?;
            if r.out.is_some() {
                println!("{}", serde_json::to_string_pretty(&summary).unwrap());
            } else {
                eprintln!("{}", serde_json::to_string_pretty(&summary).unwrap());
            }
        }
        Format::Json => {
            let rows: Vec<_> = trace
                .iter()
                .map(|(t, edges, d)| serde_json::json!({"t": t, "edges": edges, "defects": d}))
                .collect();
            let doc = serde_json::json!({"summary": summary, "trace": rows});
            r.emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_fpras(
    common: &CommonArgs,
    epsilon: f64,
    eta: f64,
    pair: Option<&str>,
    max_steps: Option<u64>,
) -> Result<ExitCode, String> {
    let r = resolve(common)?;
    let event = match pair {
        None => Event::CycleSpace,
        Some(spec) => {
            let (u, v) = spec
                .split_once(',')
                .ok_or_else(|| format!("bad --pair '{spec}', expected 'u,v'"))?;
            let u: u32 = u.trim().parse().map_err(|_| format!("bad --pair '{spec}'"))?;
            let v: u32 = v.trim().parse().map_err(|_| format!("bad --pair '{spec}'"))?;
            Event::DefectPair(u.min(v), u.max(v))
        }
    };
    let mut plan =
        FprasPlan::new(&r.graph, &r.params, event, epsilon, eta).map_err(|e| e.to_string())?;
    let mut capped = false;
    if let Some(cap) = max_steps {
        if cap < plan.run_length {
            plan = plan.with_run_length(cap);
            capped = true;
        }
    }
    let prov = r.provenance(
        "fpras",
        &serde_json::json!({"epsilon": epsilon, "eta": eta, "pair": pair, "max_steps": max_steps}),
    );
    let t0 = Instant::now();
    let est = fpras(&r.graph, &r.params, &plan, r.seed).map_err(|e| e.to_string())?;
    eprintln!(
        "ran {} samples of {} steps in {:.3}s",
        plan.outer_reps * plan.inner_reps,
        plan.run_length,
        t0.elapsed().as_secs_f64()
    );
    let target = match event {
        Event::CycleSpace => serde_json::json!({
            "kind": "susceptibility",
            "pi_c0": est.estimate,
            "chi": susceptibility(est.estimate, r.params.beta()).map_err(|e| e.to_string())?,
        }),
        Event::DefectPair(u, v) => serde_json::json!({
            "kind": "two_point",
            "pair": [u, v],
            "pi_cuv": est.estimate,
            "note": "divide by an estimate of pi(C0) via two_point() for the correlation itself",
        }),
    };
    let doc = serde_json::json!({
        "provenance": prov,
        "plan": plan,
        "run_length_capped": capped,
        "estimate": est,
        "target": target,
    });
    r.emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(common: &CommonArgs, deltas: &[f64]) -> Result<ExitCode, String> {
    let r = resolve(common)?;
    let x = r.params.x();
    let tm = transition_matrix(&r.graph, x).map_err(|e| e.to_string())?;
    let dist = enumerate(&r.graph, x).map_err(|e| e.to_string())?;
    let k = tm.len();
    let mut max_row_err = 0.0f64;
    let mut max_db_err = 0.0f64;
    let mut max_stat_err = 0.0f64;
    let mut min_diag = 1.0f64;
    for i in 0..k {
        let row: f64 = (0..k).map(|j| tm.prob(i, j)).sum();
        max_row_err = max_row_err.max((row - 1.0).abs());
        min_diag = min_diag.min(tm.prob(i, i));
        for j in 0..k {
            max_db_err = max_db_err.max((tm.pi(i) * tm.prob(i, j) - tm.pi(j) * tm.prob(j, i)).abs());
        }
    }
    for j in 0..k {
        let pij: f64 = (0..k).map(|i| tm.pi(i) * tm.prob(i, j)).sum();
        max_stat_err = max_stat_err.max((pij - tm.pi(j)).abs());
    }
    let mr = mixing_report(&tm, deltas).map_err(|e| e.to_string())?;
    let bounds: Vec<f64> = deltas
        .iter()
        .map(|&d| theorem1_bound(&r.graph, x, d))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mix_ok = mr.mix.iter().zip(&bounds).all(|(&m, &b)| (m as f64) <= b);
    let ok = max_row_err <= 1e-12 && max_db_err <= 1e-12 && max_stat_err <= 1e-12
        && min_diag >= 0.5 - 1e-12 && mix_ok;

    let prov = r.provenance("oracle", &serde_json::json!({"delta": deltas}));
    let doc = serde_json::json!({
        "provenance": prov,
        "states": k,
        "pi_c0": dist.pi_c0(),
        "exact_chi": susceptibility(dist.pi_c0(), r.params.beta()).map_err(|e| e.to_string())?,
        "max_row_sum_error": max_row_err,
        "max_detailed_balance_error": max_db_err,
        "max_stationarity_error": max_stat_err,
        "min_diagonal": min_diag,
        "mixing": mr,
        "step_bounds": bounds,
        "mix_within_bounds": mix_ok,
        "ok": ok,
    });
    r.emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_flows(common: &CommonArgs, delta: f64) -> Result<ExitCode, String> {
    let r = resolve(common)?;
    let x = r.params.x();
    let cong = congestion(&r.graph, x).map_err(|e| e.to_string())?;
    let chain = verify_theorem_chain(&r.graph, x, delta).map_err(|e| e.to_string())?;
    let ok = chain.passed && cong.phi <= cong.phi_bound;
    let prov = r.provenance("flows", &serde_json::json!({"delta": delta}));
    let doc = serde_json::json!({
        "provenance": prov,
        "congestion": cong,
        "verification": chain,
        "ok": ok,
    });
    r.emit(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_bench(common: &CommonArgs, steps: u64) -> Result<ExitCode, String> {
    let r = resolve(common)?;
    let mut s = WormState::empty(&r.graph);
    let mut rng = sample_rng(r.seed, 0, 0);
    let t0 = Instant::now();
    let stats = run(&r.graph, &mut s, steps, &r.params, &mut rng, RunOptions::default(), |_, _| {});
    let secs = t0.elapsed().as_secs_f64();
    println!(
        "{} steps in {:.3}s: {:.3e} steps/s (acceptance rate {:.4})",
        steps,
        secs,
        steps as f64 / secs,
        stats.accepted as f64 / steps as f64
    );
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // help/version are not errors; everything else is a usage failure
            use clap::error::ErrorKind::*;
            let _ = e.print();
            return match e.kind() {
                DisplayHelp | DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.cmd {
        Cmd::Sample { common, steps, stride } => cmd_sample(common, *steps, *stride),
        Cmd::Fpras { common, epsilon, eta, pair, max_steps } => {
            cmd_fpras(common, *epsilon, *eta, pair.as_deref(), *max_steps)
        }
        Cmd::Oracle { common, delta } => cmd_oracle(common, delta),
        Cmd::Flows { common, delta } => cmd_flows(common, *delta),
        Cmd::Bench { common, steps } => cmd_bench(common, *steps),
    };
    match result {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
