//! Thin adapters from parsed arguments to library calls.

use std::io::Read;

use btfree::audit::{self, Check};
use btfree::bounds::{self, BoundReport, Coefficient};
use btfree::constructions::{self, RandomEvenSpec};
use btfree::detect;
use btfree::embed::{self, FSpec, TreeSpec, ZPolicy};
use btfree::graph6::{self, Record};
use btfree::solver::{self, Mode, SearchConfig, Symmetry};
use btfree::{BipartiteGraph, Graph};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::manifest::InputDigest;
use crate::{
    AuditArgs, BoundsArgs, Cli, Command, ConstructArgs, DetectArgs, EmbedArgs, EmbedMode, Failure, Family, Format,
    InputArgs, PolicyArg, SolveArgs, Sink, SymmetryArg, EXIT_BUDGET, EXIT_FOUND, EXIT_OK,
};

type Outcome = Result<u8, Failure>;

pub fn dispatch(cli: &Cli, out: &mut Sink, inputs: &mut Vec<InputDigest>) -> Outcome {
    match &cli.command {
        Command::Construct(a) => construct(a, cli, out),
        Command::Detect(a) => detect_cmd(a, cli.format, out, inputs),
        Command::Audit(a) => audit_cmd(a, out, inputs),
        Command::Solve(a) => solve(a, cli, out),
        Command::Embed(a) => embed_cmd(a, out, inputs),
        Command::Bounds(a) => bounds_cmd(a, out),
        Command::Replay(a) => crate::manifest::replay(&a.manifest_path, out),
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn need<T: Copy>(v: Option<T>, flag: &str, family: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--{flag} is required for family {family}")))
}

fn read_records(input: &InputArgs, inputs: &mut Vec<InputDigest>) -> Result<Vec<Record>, Failure> {
    let mut bytes = Vec::new();
    if input.input == "-" {
        std::io::stdin().read_to_end(&mut bytes)?;
    } else {
        bytes = std::fs::read(&input.input).map_err(|e| usage(format!("{}: {e}", input.input)))?;
    }
    inputs.push(InputDigest {
        path: input.input.clone(),
        sha256: hex::encode(Sha256::digest(&bytes)),
    });
    let text = String::from_utf8(bytes).map_err(|_| usage("input is not valid UTF-8"))?;
    Ok(graph6::parse_stream(&text)?)
}

/// graph6 text of a record, keeping a bipartite header when present.
fn g6(g: &Graph, bip: Option<&BipartiteGraph>) -> String {
    match bip {
        Some(b) => graph6::encode_bipartite(b).trim_end().to_string(),
        None => graph6::encode_graph6_string(g),
    }
}

#[derive(Serialize)]
struct ConstructOutput {
    family: constructions::Family,
    v: usize,
    e: usize,
    graph6: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    enlarged: Option<Vec<usize>>,
}

fn construct(a: &ConstructArgs, cli: &Cli, out: &mut Sink) -> Outcome {
    use constructions::Family as F;
    let name = format!("{:?}", a.family).to_lowercase();
    let name = name.as_str();
    let (family, graph, bip, enlarged) = match a.family {
        Family::Er => (F::Er, constructions::er_polarity(need(a.q, "q", name)?)?, None, None),
        Family::Incidence => {
            let b = constructions::pg_incidence(need(a.q, "q", name)?)?;
            (F::Incidence, b.graph().clone(), Some(b), None)
        }
        Family::BlowUp => {
            let base = constructions::er_polarity(need(a.q, "q", name)?)?;
            (F::BlowUp, constructions::blow_up(&base, need(a.s, "s", name)?)?, None, None)
        }
        Family::BipartiteBlowUp => {
            let base = constructions::pg_incidence(need(a.q, "q", name)?)?;
            let b = constructions::bipartite_blow_up(&base, need(a.a, "a", name)?, need(a.b, "b", name)?)?;
            (F::BlowUp, b.graph().clone(), Some(b), None)
        }
        Family::BtFree => {
            let g = constructions::construct_bt_free(need(a.t, "t", name)?, need(a.n, "n", name)?)?;
            (F::BtFree, g, None, None)
        }
        Family::BipartiteBtFree => {
            let b = constructions::construct_bipartite_bt_free(need(a.t, "t", name)?, need(a.n, "n", name)?)?;
            (F::BipartiteBtFree, b.graph().clone(), Some(b), None)
        }
        Family::RandomEven => {
            let s = need(a.s, "s", name)?;
            let base = constructions::er_polarity(need(a.q, "q", name)?)?;
            let p = a.p.unwrap_or_else(|| constructions::optimal_p(s));
            let r = constructions::construct_bt_free_random_even(&RandomEvenSpec::new(s, base, p, cli.seed)?);
            (F::RandomEven, r.graph, None, Some(r.enlarged))
        }
    };
    match cli.format {
        Format::G6 => out.line(&g6(&graph, bip.as_ref()))?,
        Format::Json => out.json(&ConstructOutput {
            family,
            v: graph.n(),
            e: graph.edge_count(),
            graph6: graph6::encode_graph6_string(&graph),
            parts: bip.as_ref().map(|b| (b.part_x().len(), b.part_y().len())),
            enlarged,
        })?,
    }
    Ok(EXIT_OK)
}

fn detect_cmd(a: &DetectArgs, format: Format, out: &mut Sink, inputs: &mut Vec<InputDigest>) -> Outcome {
    if a.t == 0 {
        return Err(usage("--t must be at least 1"));
    }
    let mut exit = EXIT_OK;
    for (index, rec) in read_records(&a.input, inputs)?.iter().enumerate() {
        let g = rec.graph();
        let cert = detect::contains_bt(g, a.t);
        if cert.is_some() {
            exit = EXIT_FOUND;
        }
        match format {
            // g6 output passes the free graphs through, a streaming filter
            Format::G6 => {
                if cert.is_none() {
                    let bip = match rec {
                        Record::Bipartite(b) => Some(b),
                        Record::General(_) => None,
                    };
                    out.line(&g6(g, bip))?;
                }
            }
            Format::Json => out.json(&json!({
                "index": index,
                "n": g.n(),
                "e": g.edge_count(),
                "t": a.t,
                "free": cert.is_none(),
                "certificate": cert,
            }))?,
        }
    }
    Ok(exit)
}

fn parse_checks(s: &str) -> Result<Vec<Check>, Failure> {
    s.split(',')
        .filter(|c| !c.trim().is_empty())
        .map(|c| c.parse::<Check>().map_err(Failure::from))
        .collect()
}

fn audit_cmd(a: &AuditArgs, out: &mut Sink, inputs: &mut Vec<InputDigest>) -> Outcome {
    if a.t == 0 {
        return Err(usage("--t must be at least 1"));
    }
    if a.t > a.max_t {
        return Err(usage(format!("t = {} exceeds the audit cap {}; raise it with --max-t", a.t, a.max_t)));
    }
    let checks = parse_checks(&a.checks)?;
    let mut exit = EXIT_OK;
    for (index, rec) in read_records(&a.input, inputs)?.iter().enumerate() {
        let g = rec.graph();
        let bip = match rec {
            Record::Bipartite(b) => Some(b),
            Record::General(_) => None,
        };
        let line = match audit::run_checks(g, bip, a.t, &checks) {
            Ok(reports) => {
                if reports.iter().any(|r| !r.holds) {
                    exit = EXIT_FOUND;
                }
                json!({
                    "index": index,
                    "t": a.t,
                    "good_set_sum": audit::good_set_sum(g, a.t),
                    "n_c4_good": audit::n_c4_good(g, a.t),
                    "holds": reports.iter().all(|r| r.holds),
                    "reports": reports,
                })
            }
            Err(btfree::Error::Precondition { t, certificate }) => {
                exit = EXIT_FOUND;
                json!({
                    "index": index,
                    "t": t,
                    "holds": false,
                    "error": "graph is not B_t-free",
                    "certificate": certificate,
                })
            }
            Err(e) => return Err(e.into()),
        };
        out.json(&line)?;
    }
    Ok(exit)
}

/// Solver result without the schedule-dependent statistics, so that
/// repeated runs print identical bytes.
#[derive(Serialize)]
struct SolveOutput {
    n: usize,
    t: usize,
    mode: Mode,
    value: usize,
    extremal_witness: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    parts: Option<(usize, usize)>,
    witness_canonical: String,
    symmetry: Symmetry,
}

fn solve(a: &SolveArgs, cli: &Cli, out: &mut Sink) -> Outcome {
    let cfg = SearchConfig {
        node_budget: a.budget,
        thread_count: cli.threads,
        symmetry: match a.symmetry {
            SymmetryArg::On => Symmetry::On,
            SymmetryArg::Off => Symmetry::Off,
        },
        unsafe_budget: a.unsafe_budget,
    };
    let result = if a.bipartite {
        solver::exact_turan_bipartite(a.n, a.t, &cfg)
    } else {
        solver::exact_turan(a.n, a.t, &cfg)
    };
    let r = match result {
        Ok(r) => r,
        Err(btfree::Error::BudgetExhausted {
            budget,
            lower_bound,
            nodes_explored,
        }) => {
            out.json(&json!({
                "n": a.n,
                "t": a.t,
                "error": "budget exhausted",
                "budget": budget,
                "lower_bound": lower_bound,
                "nodes_explored": nodes_explored,
            }))?;
            return Ok(EXIT_BUDGET);
        }
        Err(e) => return Err(e.into()),
    };
    log_stats(r.nodes_explored, r.wall_time_secs);
    match cli.format {
        Format::G6 => match r.parts {
            Some((x, _)) => {
                let b = BipartiteGraph::with_prefix(r.witness_graph(), x)?;
                out.line(graph6::encode_bipartite(&b).trim_end())?
            }
            None => out.line(&r.extremal_witness)?,
        },
        Format::Json => out.json(&SolveOutput {
            n: r.n,
            t: r.t,
            mode: r.mode,
            value: r.value,
            extremal_witness: r.extremal_witness,
            parts: r.parts,
            witness_canonical: r.witness_canonical,
            symmetry: r.symmetry,
        })?,
    }
    Ok(EXIT_OK)
}

fn log_stats(nodes: u64, secs: f64) {
    if std::env::var_os("BTFREE_STATS").is_some() {
        eprintln!("{}", json!({ "nodes_explored": nodes, "wall_time_secs": secs }));
    }
}

fn parse_fspec(s: &str) -> Result<FSpec, Failure> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?,
        None => s.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| usage(format!("bad --fspec: {e}")))
}

/// The pattern to embed: a tree, or a general operation sequence.
enum Pattern {
    Tree(TreeSpec),
    Ops(FSpec),
}

fn embed_cmd(a: &EmbedArgs, out: &mut Sink, inputs: &mut Vec<InputDigest>) -> Outcome {
    let policy = match a.policy {
        PolicyArg::Permissive => ZPolicy::Permissive,
        PolicyArg::Strict => ZPolicy::Strict,
    };
    let pattern = match (&a.tree, a.path, &a.fspec) {
        (Some(s), _, _) => Some(Pattern::Tree(s.parse::<TreeSpec>()?)),
        (_, Some(k), _) => Some(Pattern::Tree(TreeSpec::path(k)?)),
        (_, _, Some(s)) => Some(Pattern::Ops(parse_fspec(s)?)),
        _ => None,
    };
    let t = match (&pattern, a.t) {
        (_, Some(t)) => t,
        (Some(Pattern::Tree(tree)), None) => tree.vertex_count(),
        (Some(Pattern::Ops(spec)), None) => spec.t()?,
        (None, None) => return Err(usage("give --tree, --path, --fspec or --t")),
    };
    let mut exit = EXIT_OK;
    for (index, rec) in read_records(&a.input, inputs)?.iter().enumerate() {
        let g = rec.to_bipartite()?;
        let line = match a.mode {
            EmbedMode::Condition => {
                let c = embed::check_embed_condition_with(&g, t, policy);
                if !c.holds {
                    exit = EXIT_FOUND;
                }
                json!({ "index": index, "t": t, "condition": c })
            }
            EmbedMode::Delete => {
                let (residual, trace) = embed::deletion_process_with(&g, t, policy);
                json!({
                    "index": index,
                    "residual": graph6::encode_bipartite(&residual).trim_end(),
                    "trace": trace,
                })
            }
            EmbedMode::Embed => {
                let result = match &pattern {
                    Some(Pattern::Tree(tree)) => embed::embed_k2_tree_with(&g, tree, policy),
                    Some(Pattern::Ops(spec)) => embed::embed_general_with(&g, spec, policy),
                    None => return Err(usage("--mode embed needs --tree, --path or --fspec")),
                };
                match result {
                    Ok(map) => json!({ "index": index, "embedded": true, "map": map }),
                    Err(e @ (btfree::Error::EmbedCondition { .. } | btfree::Error::EmptyHost)) => {
                        exit = EXIT_FOUND;
                        json!({ "index": index, "embedded": false, "error": e.to_string() })
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            EmbedMode::Certify => {
                let tree = match &pattern {
                    Some(Pattern::Tree(tree)) => tree,
                    _ => return Err(usage("--mode certify needs --tree or --path")),
                };
                let cert = embed::certify_with(&g, tree, policy);
                if matches!(cert, embed::Certification::Embedded { .. }) {
                    exit = EXIT_FOUND;
                }
                json!({ "index": index, "certification": cert })
            }
        };
        out.json(&line)?;
    }
    Ok(exit)
}

fn bounds_cmd(a: &BoundsArgs, out: &mut Sink) -> Outcome {
    if let Some(t_max) = a.table {
        for row in bounds::bound_table(t_max)? {
            out.json(&row)?;
        }
    } else if a.solve_b2 {
        out.json(&bounds::solve_b2_bipartite_constant())?;
    } else if let Some(id) = &a.coefficient {
        let params = a
            .params
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(|p| p.trim().parse::<f64>().map_err(|_| usage(format!("bad parameter `{p}`"))))
            .collect::<Result<Vec<f64>, Failure>>()?;
        out.json(&BoundReport::new(Coefficient::parse(id, &params)?)?)?;
    } else if let Some(s) = a.limit {
        let bip = if s % 2 == 0 {
            bounds::bip_limit_ratio(s).ok()
        } else {
            None
        };
        out.json(&json!({
            "s": s,
            "limit_ratio": bounds::limit_ratio(s)?,
            "limit": 1.0 / (2.0 * 2f64.sqrt()),
            "bip_limit_ratio": bip,
            "bip_limit": 0.25,
        }))?;
    } else {
        return Err(usage("give one of --table, --solve-b2, --coefficient or --limit"));
    }
    Ok(EXIT_OK)
}
