//! Subcommand implementations. Each returns the `results` payload of the report.

use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};
use wsatlab::constructions::{
    build_delta3, build_delta4, build_high_delta, counterexample_15_7, counterexample_family, solve_params,
    sparse_family, Construction, HighDeltaOptions, DEFAULT_K_MIN_DELTA3, DEFAULT_K_MIN_DELTA4,
};
use wsatlab::expander::{
    best_eta, i_alpha_exact, sample_regular_where, verify_table, ConditionValue, ExpanderError, DEFAULT_RESAMPLE_CAP,
};
use wsatlab::extremal::{
    build_f_tilde, gamma, gamma_min_brute_capped, gamma_min_ratio, wsat_exact, ExtremalError, GammaError, WsatError,
};
use wsatlab::graph::io::{from_graph6, to_graph6};
use wsatlab::percolation::{
    a_matching_count, activation_partition, closure, is_weakly_saturated, part_density, rotate, rotation_components,
    AMatching, PercolationError,
};
use wsatlab::rational::{format_rational, parse_rational, ratio, to_f64};
use wsatlab::{Edge, Graph, Rational};

use crate::graphs::load_graph;
use crate::{Command, ConstructArgs, ExpanderCommand, Family, Method, Outcome, Status};

/// Largest F-tilde union whose graph6 and gamma go into the report.
const FTILDE_REPORT_LIMIT: usize = 5000;

/// Subcommand name and the parsed inputs.
pub fn describe(cmd: &Command) -> (String, Value) {
    let mut name = Vec::new();
    let mut v = serde_json::to_value(cmd).expect("serializable");
    loop {
        match v {
            Value::Object(ref m) if m.len() == 1 => {
                let (k, inner) = m.iter().next().expect("one entry");
                name.push(k.clone());
                v = inner.clone();
            }
            Value::String(s) => {
                name.push(s);
                v = json!({});
                break;
            }
            _ => break,
        }
        if !matches!(name.last().map(String::as_str), Some("expander")) {
            break;
        }
    }
    (name.join(" "), v)
}

fn parse_q(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("{s}: {e}"))
}

fn graph_json(g: &Graph) -> Value {
    json!({ "n": g.n(), "m": g.edge_count(), "graph6": to_graph6(g).expect("graph6 encodes any size") })
}

fn edges_json(es: &[Edge]) -> Value {
    Value::Array(es.iter().map(|&(u, v)| json!([u, v])).collect())
}

fn ms(t: Instant) -> u128 {
    t.elapsed().as_millis()
}

pub fn run(cmd: &Command, seed: u64) -> Result<Outcome, String> {
    match cmd {
        Command::Gamma { graph, method, cap } => run_gamma(&load_graph(graph)?, *method, *cap),
        Command::Closure { host, pattern, trace } => {
            let (h, f) = (load_graph(host)?, load_graph(&pattern.pattern)?);
            let t = closure(&h, &f);
            if let Some(path) = trace {
                let text = serde_json::to_string_pretty(&t.steps).expect("serializable");
                std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
            }
            let added: Vec<Edge> = t.steps.iter().map(|s| s.edge).collect();
            Ok(Outcome::ok(json!({
                "steps": t.steps.len(),
                "added_edges": edges_json(&added),
                "complete": t.reaches_complete(),
                "closure": graph_json(&t.final_graph()),
            })))
        }
        Command::IsWsat { host, pattern } => {
            let (h, f) = (load_graph(host)?, load_graph(&pattern.pattern)?);
            let t = closure(&h, &f);
            let fin = t.final_graph();
            Ok(Outcome::ok(json!({
                "weakly_saturated": fin.is_complete(),
                "restored": t.steps.len(),
                "missing": fin.non_edges().len(),
            })))
        }
        Command::Wsat { n, pattern, budget } => run_wsat(*n, &load_graph(&pattern.pattern)?, *budget),
        Command::Construct(args) => run_construct(args, seed),
        Command::Rotate { host, pattern, matching, budget } => {
            run_rotate(&load_graph(host)?, &load_graph(&pattern.pattern)?, *matching, *budget)
        }
        Command::Ftilde { graph, pad, dedup, cap } => run_ftilde(&load_graph(graph)?, *pad, *dedup, *cap),
        Command::Expander(e) => run_expander(e, seed),
    }
}

fn run_gamma(g: &Graph, method: Method, cap: usize) -> Result<Outcome, String> {
    let start = Instant::now();
    let res = match method {
        Method::Auto => gamma(g),
        Method::Brute => gamma_min_brute_capped(g, cap),
        Method::Ratio => gamma_min_ratio(g),
    };
    match res {
        Ok(r) => Ok(Outcome::ok(json!({
            "invariant": "gamma",
            "value": format_rational(&r.value),
            "witness": r.witness,
            "method": r.method,
            "nodes_explored": r.nodes_explored,
            "wall_time_ms": ms(start),
        }))),
        Err(e @ GammaError::CapExceeded { .. }) => Ok(Outcome {
            results: json!({ "invariant": "gamma", "inconclusive": true, "reason": e.to_string() }),
            status: Status::BudgetExhausted,
        }),
        Err(e) => Err(e.to_string()),
    }
}

fn run_wsat(n: usize, f: &Graph, budget: u64) -> Result<Outcome, String> {
    let start = Instant::now();
    match wsat_exact(n, f, budget) {
        Ok(r) => Ok(Outcome::ok(json!({
            "invariant": "wsat",
            "n": r.n,
            "value": r.value,
            "witness": graph_json(&r.witness),
            "witness_edges": edges_json(&r.witness.edges()),
            "search_start": r.start,
            "nodes_explored": r.explored,
            "wall_time_ms": ms(start),
        }))),
        Err(WsatError::BudgetExhausted { lower, upper, explored }) => Ok(Outcome {
            results: json!({
                "invariant": "wsat",
                "n": n,
                "inconclusive": true,
                "lower": lower,
                "upper": upper,
                "nodes_explored": explored,
                "wall_time_ms": ms(start),
            }),
            status: Status::BudgetExhausted,
        }),
        Err(e) => Err(e.to_string()),
    }
}

fn need<'a, T>(v: &'a Option<T>, flag: &str, family: &str) -> Result<&'a T, String> {
    v.as_ref().ok_or_else(|| format!("--{flag} is required for --family {family}"))
}

fn run_construct(a: &ConstructArgs, seed: u64) -> Result<Outcome, String> {
    let err = |e: wsatlab::constructions::ConstructionError| e.to_string();
    let c: Construction = match a.family {
        Family::Sparse => sparse_family(*need(&a.delta, "delta", "sparse")?, *need(&a.k, "k", "sparse")?).map_err(err)?,
        Family::Delta3 | Family::Delta4 => {
            let name = if a.family == Family::Delta3 { "delta3" } else { "delta4" };
            let x = parse_q(need(&a.ratio, "ratio", name)?)?;
            let (delta, k_min) =
                if a.family == Family::Delta3 { (3, DEFAULT_K_MIN_DELTA3) } else { (4, DEFAULT_K_MIN_DELTA4) };
            let mut p = solve_params(delta, &x, a.k.unwrap_or(k_min)).map_err(err)?;
            if let Some(s) = a.clique_size {
                p.clique_size = s;
            }
            if delta == 3 { build_delta3(&p) } else { build_delta4(&p) }.map_err(err)?
        }
        Family::HighDelta => {
            let x = parse_q(need(&a.ratio, "ratio", "high-delta")?)?;
            let opts = HighDeltaOptions {
                seed,
                expander_check: !a.no_expander_check,
                clique_size: a.clique_size,
                max_attempts: a.max_attempts,
            };
            match build_high_delta(a.delta.unwrap_or(6), &x, *need(&a.k, "k", "high-delta")?, &opts) {
                Err(wsatlab::constructions::ConstructionError::Expander(e @ ExpanderError::SamplingExhausted(_))) => {
                    return Ok(Outcome {
                        results: json!({ "family": "high-delta", "inconclusive": true, "reason": e.to_string() }),
                        status: Status::BudgetExhausted,
                    })
                }
                r => r.map_err(err)?,
            }
        }
        Family::Counterexample => counterexample_15_7(a.clique_small, a.clique_big).map_err(err)?,
    };
    let mut out = json!({
        "family": c.family,
        "params": c.params.as_ref().map(|p| json!({
            "delta": p.delta,
            "ratio": format_rational(&p.ratio),
            "k": p.k,
            "p": p.p,
            "t": p.t,
            "clique_size": p.clique_size,
        })),
        "witness_set": c.witness,
        "predicted_gamma": format_rational(&c.predicted_gamma),
        "internal_vertices": c.internal_vertices,
        "clique": [c.clique.start, c.clique.end],
        "graph": graph_json(&c.graph),
        "min_degree": c.graph.min_degree(),
    });
    if a.family == Family::Counterexample {
        let fam = counterexample_family(a.clique_small, a.clique_big);
        out["host_family"] = json!({
            "base_vertices": fam.base_vertices,
            "base_edges": fam.base_edges,
            "step_vertices": fam.step_vertices,
            "step_edges": fam.step_edges,
            "limit_density": format_rational(&fam.limit_density()),
        });
    }
    let mut status = Status::Ok;
    if a.verify {
        let r = gamma_min_ratio(&c.graph).map_err(|e| e.to_string())?;
        let round_trip = to_graph6(&c.graph).ok().and_then(|s| from_graph6(&s).ok()).as_ref() == Some(&c.graph);
        let ok = r.value == c.predicted_gamma && round_trip;
        out["verification"] = json!({
            "gamma": format_rational(&r.value),
            "gamma_witness": r.witness,
            "witness_matches": r.witness == c.witness,
            "graph6_round_trip": round_trip,
            "pass": ok,
        });
        if !ok {
            status = Status::VerificationFailed;
        }
    }
    Ok(Outcome { results: out, status })
}

/// The A-matching with the given index, last part varying fastest.
fn matching_at(parts: &[Vec<Edge>], mut index: u128) -> AMatching {
    let mut edges = vec![(0, 0); parts.len()];
    for (i, owned) in parts.iter().enumerate().rev() {
        let len = owned.len() as u128;
        edges[i] = owned[(index % len) as usize];
        index /= len;
    }
    AMatching { edges }
}

fn run_rotate(host: &Graph, f: &Graph, matching: Option<u128>, budget: u128) -> Result<Outcome, String> {
    let t = closure(host, f);
    if !t.reaches_complete() {
        return Ok(Outcome {
            results: json!({ "weakly_saturated": false, "missing": t.final_graph().non_edges().len() }),
            status: Status::VerificationFailed,
        });
    }
    let ap = match activation_partition(&t) {
        Ok(ap) => ap,
        Err(PercolationError::NeverActivated(vs)) => {
            return Ok(Outcome {
                results: json!({ "weakly_saturated": true, "never_activated": vs }),
                status: Status::VerificationFailed,
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    let parts: Vec<Value> = ap
        .parts
        .iter()
        .map(|p| {
            json!({
                "vertices": p.vertices,
                "activating_edge": [p.activating_edge.0, p.activating_edge.1],
                "owned": edges_json(&p.owned),
                "density": format_rational(&part_density(p.vertices.len(), p.owned.len()).expect("nonempty part")),
            })
        })
        .collect();
    let count = a_matching_count(&ap);
    let mut status = Status::Ok;
    let components = match rotation_components(&ap, budget) {
        Ok(c) => json!(c),
        Err(PercolationError::BudgetExceeded { .. }) => {
            status = Status::BudgetExhausted;
            Value::Null
        }
        Err(e) => json!({ "error": e.to_string() }),
    };
    let mut out = json!({
        "weakly_saturated": true,
        "parts": parts,
        "free_edges": edges_json(&ap.free_edges),
        "augmented": graph_json(&ap.augmented()),
        "matching_count": count.to_string(),
        "rotation_components": components,
    });
    if let Some(i) = matching {
        if i >= count {
            return Err(format!("matching index {i} out of range ({count} matchings)"));
        }
        let owned: Vec<Vec<Edge>> = ap.parts.iter().map(|p| p.owned.clone()).collect();
        let m = matching_at(&owned, i);
        let g = rotate(&ap, &m).map_err(|e| e.to_string())?;
        out["rotation"] = json!({
            "index": i.to_string(),
            "removed": edges_json(&m.edges),
            "graph": graph_json(&g),
            "edges_unchanged": g.edge_count() == host.edge_count(),
            "weakly_saturated": is_weakly_saturated(&g, f),
        });
    }
    Ok(Outcome { results: out, status })
}

fn run_ftilde(f: &Graph, pad: Option<usize>, dedup: bool, cap: usize) -> Result<Outcome, String> {
    let pad = pad.unwrap_or(f.n() + 2);
    let ft = match build_f_tilde(f, pad, dedup, cap) {
        Ok(ft) => ft,
        Err(e @ (ExtremalError::TooManyNonEdges { .. } | ExtremalError::UnionTooLarge(_))) => {
            return Ok(Outcome {
                results: json!({ "pad": pad, "inconclusive": true, "reason": e.to_string() }),
                status: Status::BudgetExhausted,
            })
        }
        Err(e) => return Err(e.to_string()),
    };
    let g_f = gamma(f).map_err(|e| e.to_string())?.value;
    let mut out = json!({
        "pad": pad,
        "components": ft.components,
        "deduplicated": ft.deduplicated,
        "n": ft.graph.n(),
        "m": ft.graph.edge_count(),
        "gamma_f": format_rational(&g_f),
    });
    let mut status = Status::Ok;
    if ft.graph.n() <= FTILDE_REPORT_LIMIT {
        out["graph"] = graph_json(&ft.graph);
        let g_t = gamma_min_ratio(&ft.graph).map_err(|e| e.to_string())?.value;
        out["gamma_f_tilde"] = json!(format_rational(&g_t));
        out["equal"] = json!(g_t == g_f);
        if g_t != g_f {
            status = Status::VerificationFailed;
        }
    }
    Ok(Outcome { results: out, status })
}

fn run_expander(cmd: &ExpanderCommand, seed: u64) -> Result<Outcome, String> {
    let err = |e: ExpanderError| e.to_string();
    match cmd {
        ExpanderCommand::Table { r } => {
            let rep = verify_table(*r).map_err(err)?;
            let status = if rep.all_pass { Status::Ok } else { Status::VerificationFailed };
            Ok(Outcome { results: serde_json::to_value(&rep).expect("serializable"), status })
        }
        ExpanderCommand::Check { alpha, r, eta, tol_bits } => {
            let alpha = parse_q(alpha)?;
            if let Some(eta) = eta {
                let v = ConditionValue::evaluate(&alpha, *r, &parse_q(eta)?).map_err(err)?;
                let pair = |i: &wsatlab::expander::Interval| json!([to_f64(&i.lo()), to_f64(&i.hi())]);
                let ok = v.is_satisfied();
                return Ok(Outcome {
                    results: json!({
                        "ln_lhs": pair(&v.ln_lhs),
                        "ln_rhs": pair(&v.ln_rhs),
                        "lhs_approx": v.lhs().mid_f64(),
                        "rhs_approx": v.rhs().mid_f64(),
                        "satisfied": ok,
                    }),
                    status: if ok { Status::Ok } else { Status::VerificationFailed },
                });
            }
            if *tol_bits == 0 || *tol_bits > 62 {
                return Err("--tol-bits must lie in 1..=62".into());
            }
            let tol = ratio(1, 1i64 << tol_bits);
            match best_eta(&alpha, *r, &tol) {
                Ok(b) => Ok(Outcome::ok(json!({
                    "eta": format_rational(&b.eta),
                    "eta_approx": to_f64(&b.eta),
                    "eta_below": format_rational(&b.eta_below),
                    "expansion": format_rational(&b.expansion),
                    "expansion_approx": to_f64(&b.expansion),
                }))),
                Err(ExpanderError::Unsatisfiable) => Ok(Outcome {
                    results: json!({ "satisfiable": false }),
                    status: Status::VerificationFailed,
                }),
                Err(e) => Err(e.to_string()),
            }
        }
        ExpanderCommand::Sample { r, n, alpha, count, threshold } => {
            let alpha = parse_q(alpha)?;
            let threshold = threshold.as_deref().map(parse_q).transpose()?;
            let samples: Vec<Result<Value, ExpanderError>> = (0..*count)
                .into_par_iter()
                .map(|i| {
                    let s = seed.wrapping_add(i);
                    let (g, attempts) = sample_regular_where(*r, *n, s, DEFAULT_RESAMPLE_CAP, |_| true)?;
                    let ia = i_alpha_exact(&g, &alpha)?;
                    let mut v = json!({
                        "seed": s,
                        "attempts": attempts,
                        "graph6": to_graph6(&g).expect("encodable"),
                        "i_alpha": format_rational(&ia.value),
                        "i_alpha_approx": to_f64(&ia.value),
                        "witness": ia.witness,
                    });
                    if let Some(t) = &threshold {
                        v["meets_threshold"] = json!(ia.value >= *t);
                    }
                    Ok(v)
                })
                .collect();
            let mut values = Vec::new();
            for s in samples {
                match s {
                    Ok(v) => values.push(v),
                    Err(e @ ExpanderError::SamplingExhausted(_)) => {
                        return Ok(Outcome {
                            results: json!({ "inconclusive": true, "reason": e.to_string(), "samples": values }),
                            status: Status::BudgetExhausted,
                        })
                    }
                    Err(e) => return Err(e.to_string()),
                }
            }
            let mut out = json!({ "samples": values });
            if let Some(t) = &threshold {
                let hits = values.iter().filter(|v| v["meets_threshold"] == json!(true)).count();
                out["threshold"] = json!(format_rational(t));
                out["meeting_threshold"] = json!(hits);
                out["non_rigorous"] = json!(true);
            }
            Ok(Outcome::ok(out))
        }
    }
}
