//! Resolving graph arguments: files, inline graph6, or built-in names.

use std::path::Path;

use wsatlab::constructions::{counterexample_15_7, counterexample_core, counterexample_host};
use wsatlab::graph::circulant;
use wsatlab::graph::io::{from_graph6, parse_graph};
use wsatlab::Graph;

pub const BUILTIN_HELP: &str = "Kn, Kn-e, Cn, Pn, Sn (star, n leaves), En (empty), Mn (Möbius ladder), \
H (C_7^2 plus a chord), cex (the 114-vertex two-clique pattern), cex-host<i>, g6:<graph6>, or a file";

fn number(s: &str) -> Option<usize> {
    (!s.is_empty() && s.bytes().all(|b| b.is_ascii_digit())).then(|| s.parse().ok()).flatten()
}

fn builtin(name: &str) -> Option<Result<Graph, String>> {
    let lower = name.to_ascii_lowercase();
    if let Some(g6) = name.strip_prefix("g6:") {
        return Some(from_graph6(g6).map_err(|e| e.to_string()));
    }
    match lower.as_str() {
        "h" => return Some(Ok(counterexample_core())),
        "cex" => return Some(counterexample_15_7(7, 100).map(|c| c.graph).map_err(|e| e.to_string())),
        _ => {}
    }
    if let Some(i) = lower.strip_prefix("cex-host").and_then(number) {
        return Some(Ok(counterexample_host(i, 7, 100)));
    }
    if let Some(n) = lower.strip_prefix('k').and_then(|r| r.strip_suffix("-e")).and_then(number) {
        if n < 2 {
            return Some(Err("K_n - e needs n >= 2".into()));
        }
        return Some(Ok(Graph::complete(n).without_edge(0, 1)));
    }
    let (head, tail) = lower.split_at(lower.chars().next()?.len_utf8());
    let n = number(tail)?;
    let g = match head {
        "k" => Ok(Graph::complete(n)),
        "c" if n >= 3 => Ok(Graph::cycle(n)),
        "c" => Err("cycles need at least 3 vertices".into()),
        "p" => Ok(Graph::path(n)),
        "s" => Ok(Graph::star(n)),
        "e" => Ok(Graph::empty(n)),
        "m" if n >= 4 && n % 2 == 0 => circulant(n, &[1, n / 2]).map_err(|e| e.to_string()),
        "m" => Err("Möbius ladders need an even order of at least 4".into()),
        _ => return None,
    };
    Some(g)
}

/// A readable file takes precedence over a built-in name.
pub fn load_graph(arg: &str) -> Result<Graph, String> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{arg}: {e}"))?;
        return parse_graph(&text).map_err(|e| format!("{arg}: {e}"));
    }
    builtin(arg).unwrap_or_else(|| Err(format!("{arg}: no such file or built-in graph ({BUILTIN_HELP})")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(load_graph("K4").unwrap(), Graph::complete(4));
        assert_eq!(load_graph("k4-e").unwrap().edge_count(), 5);
        assert_eq!(load_graph("C5").unwrap(), Graph::cycle(5));
        assert_eq!(load_graph("S3").unwrap(), Graph::star(3));
        assert_eq!(load_graph("M8").unwrap().edge_count(), 12);
        assert_eq!(load_graph("H").unwrap().edge_count(), 15);
        assert_eq!(load_graph("g6:Bw").unwrap(), Graph::complete(3));
        assert_eq!(load_graph("cex-host0").unwrap(), Graph::complete(107));
        assert!(load_graph("C2").is_err());
        assert!(load_graph("Q5").is_err());
        assert!(load_graph("M7").is_err());
    }
}
