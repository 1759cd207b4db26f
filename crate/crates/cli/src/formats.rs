//! File formats: DIMACS graphs with an optional sign column, JSON
//! list/correspondence instances, and plain-text coloring files.

use anyhow::{bail, Context, Result};
use brooks_core::{Graph, Sign, Vertex};
use serde::{Deserialize, Serialize};

/// Parses a DIMACS graph: a `p edge n m` header, `e u v` edge lines with
/// 1-based vertex ids, and `c` comment lines.
pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let (n, edges, _) = parse_dimacs_lines(text, false)?;
    Ok(Graph::build(n, &edges)?)
}

/// Parses the signed extension: every edge line carries a trailing `+` or
/// `-` token. Returns the graph and one sign per canonical edge id.
pub fn parse_dimacs_signed(text: &str) -> Result<(Graph, Vec<Sign>)> {
    let (n, edges, signs) = parse_dimacs_lines(text, true)?;
    let g = Graph::build(n, &edges)?;
    let mut by_id = vec![Sign::Plus; g.m()];
    for (&(u, v), sign) in edges.iter().zip(signs) {
        let e = g.edge_id(u, v).expect("edge was just inserted");
        by_id[e as usize] = sign;
    }
    Ok((g, by_id))
}

#[allow(clippy::type_complexity)]
fn parse_dimacs_lines(
    text: &str,
    signed: bool,
) -> Result<(usize, Vec<(Vertex, Vertex)>, Vec<Sign>)> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut signs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        let err = |msg: &str| format!("line {}: {msg}", lineno + 1);
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    bail!(err("duplicate problem line"));
                }
                if tokens.len() != 4 || tokens[1] != "edge" {
                    bail!(err("expected `p edge <n> <m>`"));
                }
                let n = tokens[2].parse().with_context(|| err("bad vertex count"))?;
                let m = tokens[3].parse().with_context(|| err("bad edge count"))?;
                header = Some((n, m));
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| {
                    anyhow::anyhow!(err("edge line before the problem line"))
                })?;
                let expected = if signed { 4 } else { 3 };
                if tokens.len() != expected {
                    if signed {
                        bail!(err("signed mode expects `e <u> <v> <+|->`"));
                    }
                    bail!(err("expected `e <u> <v>`"));
                }
                let u: usize = tokens[1].parse().with_context(|| err("bad endpoint"))?;
                let v: usize = tokens[2].parse().with_context(|| err("bad endpoint"))?;
                if u < 1 || u > n || v < 1 || v > n {
                    bail!(err("endpoint out of range"));
                }
                if signed {
                    signs.push(match tokens[3] {
                        "+" => Sign::Plus,
                        "-" => Sign::Minus,
                        _ => bail!(err("edge sign must be + or -")),
                    });
                }
                edges.push((u as Vertex - 1, v as Vertex - 1));
            }
            _ => bail!(err("unrecognized line type")),
        }
    }
    let (n, m) = header.context("missing `p edge` problem line")?;
    if edges.len() != m {
        bail!(
            "problem line announces {m} edges but the file has {}",
            edges.len()
        );
    }
    Ok((n, edges, signs))
}

/// Emits DIMACS with 1-based vertex ids and canonically ordered edges.
pub fn emit_dimacs(g: &Graph) -> String {
    let mut out = format!("p edge {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        out.push_str(&format!("e {} {}\n", u + 1, v + 1));
    }
    out
}

/// Emits a coloring as one `vertex label` pair per line, 1-based vertices.
pub fn emit_coloring(labels: &[i32]) -> String {
    let mut out = String::new();
    for (v, label) in labels.iter().enumerate() {
        out.push_str(&format!("{} {}\n", v + 1, label));
    }
    out
}

/// Parses a coloring file; every vertex must appear exactly once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Vec<i32>> {
    let mut labels = vec![None; n];
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let tokens: Vec<&str> = line.split_ascii_whitespace().collect();
        if tokens.len() != 2 {
            bail!("line {}: expected `<vertex> <label>`", lineno + 1);
        }
        let v: usize = tokens[0]
            .parse()
            .with_context(|| format!("line {}: bad vertex id", lineno + 1))?;
        let label: i32 = tokens[1]
            .parse()
            .with_context(|| format!("line {}: bad label", lineno + 1))?;
        if v < 1 || v > n {
            bail!("line {}: vertex {v} out of range", lineno + 1);
        }
        if labels[v - 1].replace(label).is_some() {
            bail!("line {}: vertex {v} colored twice", lineno + 1);
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.with_context(|| format!("vertex {} has no color", v + 1)))
        .collect()
}

/// JSON instance for list and correspondence coloring: vertex count, uniform
/// list size, per-vertex label lists, and edges with an optional explicit
/// index matching.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    pub k: usize,
    pub lists: Vec<Vec<i32>>,
    pub edges: Vec<EdgeRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub u: Vertex,
    pub v: Vertex,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matching: Option<Vec<(usize, usize)>>,
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        let inst: InstanceFile = serde_json::from_str(text).context("bad instance JSON")?;
        if inst.lists.len() != inst.n {
            bail!(
                "instance declares n = {} but has {} lists",
                inst.n,
                inst.lists.len()
            );
        }
        for (v, list) in inst.lists.iter().enumerate() {
            if list.len() != inst.k {
                bail!(
                    "vertex {v}: list has {} labels, expected k = {}",
                    list.len(),
                    inst.k
                );
            }
        }
        Ok(inst)
    }

    pub fn build_graph(&self) -> Result<Graph> {
        let pairs: Vec<(Vertex, Vertex)> = self.edges.iter().map(|e| (e.u, e.v)).collect();
        Ok(Graph::build(self.n, &pairs)?)
    }

    /// Requires an explicit matching on every edge and reorients each onto
    /// the canonical (smaller, larger) endpoint order.
    pub fn canonical_matchings(&self, g: &Graph) -> Result<Vec<Vec<(usize, usize)>>> {
        let mut out = vec![Vec::new(); g.m()];
        for rec in &self.edges {
            let pairs = rec
                .matching
                .as_ref()
                .with_context(|| format!("edge ({}, {}) has no matching", rec.u, rec.v))?;
            let e = g.edge_id(rec.u, rec.v).expect("edge was just inserted");
            let flip = rec.u > rec.v;
            out[e as usize] = pairs
                .iter()
                .map(|&(iu, iv)| if flip { (iv, iu) } else { (iu, iv) })
                .collect();
        }
        Ok(out)
    }

    /// List mode derives matchings from the labels; explicit ones are an
    /// error.
    pub fn require_no_matchings(&self) -> Result<()> {
        for rec in &self.edges {
            if rec.matching.is_some() {
                bail!(
                    "edge ({}, {}) carries an explicit matching; use dp mode for that",
                    rec.u,
                    rec.v
                );
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use brooks_core::graph::generators;

    #[test]
    fn dimacs_roundtrip_on_generated_families() {
        let graphs = vec![
            generators::cycle(5).unwrap(),
            generators::clique(4).unwrap(),
            generators::path(7).unwrap(),
            generators::random_regular(12, 3, 3).unwrap(),
            generators::gnm(9, 14, 8).unwrap(),
            Graph::build(3, &[]).unwrap(),
        ];
        for g in graphs {
            let text = emit_dimacs(&g);
            let parsed = parse_dimacs(&text).unwrap();
            assert_eq!(parsed, g);
        }
    }

    #[test]
    fn dimacs_parser_accepts_comments_and_rejects_junk() {
        let g = parse_dimacs("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!((g.n(), g.m()), (3, 3));
        assert!(parse_dimacs("p edge 2 1\ne 1 2\ne 2 1\n").is_err());
        assert!(parse_dimacs("p edge 2 2\ne 1 2\n").is_err());
        assert!(parse_dimacs("e 1 2\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 3\n").is_err());
        assert!(parse_dimacs("p edge 2 1\ne 1 2 +\n").is_err());
    }

    #[test]
    fn signed_dimacs_requires_signs() {
        let (g, signs) = parse_dimacs_signed("p edge 3 2\ne 1 2 +\ne 2 3 -\n").unwrap();
        assert_eq!(g.m(), 2);
        let e01 = g.edge_id(0, 1).unwrap();
        let e12 = g.edge_id(1, 2).unwrap();
        assert_eq!(signs[e01 as usize], Sign::Plus);
        assert_eq!(signs[e12 as usize], Sign::Minus);
        assert!(parse_dimacs_signed("p edge 3 1\ne 1 2\n").is_err());
    }

    #[test]
    fn coloring_roundtrip_and_validation() {
        let labels = vec![2, 0, -1];
        let text = emit_coloring(&labels);
        assert_eq!(text, "1 2\n2 0\n3 -1\n");
        assert_eq!(parse_coloring(&text, 3).unwrap(), labels);
        assert!(parse_coloring("1 0\n", 2).is_err());
        assert!(parse_coloring("1 0\n1 1\n2 0\n", 2).is_err());
        assert!(parse_coloring("3 0\n", 2).is_err());
    }

    #[test]
    fn instance_file_parses_and_canonicalizes() {
        let text = r#"{
            "n": 3,
            "k": 2,
            "lists": [[0, 1], [0, 1], [0, 1]],
            "edges": [
                {"u": 1, "v": 0, "matching": [[0, 1]]},
                {"u": 1, "v": 2, "matching": [[1, 1]]}
            ]
        }"#;
        let inst = InstanceFile::parse(text).unwrap();
        let g = inst.build_graph().unwrap();
        let matchings = inst.canonical_matchings(&g).unwrap();
        // (1, 0) flips onto canonical (0, 1).
        let e01 = g.edge_id(0, 1).unwrap() as usize;
        let e12 = g.edge_id(1, 2).unwrap() as usize;
        assert_eq!(matchings[e01], vec![(1, 0)]);
        assert_eq!(matchings[e12], vec![(1, 1)]);
    }

    #[test]
    fn instance_file_validates_shapes() {
        assert!(InstanceFile::parse(r#"{"n": 2, "k": 1, "lists": [[0]], "edges": []}"#).is_err());
        assert!(
            InstanceFile::parse(r#"{"n": 1, "k": 2, "lists": [[0]], "edges": []}"#).is_err()
        );
        let no_matching = InstanceFile::parse(
            r#"{"n": 2, "k": 1, "lists": [[0], [0]], "edges": [{"u": 0, "v": 1}]}"#,
        )
        .unwrap();
        assert!(no_matching.require_no_matchings().is_ok());
        let g = no_matching.build_graph().unwrap();
        assert!(no_matching.canonical_matchings(&g).is_err());
    }
}
