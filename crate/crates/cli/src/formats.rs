//! Graph and measure text formats.
//!
//! Graph files hold one edge per line as `label label weight`; `#` starts
//! a comment and blank lines are ignored. Measure files hold `label mass`
//! lines under the same comment rules.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use poincare_core::{Measure, VertexSubset, WeightedGraph};

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut edges: Vec<(String, String, f64)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 3 {
            bail!(
                "line {}: expected `label label weight`, got `{}`",
                lineno + 1,
                line
            );
        }
        let weight: f64 = fields[2]
            .parse()
            .with_context(|| format!("line {}: bad weight `{}`", lineno + 1, fields[2]))?;
        edges.push((fields[0].to_string(), fields[1].to_string(), weight));
    }
    WeightedGraph::from_edges(&edges).map_err(|e| anyhow!(e))
}

pub fn parse_measure_file(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut masses = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            bail!("line {}: expected `label mass`, got `{}`", lineno + 1, line);
        }
        let mass: f64 = fields[1]
            .parse()
            .with_context(|| format!("line {}: bad mass `{}`", lineno + 1, fields[1]))?;
        if masses.insert(fields[0].to_string(), mass).is_some() {
            bail!("line {}: label `{}` listed twice", lineno + 1, fields[0]);
        }
    }
    Ok(masses)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => line[..i].trim(),
        None => line.trim(),
    }
}

/// Assembles a measure over the whole vertex set; every label must be
/// covered (full support).
pub fn measure_on_graph(g: &WeightedGraph, masses: &BTreeMap<String, f64>) -> Result<Measure> {
    for label in masses.keys() {
        g.index_of(label).map_err(|e| anyhow!(e))?;
    }
    let values: Vec<f64> = g
        .labels()
        .iter()
        .map(|label| {
            masses
                .get(label)
                .copied()
                .ok_or_else(|| anyhow!("measure file is missing label `{label}`"))
        })
        .collect::<Result<_>>()?;
    build_measure(values)
}

/// Assembles a measure over `Ω` (indexed in increasing vertex order);
/// the file must cover exactly the `Ω` labels.
pub fn measure_on_subset(
    g: &WeightedGraph,
    omega: &VertexSubset,
    masses: &BTreeMap<String, f64>,
) -> Result<Measure> {
    for label in masses.keys() {
        let idx = g.index_of(label).map_err(|e| anyhow!(e))?;
        if !omega.contains(idx) {
            bail!("measure file lists `{label}`, which is outside Omega");
        }
    }
    let values: Vec<f64> = omega
        .indices()
        .iter()
        .map(|&i| {
            let label = g.label(i);
            masses
                .get(label)
                .copied()
                .ok_or_else(|| anyhow!("measure file is missing label `{label}`"))
        })
        .collect::<Result<_>>()?;
    build_measure(values)
}

fn build_measure(values: Vec<f64>) -> Result<Measure> {
    let total: f64 = values.iter().sum();
    let m = if (total - 1.0).abs() <= 1e-12 {
        Measure::probability(values)
    } else {
        Measure::finite(values)
    };
    m.map_err(|e| anyhow!(e))
}

/// Edge lines with weights at full double precision.
pub fn write_graph(g: &WeightedGraph) -> String {
    let mut out = String::new();
    for &(i, j, w) in g.edges() {
        out.push_str(&format!(
            "{} {} {}\n",
            g.label(i),
            g.label(j),
            crate::json::fmt_f64(w)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_edges_with_comments() {
        let g = parse_graph("# triangle\na b 1.0\nb c 2.0 # heavier\n\nc a 0.5\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges().len(), 3);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_graph("a b\n").is_err());
        assert!(parse_graph("a b x\n").is_err());
    }

    #[test]
    fn measure_requires_full_cover() {
        let g = parse_graph("a b 1\n").unwrap();
        let partial = parse_measure_file("a 0.5\n").unwrap();
        assert!(measure_on_graph(&g, &partial).is_err());
        let full = parse_measure_file("a 0.5\nb 0.5\n").unwrap();
        let m = measure_on_graph(&g, &full).unwrap();
        assert!(m.is_probability());
    }

    #[test]
    fn graph_file_round_trip() {
        let g = parse_graph("a b 0.1234567890123456\nb c 3.0\n").unwrap();
        let text = write_graph(&g);
        let g2 = parse_graph(&text).unwrap();
        assert_eq!(g.edges(), g2.edges());
    }
}
