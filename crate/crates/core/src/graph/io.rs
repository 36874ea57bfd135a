//! Line-oriented text format:
//!
//! ```text
//! c comment
//! p <n> <m>
//! v <id> <weight>      (n lines, ids 1..n)
//! e <u> <v>            (m lines)
//! ```

use std::fmt::Write;

use super::WeightedGraph;
use crate::error::{Error, Result};
use crate::num::Weight;

pub fn read_graph<W: Weight>(text: &str) -> Result<WeightedGraph<W>> {
    let mut header: Option<(usize, usize)> = None;
    let mut weights: Vec<Option<W>> = Vec::new();
    let mut edges = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let rest: Vec<&str> = fields.collect();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(Error::parse(line_no, "duplicate header"));
                }
                let [n, m] = parse_fields::<2>(&rest, line_no)?;
                header = Some((n as usize, m as usize));
                weights = vec![None; n as usize];
            }
            "v" => {
                let (n, _) =
                    header.ok_or_else(|| Error::parse(line_no, "vertex line before header"))?;
                if rest.len() != 2 {
                    return Err(Error::parse(line_no, "expected `v <id> <weight>`"));
                }
                let id = parse_id(rest[0], n, line_no)?;
                if rest[1].starts_with('-') {
                    return Err(Error::parse(
                        line_no,
                        format!("negative weight {}", rest[1]),
                    ));
                }
                let w: u64 = rest[1]
                    .parse()
                    .map_err(|_| Error::parse(line_no, format!("bad weight {}", rest[1])))?;
                let w = W::from_u64(w)
                    .ok_or_else(|| Error::parse(line_no, format!("weight {w} out of range")))?;
                if weights[id].replace(w).is_some() {
                    return Err(Error::parse(
                        line_no,
                        format!("duplicate weight for vertex {}", id + 1),
                    ));
                }
            }
            "e" => {
                let (n, _) =
                    header.ok_or_else(|| Error::parse(line_no, "edge line before header"))?;
                if rest.len() != 2 {
                    return Err(Error::parse(line_no, "expected `e <u> <v>`"));
                }
                let u = parse_id(rest[0], n, line_no)?;
                let v = parse_id(rest[1], n, line_no)?;
                edges.push((line_no, u, v));
            }
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }

    let (n, m) =
        header.ok_or_else(|| Error::parse(last_line.max(1), "missing `p <n> <m>` header"))?;
    if let Some(missing) = weights.iter().position(Option::is_none) {
        return Err(Error::parse(
            last_line.max(1),
            format!("no weight given for vertex {}", missing + 1),
        ));
    }
    let weights = weights.into_iter().map(Option::unwrap).collect();
    let mut graph = WeightedGraph::new(weights);
    for (line_no, u, v) in edges {
        graph.add_edge(u, v).map_err(|e| match e {
            Error::Input(msg) => Error::parse(line_no, msg),
            other => other,
        })?;
    }
    if graph.edge_count() != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("header promises {m} edges, found {}", graph.edge_count()),
        ));
    }
    debug_assert_eq!(graph.len(), n);
    Ok(graph)
}

/// Canonical form: ids ascending, edges lexicographic. Labels are not written.
pub fn write_graph<W: Weight>(g: &WeightedGraph<W>) -> String {
    let mut out = String::new();
    writeln!(out, "p {} {}", g.len(), g.edge_count()).unwrap();
    for (v, w) in g.weights().iter().enumerate() {
        writeln!(out, "v {} {}", v + 1, w).unwrap();
    }
    for (u, v) in g.edges() {
        writeln!(out, "e {} {}", u + 1, v + 1).unwrap();
    }
    out
}

fn parse_fields<const K: usize>(fields: &[&str], line: usize) -> Result<[u64; K]> {
    if fields.len() != K {
        return Err(Error::parse(
            line,
            format!("expected {K} numbers, found {}", fields.len()),
        ));
    }
    let mut out = [0u64; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| Error::parse(line, format!("bad number `{f}`")))?;
    }
    Ok(out)
}

/// 1-based id on disk, 0-based in memory.
pub(crate) fn parse_id(field: &str, n: usize, line: usize) -> Result<usize> {
    let id: usize = field
        .parse()
        .map_err(|_| Error::parse(line, format!("bad vertex id `{field}`")))?;
    if id == 0 || id > n {
        return Err(Error::parse(
            line,
            format!("vertex id {id} out of range 1..={n}"),
        ));
    }
    Ok(id - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    const P3: &str = "c path\np 3 2\nv 1 4\nv 2 5\nv 3 6\ne 1 2\ne 2 3\n";

    #[test]
    fn reads_p3() {
        let g: WeightedGraph<u64> = read_graph(P3).unwrap();
        assert_eq!(g.len(), 3);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
        assert_eq!(g.weights(), &[4, 5, 6]);
    }

    #[test]
    fn round_trip_is_canonical() {
        let messy = "p 3 2\nv 3 6\nv 1 4\nv 2 5\n\ne 3 2\nc mid comment\ne 2 1\n";
        let g: WeightedGraph<u64> = read_graph(messy).unwrap();
        let text = write_graph(&g);
        assert_eq!(text, "p 3 2\nv 1 4\nv 2 5\nv 3 6\ne 1 2\ne 2 3\n");
        assert_eq!(read_graph::<u64>(&text).unwrap(), g);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let neg = "p 2 0\nv 1 3\nv 2 -1\n";
        assert_eq!(
            read_graph::<u64>(neg).unwrap_err(),
            Error::parse(3, "negative weight -1")
        );

        let dup = "p 2 2\nv 1 1\nv 2 1\ne 1 2\ne 2 1\n";
        assert!(matches!(
            read_graph::<u64>(dup),
            Err(Error::Parse { line: 5, .. })
        ));

        let range = "p 2 1\nv 1 1\nv 2 1\ne 1 3\n";
        assert!(matches!(
            read_graph::<u64>(range),
            Err(Error::Parse { line: 4, .. })
        ));

        let junk = "p 1 0\nx 1\n";
        assert!(matches!(
            read_graph::<u64>(junk),
            Err(Error::Parse { line: 2, .. })
        ));

        assert!(read_graph::<u64>("v 1 1\n").is_err());
        assert!(read_graph::<u64>("p 2 0\nv 1 1\n").is_err());
    }
}
