use std::fmt::Write;

use super::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::parse_id;

/// `t <nodes>`, then `b <node> : <vertices>` and `te <s> <t>` lines; 1-based.
pub fn write_td(td: &TreeDecomposition) -> String {
    let mut out = format!("t {}\n", td.len());
    for (i, bag) in td.bags.iter().enumerate() {
        write!(out, "b {} :", i + 1).unwrap();
        bag.iter().for_each(|v| write!(out, " {}", v + 1).unwrap());
        out.push('\n');
    }
    for &(s, t) in &td.edges {
        writeln!(out, "te {} {}", s + 1, t + 1).unwrap();
    }
    out
}

/// Parse [`write_td`] output for a graph on `n` vertices. Lines starting with
/// `c` are comments.
pub fn read_td(text: &str, n: usize) -> Result<TreeDecomposition> {
    let mut bags: Option<Vec<Option<Vec<usize>>>> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        let mut fields = line.split_whitespace();
        match fields.next() {
            None | Some("c") => {}
            Some("t") => {
                if bags.is_some() {
                    return Err(Error::parse(line_no, "second `t` header"));
                }
                let m: usize = fields
                    .next()
                    .and_then(|f| f.parse().ok())
                    .ok_or_else(|| Error::parse(line_no, "expected `t <nodes>`"))?;
                bags = Some(vec![None; m]);
            }
            Some("b") => {
                let bags = bags
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, "bag before `t` header"))?;
                let m = bags.len();
                let (head, list) = line[1..]
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line_no, "expected `b <node> : <vertices>`"))?;
                let node = parse_id(head.trim(), m, line_no)?;
                if bags[node].is_some() {
                    return Err(Error::parse(
                        line_no,
                        format!("bag {} given twice", node + 1),
                    ));
                }
                let mut vs: Vec<usize> = list
                    .split_whitespace()
                    .map(|f| parse_id(f, n, line_no))
                    .collect::<Result<_>>()?;
                vs.sort_unstable();
                vs.dedup();
                bags[node] = Some(vs);
            }
            Some("te") => {
                let m = bags
                    .as_ref()
                    .ok_or_else(|| Error::parse(line_no, "tree edge before `t` header"))?
                    .len();
                let ids: Vec<usize> = fields
                    .map(|f| parse_id(f, m, line_no))
                    .collect::<Result<_>>()?;
                let [s, t] = ids[..] else {
                    return Err(Error::parse(line_no, "expected `te <s> <t>`"));
                };
                edges.push((s, t));
            }
            Some(other) => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown line type `{other}`"),
                ))
            }
        }
    }
    let bags = bags.ok_or_else(|| Error::parse(1, "missing `t` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| Error::Input(format!("bag {} missing", i + 1))))
        .collect::<Result<_>>()?;
    Ok(TreeDecomposition { bags, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let td = TreeDecomposition {
            bags: vec![vec![0, 1], vec![1, 2]],
            edges: vec![(0, 1)],
        };
        let text = write_td(&td);
        assert_eq!(text, "t 2\nb 1 : 1 2\nb 2 : 2 3\nte 1 2\n");
        assert_eq!(read_td(&text, 3).unwrap(), td);
    }

    #[test]
    fn rejects_bad_ids() {
        assert!(matches!(
            read_td("t 1\nb 1 : 4\n", 3),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(read_td("t 1\n", 3), Err(Error::Input(_))));
    }
}
