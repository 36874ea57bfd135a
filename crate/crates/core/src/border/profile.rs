use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::num::Weight;

/// Default cap on the number of terminals of a dense profile.
pub const DEFAULT_TERMINAL_CAP: usize = 26;

/// `f_{G,w,T}` as a dense table: bit `i` of a mask stands for `terminals[i]`,
/// and `None` is minus infinity. Terminals are vertex labels, so a profile
/// computed on an induced subgraph can be read back in any graph sharing
/// those labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorderProfile<W> {
    terminals: Vec<usize>,
    table: Vec<Option<W>>,
    witnesses: Option<Vec<Option<Vec<usize>>>>,
}

impl<W: Weight> BorderProfile<W> {
    /// All cells minus infinity.
    pub fn new(terminals: Vec<usize>, cap: usize) -> Result<Self> {
        if terminals.len() > cap {
            return Err(Error::Capacity(format!(
                "{} terminals exceed the profile cap {cap}",
                terminals.len()
            )));
        }
        let mut sorted = terminals.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Input("repeated terminal".into()));
        }
        Ok(BorderProfile {
            table: vec![None; 1 << terminals.len()],
            terminals,
            witnesses: None,
        })
    }

    /// Same, but also keeps one witness set (of labels) per finite cell.
    pub fn with_witnesses(terminals: Vec<usize>, cap: usize) -> Result<Self> {
        let mut p = Self::new(terminals, cap)?;
        p.witnesses = Some(vec![None; p.table.len()]);
        Ok(p)
    }

    pub fn terminals(&self) -> &[usize] {
        &self.terminals
    }

    pub fn cells(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, mask: usize) -> Option<W> {
        self.table[mask]
    }

    pub fn set(&mut self, mask: usize, value: Option<W>) {
        self.table[mask] = value;
    }

    pub fn table(&self) -> &[Option<W>] {
        &self.table
    }

    /// `f(∅)`: the best weight overall when there are no terminals.
    pub fn optimum(&self) -> Option<W> {
        self.table[0]
    }

    pub fn has_witnesses(&self) -> bool {
        self.witnesses.is_some()
    }

    pub fn witness(&self, mask: usize) -> Option<&[usize]> {
        self.witnesses.as_ref()?.get(mask)?.as_deref()
    }

    /// Record a cell together with its witness (labels). Ignored witness when
    /// the profile does not track them.
    pub fn set_with_witness(&mut self, mask: usize, value: Option<W>, witness: Option<Vec<usize>>) {
        self.table[mask] = value;
        if let Some(ws) = self.witnesses.as_mut() {
            ws[mask] = witness.map(|mut w| {
                w.sort_unstable();
                w
            });
        }
    }

    /// Drop witness tracking.
    pub fn without_witnesses(mut self) -> Self {
        self.witnesses = None;
        self
    }

    /// Mask of a set of terminal labels.
    pub fn mask_of(&self, labels: &[usize]) -> Result<usize> {
        let mut mask = 0;
        for l in labels {
            let i = self.terminals.iter().position(|t| t == l).ok_or_else(|| {
                Error::Contract(format!("label {l} is not a terminal of this profile"))
            })?;
            mask |= 1 << i;
        }
        Ok(mask)
    }

    /// Terminal labels selected by `mask`.
    pub fn labels_of(&self, mask: usize) -> Vec<usize> {
        (0..self.terminals.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.terminals[i])
            .collect()
    }

    /// `f(I_T)` for a set of terminal labels.
    pub fn value(&self, labels: &[usize]) -> Result<Option<W>> {
        Ok(self.table[self.mask_of(labels)?])
    }
}

/// Check that a profile is minus infinity exactly on the non-independent
/// terminal subsets and at least `w(I_T)` elsewhere. Returns one message per
/// offending cell.
pub fn check_profile_sanity<W: Weight>(
    g: &WeightedGraph<W>,
    p: &BorderProfile<W>,
) -> Result<Vec<String>> {
    let index = g.label_index();
    let pos: Vec<usize> = p
        .terminals()
        .iter()
        .map(|l| {
            index
                .get(l)
                .copied()
                .ok_or_else(|| Error::Contract(format!("terminal label {l} not in graph")))
        })
        .collect::<Result<_>>()?;
    let mut problems = Vec::new();
    for mask in 0..p.cells() {
        let chosen: Vec<usize> = (0..pos.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| pos[i])
            .collect();
        match (g.is_independent(&chosen), p.get(mask)) {
            (true, None) => problems.push(format!(
                "cell {mask:#b}: independent terminal set has value -inf"
            )),
            (false, Some(v)) => problems.push(format!(
                "cell {mask:#b}: non-independent terminal set has value {v}"
            )),
            (true, Some(v)) if v < g.weight_of(&chosen) => problems.push(format!(
                "cell {mask:#b}: value {v} below the weight of the terminal set"
            )),
            _ => {}
        }
    }
    Ok(problems)
}

/// Text dump: a `c terminals` line with 1-based labels, then one
/// `<bitmask> <weight|-inf>` line per cell.
pub fn write_profile<W: Weight>(p: &BorderProfile<W>) -> String {
    let mut out = String::from("c terminals");
    for t in p.terminals() {
        write!(out, " {}", t + 1).unwrap();
    }
    out.push('\n');
    for (mask, v) in p.table().iter().enumerate() {
        match v {
            Some(v) => writeln!(out, "{mask} {v}").unwrap(),
            None => writeln!(out, "{mask} -inf").unwrap(),
        }
    }
    out
}

pub fn read_profile<W: Weight>(text: &str) -> Result<BorderProfile<W>> {
    let mut terminals: Option<Vec<usize>> = None;
    let mut cells: Vec<(usize, usize, Option<W>)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix("c terminals") {
            let ts = rest
                .split_whitespace()
                .map(|f| match f.parse::<usize>() {
                    Ok(t) if t > 0 => Ok(t - 1),
                    _ => Err(Error::parse(line_no, format!("bad terminal `{f}`"))),
                })
                .collect::<Result<_>>()?;
            terminals = Some(ts);
            continue;
        }
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let [mask, value] = fields.as_slice() else {
            return Err(Error::parse(line_no, "expected `<bitmask> <weight|-inf>`"));
        };
        let mask: usize = mask
            .parse()
            .map_err(|_| Error::parse(line_no, format!("bad mask `{mask}`")))?;
        let value = if *value == "-inf" {
            None
        } else {
            let v: u64 = value
                .parse()
                .map_err(|_| Error::parse(line_no, format!("bad weight `{value}`")))?;
            Some(W::from_u64(v).ok_or_else(|| Error::parse(line_no, "weight out of range"))?)
        };
        cells.push((line_no, mask, value));
    }
    let terminals = terminals.ok_or_else(|| Error::parse(1, "missing `c terminals` line"))?;
    let mut p = BorderProfile::new(terminals, usize::BITS as usize - 1)?;
    let mut seen = vec![false; p.cells()];
    for (line_no, mask, value) in cells {
        if mask >= p.cells() || seen[mask] {
            return Err(Error::parse(
                line_no,
                format!("mask {mask} out of range or repeated"),
            ));
        }
        seen[mask] = true;
        p.set(mask, value);
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::parse(
            text.lines().count().max(1),
            "profile table is incomplete",
        ));
    }
    Ok(p)
}
