use std::path::PathBuf;

use clap::Args;
use mwis_core::decomposer::{read_outcome, validate_outcome};
use mwis_core::esd::{parse_esd, validate_esd};
use mwis_core::graph::read_graph;
use mwis_core::treedec::{check_weissauer, read_td, validate_tree_decomposition};
use mwis_core::Graph;

use crate::{read_file, Failure};

#[derive(Args)]
#[command(group(clap::ArgGroup::new("what").required(true).args(["esd", "td", "outcome"])))]
pub struct CheckArgs {
    /// Graph file the object refers to.
    pub graph: PathBuf,
    /// Extended strip decomposition file.
    #[arg(long)]
    pub esd: Option<PathBuf>,
    /// Also require the decomposition to be rigid.
    #[arg(long, requires = "esd")]
    pub rigid: bool,
    /// Tree decomposition file.
    #[arg(long)]
    pub td: Option<PathBuf>,
    /// Also check adhesions below k and at most k high-degree vertices per torso.
    #[arg(long, requires = "td")]
    pub weissauer: Option<usize>,
    /// Decomposer outcome file.
    #[arg(long)]
    pub outcome: Option<PathBuf>,
    /// Leg length for outcome checks.
    #[arg(long, default_value_t = 2)]
    pub t: usize,
}

pub fn run(args: CheckArgs) -> Result<(), Failure> {
    let g: Graph = read_graph(&read_file(&args.graph)?)?;
    let problems: Vec<String> = if let Some(path) = &args.esd {
        let d = parse_esd(&read_file(path)?, g.len())?;
        validate_esd(&g, &d, args.rigid)
            .violations
            .iter()
            .map(ToString::to_string)
            .collect()
    } else if let Some(path) = &args.td {
        let td = read_td(&read_file(path)?, g.len())?;
        let mut p = validate_tree_decomposition(&g, &td);
        if let (true, Some(k)) = (p.is_empty(), args.weissauer) {
            p = check_weissauer(&g, &td, k);
        }
        p
    } else {
        let path = args.outcome.as_ref().expect("clap enforces one target");
        let (u, outcome) = read_outcome(&read_file(path)?, &g)?;
        validate_outcome(&g, &u, args.t, &outcome)
    };
    if problems.is_empty() {
        println!("OK");
        Ok(())
    } else {
        for p in &problems {
            println!("violation: {p}");
        }
        Err(Failure::Violations)
    }
}
