use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mwis_core::graph::{
    generate_subdivided_claw, line_graph, random_base_graph, write_graph, InstanceSpec,
};
use mwis_core::Graph;

use crate::{write_output, Failure};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Family {
    /// Subdivided claw S_{a,b,c}.
    Sttt,
    /// Random bounded-degree S_{t,t,t}-free graph.
    Random,
    /// Line graph of a random graph, edge weights on its vertices.
    Linegraph,
}

#[derive(Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    #[arg(long, default_value_t = 2)]
    pub a: usize,
    #[arg(long, default_value_t = 2)]
    pub b: usize,
    #[arg(long, default_value_t = 2)]
    pub c: usize,
    #[arg(long, default_value_t = 30)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub delta: usize,
    #[arg(long, default_value_t = 2)]
    pub t: usize,
    /// Also forbid K_{s,s} subgraphs (random family).
    #[arg(long)]
    pub biclique_free: Option<usize>,
    /// Edge count of the base graph (linegraph family).
    #[arg(long, default_value_t = 12)]
    pub edges: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the base graph of a line graph, with its edge weights
    /// as `c weight <u> <v> <w>` comments.
    #[arg(long)]
    pub base_out: Option<PathBuf>,
}

pub fn run(args: GenArgs) -> Result<(), Failure> {
    let (header, g): (String, Graph) = match args.family {
        Family::Sttt => (
            format!("c family sttt a={} b={} c={}\n", args.a, args.b, args.c),
            generate_subdivided_claw(args.a, args.b, args.c)?,
        ),
        Family::Random => {
            let mut spec = InstanceSpec::new(args.n, args.delta, args.t, args.seed);
            if let Some(s) = args.biclique_free {
                spec = spec.biclique_free(s);
            }
            let biclique = args
                .biclique_free
                .map(|s| format!(" biclique_free={s}"))
                .unwrap_or_default();
            (
                format!(
                    "c family random n={} delta={} t={}{biclique} seed={}\n",
                    args.n, args.delta, args.t, args.seed
                ),
                spec.generate()?,
            )
        }
        Family::Linegraph => {
            let (base, weights) = random_base_graph::<u64>(args.edges, args.seed)?;
            let l = line_graph(&base, &weights)?;
            if let Some(path) = &args.base_out {
                let mut text = format!("c base graph edges={} seed={}\n", args.edges, args.seed);
                for ((u, v), w) in base.edges().into_iter().zip(&weights) {
                    text.push_str(&format!("c weight {} {} {w}\n", u + 1, v + 1));
                }
                text.push_str(&write_graph(&base));
                write_output(Some(path), &text)?;
            }
            (
                format!(
                    "c family linegraph edges={} seed={}\n",
                    args.edges, args.seed
                ),
                l,
            )
        }
    };
    write_output(args.out.as_ref(), &(header + &write_graph(&g)))
}
