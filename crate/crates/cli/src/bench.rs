use std::path::PathBuf;

use clap::Args;
use mwis_core::graph::read_graph;
use mwis_core::oracle::{mwis_bruteforce, OracleBudget};
use mwis_core::Graph;

use crate::settings::{Algo, TuningFlags};
use crate::solve::{solve_graph, Solved};
use crate::{read_file, Failure};

#[derive(Args)]
pub struct BenchArgs {
    /// Directory of `.graph` files.
    pub dir: PathBuf,
    /// Comma-separated algorithms.
    #[arg(
        long,
        value_enum,
        value_delimiter = ',',
        default_value = "degree,bruteforce"
    )]
    pub algo: Vec<Algo>,
    #[command(flatten)]
    pub tuning: TuningFlags,
}

pub const HEADER: &str = "instance,algo,value,ms,depth,calls,ok";

pub fn run(args: BenchArgs) -> Result<(), Failure> {
    let base = args.tuning.resolve(None)?;
    let mut files: Vec<PathBuf> = std::fs::read_dir(&args.dir)
        .map_err(|e| Failure::Usage(format!("cannot list {}: {e}", args.dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "graph"))
        .collect();
    files.sort();
    println!("{HEADER}");
    for path in files {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_default();
        let g: Graph = match read_file(&path).and_then(|t| read_graph(&t).map_err(Failure::from)) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("{name}: {e:?}");
                for algo in &args.algo {
                    println!("{name},{},error,,,,0", algo.name());
                }
                continue;
            }
        };
        let oracle = mwis_bruteforce(&g, &OracleBudget::default())
            .ok()
            .map(|(v, _)| v);
        for &algo in &args.algo {
            let mut s = base.clone();
            s.algo = algo;
            match solve_graph(&g, &s, false, false, false) {
                Ok(Solved::Value(run)) => {
                    let ok = oracle.map_or(String::new(), |o| ((o == run.value) as u8).to_string());
                    println!(
                        "{name},{},{},{:.3},{},{},{ok}",
                        run.algo.name(),
                        run.value,
                        run.ms,
                        run.stats.max_depth,
                        run.stats.calls
                    );
                }
                Ok(Solved::Claw(_)) => println!("{name},{},witness,,,,0", algo.name()),
                Err(e) => {
                    eprintln!("{name} ({}): {e:?}", algo.name());
                    println!("{name},{},error,,,,0", algo.name());
                }
            }
        }
    }
    Ok(())
}
