use std::path::PathBuf;

use clap::{Args, ValueEnum};
use mwis_core::solver::{BicliqueSolverConfig, DegreeSolverConfig};
use serde::{Deserialize, Serialize};

use crate::{read_file, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Bruteforce,
    Degree,
    Biclique,
    Auto,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Bruteforce => "bruteforce",
            Algo::Degree => "degree",
            Algo::Biclique => "biclique",
            Algo::Auto => "auto",
        }
    }
}

/// Solver flags. Every field is optional so that a config file can fill the
/// gaps; flags win.
#[derive(Args, Clone, Debug, Default)]
pub struct SolverFlags {
    #[arg(long, value_enum)]
    pub algo: Option<Algo>,
    #[command(flatten)]
    pub tuning: TuningFlags,
}

impl SolverFlags {
    pub fn resolve(&self) -> Result<Settings, Failure> {
        self.tuning.resolve(self.algo)
    }
}

/// Everything but the algorithm choice.
#[derive(Args, Clone, Debug, Default)]
pub struct TuningFlags {
    /// Length of the forbidden subdivided claw's legs.
    #[arg(long)]
    pub t: Option<usize>,
    /// Starting tree decomposition parameter for the biclique solver.
    #[arg(long)]
    pub k: Option<usize>,
    /// Largest k tried after capacity failures.
    #[arg(long)]
    pub k_max: Option<usize>,
    #[arg(long)]
    pub ell_scale: Option<f64>,
    /// Graphs with at most this many vertices are solved by enumeration.
    #[arg(long)]
    pub leaf_cap: Option<usize>,
    /// Worker threads (1 = sequential).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Seed echoed in reports; the solvers themselves are deterministic.
    #[arg(long)]
    pub seed: Option<u64>,
    /// TOML file with any of the keys above (snake_case).
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    algo: Option<Algo>,
    t: Option<usize>,
    k: Option<usize>,
    k_max: Option<usize>,
    ell_scale: Option<f64>,
    leaf_cap: Option<usize>,
    jobs: Option<usize>,
    seed: Option<u64>,
}

/// Fully resolved solver settings.
#[derive(Clone, Debug, Serialize)]
pub struct Settings {
    pub algo: Algo,
    pub t: usize,
    pub k: usize,
    pub k_max: usize,
    pub ell_scale: f64,
    pub leaf_cap: Option<usize>,
    pub jobs: usize,
    pub seed: u64,
}

impl TuningFlags {
    pub fn resolve(&self, algo: Option<Algo>) -> Result<Settings, Failure> {
        let file: FileConfig = match &self.config {
            Some(path) => toml::from_str(&read_file(path)?)
                .map_err(|e| Failure::Usage(format!("bad config {}: {e}", path.display())))?,
            None => FileConfig::default(),
        };
        let k = self.k.or(file.k).unwrap_or(10);
        let s = Settings {
            algo: algo.or(file.algo).unwrap_or(Algo::Auto),
            t: self.t.or(file.t).unwrap_or(2),
            k,
            k_max: self.k_max.or(file.k_max).unwrap_or(k.max(16)),
            ell_scale: self.ell_scale.or(file.ell_scale).unwrap_or(1.0),
            leaf_cap: self.leaf_cap.or(file.leaf_cap),
            jobs: self.jobs.or(file.jobs).unwrap_or(1),
            seed: self.seed.or(file.seed).unwrap_or(0),
        };
        if s.t == 0
            || s.k < 2
            || s.k_max < s.k
            || s.jobs == 0
            || !(s.ell_scale.is_finite() && s.ell_scale > 0.0)
        {
            return Err(Failure::Usage(format!(
                "invalid settings: need t >= 1, 2 <= k <= k_max, jobs >= 1, ell_scale > 0 (got {s:?})"
            )));
        }
        Ok(s)
    }
}

impl Settings {
    pub fn degree(&self, trace: bool, witnesses: bool) -> DegreeSolverConfig {
        DegreeSolverConfig {
            t: self.t,
            ell_scale: self.ell_scale,
            leaf_cap_override: self.leaf_cap,
            trace,
            witnesses,
            parallel: self.jobs > 1,
            ..Default::default()
        }
    }

    pub fn biclique(&self, k: usize, trace: bool, witnesses: bool) -> BicliqueSolverConfig {
        BicliqueSolverConfig {
            t: self.t,
            k,
            ell_scale: self.ell_scale,
            leaf_cap_override: self.leaf_cap,
            trace,
            witnesses,
            parallel: self.jobs > 1,
            ..Default::default()
        }
    }
}
