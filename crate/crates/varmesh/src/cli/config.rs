//! Config file schema for the command-line front end.
//!
//! Flat TOML with one section per subcommand. Unknown keys are rejected.
//! Every run writes `manifest.toml` into the output directory: the fully
//! resolved config, itself a valid config file, so re-running from the
//! manifest reproduces the outputs byte for byte.

use crate::schrodinger::NodeCounting;
use crate::weights::WeightSpec;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh1d: Option<Mesh1dConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mesh2d: Option<Mesh2dConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stencil: Option<StencilConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solve_ho: Option<SolveHoConfig>,
}

/// Node/segment count: exactly one of the two keys must be present
/// (`segments` counts intervals, `nodes` counts grid points inclusive of
/// both endpoints).
pub fn resolve_segments(
    segments: Option<usize>,
    nodes: Option<usize>,
    context: &str,
) -> Result<usize, String> {
    match (segments, nodes) {
        (Some(s), None) => Ok(s),
        (None, Some(n)) if n >= 2 => Ok(n - 1),
        (None, Some(n)) => Err(format!("{context}: nodes must be >= 2, got {n}")),
        (Some(_), Some(_)) => Err(format!(
            "{context}: give either `segments` or `nodes`, not both"
        )),
        (None, None) => Err(format!("{context}: one of `segments` or `nodes` is required")),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mesh1dConfig {
    pub domain: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<usize>,
    pub weight: WeightSpec,
}

impl Mesh1dConfig {
    pub fn segments(&self) -> Result<usize, String> {
        resolve_segments(self.segments, self.nodes, "mesh1d")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Tensor,
    Harmonic,
}

fn default_solver() -> SolverKind {
    SolverKind::Tensor
}

fn default_max_iter() -> usize {
    200
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Mesh2dConfig {
    #[serde(default = "default_solver")]
    pub solver: SolverKind,
    pub domain_x: [f64; 2],
    pub domain_y: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments_x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub segments_y: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes_y: Option<usize>,
    /// Harmonic solver displacement tolerance; default 1e-8 * diameter.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    pub weight_x: WeightSpec,
    pub weight_y: WeightSpec,
}

impl Mesh2dConfig {
    pub fn segments_x(&self) -> Result<usize, String> {
        resolve_segments(self.segments_x, self.nodes_x, "mesh2d (x axis)")
    }

    pub fn segments_y(&self) -> Result<usize, String> {
        resolve_segments(self.segments_y, self.nodes_y, "mesh2d (y axis)")
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StencilConfig {
    pub h_left: f64,
    pub h_right: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeshChoice {
    Uniform,
    Variable,
    HarmonicMap,
    Both,
}

fn default_domain() -> [f64; 2] {
    [-25.0, 25.0]
}

fn default_nodes() -> usize {
    50
}

fn default_counting() -> NodeCounting {
    NodeCounting::Nodes
}

fn default_hbar_omega() -> f64 {
    10.0
}

fn default_depth() -> f64 {
    0.9
}

fn default_mesh() -> MeshChoice {
    MeshChoice::Both
}

fn default_k() -> usize {
    6
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveHoConfig {
    #[serde(default = "default_domain")]
    pub domain: [f64; 2],
    #[serde(default = "default_nodes")]
    pub nodes: usize,
    #[serde(default = "default_counting")]
    pub counting: NodeCounting,
    #[serde(default = "default_hbar_omega")]
    pub hbar_omega: f64,
    #[serde(default = "default_depth")]
    pub weight_depth: f64,
    #[serde(default = "default_mesh")]
    pub mesh: MeshChoice,
    #[serde(default = "default_k")]
    pub k: usize,
}

impl Default for SolveHoConfig {
    fn default() -> Self {
        SolveHoConfig {
            domain: default_domain(),
            nodes: default_nodes(),
            counting: default_counting(),
            hbar_omega: default_hbar_omega(),
            weight_depth: default_depth(),
            mesh: default_mesh(),
            k: default_k(),
        }
    }
}
