//! Published reference values, loaded from `data/reference_values.toml`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

const DATA: &str = include_str!("../data/reference_values.toml");

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct ReferenceValues {
    pub version: u32,
    pub golden_ratio: f64,
    pub comparison_tol: f64,
    pub smalldil: Vec<SmallDilEntry>,
    pub mindil: Vec<MinDilEntry>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct SmallDilEntry {
    pub genus: u32,
    pub column: String,
    #[serde(default)]
    pub lt: Option<[i64; 2]>,
    #[serde(default)]
    pub magic: Option<[i64; 3]>,
    pub value: f64,
    pub source: String,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct MinDilEntry {
    pub genus: u32,
    pub value: f64,
    pub polynomial: String,
    pub lt: [i64; 2],
    #[serde(default)]
    pub cofactor: Option<String>,
    pub source: String,
}

pub fn reference() -> &'static ReferenceValues {
    static CELL: OnceLock<ReferenceValues> = OnceLock::new();
    CELL.get_or_init(|| toml::from_str(DATA).expect("bundled reference data parses"))
}

/// `γ₀²`, the square of the golden ratio.
pub fn golden_sq() -> f64 {
    let g = reference().golden_ratio;
    g * g
}
