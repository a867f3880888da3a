//! Default audit grids, embedded from `grids.toml` at build time.

use serde::Deserialize;

const DEFAULT_GRIDS: &str = include_str!("../grids.toml");

#[derive(Debug, Clone, Deserialize)]
pub struct Grids {
    pub version: u32,
    pub exact: ExactGrid,
    pub boundary: Range,
    pub tail: TailGrid,
    pub mult: MultGrid,
    pub limit: LimitGrid,
    pub euler: Range,
    pub witt: WittGrid,
    pub lemma1: Lemma1Grid,
    pub interp: InterpGrid,
    pub abel: AbelGrid,
    pub genfn: GenfnGrid,
    pub hurwitz: HurwitzGrid,
}

#[derive(Debug, Clone, Deserialize)]
pub struct ExactGrid {
    pub q: Vec<String>,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Range {
    pub n_max: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct TailGrid {
    pub m_max: u64,
    pub n_max: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct MultGrid {
    pub d: Vec<u32>,
    pub n_max: u64,
    pub y_powers: Vec<i64>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct LimitGrid {
    pub n_max: u64,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct WittGrid {
    pub primes: Vec<u64>,
    pub levels: Vec<u32>,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub n_max: u64,
    pub precision: u32,
}

#[derive(Debug, Clone, Deserialize)]
pub struct Lemma1Grid {
    pub prime: u64,
    pub q: String,
    pub level: u32,
    pub precision: u32,
    pub n_max: u64,
    pub beta: Vec<u32>,
    pub integrands: Vec<Vec<(String, i64, u32, u32)>>,
}

#[derive(Debug, Clone, Deserialize)]
pub struct InterpGrid {
    pub q: String,
    pub x: Vec<String>,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub n_max: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct AbelGrid {
    pub q: String,
    pub alpha: Vec<u32>,
    pub beta: Vec<u32>,
    pub n_max: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct GenfnGrid {
    pub q: String,
    pub t: f64,
    pub x: Vec<i64>,
    pub terms: u32,
    pub tol: f64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct HurwitzGrid {
    pub s: [f64; 2],
    pub x: f64,
    pub tol: f64,
}

impl Grids {
    pub fn default_grids() -> Grids {
        toml::from_str(DEFAULT_GRIDS).expect("embedded grids.toml is valid")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_grids_parse() {
        let g = Grids::default_grids();
        assert_eq!(g.version, 1);
        assert_eq!(g.witt.primes.len(), g.witt.levels.len());
        assert_eq!(g.exact.q.len(), 4);
    }
}
