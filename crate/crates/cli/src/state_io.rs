//! JSON state documents.
//!
//! ```json
//! { "twice_j": [1, 1], "matrix": [[[0.5, 0.0], ...], ...] }
//! ```
//!
//! `twice_j` lists 2j for one or two subsystems. Exactly one of `matrix`
//! (ρ, rows of [re, im]) or `expectations` (Tr(ρ A_lk) at row k, column l,
//! same layout) must be present. Export always writes `matrix`.

use bellkit::state::{from_expectations, ExpectationTable};
use bellkit::{BipartiteState, DensityMatrix, OperatorMatrix, Spin};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    twice_j: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matrix: Option<Rows>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    expectations: Option<Rows>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LoadedState {
    Single(DensityMatrix),
    Bipartite(BipartiteState),
}

impl LoadedState {
    pub fn matrix(&self) -> &OperatorMatrix {
        match self {
            LoadedState::Single(r) => r.matrix(),
            LoadedState::Bipartite(s) => s.matrix(),
        }
    }

    pub fn into_bipartite(self) -> Result<BipartiteState> {
        match self {
            LoadedState::Bipartite(s) => Ok(s),
            LoadedState::Single(_) => Err(CliError::usage("a two-subsystem state is required")),
        }
    }
}

fn to_complex(rows: Rows) -> Vec<Vec<Complex64>> {
    rows.into_iter()
        .map(|r| r.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
        .collect()
}

fn to_pairs(m: &OperatorMatrix) -> Rows {
    m.rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

pub fn parse_state(text: &str) -> Result<LoadedState> {
    let doc: StateDoc = serde_json::from_str(text).map_err(|e| CliError::usage(format!("malformed state JSON: {e}")))?;
    let spins = doc
        .twice_j
        .iter()
        .map(|&t| Spin::from_twice(t))
        .collect::<bellkit::Result<Vec<_>>>()?;
    let (rows, is_table) = match (doc.matrix, doc.expectations) {
        (Some(m), None) => (to_complex(m), false),
        (None, Some(e)) => (to_complex(e), true),
        _ => return Err(CliError::usage("exactly one of \"matrix\" or \"expectations\" is required")),
    };
    match spins.as_slice() {
        [j] => {
            let rho = if is_table {
                from_expectations(&ExpectationTable::new(*j, rows)?)?
            } else {
                DensityMatrix::new(OperatorMatrix::from_rows(&rows)?)?
            };
            if rho.dim() != j.dim() {
                return Err(bellkit::Error::DimensionMismatch { expected: j.dim(), found: rho.dim() }.into());
            }
            Ok(LoadedState::Single(rho))
        }
        // composite entries Tr(ρ A_{l₁k₁}⊗A_{l₂k₂}) are the matrix entries themselves
        [j1, j2] => Ok(LoadedState::Bipartite(BipartiteState::new(*j1, *j2, OperatorMatrix::from_rows(&rows)?)?)),
        _ => Err(CliError::usage("\"twice_j\" must list one or two spins")),
    }
}

pub fn export_state(state: &LoadedState) -> String {
    let twice_j = match state {
        LoadedState::Single(r) => vec![r.spin().twice_j()],
        LoadedState::Bipartite(s) => vec![s.j1().twice_j(), s.j2().twice_j()],
    };
    let doc = StateDoc {
        twice_j,
        matrix: Some(to_pairs(state.matrix())),
        expectations: None,
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("plain data serializes");
    out.push('\n');
    out
}
