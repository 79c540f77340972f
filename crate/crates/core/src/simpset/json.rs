//! JSON form of a truncated simplicial set:
//!
//! ```json
//! {"max_dim": 2, "dims": [{"payloads": ["0"], "faces": [[]], "degeneracies": [[0]]}, ...]}
//! ```
//!
//! A set without degeneracy tables (semi-simplicial) omits `degeneracies`
//! or leaves every level's list empty.

use serde::{Deserialize, Serialize};

use super::{Level, Payload, SimplicialSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimplicialSetJson {
    pub max_dim: usize,
    pub dims: Vec<LevelJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LevelJson {
    pub payloads: Vec<String>,
    pub faces: Vec<Vec<usize>>,
    #[serde(default)]
    pub degeneracies: Vec<Vec<usize>>,
}

impl From<&SimplicialSet> for SimplicialSetJson {
    fn from(x: &SimplicialSet) -> Self {
        SimplicialSetJson {
            max_dim: x.max_dim(),
            dims: x
                .levels()
                .iter()
                .map(|l| LevelJson {
                    payloads: l.payloads.iter().map(Payload::to_string).collect(),
                    faces: l.faces.clone(),
                    degeneracies: l.degeneracies.clone(),
                })
                .collect(),
        }
    }
}

impl TryFrom<SimplicialSetJson> for SimplicialSet {
    type Error = Error;

    fn try_from(json: SimplicialSetJson) -> Result<Self> {
        let has_degeneracies = json
            .dims
            .iter()
            .take(json.max_dim)
            .any(|l| !l.degeneracies.is_empty());
        let levels = json
            .dims
            .into_iter()
            .map(|l| Level {
                payloads: l.payloads.iter().map(|s| Payload::parse(s)).collect(),
                faces: l.faces,
                degeneracies: l.degeneracies,
            })
            .collect();
        SimplicialSet::from_levels(json.max_dim, levels, has_degeneracies)
    }
}

impl SimplicialSet {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&SimplicialSetJson::from(self)).expect("plain data serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let json: SimplicialSetJson =
            serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        json.try_into()
    }
}
