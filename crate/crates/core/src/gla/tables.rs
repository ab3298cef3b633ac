//! Versioned text dump of structure-constant tables.
//!
//! Reloading reproduces the tables exactly; a fixed 1% sample of entries is
//! re-derived from the stored ideal rows and compared.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{GradedLie, LieVec, Raised, RootId, RootSpace};
use crate::cartan::load_cartan;
use crate::error::{Error, Result};

pub const TABLES_FORMAT: &str = "minind-tables";
pub const TABLES_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub x: RootId,
    pub y: RootId,
    pub value: LieVec,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RaiseEntry {
    pub i: usize,
    pub x: RootId,
    pub value: Raised,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesFile {
    pub format: String,
    pub version: u32,
    pub engine: String,
    pub cartan: Vec<Vec<i64>>,
    pub labels: Vec<String>,
    pub cutoff: usize,
    pub spaces: Vec<RootSpace>,
    pub brackets: Vec<BracketEntry>,
    pub raises: Vec<RaiseEntry>,
}

pub fn to_file(g: &GradedLie) -> TablesFile {
    let raises = g
        .raises_table()
        .iter()
        .enumerate()
        .flat_map(|(i, row)| {
            row.iter().enumerate().filter_map(move |(x, r)| r.clone().map(|value| RaiseEntry { i, x, value }))
        })
        .collect();
    TablesFile {
        format: TABLES_FORMAT.into(),
        version: TABLES_VERSION,
        engine: crate::ENGINE_VERSION.into(),
        cartan: g.datum().matrix().to_vec(),
        labels: g.datum().labels().to_vec(),
        cutoff: g.cutoff(),
        spaces: g.spaces().values().cloned().collect(),
        brackets: g.bracket_entries().into_iter().map(|((x, y), v)| BracketEntry { x, y, value: v.clone() }).collect(),
        raises,
    }
}

pub fn dump(g: &GradedLie) -> String {
    serde_json::to_string(&to_file(g)).expect("tables serialize")
}

pub fn from_file(file: TablesFile) -> Result<GradedLie> {
    if file.format != TABLES_FORMAT || file.version != TABLES_VERSION {
        return Err(Error::Parse(format!("unsupported tables format {} v{}", file.format, file.version)));
    }
    let datum = load_cartan(&file.cartan)?.with_labels(file.labels)?;
    let spaces = file.spaces.into_iter().map(|s| (s.beta.clone(), s)).collect();
    let brackets: HashMap<(RootId, RootId), LieVec> =
        file.brackets.into_iter().map(|e| ((e.x, e.y), e.value)).collect();
    let raises = file.raises.into_iter().map(|e| (e.i, e.x, e.value)).collect();
    GradedLie::from_parts(datum, file.cutoff, spaces, brackets, raises)
}

pub fn load(text: &str) -> Result<GradedLie> {
    let file: TablesFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    from_file(file)
}

/// Re-derives every hundredth stored entry (at least one of each kind).
pub fn spot_check(g: &GradedLie) -> Result<usize> {
    let mut checked = 0;
    for (k, ((x, y), v)) in g.bracket_entries().into_iter().enumerate() {
        if k % 100 == 0 {
            if &g.rederive_bracket(x, y) != v {
                return Err(Error::Parse(format!("stored bracket ({x}, {y}) does not re-derive")));
            }
            checked += 1;
        }
    }
    let mut k = 0;
    for (i, row) in g.raises_table().iter().enumerate() {
        for (x, r) in row.iter().enumerate() {
            if r.is_some() {
                if k % 100 == 0 {
                    if g.rederive_raise(i, x) != *r {
                        return Err(Error::Parse(format!("stored raising entry ({i}, {x}) does not re-derive")));
                    }
                    checked += 1;
                }
                k += 1;
            }
        }
    }
    Ok(checked)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::presets;
    use crate::gla::build_graded_lie;

    #[test]
    fn roundtrip_is_exact() {
        let g = build_graded_lie(&presets::affine_a1(), 6).unwrap();
        let text = dump(&g);
        let h = load(&text).unwrap();
        assert_eq!(g, h);
        assert_eq!(dump(&h), text);
        assert!(spot_check(&h).unwrap() >= 2);
    }

    #[test]
    fn tampering_is_detected() {
        let g = build_graded_lie(&presets::a2(), 3).unwrap();
        let mut f = to_file(&g);
        f.brackets[0].value[0].1 = crate::rational::Q::from_int(7);
        let h = from_file(f).unwrap();
        assert!(spot_check(&h).is_err());
    }
}
