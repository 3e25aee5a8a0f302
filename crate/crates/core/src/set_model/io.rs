//! Model files.
//!
//! ```json
//! {
//!   "n": 2,
//!   "atoms": ["P0", "P1"],
//!   "rows": [
//!     [["P0"], ["P0", "P1"]],
//!     [["P0"], ["P0", "P1"]]
//!   ]
//! }
//! ```
//!
//! `rows[j][a]` lists the atoms in the closure of atom `a` under topology
//! `j + 1`. The canonical form lists each row in atom order and is written by
//! [`to_json`]; parsing a canonical file and writing it back is byte-stable.

use serde::{Deserialize, Serialize};

use crate::bits::Bits;

use super::{AtomMask, ClosureModel, ModelError, ModelKind};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct ModelFile {
    pub n: usize,
    pub atoms: Vec<String>,
    pub rows: Vec<Vec<Vec<String>>>,
}

impl ModelFile {
    pub fn from_model<B: Bits>(model: &ClosureModel<B>) -> Self {
        let rows = (1..=model.n())
            .map(|j| {
                (0..model.atom_count())
                    .map(|a| model.mask_names(&model.row(j, a)))
                    .collect()
            })
            .collect();
        ModelFile {
            n: model.n(),
            atoms: model.names().to_vec(),
            rows,
        }
    }

    pub fn into_model<B: Bits>(self, kind: ModelKind) -> Result<ClosureModel<B>, ModelError> {
        if self.rows.len() != self.n {
            return Err(ModelError::Schema(format!(
                "n is {} but {} topologies are listed",
                self.n,
                self.rows.len()
            )));
        }
        let width = self.atoms.len();
        let lookup = |name: &str| {
            self.atoms
                .iter()
                .position(|a| a == name)
                .ok_or_else(|| ModelError::UnknownAtom(name.to_string()))
        };
        let mut rows = Vec::with_capacity(self.n);
        for topology in &self.rows {
            let mut out = Vec::with_capacity(topology.len());
            for row in topology {
                let atoms = row
                    .iter()
                    .map(|n| lookup(n))
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(AtomMask::from_atoms(atoms, width)?);
            }
            rows.push(out);
        }
        ClosureModel::new(self.atoms, rows, kind)
    }
}

pub fn to_json<B: Bits>(model: &ClosureModel<B>) -> String {
    let mut text = serde_json::to_string_pretty(&ModelFile::from_model(model))
        .expect("model files always serialize");
    text.push('\n');
    text
}

pub fn from_json<B: Bits>(text: &str, kind: ModelKind) -> Result<ClosureModel<B>, ModelError> {
    let file: ModelFile =
        serde_json::from_str(text).map_err(|e| ModelError::Schema(e.to_string()))?;
    file.into_model(kind)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"{
  "n": 1,
  "atoms": [
    "a",
    "b"
  ],
  "rows": [
    [
      [
        "a"
      ],
      [
        "a",
        "b"
      ]
    ]
  ]
}
"#;

    #[test]
    fn canonical_text_is_byte_stable() {
        let m: ClosureModel = from_json(SAMPLE, ModelKind::PointSpace).unwrap();
        assert_eq!(to_json(&m), SAMPLE);
    }

    #[test]
    fn unsorted_rows_canonicalize() {
        let text = r#"{"n":1,"atoms":["a","b"],"rows":[[["a"],["b","a"]]]}"#;
        let m: ClosureModel = from_json(text, ModelKind::PointSpace).unwrap();
        assert_eq!(to_json(&m), SAMPLE);
    }

    #[test]
    fn schema_errors() {
        let bad_n = r#"{"n":2,"atoms":["a"],"rows":[[["a"]]]}"#;
        assert!(matches!(
            from_json::<u32>(bad_n, ModelKind::PointSpace),
            Err(ModelError::Schema(_))
        ));
        let unknown = r#"{"n":1,"atoms":["a"],"rows":[[["z"]]]}"#;
        assert!(matches!(
            from_json::<u32>(unknown, ModelKind::PointSpace),
            Err(ModelError::UnknownAtom(_))
        ));
        let extra = r#"{"n":1,"atoms":["a"],"rows":[[["a"]]],"x":1}"#;
        assert!(from_json::<u32>(extra, ModelKind::PointSpace).is_err());
    }
}
