//! Built-in models and published constants.

mod constants;

pub use constants::{constants, Constants, FormulaTerm, OrderDiagram};

use thiserror::Error;

use serde::Deserialize;

use crate::set_model::{from_json, ClosureModel, ModelError, ModelFile, ModelKind};
use crate::{Mask, Model};

const PMODEL_JSON: &str = include_str!("../../data/pmodel.json");
const KF1REF_JSON: &str = include_str!("../../data/kf1ref.json");
const SET34_JSON: &str = include_str!("../../data/set34.json");

/// Names accepted by [`builtin`], besides `staircase:N:M`.
pub const BUILTIN_NAMES: &[&str] = &["pmodel", "usual13", "sorgenfrey13", "kf1ref", "set34"];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("staircase needs 0 <= m <= n and n >= 1, got n = {n}, m = {m}")]
    StaircaseRange { n: usize, m: usize },
    #[error("unknown built-in model {0:?}")]
    UnknownBuiltin(String),
    #[error("constants file: {0}")]
    Schema(String),
}

/// The 13-block quotient of the half line under the Sorgenfrey topology
/// (topology 1) and the usual topology (topology 2).
pub fn p_model() -> Model {
    from_json(PMODEL_JSON, ModelKind::BlockQuotient).expect("bundled model file is valid")
}

/// `n` topologies on the 13 blocks: `1..=m` Sorgenfrey, `m+1..=n` usual.
pub fn staircase(n: usize, m: usize) -> Result<Model, CatalogError> {
    if n == 0 || m > n {
        return Err(CatalogError::StaircaseRange { n, m });
    }
    let picks: Vec<usize> = (1..=n).map(|j| if j <= m { 1 } else { 2 }).collect();
    Ok(p_model().select_topologies(&picks)?)
}

/// Smallest single-topology space known to the catalog on which the 17 even
/// operators are pairwise distinct, found by exhaustive search.
pub fn kf1_reference() -> Model {
    from_json(KF1REF_JSON, ModelKind::PointSpace).expect("bundled model file is valid")
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WitnessFile {
    model: ModelFile,
    set: Vec<String>,
}

/// An 8-point space with a set whose orbit under closure, frontier and
/// complement has 34 members. Found by randomized search.
pub fn set34_witness() -> (Model, Mask) {
    let file: WitnessFile = serde_json::from_str(SET34_JSON).expect("bundled witness file parses");
    let model: Model = file
        .model
        .into_model(ModelKind::PointSpace)
        .expect("bundled witness model is valid");
    let set = model
        .parse_mask(&file.set.join(","))
        .expect("bundled witness set names atoms of the model");
    (model, set)
}

/// Resolves a built-in model name: `pmodel`, `usual13`, `sorgenfrey13`,
/// `kf1ref`, `set34` or `staircase:N:M`.
pub fn builtin(name: &str) -> Result<Model, CatalogError> {
    match name {
        "pmodel" => Ok(p_model()),
        "usual13" => staircase(1, 0),
        "sorgenfrey13" => staircase(1, 1),
        "kf1ref" => Ok(kf1_reference()),
        "set34" => Ok(set34_witness().0),
        other => {
            let unknown = || CatalogError::UnknownBuiltin(other.to_string());
            let rest = other.strip_prefix("staircase:").ok_or_else(unknown)?;
            let (n, m) = rest.split_once(':').ok_or_else(unknown)?;
            let n = n.parse().map_err(|_| unknown())?;
            let m = m.parse().map_err(|_| unknown())?;
            staircase(n, m)
        }
    }
}

/// Every built-in model with its name, for bulk checks.
pub fn all_builtins() -> Vec<(String, Model)> {
    let mut out: Vec<(String, Model)> = BUILTIN_NAMES
        .iter()
        .map(|name| (name.to_string(), builtin(name).expect("listed builtin")))
        .collect();
    for n in 1..=4 {
        for m in 0..=n {
            let name = format!("staircase:{n}:{m}");
            let model = staircase(n, m).expect("in range");
            out.push((name, model));
        }
    }
    out
}

/// Loads a model from a builtin name or a JSON file path.
pub fn resolve_model(spec: &str) -> Result<ClosureModel<u32>, CatalogError> {
    match builtin(spec) {
        Ok(m) => Ok(m),
        Err(CatalogError::UnknownBuiltin(_)) => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| CatalogError::UnknownBuiltin(format!("{spec}: {e}")))?;
            Ok(from_json(&text, ModelKind::PointSpace)?)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::set_model::validate;

    #[test]
    fn block_rows() {
        let p = p_model();
        assert_eq!(p.atom_count(), 13);
        assert_eq!(p.mask_names(&p.row(1, 6)), ["P0", "P5", "P6", "P7"]);
        assert_eq!(p.mask_names(&p.row(2, 9)), ["P0", "P8", "P9", "P10"]);
    }

    #[test]
    fn builtins_validate() {
        for (name, model) in all_builtins() {
            let report = validate(&model);
            assert!(report.is_valid(), "{name}: {report}");
            assert!(report.saturation_agreement(), "{name}");
        }
    }

    #[test]
    fn staircase_shapes() {
        assert_eq!(staircase(2, 1).unwrap(), p_model());
        let flat = staircase(3, 0).unwrap();
        for a in 0..13 {
            assert_eq!(flat.row(1, a), flat.row(3, a));
        }
        assert!(matches!(
            staircase(2, 3),
            Err(CatalogError::StaircaseRange { .. })
        ));
        assert!(builtin("staircase:4:2").is_ok());
        assert!(builtin("staircase:x").is_err());
    }
}
