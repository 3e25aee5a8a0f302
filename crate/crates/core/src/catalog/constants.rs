use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

use super::CatalogError;
use crate::word::{binomial, OpWord, WordType};

const CONSTANTS_JSON: &str = include_str!("../../data/constants.json");

/// One summand `c * C(n + top, k) * n^pow`; a missing `k` drops the binomial.
#[derive(Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct FormulaTerm {
    pub c: u64,
    #[serde(default)]
    pub top: u64,
    pub k: Option<u64>,
    #[serde(default)]
    pub pow: u32,
}

impl FormulaTerm {
    pub fn eval(&self, n: u64) -> u64 {
        let b = self.k.map_or(1, |k| binomial::<u64>(n + self.top, k));
        self.c * b * n.pow(self.pow)
    }
}

#[derive(Debug, Clone)]
pub struct OrderDiagram {
    /// Node name and the word it stands for.
    pub nodes: BTreeMap<String, OpWord>,
    pub edges: Vec<(OpWord, OpWord)>,
}

#[derive(Debug, Clone)]
pub struct Constants {
    pub p_table: BTreeMap<u64, u64>,
    pub type_formulas: Vec<(WordType, Vec<FormulaTerm>)>,
    pub kf1_words: Vec<OpWord>,
    /// Two-topology words keyed by word length (zero is listed at length 3).
    pub two_topology_words: BTreeMap<usize, Vec<OpWord>>,
    pub kf1_order: OrderDiagram,
}

impl Constants {
    pub fn type_count(&self, t: WordType, n: u64) -> u64 {
        self.type_formulas
            .iter()
            .find(|(u, _)| *u == t)
            .map(|(_, terms)| terms.iter().map(|x| x.eval(n)).sum())
            .expect("every type has a formula")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    schema: u32,
    p_table: Section<BTreeMap<String, u64>>,
    type_counts: FormulaSection,
    kf1_words: WordSection,
    two_topology_words: LengthSection,
    kf1_order: DiagramSection,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Section<T> {
    #[allow(dead_code)]
    provenance: String,
    values: T,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulaSection {
    #[allow(dead_code)]
    provenance: String,
    formulas: BTreeMap<String, Vec<FormulaTerm>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct WordSection {
    #[allow(dead_code)]
    provenance: String,
    words: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LengthSection {
    #[allow(dead_code)]
    provenance: String,
    by_length: BTreeMap<String, Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramSection {
    #[allow(dead_code)]
    provenance: String,
    nodes: BTreeMap<String, String>,
    edges: Vec<[String; 2]>,
}

fn schema(msg: impl Into<String>) -> CatalogError {
    CatalogError::Schema(msg.into())
}

fn word(text: &str) -> Result<OpWord, CatalogError> {
    text.parse()
        .map_err(|e| schema(format!("word {text:?}: {e}")))
}

/// Parses and checks a constants file.
pub fn parse_constants(text: &str) -> Result<Constants, CatalogError> {
    let raw: RawFile = serde_json::from_str(text).map_err(|e| schema(e.to_string()))?;
    if raw.schema != 1 {
        return Err(schema(format!("unsupported schema {}", raw.schema)));
    }

    let mut p_table = BTreeMap::new();
    for (k, v) in raw.p_table.values {
        let n: u64 = k
            .parse()
            .map_err(|_| schema(format!("p_table key {k:?}")))?;
        p_table.insert(n, v);
    }

    let mut type_formulas = Vec::with_capacity(32);
    for t in WordType::ALL {
        let terms = raw
            .type_counts
            .formulas
            .get(&t.label())
            .ok_or_else(|| schema(format!("no formula for {t}")))?;
        if terms.is_empty() {
            return Err(schema(format!("empty formula for {t}")));
        }
        type_formulas.push((t, terms.clone()));
    }
    if raw.type_counts.formulas.len() != WordType::ALL.len() {
        return Err(schema("unexpected word type in formulas"));
    }

    let kf1_words = raw
        .kf1_words
        .words
        .iter()
        .map(|w| word(w))
        .collect::<Result<Vec<_>, _>>()?;

    let mut two_topology_words = BTreeMap::new();
    for (len, words) in raw.two_topology_words.by_length {
        let len: usize = len
            .parse()
            .map_err(|_| schema(format!("length key {len:?}")))?;
        let words = words
            .iter()
            .map(|w| word(w))
            .collect::<Result<Vec<_>, _>>()?;
        two_topology_words.insert(len, words);
    }

    let mut nodes = BTreeMap::new();
    for (name, w) in raw.kf1_order.nodes {
        nodes.insert(name, word(&w)?);
    }
    let mut edges = Vec::with_capacity(raw.kf1_order.edges.len());
    for [a, b] in raw.kf1_order.edges {
        let lookup = |n: &str| {
            nodes
                .get(n)
                .cloned()
                .ok_or_else(|| schema(format!("edge names unknown node {n:?}")))
        };
        edges.push((lookup(&a)?, lookup(&b)?));
    }

    Ok(Constants {
        p_table,
        type_formulas,
        kf1_words,
        two_topology_words,
        kf1_order: OrderDiagram { nodes, edges },
    })
}

/// The bundled constants, parsed once.
pub fn constants() -> &'static Constants {
    static CELL: OnceLock<Constants> = OnceLock::new();
    CELL.get_or_init(|| parse_constants(CONSTANTS_JSON).expect("bundled constants are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_file_loads() {
        let c = constants();
        assert_eq!(c.p_table[&3], 157);
        assert_eq!(c.kf1_words.len(), 17);
        assert_eq!(c.kf1_words.last().unwrap().to_string(), "f1 i1 f*");
        assert_eq!(c.kf1_order.edges.len(), 27);
        assert_eq!(c.kf1_order.nodes.len(), 17);
        let total: usize = c.two_topology_words.values().map(Vec::len).sum();
        assert_eq!(total, 60);
    }

    #[test]
    fn schema_violations_are_rejected() {
        assert!(parse_constants("{}").is_err());
        let bad_word = CONSTANTS_JSON.replace("\"f1 i1 f*\"", "\"q7\"");
        assert!(matches!(
            parse_constants(&bad_word),
            Err(CatalogError::Schema(_))
        ));
        let bad_edge = CONSTANTS_JSON.replacen("\"fki\"\n", "\"nowhere\"\n", 1);
        assert!(parse_constants(&bad_edge).is_err());
    }
}
