//! File formats.
//!
//! * poset: `{"elements": [..], "le": [[x, y], ..]}`, each pair asserting `x ≤ y`;
//! * realizer: `{"lambda1": [..], "lambda2": [..]}`;
//! * weights: `{"weights": {"element": n, ..}}`;
//! * valuation table: TSV with columns `downset`, `antichain`, `v`,
//!   `v_dual` (of the complementary upset) and `omega`, one row per downset
//!   in increasing `v`. Sets are comma-joined element names in poset order,
//!   `∅` for the empty set.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::birkhoff::DownsetLattice;
use crate::error::{Error, Result};
use crate::poset::{LinearExtension, Poset, Realizer};
use crate::set::ElementSet;
use crate::valuation::{omega_encode, DualValuation, Valuation, WeightFunction};

pub const EMPTY_SET: &str = "∅";
pub const TABLE_HEADER: &str = "downset\tantichain\tv\tv_dual\tomega";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub le: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizerFile {
    pub lambda1: Vec<String>,
    pub lambda2: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightsFile {
    pub weights: IndexMap<String, u64>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("plain data serializes");
    out.push('\n');
    out
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    let file: PosetFile = from_json(text)?;
    Poset::new(file.elements, file.le)
}

pub fn poset_to_json(poset: &Poset) -> String {
    let k = poset.len();
    let le = (0..k)
        .flat_map(|x| (0..k).map(move |y| (x, y)))
        .filter(|&(x, y)| poset.lt(x, y))
        .map(|(x, y)| (poset.name(x).to_owned(), poset.name(y).to_owned()))
        .collect();
    to_json(&PosetFile {
        elements: poset.elements().to_vec(),
        le,
    })
}

pub fn parse_realizer(poset: &Poset, text: &str) -> Result<Realizer> {
    let file: RealizerFile = from_json(text)?;
    Realizer::from_names(poset, &file.lambda1, &file.lambda2)
}

pub fn realizer_to_json(poset: &Poset, realizer: &Realizer) -> String {
    let names = |l: &LinearExtension| l.names(poset).into_iter().map(str::to_owned).collect();
    to_json(&RealizerFile {
        lambda1: names(realizer.lambda1()),
        lambda2: names(realizer.lambda2()),
    })
}

pub fn parse_weights(poset: &Poset, text: &str) -> Result<WeightFunction> {
    let file: WeightsFile = from_json(text)?;
    let pairs: Vec<(&str, u64)> = file.weights.iter().map(|(k, &v)| (k.as_str(), v)).collect();
    if pairs.len() != poset.len() {
        return Err(Error::DomainMismatch(format!(
            "{} weights for {} elements",
            pairs.len(),
            poset.len()
        )));
    }
    WeightFunction::from_names(poset, &pairs)
}

pub fn weights_to_json(poset: &Poset, weights: &WeightFunction) -> String {
    to_json(&WeightsFile {
        weights: poset
            .elements()
            .iter()
            .cloned()
            .zip(weights.as_slice().iter().copied())
            .collect(),
    })
}

/// Comma-joined element names in poset order, or [`EMPTY_SET`].
pub fn format_set(poset: &Poset, set: &ElementSet) -> String {
    if set.is_empty() {
        return EMPTY_SET.to_owned();
    }
    set.iter()
        .map(|x| poset.name(x))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_set(poset: &Poset, text: &str) -> Result<ElementSet> {
    let text = text.trim();
    let mut set = poset.empty_set();
    if text == EMPTY_SET || text.is_empty() {
        return Ok(set);
    }
    for name in text.split(',') {
        let x = poset.require(name.trim())?;
        if set.contains(x) {
            return Err(Error::Parse(format!(
                "element `{}` listed twice",
                name.trim()
            )));
        }
        set.insert(x);
    }
    Ok(set)
}

/// The valuation table, rows in increasing `v`. The omega column is `-`
/// without a first linear extension.
pub fn render_table(
    lattice: &DownsetLattice,
    valuation: &Valuation,
    dual: &DualValuation,
    lambda1: Option<&LinearExtension>,
) -> String {
    let p = lattice.poset();
    let mut out = String::from(TABLE_HEADER);
    out.push('\n');
    for i in valuation.ordinals_by_value() {
        let s = lattice.downset(i);
        let antichain = p.maximal_in(s);
        let omega = lambda1.map_or_else(|| "-".to_owned(), |l| omega_encode(s, l).to_string());
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\n",
            format_set(p, s),
            format_set(p, &antichain),
            valuation.value(i),
            dual.value_of_complement(i),
            omega
        ));
    }
    out
}

/// Reads the `downset` and `v` columns of a valuation table into a value
/// list indexed by lattice ordinal. Every downset must appear exactly once.
pub fn parse_table(lattice: &DownsetLattice, text: &str) -> Result<Vec<u64>> {
    let p = lattice.poset();
    let mut values = vec![None; lattice.len()];
    for (lineno, line) in text.lines().enumerate() {
        if line.trim().is_empty() || (lineno == 0 && line.starts_with("downset")) {
            continue;
        }
        let mut cols = line.split('\t');
        let (Some(set), Some(_), Some(v)) = (cols.next(), cols.next(), cols.next()) else {
            return Err(Error::Parse(format!(
                "line {}: expected at least 3 columns",
                lineno + 1
            )));
        };
        let set = parse_set(p, set)?;
        let ordinal = lattice
            .ordinal(&set)
            .map_err(|_| Error::Parse(format!("line {}: not a downset", lineno + 1)))?;
        let v: u64 = v
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("line {}: {e}", lineno + 1)))?;
        if values[ordinal].replace(v).is_some() {
            return Err(Error::Parse(format!(
                "line {}: downset listed twice",
                lineno + 1
            )));
        }
    }
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                Error::DomainMismatch(format!(
                    "no value for downset {}",
                    format_set(p, lattice.downset(i))
                ))
            })
        })
        .collect()
}
