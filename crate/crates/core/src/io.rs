//! JSON wire format.
//!
//! Complexes travel as `{"vertices", "maximal_simplices"}`; scaled complexes
//! add `"thin"` and collapsed objects add `"collapsed"`. Output is canonical:
//! object keys sorted, vertices sorted, simplices in (length, lexicographic)
//! order.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{OrderedComplex, Simplex, Vertex};
use crate::error::{input, Error, Result};
use crate::scaling::{Collapsed, Edge, ScaledComplex};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub vertices: Vec<Vertex>,
    pub maximal_simplices: Vec<Simplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thin: Option<Vec<Simplex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub collapsed: Vec<(Vertex, Vertex)>,
}

impl From<&OrderedComplex> for ComplexJson {
    fn from(k: &OrderedComplex) -> Self {
        ComplexJson {
            vertices: k.vertices().iter().cloned().collect(),
            maximal_simplices: k.maximal_simplices(),
            thin: None,
            collapsed: Vec::new(),
        }
    }
}

impl From<ScaledComplex> for ComplexJson {
    fn from(s: ScaledComplex) -> Self {
        let mut j = ComplexJson::from(s.complex());
        j.thin = Some(s.thin().iter().cloned().collect());
        j
    }
}

impl From<Collapsed> for ComplexJson {
    fn from(c: Collapsed) -> Self {
        let mut j = ComplexJson::from(c.body);
        j.collapsed = c.collapsed.into_iter().collect();
        j
    }
}

impl TryFrom<ComplexJson> for OrderedComplex {
    type Error = Error;

    fn try_from(j: ComplexJson) -> Result<Self> {
        let known: BTreeSet<Vertex> = j.vertices.iter().cloned().collect();
        if known.len() != j.vertices.len() {
            return input("vertex list repeats a label");
        }
        for s in &j.maximal_simplices {
            if s.is_empty() {
                return input("empty simplex in maximal_simplices");
            }
            if let Some(v) = s.vertices().iter().find(|v| !known.contains(v)) {
                return input(format!("simplex {s} uses unknown vertex {v}"));
            }
        }
        let points = j.vertices.iter().map(|v| Simplex::new(vec![v.clone()]));
        OrderedComplex::from_simplices(j.maximal_simplices.into_iter().chain(points))
    }
}

impl TryFrom<ComplexJson> for ScaledComplex {
    type Error = Error;

    fn try_from(mut j: ComplexJson) -> Result<Self> {
        let thin = j.thin.take().unwrap_or_default().into_iter().collect();
        if !j.collapsed.is_empty() {
            return input("a scaled complex carries no collapsed edges");
        }
        ScaledComplex::new(OrderedComplex::try_from(j)?, thin)
    }
}

impl TryFrom<ComplexJson> for Collapsed {
    type Error = Error;

    fn try_from(mut j: ComplexJson) -> Result<Self> {
        let edges: BTreeSet<Edge> = std::mem::take(&mut j.collapsed).into_iter().collect();
        Collapsed::new(ScaledComplex::try_from(j)?, edges)
    }
}

/// Canonical pretty JSON with sorted keys and a trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Input(e.to_string()))?;
    let mut out = serde_json::to_string_pretty(&v).map_err(|e| Error::Input(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))
}

pub fn read_json<T: DeserializeOwned>(path: impl AsRef<Path>) -> Result<T> {
    let path = path.as_ref();
    let text =
        fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    from_json_str(&text)
}

pub fn write_json<T: Serialize>(path: impl AsRef<Path>, value: &T) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, to_canonical_json(value)?)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

pub fn complex_to_json(k: &OrderedComplex) -> Result<String> {
    to_canonical_json(&ComplexJson::from(k))
}

pub fn complex_from_json(text: &str) -> Result<OrderedComplex> {
    OrderedComplex::try_from(from_json_str::<ComplexJson>(text)?)
}
