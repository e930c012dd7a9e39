//! Vertex-determined simplicial sets.
//!
//! A complex stores only its nondegenerate simplices, each as an ordered
//! tuple of distinct vertices. Degenerate simplices are implicit: a tuple with
//! adjacent repeats denotes a degeneracy of the tuple obtained by collapsing
//! the repeats. Every object here is a subquotient of the nerve of a finite
//! poset, for which this representation is faithful.

mod iso;
mod maps;
mod poset;

pub use iso::{find_isomorphism, find_isomorphism_with, Orientation};
pub use maps::{glue_pushout, quotient_vertex_map, ComplexMap, Glued, VertexMap};
pub use poset::{build_poset, nerve, FinitePoset, PosetExpr};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};

/// An opaque vertex label. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "String", into = "String")]
pub struct Vertex(Arc<str>);

impl Vertex {
    pub fn new(label: impl AsRef<str>) -> Self {
        Vertex(Arc::from(label.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<String> for Vertex {
    fn from(s: String) -> Self {
        Vertex(Arc::from(s))
    }
}

impl From<&str> for Vertex {
    fn from(s: &str) -> Self {
        Vertex::new(s)
    }
}

impl From<Vertex> for String {
    fn from(v: Vertex) -> String {
        v.0.to_string()
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An ordered tuple of vertices. Inside a complex the entries are distinct;
/// as a free-standing value it may carry repeats (a degenerate image).
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Simplex(Vec<Vertex>);

impl Simplex {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Simplex(vertices)
    }

    pub fn from_labels<S: AsRef<str>>(labels: &[S]) -> Self {
        Simplex(labels.iter().map(Vertex::new).collect())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Dimension, i.e. length minus one. Panics on the empty tuple.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn has_repeats(&self) -> bool {
        let set: BTreeSet<&Vertex> = self.0.iter().collect();
        set.len() != self.0.len()
    }

    /// Removes adjacent duplicates. Returns `None` if a repeat survives,
    /// i.e. the tuple is not the image of a monotone map.
    pub fn dedup_adjacent(&self) -> Option<Simplex> {
        let mut out: Vec<Vertex> = Vec::with_capacity(self.0.len());
        for v in &self.0 {
            if out.last() != Some(v) {
                out.push(v.clone());
            }
        }
        let s = Simplex(out);
        if s.has_repeats() {
            None
        } else {
            Some(s)
        }
    }

    /// Codimension-one face obtained by deleting position `p`.
    pub fn face(&self, p: usize) -> Simplex {
        let mut v = self.0.clone();
        v.remove(p);
        Simplex(v)
    }

    /// The subtuple at the given (increasing) positions.
    pub fn select(&self, positions: &[usize]) -> Simplex {
        Simplex(positions.iter().map(|&p| self.0[p].clone()).collect())
    }

    /// All nonempty subtuples, including the simplex itself.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.0.len();
        assert!(n < 32, "simplex too large to enumerate faces");
        (1u32..(1u32 << n))
            .map(|mask| {
                Simplex(
                    (0..n)
                        .filter(|&p| mask & (1 << p) != 0)
                        .map(|p| self.0[p].clone())
                        .collect(),
                )
            })
            .collect()
    }

    /// Sorted vertex set, the identity of a simplex in a vertex-determined complex.
    pub fn key(&self) -> Vec<Vertex> {
        let mut k = self.0.clone();
        k.sort();
        k
    }

    pub fn contains(&self, v: &Vertex) -> bool {
        self.0.contains(v)
    }

    pub fn position(&self, v: &Vertex) -> Option<usize> {
        self.0.iter().position(|w| w == v)
    }

    pub fn reversed(&self) -> Simplex {
        let mut v = self.0.clone();
        v.reverse();
        Simplex(v)
    }

    pub fn map(&self, vmap: &VertexMap) -> Option<Simplex> {
        self.0
            .iter()
            .map(|v| vmap.get(v).cloned())
            .collect::<Option<Vec<_>>>()
            .map(Simplex)
    }
}

// Canonical order: by dimension, then lexicographically.
impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A finite vertex-determined simplicial set.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct OrderedComplex {
    vertices: BTreeSet<Vertex>,
    simplices: BTreeSet<Simplex>,
}

impl fmt::Debug for OrderedComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrderedComplex")
            .field("vertices", &self.vertices)
            .field("maximal", &self.maximal_simplices())
            .finish()
    }
}

impl OrderedComplex {
    pub fn empty() -> Self {
        OrderedComplex::default()
    }

    /// Face closure of the given tuples, with duplicate-vertex and
    /// vertex-determinacy checks.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(gens: I) -> Result<Self> {
        let mut simplices = BTreeSet::new();
        for g in gens {
            if g.is_empty() {
                continue;
            }
            if g.has_repeats() {
                return input(format!("tuple {g} repeats a vertex"));
            }
            if simplices.contains(&g) {
                continue;
            }
            simplices.extend(g.all_faces());
        }
        let c = OrderedComplex::from_closed_unchecked(simplices);
        c.check_determinacy()?;
        Ok(c)
    }

    /// Builds from an already face-closed, repeat-free, determinate tuple set.
    pub(crate) fn from_closed_unchecked(simplices: BTreeSet<Simplex>) -> Self {
        let vertices = simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.0[0].clone())
            .collect();
        OrderedComplex {
            vertices,
            simplices,
        }
    }

    pub fn simplex(labels: &[&str]) -> Self {
        OrderedComplex::from_simplices([Simplex::from_labels(labels)]).expect("distinct labels")
    }

    fn check_determinacy(&self) -> Result<()> {
        let mut seen: BTreeMap<Vec<Vertex>, &Simplex> = BTreeMap::new();
        for s in &self.simplices {
            if let Some(prev) = seen.insert(s.key(), s) {
                return Err(Error::AmbientMismatch(format!(
                    "tuples {prev} and {s} share a vertex set with different orders"
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn simplices(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    /// Membership test for a tuple.
    pub fn is_simplex(&self, s: &Simplex) -> bool {
        self.contains(s)
    }

    pub fn has_vertex(&self, v: &Vertex) -> bool {
        self.vertices.contains(v)
    }

    /// All nondegenerate simplices of dimension `dim`, canonically sorted.
    pub fn simplices_of_dim(&self, dim: usize) -> Vec<Simplex> {
        self.simplices
            .iter()
            .filter(|s| s.len() == dim + 1)
            .cloned()
            .collect()
    }

    /// Largest dimension present; `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.dim()).max()
    }

    /// Number of nondegenerate simplices in each dimension.
    pub fn counts(&self) -> Vec<usize> {
        let mut out = vec![0; self.dim().map_or(0, |d| d + 1)];
        for s in &self.simplices {
            out[s.dim()] += 1;
        }
        out
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut covered: BTreeSet<Simplex> = BTreeSet::new();
        let mut out = Vec::new();
        for s in self.simplices.iter().rev() {
            if covered.contains(s) {
                continue;
            }
            out.push(s.clone());
            for f in s.all_faces() {
                covered.insert(f);
            }
        }
        out.sort();
        out
    }

    pub fn is_subcomplex_of(&self, other: &OrderedComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// The simplex with the given vertex set, if any.
    pub fn simplex_on(&self, vertex_set: &BTreeSet<Vertex>) -> Option<Simplex> {
        // Small helper for audits; linear scan is fine at this scale.
        self.simplices
            .iter()
            .find(|s| s.len() == vertex_set.len() && s.0.iter().all(|v| vertex_set.contains(v)))
            .cloned()
    }

    /// Smallest face-closed subcollection containing `generators`.
    pub fn span(&self, generators: &[Simplex]) -> Result<OrderedComplex> {
        for g in generators {
            if !self.contains(g) {
                return input(format!(
                    "generator {g} is not a simplex of the ambient complex"
                ));
            }
        }
        let mut out = BTreeSet::new();
        for g in generators {
            if !out.contains(g) {
                out.extend(g.all_faces());
            }
        }
        Ok(OrderedComplex::from_closed_unchecked(out))
    }

    /// Subcomplex of simplices satisfying a predicate closed under faces.
    pub fn filter<F: Fn(&Simplex) -> bool>(&self, keep: F) -> OrderedComplex {
        let kept: BTreeSet<Simplex> = self.simplices.iter().filter(|s| keep(s)).cloned().collect();
        debug_assert!(kept
            .iter()
            .all(|s| s.all_faces().iter().all(|f| kept.contains(f))));
        OrderedComplex::from_closed_unchecked(kept)
    }

    /// Union or intersection of two complexes in a common ambient.
    pub fn combine(&self, other: &OrderedComplex, mode: CombineMode) -> Result<OrderedComplex> {
        match mode {
            CombineMode::Union => {
                let mut all = self.simplices.clone();
                all.extend(other.simplices.iter().cloned());
                let c = OrderedComplex::from_closed_unchecked(all);
                c.check_determinacy()?;
                Ok(c)
            }
            CombineMode::Intersection => {
                // Tuples sharing a vertex set must agree even if they do not
                // survive the intersection.
                let keys: BTreeMap<Vec<Vertex>, &Simplex> =
                    self.simplices.iter().map(|s| (s.key(), s)).collect();
                for s in &other.simplices {
                    if let Some(t) = keys.get(&s.key()) {
                        if *t != s {
                            return Err(Error::AmbientMismatch(format!("{t} vs {s}")));
                        }
                    }
                }
                let common = self
                    .simplices
                    .intersection(&other.simplices)
                    .cloned()
                    .collect();
                Ok(OrderedComplex::from_closed_unchecked(common))
            }
        }
    }

    pub fn union(&self, other: &OrderedComplex) -> Result<OrderedComplex> {
        self.combine(other, CombineMode::Union)
    }

    pub fn intersection(&self, other: &OrderedComplex) -> Result<OrderedComplex> {
        self.combine(other, CombineMode::Intersection)
    }

    /// Relabels vertices along an injective map.
    pub fn relabel(&self, vmap: &VertexMap) -> Result<OrderedComplex> {
        let mut out = BTreeSet::new();
        for s in &self.simplices {
            let img = s
                .map(vmap)
                .ok_or_else(|| Error::Input(format!("vertex of {s} is unmapped")))?;
            out.insert(img);
        }
        let c = OrderedComplex::from_closed_unchecked(out);
        if c.len() != self.len() {
            return input("relabeling is not injective");
        }
        c.check_determinacy()?;
        Ok(c)
    }

    /// Reverses every tuple (the opposite simplicial set).
    pub fn opposite(&self) -> OrderedComplex {
        OrderedComplex::from_closed_unchecked(
            self.simplices.iter().map(Simplex::reversed).collect(),
        )
    }

    /// Checks face closure and the vertex bookkeeping; used by tests and loaders.
    pub fn validate(&self) -> Result<()> {
        for s in &self.simplices {
            if s.has_repeats() {
                return input(format!("tuple {s} repeats a vertex"));
            }
            for p in 0..s.len() {
                if s.len() > 1 && !self.simplices.contains(&s.face(p)) {
                    return input(format!("face {} of {s} missing", s.face(p)));
                }
            }
        }
        let from_points: BTreeSet<Vertex> = self
            .simplices
            .iter()
            .filter(|s| s.len() == 1)
            .map(|s| s.0[0].clone())
            .collect();
        if from_points != self.vertices {
            return input("vertex set disagrees with 0-simplices");
        }
        self.check_determinacy()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Union,
    Intersection,
}

/// The generalized horn Λ^S_N: union of the faces Δ^{S−{s}} for s ∉ N.
/// With `include_all_faces` and empty `n` this is the boundary ∂Δ^S.
pub fn horn(s: &[Vertex], n: &BTreeSet<Vertex>, include_all_faces: bool) -> Result<OrderedComplex> {
    if s.is_empty() {
        return input("horn over an empty vertex list");
    }
    let sset: BTreeSet<&Vertex> = s.iter().collect();
    if sset.len() != s.len() {
        return input("horn vertex list repeats a vertex");
    }
    if n.iter().any(|v| !sset.contains(v)) {
        return input("N is not a subset of S");
    }
    if n.len() == s.len() {
        return input("N = S leaves no faces");
    }
    if n.is_empty() && !include_all_faces {
        return input("empty N requires include_all_faces");
    }
    let top = Simplex::new(s.to_vec());
    let faces: Vec<Simplex> = (0..s.len())
        .filter(|&p| !n.contains(&s[p]))
        .map(|p| top.face(p))
        .filter(|f| !f.is_empty())
        .collect();
    OrderedComplex::from_simplices(faces)
}

/// Standard labels "0".."n".
pub fn index_labels(n: usize) -> Vec<Vertex> {
    (0..=n).map(|k| Vertex::new(k.to_string())).collect()
}

/// Δ^n on labels "0".."n".
pub fn standard_simplex(n: usize) -> OrderedComplex {
    OrderedComplex::from_simplices([Simplex::new(index_labels(n))]).expect("standard simplex")
}

/// Λ^r_M on labels "0".."r", with M given by positions.
pub fn standard_horn(r: usize, m: &BTreeSet<usize>) -> Result<OrderedComplex> {
    let labels = index_labels(r);
    let nset = m
        .iter()
        .map(|&p| {
            labels
                .get(p)
                .cloned()
                .ok_or_else(|| Error::Input(format!("{p} > {r}")))
        })
        .collect::<Result<_>>()?;
    horn(&labels, &nset, m.is_empty())
}
