use std::collections::{BTreeMap, BTreeSet};

use super::{OrderedComplex, Simplex, Vertex};
use crate::error::{input, Error, Result};

pub type VertexMap = BTreeMap<Vertex, Vertex>;

/// A vertex map between complexes that sends every simplex to a simplex,
/// possibly a degenerate one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMap {
    source: OrderedComplex,
    target: OrderedComplex,
    vmap: VertexMap,
}

impl ComplexMap {
    pub fn new(source: OrderedComplex, target: OrderedComplex, vmap: VertexMap) -> Result<Self> {
        for v in source.vertices() {
            match vmap.get(v) {
                None => return input(format!("vertex {v} is unmapped")),
                Some(w) if !target.has_vertex(w) => {
                    return input(format!("{v} maps to {w}, which is not a target vertex"))
                }
                _ => {}
            }
        }
        let vmap: VertexMap = vmap
            .into_iter()
            .filter(|(v, _)| source.has_vertex(v))
            .collect();
        let f = ComplexMap {
            source,
            target,
            vmap,
        };
        for s in f.source.simplices() {
            match f.image_of(s) {
                Some(img) if f.target.contains(&img) => {}
                _ => return input(format!("{s} does not map to a simplex of the target")),
            }
        }
        Ok(f)
    }

    /// The inclusion of a subcomplex.
    pub fn inclusion(sub: &OrderedComplex, ambient: &OrderedComplex) -> Result<Self> {
        let vmap = sub
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        ComplexMap::new(sub.clone(), ambient.clone(), vmap)
    }

    pub fn source(&self) -> &OrderedComplex {
        &self.source
    }

    pub fn target(&self) -> &OrderedComplex {
        &self.target
    }

    pub fn vmap(&self) -> &VertexMap {
        &self.vmap
    }

    pub fn apply(&self, v: &Vertex) -> Option<&Vertex> {
        self.vmap.get(v)
    }

    /// Image tuple with adjacent repeats removed.
    pub fn image_of(&self, s: &Simplex) -> Option<Simplex> {
        s.map(&self.vmap)?.dedup_adjacent()
    }

    /// Raw image tuple, repeats kept.
    pub fn raw_image(&self, s: &Simplex) -> Option<Simplex> {
        s.map(&self.vmap)
    }

    pub fn is_injective(&self) -> bool {
        self.vmap.values().collect::<BTreeSet<_>>().len() == self.vmap.len()
    }

    pub fn image(&self) -> OrderedComplex {
        let out = self
            .source
            .simplices()
            .iter()
            .filter_map(|s| self.image_of(s))
            .collect();
        OrderedComplex::from_closed_unchecked(out)
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ComplexMap) -> Result<ComplexMap> {
        let vmap = self
            .vmap
            .iter()
            .map(|(v, w)| {
                other
                    .apply(w)
                    .cloned()
                    .map(|x| (v.clone(), x))
                    .ok_or_else(|| Error::Input(format!("{w} unmapped")))
            })
            .collect::<Result<VertexMap>>()?;
        ComplexMap::new(self.source.clone(), other.target.clone(), vmap)
    }

    pub fn same_vertex_map(&self, other: &ComplexMap) -> bool {
        self.vmap == other.vmap
    }
}

/// Result of gluing two complexes along a common subcomplex.
#[derive(Debug, Clone)]
pub struct Glued {
    pub complex: OrderedComplex,
    pub from_b: ComplexMap,
    pub from_c: ComplexMap,
}

/// Pushout `B ⊔_A C` along vertex-injective maps `i: A → B`, `j: A → C`.
///
/// B's labels are kept. C's vertices outside `j(A)` keep their labels unless
/// those collide with B, in which case primes are appended.
pub fn glue_pushout(
    b: &OrderedComplex,
    c: &OrderedComplex,
    a: &OrderedComplex,
    i: &VertexMap,
    j: &VertexMap,
) -> Result<Glued> {
    let i = ComplexMap::new(a.clone(), b.clone(), i.clone())?;
    let j = ComplexMap::new(a.clone(), c.clone(), j.clone())?;
    if !i.is_injective() || !j.is_injective() {
        return input("gluing maps must be injective on vertices");
    }
    let mut c_to_out: VertexMap = VertexMap::new();
    for (av, cv) in j.vmap() {
        c_to_out.insert(cv.clone(), i.vmap()[av].clone());
    }
    let mut used: BTreeSet<Vertex> = b.vertices().clone();
    for v in c.vertices() {
        if c_to_out.contains_key(v) {
            continue;
        }
        let mut label = v.as_str().to_string();
        while used.contains(&Vertex::new(&label)) {
            label.push('\'');
        }
        let w = Vertex::new(&label);
        used.insert(w.clone());
        c_to_out.insert(v.clone(), w);
    }
    let mut all = b.simplices().clone();
    for s in c.simplices() {
        all.insert(s.map(&c_to_out).expect("all C vertices mapped"));
    }
    let complex = OrderedComplex::from_closed_unchecked(all);
    complex
        .check_determinacy()
        .map_err(|e| Error::GlueConflict(e.to_string()))?;
    let b_id = b
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    let from_b = ComplexMap::new(b.clone(), complex.clone(), b_id)?;
    let from_c = ComplexMap::new(c.clone(), complex.clone(), c_to_out)?;
    Ok(Glued {
        complex,
        from_b,
        from_c,
    })
}

/// Quotient along a surjective vertex map whose fibres are contiguous in every
/// tuple, so that deduplicating image tuples computes the pushout.
pub fn quotient_vertex_map(
    k: &OrderedComplex,
    vmap: &VertexMap,
) -> Result<(OrderedComplex, ComplexMap)> {
    let mut out = BTreeSet::new();
    for s in k.simplices() {
        let raw = s
            .map(vmap)
            .ok_or_else(|| Error::Input(format!("vertex of {s} is unmapped")))?;
        let img = raw.dedup_adjacent().ok_or_else(|| {
            Error::IrregularCollapse(format!("{s} identifies non-adjacent vertices"))
        })?;
        out.insert(img);
    }
    let q = OrderedComplex::from_closed_unchecked(out);
    q.check_determinacy()
        .map_err(|e| Error::IrregularCollapse(e.to_string()))?;
    let f = ComplexMap::new(k.clone(), q.clone(), vmap.clone())?;
    Ok((q, f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{horn, index_labels, standard_simplex};

    fn vm(pairs: &[(&str, &str)]) -> VertexMap {
        pairs
            .iter()
            .map(|(a, b)| (Vertex::new(a), Vertex::new(b)))
            .collect()
    }

    #[test]
    fn collapse_edge_of_triangle() {
        let (q, f) = quotient_vertex_map(
            &standard_simplex(2),
            &vm(&[("0", "0"), ("1", "0"), ("2", "2")]),
        )
        .unwrap();
        assert_eq!(q, OrderedComplex::simplex(&["0", "2"]));
        assert!(!f.is_injective());
    }

    #[test]
    fn irregular_collapse_rejected() {
        let r = quotient_vertex_map(
            &standard_simplex(2),
            &vm(&[("0", "0"), ("1", "1"), ("2", "0")]),
        );
        assert!(matches!(r, Err(Error::IrregularCollapse(_))));
    }

    #[test]
    fn glue_identity_and_disjoint() {
        let b = standard_simplex(2);
        let id: VertexMap = b
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        let g = glue_pushout(&b, &b, &b, &id, &id).unwrap();
        assert_eq!(g.complex, b);
        let g = glue_pushout(
            &b,
            &b,
            &OrderedComplex::empty(),
            &VertexMap::new(),
            &VertexMap::new(),
        )
        .unwrap();
        assert_eq!(g.complex.counts(), vec![6, 6, 2]);
        assert!(g.complex.has_vertex(&Vertex::new("0'")));
    }

    #[test]
    fn glue_two_triangles_along_long_edge() {
        let t1 = OrderedComplex::simplex(&["a", "b", "d"]);
        let t2 = OrderedComplex::simplex(&["a", "c", "d"]);
        let e = OrderedComplex::simplex(&["x", "y"]);
        let g = glue_pushout(
            &t1,
            &t2,
            &e,
            &vm(&[("x", "a"), ("y", "d")]),
            &vm(&[("x", "a"), ("y", "d")]),
        )
        .unwrap();
        assert_eq!(g.complex.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn glue_conflict() {
        let t1 = OrderedComplex::simplex(&["a", "b"]);
        let t2 = OrderedComplex::simplex(&["b", "a"]);
        let pt = OrderedComplex::from_simplices([
            Simplex::from_labels(&["x"]),
            Simplex::from_labels(&["y"]),
        ])
        .unwrap();
        let r = glue_pushout(
            &t1,
            &t2,
            &pt,
            &vm(&[("x", "a"), ("y", "b")]),
            &vm(&[("x", "a"), ("y", "b")]),
        );
        assert!(matches!(r, Err(Error::GlueConflict(_))));
    }

    #[test]
    fn map_validity() {
        let h = horn(
            &index_labels(2),
            &[Vertex::new("1")].into_iter().collect(),
            false,
        )
        .unwrap();
        assert!(ComplexMap::inclusion(&h, &standard_simplex(2)).is_ok());
        assert!(ComplexMap::inclusion(&standard_simplex(2), &h).is_err());
    }
}
