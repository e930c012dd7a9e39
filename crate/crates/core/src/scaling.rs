//! Thin-triangle scalings and scaled maps.

use std::collections::BTreeSet;
use std::fmt;

use crate::complex::{quotient_vertex_map, ComplexMap, OrderedComplex, Simplex, Vertex, VertexMap};
use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::io::ComplexJson;

/// An ordered complex with a set of thin nondegenerate triangles.
/// Degenerate triangles are thin by convention and never stored.
#[derive(Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "ComplexJson", try_from = "ComplexJson")]
pub struct ScaledComplex {
    complex: OrderedComplex,
    thin: BTreeSet<Simplex>,
}

impl fmt::Debug for ScaledComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScaledComplex")
            .field("complex", &self.complex)
            .field("thin", &self.thin)
            .finish()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scaling {
    Flat,
    Sharp,
    Explicit(BTreeSet<Simplex>),
}

/// A thin triangle whose image is neither thin nor degenerate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub triangle: Simplex,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "thin triangle {} does not map to a thin triangle",
            self.triangle
        )
    }
}

pub fn scale(k: &OrderedComplex, mode: Scaling) -> Result<ScaledComplex> {
    match mode {
        Scaling::Flat => Ok(ScaledComplex {
            complex: k.clone(),
            thin: BTreeSet::new(),
        }),
        Scaling::Sharp => Ok(ScaledComplex {
            complex: k.clone(),
            thin: k.simplices_of_dim(2).into_iter().collect(),
        }),
        Scaling::Explicit(thin) => ScaledComplex::new(k.clone(), thin),
    }
}

impl ScaledComplex {
    pub fn new(complex: OrderedComplex, thin: BTreeSet<Simplex>) -> Result<Self> {
        for t in &thin {
            if t.len() != 3 || !complex.contains(t) {
                return input(format!("thin triple {t} is not a 2-simplex"));
            }
        }
        Ok(ScaledComplex { complex, thin })
    }

    pub fn flat(complex: OrderedComplex) -> Self {
        ScaledComplex {
            complex,
            thin: BTreeSet::new(),
        }
    }

    pub fn sharp(complex: OrderedComplex) -> Self {
        let thin = complex.simplices_of_dim(2).into_iter().collect();
        ScaledComplex { complex, thin }
    }

    pub fn complex(&self) -> &OrderedComplex {
        &self.complex
    }

    pub fn thin(&self) -> &BTreeSet<Simplex> {
        &self.thin
    }

    /// Thinness of a triple, counting degenerate triples as thin.
    pub fn is_thin(&self, t: &Simplex) -> bool {
        if t.len() != 3 {
            return false;
        }
        match t.dedup_adjacent() {
            Some(d) if d.len() == 3 => self.thin.contains(&d),
            Some(_) => true,
            None => false,
        }
    }

    /// Thinness for an already deduplicated image tuple of any length.
    pub fn is_thin_image(&self, t: &Simplex) -> bool {
        t.len() < 3 || self.thin.contains(t)
    }

    pub fn is_sharp(&self) -> bool {
        self.complex
            .simplices()
            .iter()
            .filter(|s| s.len() == 3)
            .all(|s| self.thin.contains(s))
    }

    pub fn add_thin<I: IntoIterator<Item = Simplex>>(&self, triples: I) -> Result<ScaledComplex> {
        let mut thin = self.thin.clone();
        for t in triples {
            if t.len() != 3 || !self.complex.contains(&t) {
                return input(format!("thin triple {t} is not a 2-simplex"));
            }
            thin.insert(t);
        }
        Ok(ScaledComplex {
            complex: self.complex.clone(),
            thin,
        })
    }

    pub fn union(&self, other: &ScaledComplex) -> Result<ScaledComplex> {
        let complex = self.complex.union(&other.complex)?;
        let thin = self.thin.union(&other.thin).cloned().collect();
        Ok(ScaledComplex { complex, thin })
    }

    /// Both the underlying complex and the thin set are contained in `other`'s.
    pub fn is_scaled_subcomplex_of(&self, other: &ScaledComplex) -> bool {
        self.complex.is_subcomplex_of(&other.complex) && self.thin.is_subset(&other.thin)
    }

    pub fn relabel(&self, vmap: &VertexMap) -> Result<ScaledComplex> {
        let complex = self.complex.relabel(vmap)?;
        let thin = self
            .thin
            .iter()
            .map(|t| t.map(vmap).expect("relabel checked"))
            .collect();
        Ok(ScaledComplex { complex, thin })
    }

    pub fn opposite(&self) -> ScaledComplex {
        ScaledComplex {
            complex: self.complex.opposite(),
            thin: self.thin.iter().map(Simplex::reversed).collect(),
        }
    }

    pub fn restrict_to(&self, sub: &OrderedComplex) -> Result<ScaledComplex> {
        restrict_scaling(sub, self)
    }
}

/// Induced scaling on a subcomplex.
pub fn restrict_scaling(sub: &OrderedComplex, ambient: &ScaledComplex) -> Result<ScaledComplex> {
    if !sub.is_subcomplex_of(&ambient.complex) {
        return input("restriction target is not a subcomplex");
    }
    let thin = ambient
        .thin
        .iter()
        .filter(|t| sub.contains(t))
        .cloned()
        .collect();
    Ok(ScaledComplex {
        complex: sub.clone(),
        thin,
    })
}

/// Checks that thin triangles of `s` go to thin or degenerate triangles of `t`.
pub fn check_scaled_map(
    f: &ComplexMap,
    s: &ScaledComplex,
    t: &ScaledComplex,
) -> std::result::Result<(), Violation> {
    for tri in &s.thin {
        let ok = match f.image_of(tri) {
            Some(img) => t.is_thin_image(&img),
            None => false,
        };
        if !ok {
            return Err(Violation {
                triangle: tri.clone(),
            });
        }
    }
    Ok(())
}

/// A simplicial map between scaled complexes preserving thinness.
#[derive(Debug, Clone)]
pub struct ScaledMap {
    map: ComplexMap,
    source: ScaledComplex,
    target: ScaledComplex,
}

impl ScaledMap {
    pub fn new(source: &ScaledComplex, target: &ScaledComplex, vmap: VertexMap) -> Result<Self> {
        let map = ComplexMap::new(source.complex.clone(), target.complex.clone(), vmap)?;
        check_scaled_map(&map, source, target).map_err(|v| Error::Input(v.to_string()))?;
        Ok(ScaledMap {
            map,
            source: source.clone(),
            target: target.clone(),
        })
    }

    pub fn inclusion(sub: &ScaledComplex, ambient: &ScaledComplex) -> Result<Self> {
        let vmap = sub
            .complex
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        ScaledMap::new(sub, ambient, vmap)
    }

    pub fn map(&self) -> &ComplexMap {
        &self.map
    }

    pub fn vmap(&self) -> &VertexMap {
        self.map.vmap()
    }

    pub fn source(&self) -> &ScaledComplex {
        &self.source
    }

    pub fn target(&self) -> &ScaledComplex {
        &self.target
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &ScaledMap) -> Result<ScaledMap> {
        let composed = self.map.then(&other.map)?;
        ScaledMap::new(&self.source, &other.target, composed.vmap().clone())
    }
}

pub type Edge = (Vertex, Vertex);

/// A scaled complex with some edges collapsed to points, kept lazily as the
/// body together with the collapsed edges. It stands for the pushout
/// `body ⊔_{⊔ Δ¹♯} ⊔ Δ⁰`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(into = "ComplexJson", try_from = "ComplexJson")]
pub struct Collapsed {
    pub body: ScaledComplex,
    pub collapsed: BTreeSet<Edge>,
}

impl Collapsed {
    pub fn new(body: ScaledComplex, collapsed: BTreeSet<Edge>) -> Result<Self> {
        for (a, b) in &collapsed {
            if !body
                .complex
                .contains(&Simplex::new(vec![a.clone(), b.clone()]))
            {
                return input(format!("collapsed edge ({a},{b}) is not an edge"));
            }
        }
        Ok(Collapsed { body, collapsed })
    }

    pub fn plain(body: ScaledComplex) -> Self {
        Collapsed {
            body,
            collapsed: BTreeSet::new(),
        }
    }

    /// Thinness in the quotient: stored thin, degenerate, or carrying a
    /// collapsed edge between adjacent vertices.
    pub fn is_thin(&self, t: &Simplex) -> bool {
        match t.dedup_adjacent() {
            Some(d) if d.len() == 3 => {
                let v = d.vertices();
                self.body.thin.contains(&d)
                    || self.is_collapsed(&v[0], &v[1])
                    || self.is_collapsed(&v[1], &v[2])
            }
            Some(d) => d.len() < 3,
            None => false,
        }
    }

    pub fn is_collapsed(&self, a: &Vertex, b: &Vertex) -> bool {
        self.collapsed.contains(&(a.clone(), b.clone()))
            || self.collapsed.contains(&(b.clone(), a.clone()))
    }

    /// Stored thin triangles together with those degenerate in the quotient.
    pub fn effective_thin(&self) -> BTreeSet<Simplex> {
        self.body
            .complex
            .simplices_of_dim(2)
            .into_iter()
            .filter(|t| self.is_thin(t))
            .collect()
    }

    /// Equality of the represented pushouts: same body, same collapsed edges
    /// and the same effective thin set.
    pub fn same_as(&self, other: &Collapsed) -> bool {
        self.body.complex == other.body.complex
            && self.collapsed == other.collapsed
            && self.effective_thin() == other.effective_thin()
    }

    /// The deduplicated quotient, each collapsed edge sent to its first vertex.
    pub fn shadow(&self) -> Result<ScaledComplex> {
        let mut vmap: VertexMap = self
            .body
            .complex
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        for (a, b) in &self.collapsed {
            let root = vmap[a].clone();
            for w in vmap.values_mut() {
                if *w == *b {
                    *w = root.clone();
                }
            }
        }
        let (q, f) = quotient_vertex_map(&self.body.complex, &vmap)?;
        let thin = self
            .body
            .thin
            .iter()
            .filter_map(|t| f.image_of(t))
            .filter(|t| t.len() == 3)
            .collect();
        ScaledComplex::new(q, thin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::standard_simplex;

    fn tri(labels: &[&str]) -> Simplex {
        Simplex::from_labels(labels)
    }

    #[test]
    fn sharp_and_flat() {
        let d2 = standard_simplex(2);
        assert_eq!(scale(&d2, Scaling::Sharp).unwrap().thin().len(), 1);
        let flat = scale(&d2, Scaling::Flat).unwrap();
        assert!(flat.thin().is_empty());
        assert!(flat.is_thin(&tri(&["0", "0", "1"])));
        assert!(!flat.is_thin(&tri(&["0", "1", "2"])));
    }

    #[test]
    fn explicit_rejects_non_simplex() {
        let d2 = standard_simplex(2);
        let bad: BTreeSet<Simplex> = [tri(&["0", "2", "1"])].into_iter().collect();
        assert!(scale(&d2, Scaling::Explicit(bad)).is_err());
    }

    #[test]
    fn sharp_to_flat_identity_violates() {
        let d2 = standard_simplex(2);
        let sharp = ScaledComplex::sharp(d2.clone());
        let flat = ScaledComplex::flat(d2.clone());
        let id = ComplexMap::inclusion(&d2, &d2).unwrap();
        assert_eq!(
            check_scaled_map(&id, &sharp, &flat),
            Err(Violation {
                triangle: tri(&["0", "1", "2"])
            })
        );
        assert_eq!(check_scaled_map(&id, &sharp, &sharp), Ok(()));
    }

    #[test]
    fn add_thin_makes_sharp() {
        let d2 = standard_simplex(2);
        let flat = ScaledComplex::flat(d2.clone());
        assert_eq!(
            flat.add_thin([tri(&["0", "1", "2"])]).unwrap(),
            ScaledComplex::sharp(d2)
        );
        assert_eq!(flat.add_thin([]).unwrap(), flat);
    }

    #[test]
    fn restriction_to_point_is_flat() {
        let d2 = ScaledComplex::sharp(standard_simplex(2));
        let pt = OrderedComplex::simplex(&["1"]);
        let r = restrict_scaling(&pt, &d2).unwrap();
        assert!(r.thin().is_empty());
        assert_eq!(restrict_scaling(d2.complex(), &d2).unwrap(), d2);
    }

    #[test]
    fn shadow_collapses_edge() {
        let body = ScaledComplex::sharp(standard_simplex(2));
        let c = Collapsed::new(
            body,
            [(Vertex::new("0"), Vertex::new("1"))].into_iter().collect(),
        )
        .unwrap();
        let q = c.shadow().unwrap();
        assert_eq!(q.complex(), &OrderedComplex::simplex(&["0", "2"]));
    }
}
