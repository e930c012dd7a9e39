//! The scaled anodyne generators and the generalized-horn criterion.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{
    index_labels, standard_horn, standard_simplex, OrderedComplex, Simplex, Vertex,
};
use crate::error::{input, Result};
use crate::scaling::{Collapsed, Edge, ScaledComplex, ScaledMap};

/// Generator parameters. All generators live on the labels "0".."r".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum GeneratorKind {
    An1 {
        n: usize,
        i: usize,
    },
    An2,
    An3 {
        n: usize,
    },
    GenHorn {
        r: usize,
        m: Vec<usize>,
        thin: Vec<[usize; 3]>,
    },
    /// `Λⁿ_{0,♯} ⊔_{Δ^{01}♯} Δ⁰ → Δⁿ_♯ ⊔_{Δ^{01}♯} Δ⁰`, admitted only in
    /// trivial-cofibration certificates.
    SpecialTC {
        n: usize,
    },
}

impl GeneratorKind {
    pub fn name(&self) -> &'static str {
        match self {
            GeneratorKind::An1 { .. } => "An1",
            GeneratorKind::An2 => "An2",
            GeneratorKind::An3 { .. } => "An3",
            GeneratorKind::GenHorn { .. } => "GenHorn",
            GeneratorKind::SpecialTC { .. } => "SpecialTC",
        }
    }

    pub fn is_trivial_cofibration_only(&self) -> bool {
        matches!(self, GeneratorKind::SpecialTC { .. })
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::An1 { n, i } => write!(f, "An1(n={n}, i={i})"),
            GeneratorKind::An2 => write!(f, "An2"),
            GeneratorKind::An3 { n } => write!(f, "An3(n={n})"),
            GeneratorKind::GenHorn { r, m, .. } => write!(f, "GenHorn(r={r}, M={m:?})"),
            GeneratorKind::SpecialTC { n } => write!(f, "SpecialTC(n={n})"),
        }
    }
}

/// A built generator: source and target bodies on "0".."r", the edge
/// collapsed in both (An3 and SpecialTC), and the generalized-horn witness.
#[derive(Debug, Clone)]
pub struct GeneratorInstance {
    pub kind: GeneratorKind,
    pub source: ScaledComplex,
    pub target: ScaledComplex,
    pub collapsed_edge: Option<Edge>,
    pub witness: Option<usize>,
}

/// Outcome of the generalized-horn criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Admissibility {
    Witness(usize),
    Violation(String),
}

impl Admissibility {
    pub fn witness(&self) -> Option<usize> {
        match self {
            Admissibility::Witness(s) => Some(*s),
            Admissibility::Violation(_) => None,
        }
    }
}

fn tri(p: [usize; 3]) -> Simplex {
    Simplex::new(p.iter().map(|k| Vertex::new(k.to_string())).collect())
}

fn v(k: usize) -> Vertex {
    Vertex::new(k.to_string())
}

/// Decides whether `Λ^r_M → Δ^r` with the given scaling on Δ^r meets the
/// generalized-horn lemma's hypotheses, returning the witness `s`.
pub fn gen_horn_admissible(
    r: usize,
    m: &BTreeSet<usize>,
    thin: &BTreeSet<[usize; 3]>,
) -> Result<Admissibility> {
    if r < 3 {
        return input(format!("generalized horns need r >= 3, got {r}"));
    }
    let Some(&t) = m.iter().next_back() else {
        return input("M must be nonempty");
    };
    if t >= r {
        return input(format!("M must lie in 0..{}, got {t}", r - 1));
    }
    if m.len() > r - 2 {
        return Ok(Admissibility::Violation(format!(
            "|M| = {} exceeds r - 2 = {}",
            m.len(),
            r - 2
        )));
    }
    let mut s = t;
    loop {
        if s == 0 {
            return Ok(Admissibility::Violation(format!(
                "no s below the run of M ending at t = {t}"
            )));
        }
        s -= 1;
        if !m.contains(&s) {
            break;
        }
    }
    if m.len() == r - 2 {
        let rest: Vec<usize> = (0..=r).filter(|p| !m.contains(p)).collect();
        let rest = [rest[0], rest[1], rest[2]];
        if thin.contains(&rest) {
            return Ok(Admissibility::Violation(format!(
                "the triangle {rest:?} opposite M is thin"
            )));
        }
    }
    for i in s..t {
        if !thin.contains(&[i, t, t + 1]) {
            return Ok(Admissibility::Violation(format!(
                "thin-run triangle [{i}, {t}, {}] is not thin",
                t + 1
            )));
        }
    }
    Ok(Admissibility::Witness(s))
}

/// All triangles of Δ^r as position triples.
pub fn position_triangles(r: usize) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for a in 0..=r {
        for b in a + 1..=r {
            for c in b + 1..=r {
                out.push([a, b, c]);
            }
        }
    }
    out
}

fn restricted(
    body: &OrderedComplex,
    thin: impl IntoIterator<Item = Simplex>,
) -> Result<ScaledComplex> {
    let thin = thin.into_iter().filter(|t| body.contains(t)).collect();
    ScaledComplex::new(body.clone(), thin)
}

/// The An2 thin set T.
pub const AN2_T: [[usize; 3]; 5] = [[0, 2, 4], [1, 2, 3], [0, 1, 3], [1, 3, 4], [0, 1, 2]];
/// Triangles An2 adds.
pub const AN2_NEW: [[usize; 3]; 2] = [[0, 3, 4], [0, 1, 4]];

pub fn instantiate(kind: &GeneratorKind) -> Result<GeneratorInstance> {
    let one = |k: usize| -> BTreeSet<usize> { [k].into_iter().collect() };
    let collapse01 = Some((v(0), v(1)));
    let (source, target, collapsed_edge, witness) = match kind {
        GeneratorKind::An1 { n, i } => {
            if !(0 < *i && i < n) {
                return input(format!("An1 needs 0 < i < n, got n={n}, i={i}"));
            }
            let thin = [tri([i - 1, *i, i + 1])];
            let src = restricted(&standard_horn(*n, &one(*i))?, thin.clone())?;
            let tgt = restricted(&standard_simplex(*n), thin)?;
            (src, tgt, None, None)
        }
        GeneratorKind::An2 => {
            let body = standard_simplex(4);
            let src = restricted(&body, AN2_T.map(tri))?;
            let tgt = restricted(&body, AN2_T.into_iter().chain(AN2_NEW).map(tri))?;
            (src, tgt, None, None)
        }
        GeneratorKind::An3 { n } => {
            if *n <= 2 {
                return input(format!("An3 needs n > 2, got {n}"));
            }
            let thin = [tri([0, 1, *n])];
            let src = restricted(&standard_horn(*n, &one(0))?, thin.clone())?;
            let tgt = restricted(&standard_simplex(*n), thin)?;
            (src, tgt, collapse01, None)
        }
        GeneratorKind::GenHorn { r, m, thin } => {
            let mset: BTreeSet<usize> = m.iter().copied().collect();
            if mset.len() != m.len() {
                return input("GenHorn M repeats an index");
            }
            let tset: BTreeSet<[usize; 3]> = thin.iter().copied().collect();
            for t in &tset {
                if !(t[0] < t[1] && t[1] < t[2] && t[2] <= *r) {
                    return input(format!(
                        "GenHorn thin triple {t:?} is not a triangle of the {r}-simplex"
                    ));
                }
            }
            let s = match gen_horn_admissible(*r, &mset, &tset)? {
                Admissibility::Witness(s) => s,
                Admissibility::Violation(why) => {
                    return input(format!("GenHorn inadmissible: {why}"))
                }
            };
            let src = restricted(&standard_horn(*r, &mset)?, tset.iter().map(|&t| tri(t)))?;
            let tgt = restricted(&standard_simplex(*r), tset.iter().map(|&t| tri(t)))?;
            (src, tgt, None, Some(s))
        }
        GeneratorKind::SpecialTC { n } => {
            if *n < 2 {
                return input(format!("SpecialTC needs n >= 2, got {n}"));
            }
            let src = ScaledComplex::sharp(standard_horn(*n, &one(0))?);
            let tgt = ScaledComplex::sharp(standard_simplex(*n));
            (src, tgt, collapse01, None)
        }
    };
    Ok(GeneratorInstance {
        kind: kind.clone(),
        source,
        target,
        collapsed_edge,
        witness,
    })
}

impl GeneratorInstance {
    pub fn dim(&self) -> usize {
        self.target.complex().dim().expect("nonempty generator")
    }

    pub fn vertices(&self) -> Vec<Vertex> {
        index_labels(self.dim())
    }

    /// The inclusion of the source body into the target body.
    pub fn inclusion(&self) -> Result<ScaledMap> {
        ScaledMap::inclusion(&self.source, &self.target)
    }

    /// Simplices of the target not in the source.
    pub fn interior(&self) -> Vec<Simplex> {
        self.target
            .complex()
            .simplices()
            .iter()
            .filter(|s| !self.source.complex().contains(s))
            .cloned()
            .collect()
    }

    /// Source and target as collapsed objects.
    pub fn collapsed_pair(&self) -> (Collapsed, Collapsed) {
        let edges: BTreeSet<Edge> = self.collapsed_edge.iter().cloned().collect();
        (
            Collapsed {
                body: self.source.clone(),
                collapsed: edges.clone(),
            },
            Collapsed {
                body: self.target.clone(),
                collapsed: edges,
            },
        )
    }

    /// Deduplicated quotients of source and target (the edge 0–1 sent to 0).
    pub fn quotient_shadow(&self) -> Result<(ScaledComplex, ScaledComplex)> {
        let (s, t) = self.collapsed_pair();
        Ok((s.shadow()?, t.shadow()?))
    }
}
