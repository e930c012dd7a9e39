use std::collections::BTreeSet;

use super::{boundary_face_complex, ts, Face, Tower};
use crate::complex::{build_poset, nerve, OrderedComplex, PosetExpr, Simplex, Vertex};
use crate::error::{input, Result};
use crate::scaling::{restrict_scaling, scale, Collapsed, Edge, ScaledComplex, Scaling};

/// Δ¹×Δ¹ with the single thin triangle (00,10,11): the oplax square.
pub fn oplax_square() -> ScaledComplex {
    let sq = nerve(
        &build_poset(&PosetExpr::product(
            PosetExpr::delta(1),
            PosetExpr::delta(1),
        ))
        .expect("square"),
    );
    let thin = [Simplex::from_labels(&["(0,0)", "(1,0)", "(1,1)"])]
        .into_iter()
        .collect();
    scale(&sq, Scaling::Explicit(thin)).expect("square triangle")
}

/// The six extra thin triangles of w̃TS¹, in simplex order.
pub fn tilde_extras() -> Vec<Simplex> {
    [
        ["000", "001", "011"],
        ["010", "110", "111"],
        ["000", "101", "100"],
        ["101", "100", "111"],
        ["000", "001", "111"],
        ["000", "110", "111"],
    ]
    .iter()
    .map(|t| Simplex::from_labels(t))
    .collect()
}

/// w̃TS¹: TS¹ with six more thin triangles.
pub fn tilde_ts1() -> ScaledComplex {
    ts(1)
        .scaled
        .add_thin(tilde_extras())
        .expect("the extra triangles are 2-simplices")
}

/// Which scaling FSR and the θ-complexes inherit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WScaling {
    #[default]
    Tilde,
    Plain,
}

impl WScaling {
    fn ambient(self) -> ScaledComplex {
        match self {
            WScaling::Tilde => tilde_ts1(),
            WScaling::Plain => ts(1).scaled,
        }
    }
}

/// The column image d^i(TS⁰) inside TS¹ (dⁱ skips column i).
pub fn coface_column(i: usize) -> Result<OrderedComplex> {
    Ok(super::coface(Tower::Full, 0, i)?.map().image())
}

/// FSRⁱ = ∂^F TS¹ ∪ dⁱ(TS⁰) ∪ ∂^R TS¹ with the chosen induced scaling.
pub fn fsr(i: usize, scaling: WScaling) -> Result<ScaledComplex> {
    if i > 1 {
        return input(format!("FSR^i needs i in {{0, 1}}, got {i}"));
    }
    let body = boundary_face_complex(1, Face::F)
        .union(&coface_column(i)?)?
        .union(&boundary_face_complex(1, Face::R))?;
    restrict_scaling(&body, &scaling.ambient())
}

/// The chain objects of the θᵢ argument.
#[derive(Debug, Clone)]
pub struct ThetaComplexes {
    pub i: usize,
    pub edge: Edge,
    pub e: [Collapsed; 3],
    pub f: [ScaledComplex; 3],
    pub g: [ScaledComplex; 3],
}

impl ThetaComplexes {
    pub fn source(&self) -> &Collapsed {
        &self.e[0]
    }

    pub fn target(&self) -> &Collapsed {
        &self.e[2]
    }
}

fn span_in(
    ambient: &ScaledComplex,
    base: &OrderedComplex,
    extra: &[&[&str]],
) -> Result<ScaledComplex> {
    let mut body = base.clone();
    for s in extra {
        body = body.union(&OrderedComplex::simplex(s))?;
    }
    restrict_scaling(&body, ambient)
}

/// E₀ → E₁ → E₂ and the F/G waypoints for θᵢ. Both cases use the same
/// four 3-simplices; θ₀ collapses (110,111) instead of (000,001).
pub fn theta_complexes(i: usize) -> Result<ThetaComplexes> {
    let edge = match i {
        0 => (Vertex::new("110"), Vertex::new("111")),
        1 => (Vertex::new("000"), Vertex::new("001")),
        _ => return input(format!("θ_i needs i in {{0, 1}}, got {i}")),
    };
    let w = tilde_ts1();
    let f0 = fsr(i, WScaling::Tilde)?;
    let minus = super::ts_minus_complex(1);
    let f1 = span_in(&w, f0.complex(), &[&["000", "100", "110", "111"]])?;
    let f2 = span_in(&w, f1.complex(), &[&["000", "101", "100", "111"]])?;
    let g0 = restrict_scaling(&f0.complex().union(&minus)?, &w)?;
    let g1 = span_in(&w, g0.complex(), &[&["000", "010", "110", "111"]])?;
    let g2 = span_in(&w, g1.complex(), &[&["000", "010", "011", "111"]])?;
    let coll: BTreeSet<Edge> = [edge.clone()].into_iter().collect();
    let e = [
        Collapsed::new(f0.clone(), coll.clone())?,
        Collapsed::new(g0.clone(), coll.clone())?,
        Collapsed::new(w, coll)?,
    ];
    Ok(ThetaComplexes {
        i,
        edge,
        e,
        f: [f0, f1, f2],
        g: [g0, g1, g2],
    })
}
