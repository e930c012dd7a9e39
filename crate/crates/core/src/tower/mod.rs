//! The twisted-square cosimplicial objects and their subcomplexes.
//!
//! Vertices are labelled "ijk": a row (00, 01, 10 or 11) followed by a
//! column index. The plus part lives on rows 00/01/11 as the nerve of
//! [2]×[n]; the minus part on rows 00/10/11 inside the join
//! Δⁿ⋆Δ^{n,op}⋆Δⁿ, where row 10 runs backwards.

mod audit;
mod completeness;
mod cosimplicial;

pub use audit::{minus_family_member, plus_family_member, thin_audit, ThinAuditReport};
pub use completeness::{
    coface_column, fsr, oplax_square, theta_complexes, tilde_extras, tilde_ts1, ThetaComplexes,
    WScaling,
};
pub use cosimplicial::{
    check_tower_identities, codegeneracy, coface, consecutive_images, cosegal_source, latching,
    rev_duality_check, IdentityReport, LatchingReport, Tower,
};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::complex::{
    glue_pushout, nerve, ComplexMap, FinitePoset, OrderedComplex, Simplex, Vertex, VertexMap,
};
use crate::error::{input, Error, Result};
use crate::scaling::{restrict_scaling, ScaledComplex, ScaledMap};

/// Row of a TS vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Row {
    R00,
    R01,
    R10,
    R11,
}

impl Row {
    pub fn bits(self) -> &'static str {
        match self {
            Row::R00 => "00",
            Row::R01 => "01",
            Row::R10 => "10",
            Row::R11 => "11",
        }
    }

    fn parse(s: &str) -> Option<Row> {
        match s {
            "00" => Some(Row::R00),
            "01" => Some(Row::R01),
            "10" => Some(Row::R10),
            "11" => Some(Row::R11),
            _ => None,
        }
    }
}

/// Rows of Δ²×Δⁿ in the plus labelling, indexed by 0, 1, 2.
pub const PLUS_ROWS: [Row; 3] = [Row::R00, Row::R01, Row::R11];
/// Rows after Ω.
pub const MINUS_ROWS: [Row; 3] = [Row::R00, Row::R10, Row::R11];

pub fn label(row: Row, k: usize) -> Vertex {
    Vertex::new(format!("{}{k}", row.bits()))
}

pub fn parse_label(v: &Vertex) -> Option<(Row, usize)> {
    let s = v.as_str();
    if s.len() < 3 || !s.is_char_boundary(2) {
        return None;
    }
    let row = Row::parse(&s[..2])?;
    let k = s[2..].parse().ok()?;
    Some((row, k))
}

pub(crate) fn parts(v: &Vertex) -> (Row, usize) {
    parse_label(v).unwrap_or_else(|| panic!("{v} is not a TS label"))
}

/// Position of a vertex in the join order Δⁿ⋆Δ^{n,op}⋆Δⁿ.
pub fn join_key(v: &Vertex) -> (u8, i64) {
    let (row, k) = parts(v);
    match row {
        Row::R00 => (0, k as i64),
        Row::R10 => (1, -(k as i64)),
        Row::R11 => (2, k as i64),
        Row::R01 => panic!("row 01 is not in the join"),
    }
}

pub(crate) fn sort_join(mut vs: Vec<Vertex>) -> Simplex {
    vs.sort_by_key(join_key);
    Simplex::new(vs)
}

/// Which part of TSⁿ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TsPart {
    Plus,
    Minus,
    Full,
}

impl FromStr for TsPart {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" => Ok(TsPart::Plus),
            "minus" => Ok(TsPart::Minus),
            "full" => Ok(TsPart::Full),
            _ => input(format!("unknown part {s}")),
        }
    }
}

/// Column complexes: subcomplexes of Δⁿ on the labels "0".."n".
pub mod columns {
    use super::*;
    use crate::complex::{horn, index_labels, standard_simplex};

    pub fn full(n: usize) -> OrderedComplex {
        standard_simplex(n)
    }

    pub fn inner_horn(n: usize, i: usize) -> Result<OrderedComplex> {
        horn(
            &index_labels(n),
            &[Vertex::new(i.to_string())].into_iter().collect(),
            false,
        )
    }

    pub fn boundary(n: usize) -> Result<OrderedComplex> {
        horn(&index_labels(n), &BTreeSet::new(), true)
    }

    pub fn spine(n: usize) -> OrderedComplex {
        let edges = (0..n).map(|k| Simplex::from_labels(&[k.to_string(), (k + 1).to_string()]));
        let points = [Simplex::from_labels(&["0"])];
        OrderedComplex::from_simplices(points.into_iter().chain(edges)).expect("spine")
    }

    /// Column complex spanned by the given column sets.
    pub fn spanned(sets: &[Vec<usize>]) -> OrderedComplex {
        OrderedComplex::from_simplices(
            sets.iter()
                .map(|s| Simplex::new(s.iter().map(|k| Vertex::new(k.to_string())).collect())),
        )
        .expect("increasing column sets")
    }

    pub(crate) fn sets(k: &OrderedComplex) -> BTreeSet<Vec<usize>> {
        k.simplices()
            .iter()
            .map(|s| {
                let mut v: Vec<usize> = s
                    .vertices()
                    .iter()
                    .map(|x| x.as_str().parse().expect("column label"))
                    .collect();
                v.sort();
                v
            })
            .collect()
    }
}

/// The grid poset [2]×[n] with plus labels.
fn grid_poset(n: usize) -> FinitePoset {
    let mut els = Vec::new();
    let mut idx = Vec::new();
    for (a, row) in PLUS_ROWS.iter().enumerate() {
        for k in 0..=n {
            els.push(label(*row, k));
            idx.push((a, k));
        }
    }
    FinitePoset::from_fn(els, |x, y| idx[x].0 <= idx[y].0 && idx[x].1 <= idx[y].1)
        .expect("grid order")
}

/// nerve([2]×[n]) with plus labels.
pub fn grid_nerve(n: usize) -> OrderedComplex {
    nerve(&grid_poset(n))
}

fn plus_row_index(row: Row) -> usize {
    match row {
        Row::R00 => 0,
        Row::R01 => 1,
        Row::R11 => 2,
        Row::R10 => panic!("row 10 is not a plus row"),
    }
}

/// The subcomplex of nerve([2]×[n]) of simplices whose row set lies in one
/// of `row_faces` and whose column set is a simplex of `cols`; this is
/// (⋃ Δ^{face}) × K.
pub fn grid_sub(n: usize, row_faces: &[&[usize]], cols: &OrderedComplex) -> OrderedComplex {
    let col_sets = columns::sets(cols);
    grid_nerve(n).filter(|s| {
        let rows: BTreeSet<usize> = s
            .vertices()
            .iter()
            .map(|v| plus_row_index(parts(v).0))
            .collect();
        let mut cs: Vec<usize> = s.vertices().iter().map(|v| parts(v).1).collect();
        cs.dedup();
        row_faces.iter().any(|f| rows.iter().all(|r| f.contains(r))) && col_sets.contains(&cs)
    })
}

/// Ω: relabel row 01 as 10 and re-sort by the join order.
pub fn omega(k: &OrderedComplex, n: usize) -> Result<(OrderedComplex, VertexMap)> {
    let ambient = grid_nerve(n);
    if !k.is_subcomplex_of(&ambient) {
        return input("Ω needs a subcomplex of nerve([2]×[n])");
    }
    let vmap: VertexMap = k
        .vertices()
        .iter()
        .map(|v| {
            let (row, c) = parts(v);
            let row = if row == Row::R01 { Row::R10 } else { row };
            (v.clone(), label(row, c))
        })
        .collect();
    let image: BTreeSet<Simplex> = k
        .simplices()
        .iter()
        .map(|s| sort_join(s.map(&vmap).expect("mapped").vertices().to_vec()))
        .collect();
    let out = OrderedComplex::from_closed_unchecked(image);
    out.validate()?;
    Ok((out, vmap))
}

fn omega_of(k: &OrderedComplex, n: usize) -> OrderedComplex {
    omega(k, n).expect("grid subcomplex").0
}

fn same_row_triangles(rows: &[Row], n: usize, out: &mut Vec<[Vertex; 3]>) {
    for &row in rows {
        for k in 0..=n {
            for k1 in k + 1..=n {
                for k2 in k1 + 1..=n {
                    out.push([label(row, k), label(row, k1), label(row, k2)]);
                }
            }
        }
    }
}

/// Members of the plus thin families, as vertex triples.
pub fn plus_families(n: usize) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    same_row_triangles(&PLUS_ROWS, n, &mut out);
    for k in 0..=n {
        for k1 in k..=n {
            for k2 in k1..=n {
                if k1 < k2 {
                    out.push([label(Row::R00, k), label(Row::R01, k1), label(Row::R01, k2)]);
                }
                if k < k1 {
                    out.push([label(Row::R01, k), label(Row::R01, k1), label(Row::R11, k2)]);
                }
                out.push([label(Row::R00, k), label(Row::R01, k1), label(Row::R11, k2)]);
            }
        }
    }
    out
}

/// Members of the minus thin families, as vertex triples.
pub fn minus_families(n: usize) -> Vec<[Vertex; 3]> {
    let mut out = Vec::new();
    same_row_triangles(&MINUS_ROWS, n, &mut out);
    for k in 0..=n {
        for k1 in k..=n {
            for k2 in k1..=n {
                if k < k1 {
                    out.push([label(Row::R00, k), label(Row::R00, k1), label(Row::R10, k2)]);
                }
                if k1 < k2 {
                    out.push([label(Row::R10, k), label(Row::R11, k1), label(Row::R11, k2)]);
                }
            }
        }
    }
    out
}

fn thin_from(
    complex: OrderedComplex,
    triples: Vec<[Vertex; 3]>,
    join: bool,
) -> Result<ScaledComplex> {
    let thin = triples
        .into_iter()
        .map(|t| {
            if join {
                sort_join(t.to_vec())
            } else {
                Simplex::new(t.to_vec())
            }
        })
        .collect::<BTreeSet<_>>();
    ScaledComplex::new(complex, thin).map_err(|e| Error::AuditFailure(e.to_string()))
}

pub fn ts_plus(n: usize) -> ScaledComplex {
    thin_from(grid_nerve(n), plus_families(n), false).expect("plus families are 2-simplices")
}

/// σ̄(k,k'): the maximal simplex {00 0..k, 10 k..k', 11 k'..n} in join order.
pub fn minus_maximal(n: usize, k: usize, k1: usize) -> Simplex {
    let mut vs: Vec<Vertex> = (0..=k).map(|j| label(Row::R00, j)).collect();
    vs.extend((k..=k1).map(|j| label(Row::R10, j)));
    vs.extend((k1..=n).map(|j| label(Row::R11, j)));
    sort_join(vs)
}

pub fn ts_minus_complex(n: usize) -> OrderedComplex {
    let gens = (0..=n).flat_map(|k| (k..=n).map(move |k1| minus_maximal(n, k, k1)));
    OrderedComplex::from_simplices(gens).expect("join chains")
}

pub fn ts_minus(n: usize) -> ScaledComplex {
    thin_from(ts_minus_complex(n), minus_families(n), true).expect("minus families are 2-simplices")
}

/// TSⁿ with its two canonical inclusions.
#[derive(Debug, Clone)]
pub struct TsObject {
    pub scaled: ScaledComplex,
    pub plus: ScaledComplex,
    pub minus: ScaledComplex,
    pub from_plus: ComplexMap,
    pub from_minus: ComplexMap,
}

/// The prism Δ¹×Δⁿ on rows 00/11 along which the two parts are glued.
pub fn glue_prism(n: usize) -> OrderedComplex {
    grid_sub(n, &[&[0, 2]], &columns::full(n))
}

pub fn ts(n: usize) -> TsObject {
    let plus = ts_plus(n);
    let minus = ts_minus(n);
    let prism = glue_prism(n);
    let id: VertexMap = prism
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    let glued = glue_pushout(plus.complex(), minus.complex(), &prism, &id, &id).expect("TS glue");
    let thin = plus.thin().union(minus.thin()).cloned().collect();
    let scaled = ScaledComplex::new(glued.complex, thin).expect("thin triangles");
    TsObject {
        scaled,
        plus,
        minus,
        from_plus: glued.from_b,
        from_minus: glued.from_c,
    }
}

/// TS(K) = (Δ²×K) ∪ Ω(Δ²×K) for a column complex K, with scaling induced from TSⁿ.
pub fn ts_of(n: usize, cols: &OrderedComplex) -> ScaledComplex {
    let p = grid_sub(n, &[&[0, 1, 2]], cols);
    let m = omega_of(&p, n);
    let body = p.union(&m).expect("common ambient");
    restrict_scaling(&body, &ts(n).scaled).expect("subcomplex")
}

/// The four boundary faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Face {
    T,
    F,
    R,
    B,
}

impl FromStr for Face {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "T" => Ok(Face::T),
            "F" => Ok(Face::F),
            "R" => Ok(Face::R),
            "B" => Ok(Face::B),
            _ => input(format!("unknown face {s}")),
        }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Face::T => "T",
            Face::F => "F",
            Face::R => "R",
            Face::B => "B",
        };
        f.write_str(s)
    }
}

pub fn boundary_face_complex(n: usize, face: Face) -> OrderedComplex {
    let full = columns::full(n);
    match face {
        Face::T => grid_sub(n, &[&[0, 1]], &full),
        Face::F => grid_sub(n, &[&[1, 2]], &full),
        Face::R => omega_of(&grid_sub(n, &[&[0, 1]], &full), n),
        Face::B => omega_of(&grid_sub(n, &[&[1, 2]], &full), n),
    }
}

pub fn boundary_face(n: usize, face: Face) -> (ScaledComplex, ScaledMap) {
    let ambient = ts(n).scaled;
    let sub =
        restrict_scaling(&boundary_face_complex(n, face), &ambient).expect("face is a subcomplex");
    let inc = ScaledMap::inclusion(&sub, &ambient).expect("inclusion");
    (sub, inc)
}

/// The horn-shaped subcomplexes used by the inner-horn lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HornVariant {
    /// Λⁿᵢ TS = (Δ²×Λⁿᵢ) ∪ Ω(Δ²×Λⁿᵢ).
    Full,
    /// Λⁿᵢ TS₊ = Δ²×Λⁿᵢ.
    Plus,
    /// Λ̂ⁿᵢ TS₋ = Ω((Δ²×Λⁿᵢ) ∪ (Δ^{02}×Δⁿ)).
    HatMinus,
    /// Λ̄ⁿᵢ TS₊ = Λⁿᵢ TS₊ ∪ (Λ²₁×Δⁿ).
    BarPlus,
    /// Λ̄ⁿᵢ TS₋ = Λ̂ⁿᵢ TS₋ ∪ Ω(Λ²₁×Δⁿ).
    BarMinus,
}

impl FromStr for HornVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(HornVariant::Full),
            "plus" => Ok(HornVariant::Plus),
            "hat_minus" | "hat-minus" => Ok(HornVariant::HatMinus),
            "bar_plus" | "bar-plus" => Ok(HornVariant::BarPlus),
            "bar_minus" | "bar-minus" => Ok(HornVariant::BarMinus),
            _ => input(format!("unknown horn variant {s}")),
        }
    }
}

pub fn horn_variants(n: usize, i: usize, which: HornVariant) -> Result<ScaledComplex> {
    if !(0 < i && i < n) {
        return input(format!("horn variants need 0 < i < n, got n={n}, i={i}"));
    }
    let horn = columns::inner_horn(n, i)?;
    let full = columns::full(n);
    let plus = grid_sub(n, &[&[0, 1, 2]], &horn);
    let lambda21 = grid_sub(n, &[&[0, 1], &[1, 2]], &full);
    let hat = || -> OrderedComplex {
        let base = plus.union(&grid_sub(n, &[&[0, 2]], &full)).expect("grid");
        omega_of(&base, n)
    };
    let body = match which {
        HornVariant::Plus => plus.clone(),
        HornVariant::Full => plus.union(&omega_of(&plus, n))?,
        HornVariant::HatMinus => hat(),
        HornVariant::BarPlus => plus.union(&lambda21)?,
        HornVariant::BarMinus => hat().union(&omega_of(&lambda21, n))?,
    };
    restrict_scaling(&body, &ts(n).scaled)
}
