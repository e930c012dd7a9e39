use std::collections::BTreeSet;

use super::{OrderedComplex, Simplex, Vertex};
use crate::error::{input, Result};

/// A finite partial order with labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<Vertex>,
    leq: Vec<Vec<bool>>,
}

/// Expression language for the posets used in the tower constructions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetExpr {
    Delta(usize),
    Product(Box<PosetExpr>, Box<PosetExpr>),
    OrdinalSum(Vec<PosetExpr>),
    Reverse(Box<PosetExpr>),
}

impl PosetExpr {
    pub fn delta(n: usize) -> Self {
        PosetExpr::Delta(n)
    }

    pub fn product(p: PosetExpr, q: PosetExpr) -> Self {
        PosetExpr::Product(Box::new(p), Box::new(q))
    }

    pub fn ordinal_sum(parts: Vec<PosetExpr>) -> Self {
        PosetExpr::OrdinalSum(parts)
    }

    pub fn reverse(p: PosetExpr) -> Self {
        PosetExpr::Reverse(Box::new(p))
    }
}

impl FinitePoset {
    /// Builds a poset from labels and a relation matrix, checking the axioms.
    pub fn new(elements: Vec<Vertex>, leq: Vec<Vec<bool>>) -> Result<Self> {
        let n = elements.len();
        if leq.len() != n || leq.iter().any(|row| row.len() != n) {
            return input("relation matrix has the wrong shape");
        }
        if elements.iter().collect::<BTreeSet<_>>().len() != n {
            return input("poset labels are not distinct");
        }
        for a in 0..n {
            if !leq[a][a] {
                return input(format!("relation is not reflexive at {}", elements[a]));
            }
            for b in 0..n {
                if a != b && leq[a][b] && leq[b][a] {
                    return input(format!(
                        "{} and {} violate antisymmetry",
                        elements[a], elements[b]
                    ));
                }
                for c in 0..n {
                    if leq[a][b] && leq[b][c] && !leq[a][c] {
                        return input("relation is not transitive");
                    }
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// Builds a poset from labels and a comparison function.
    pub fn from_fn<F: Fn(usize, usize) -> bool>(elements: Vec<Vertex>, le: F) -> Result<Self> {
        let n = elements.len();
        let leq = (0..n).map(|a| (0..n).map(|b| le(a, b)).collect()).collect();
        FinitePoset::new(elements, leq)
    }

    pub fn elements(&self) -> &[Vertex] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn index_of(&self, v: &Vertex) -> Option<usize> {
        self.elements.iter().position(|w| w == v)
    }

    fn reversed(&self) -> FinitePoset {
        let n = self.len();
        let leq = (0..n)
            .map(|a| (0..n).map(|b| self.leq[b][a]).collect())
            .collect();
        FinitePoset {
            elements: self.elements.clone(),
            leq,
        }
    }
}

/// Evaluates a poset expression.
///
/// Labels: `delta(n)` uses "0".."n"; products use "(a,b)"; ordinal sums
/// prefix the block index as "j:a"; reversal keeps labels.
pub fn build_poset(expr: &PosetExpr) -> Result<FinitePoset> {
    match expr {
        PosetExpr::Delta(n) => {
            let els = (0..=*n).map(|k| Vertex::new(k.to_string())).collect();
            FinitePoset::from_fn(els, |a, b| a <= b)
        }
        PosetExpr::Product(p, q) => {
            let p = build_poset(p)?;
            let q = build_poset(q)?;
            let mut els = Vec::new();
            let mut idx = Vec::new();
            for a in 0..p.len() {
                for b in 0..q.len() {
                    els.push(Vertex::new(format!(
                        "({},{})",
                        p.elements[a], q.elements[b]
                    )));
                    idx.push((a, b));
                }
            }
            FinitePoset::from_fn(els, |x, y| {
                p.le(idx[x].0, idx[y].0) && q.le(idx[x].1, idx[y].1)
            })
        }
        PosetExpr::OrdinalSum(parts) => {
            if parts.is_empty() {
                return input("ordinal sum of no posets");
            }
            let built = parts.iter().map(build_poset).collect::<Result<Vec<_>>>()?;
            let mut els = Vec::new();
            let mut idx = Vec::new();
            for (j, p) in built.iter().enumerate() {
                for a in 0..p.len() {
                    els.push(Vertex::new(format!("{j}:{}", p.elements[a])));
                    idx.push((j, a));
                }
            }
            FinitePoset::from_fn(els, |x, y| {
                let ((bx, ax), (by, ay)) = (idx[x], idx[y]);
                bx < by || (bx == by && built[bx].le(ax, ay))
            })
        }
        PosetExpr::Reverse(p) => Ok(build_poset(p)?.reversed()),
    }
}

/// The nerve: all nonempty strictly increasing chains.
pub fn nerve(p: &FinitePoset) -> OrderedComplex {
    let mut out = BTreeSet::new();
    let mut chain: Vec<usize> = Vec::new();
    fn extend(p: &FinitePoset, chain: &mut Vec<usize>, out: &mut BTreeSet<Simplex>) {
        out.insert(Simplex::new(
            chain.iter().map(|&a| p.elements[a].clone()).collect(),
        ));
        let last = *chain.last().expect("nonempty chain");
        for b in 0..p.len() {
            if p.lt(last, b) {
                chain.push(b);
                extend(p, chain, out);
                chain.pop();
            }
        }
    }
    for a in 0..p.len() {
        chain.push(a);
        extend(p, &mut chain, &mut out);
        chain.pop();
    }
    OrderedComplex::from_closed_unchecked(out)
}
