use std::collections::{BTreeMap, BTreeSet};

use super::{ComplexMap, OrderedComplex, Simplex, Vertex, VertexMap};

/// Whether an isomorphism keeps or reverses the vertex order of simplices.
/// A reversing isomorphism `K → L` is an ordinary isomorphism `K → L^op`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Orientation {
    #[default]
    Preserving,
    Reversing,
}

/// Backtracking search for a vertex bijection inducing a bijection of tuples.
///
/// For `Reversing`, the returned map has target `L.opposite()`.
pub fn find_isomorphism(
    k: &OrderedComplex,
    l: &OrderedComplex,
    hint: &VertexMap,
    orientation: Orientation,
) -> Option<ComplexMap> {
    find_isomorphism_with(k, l, hint, orientation, &|_, _| true)
}

/// As [`find_isomorphism`], with an extra predicate every simplex pair
/// `(s, f(s))` must satisfy (used to respect scalings).
pub fn find_isomorphism_with(
    k: &OrderedComplex,
    l: &OrderedComplex,
    hint: &VertexMap,
    orientation: Orientation,
    accept: &dyn Fn(&Simplex, &Simplex) -> bool,
) -> Option<ComplexMap> {
    if k.counts() != l.counts() {
        return None;
    }
    let target = match orientation {
        Orientation::Preserving => l.clone(),
        Orientation::Reversing => l.opposite(),
    };
    let sig_k = signatures(k);
    let sig_l = signatures(&target);

    // Hinted vertices first, then by decreasing degree.
    let mut order: Vec<Vertex> = k.vertices().iter().cloned().collect();
    order.sort_by_key(|v| {
        (
            !hint.contains_key(v),
            std::cmp::Reverse(sig_k[v].iter().sum::<usize>()),
        )
    });
    let pos: BTreeMap<&Vertex, usize> = order.iter().enumerate().map(|(p, v)| (v, p)).collect();
    // Simplices become checkable once their last vertex in `order` is assigned.
    let mut due: Vec<Vec<&Simplex>> = vec![Vec::new(); order.len()];
    for s in k.simplices() {
        let last = s
            .vertices()
            .iter()
            .map(|v| pos[v])
            .max()
            .expect("nonempty simplex");
        due[last].push(s);
    }

    let mut assign = VertexMap::new();
    let mut used = BTreeSet::new();
    let ctx = Ctx {
        order: &order,
        due: &due,
        hint,
        sig_k: &sig_k,
        sig_l: &sig_l,
        target: &target,
        accept,
    };
    if ctx.extend(0, &mut assign, &mut used) {
        ComplexMap::new(k.clone(), target, assign).ok()
    } else {
        None
    }
}

struct Ctx<'a> {
    order: &'a [Vertex],
    due: &'a [Vec<&'a Simplex>],
    hint: &'a VertexMap,
    sig_k: &'a BTreeMap<Vertex, Vec<usize>>,
    sig_l: &'a BTreeMap<Vertex, Vec<usize>>,
    target: &'a OrderedComplex,
    accept: &'a dyn Fn(&Simplex, &Simplex) -> bool,
}

impl Ctx<'_> {
    fn extend(&self, p: usize, assign: &mut VertexMap, used: &mut BTreeSet<Vertex>) -> bool {
        if p == self.order.len() {
            return true;
        }
        let v = &self.order[p];
        let candidates: Vec<Vertex> = match self.hint.get(v) {
            Some(w) => vec![w.clone()],
            None => self.target.vertices().iter().cloned().collect(),
        };
        for w in candidates {
            if used.contains(&w) || self.sig_l.get(&w) != Some(&self.sig_k[v]) {
                continue;
            }
            assign.insert(v.clone(), w.clone());
            used.insert(w.clone());
            let ok = self.due[p].iter().all(|s| {
                let img = s.map(assign).expect("assigned");
                self.target.contains(&img) && (self.accept)(s, &img)
            });
            if ok && self.extend(p + 1, assign, used) {
                return true;
            }
            assign.remove(v);
            used.remove(&w);
        }
        false
    }
}

/// Number of simplices of each dimension containing each vertex.
fn signatures(k: &OrderedComplex) -> BTreeMap<Vertex, Vec<usize>> {
    let width = k.dim().map_or(1, |d| d + 1);
    let mut out: BTreeMap<Vertex, Vec<usize>> = k
        .vertices()
        .iter()
        .map(|v| (v.clone(), vec![0; width]))
        .collect();
    for s in k.simplices() {
        for v in s.vertices() {
            out.get_mut(v).expect("vertex")[s.dim()] += 1;
        }
    }
    out
}
