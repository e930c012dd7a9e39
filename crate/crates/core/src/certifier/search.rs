//! Deterministic bounded search for a decomposition into generator steps.
//!
//! Moves are tried in a fixed order. A missing scaling mark that some An2
//! attachment can supply is taken first. Otherwise the missing simplices
//! are scanned by decreasing dimension, then canonically, and every
//! generator whose horn is exactly the present part of the simplex is
//! offered.

use std::collections::BTreeSet;

use super::verify::apply_step;
use super::{Attach, CertClass, Certificate, Step};
use crate::complex::{Simplex, Vertex, VertexMap};
use crate::config::DEFAULT_SEARCH_BUDGET;
use crate::generators::{
    gen_horn_admissible, position_triangles, Admissibility, GeneratorKind, AN2_NEW, AN2_T,
};
use crate::scaling::Collapsed;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Number of abandoned branches tolerated before giving up.
    pub budget: usize,
    /// Whether SpecialTC steps may be used.
    pub allow_special: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_SEARCH_BUDGET,
            allow_special: false,
        }
    }
}

impl SearchOptions {
    pub fn class(&self) -> CertClass {
        if self.allow_special {
            CertClass::TrivialCofibration
        } else {
            CertClass::ScaledAnodyne
        }
    }
}

fn labels_map(s: &Simplex) -> VertexMap {
    s.vertices()
        .iter()
        .enumerate()
        .map(|(p, v)| (Vertex::new(p.to_string()), v.clone()))
        .collect()
}

fn attach(gen: GeneratorKind, s: &Simplex, witness_s: Option<usize>) -> Step {
    Step::GeneratorPushout(Attach {
        gen,
        attach: labels_map(s),
        witness_s,
    })
}

/// A map Δ⁴ → X whose An2 pushout marks `tau`, if one exists.
pub fn an2_attach(cur: &Collapsed, tau: &Simplex) -> Option<VertexMap> {
    let want: BTreeSet<&Vertex> = tau.vertices().iter().collect();
    for rho in cur.body.complex().simplices() {
        if rho.len() < 3 || rho.len() > 5 || !want.iter().all(|v| rho.contains(v)) {
            continue;
        }
        let d = rho.len() - 1;
        for cuts in combinations(&[1, 2, 3, 4], d) {
            let f: Vec<Vertex> = (0..5)
                .map(|p| rho.vertices()[cuts.iter().filter(|&&c| c <= p).count()].clone())
                .collect();
            let img = |t: [usize; 3]| Simplex::new(t.iter().map(|&p| f[p].clone()).collect());
            let hits = AN2_NEW
                .iter()
                .any(|&t| img(t).dedup_adjacent().as_ref() == Some(tau));
            if hits && AN2_T.iter().all(|&t| cur.is_thin(&img(t))) {
                return Some(
                    f.into_iter()
                        .enumerate()
                        .map(|(p, v)| (Vertex::new(p.to_string()), v))
                        .collect(),
                );
            }
        }
    }
    None
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (j, &x) in items.iter().enumerate() {
        for mut rest in combinations(&items[j + 1..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// Positions of `s` whose opposite face is missing, provided the present
/// faces are exactly the generalized horn on those positions.
pub(crate) fn horn_positions(cur: &Collapsed, s: &Simplex) -> Option<BTreeSet<usize>> {
    let k = cur.body.complex();
    let n: BTreeSet<usize> = (0..s.len()).filter(|&p| !k.contains(&s.face(p))).collect();
    if n.is_empty() || n.len() == s.len() {
        return None;
    }
    let rest: Vec<&Vertex> = (0..s.len())
        .filter(|p| !n.contains(p))
        .map(|p| &s.vertices()[p])
        .collect();
    for f in s.all_faces() {
        if f.len() == s.len() {
            continue;
        }
        let in_horn = !rest.iter().all(|v| f.contains(v));
        if k.contains(&f) != in_horn {
            return None;
        }
    }
    Some(n)
}

/// The thin set a GenHorn pushout on `s` carries: the triangles already
/// thin in the current stage, minus the one opposite M when |M| = r − 2.
pub(crate) fn gen_horn_thin(cur: &Collapsed, s: &Simplex, m: &BTreeSet<usize>) -> Vec<[usize; 3]> {
    let r = s.dim();
    let rest: Vec<usize> = (0..=r).filter(|p| !m.contains(p)).collect();
    position_triangles(r)
        .into_iter()
        .filter(|t| !(rest.len() == 3 && t[..] == rest[..]))
        .filter(|t| cur.is_thin(&s.select(t)))
        .collect()
}

/// A GenHorn step filling `s` along M when the criterion admits it.
pub(crate) fn gen_horn_step(cur: &Collapsed, s: &Simplex, m: &BTreeSet<usize>) -> Option<Attach> {
    let r = s.dim();
    if r < 3 || m.iter().any(|&p| p >= r) {
        return None;
    }
    let thin = gen_horn_thin(cur, s, m);
    let tset: BTreeSet<[usize; 3]> = thin.iter().copied().collect();
    match gen_horn_admissible(r, m, &tset).ok()? {
        Admissibility::Witness(w) => Some(Attach {
            gen: GeneratorKind::GenHorn {
                r,
                m: m.iter().copied().collect(),
                thin,
            },
            attach: labels_map(s),
            witness_s: Some(w),
        }),
        Admissibility::Violation(_) => None,
    }
}

/// Candidate next steps from `cur` towards `goal`, in search order.
pub fn candidate_steps(cur: &Collapsed, goal: &Collapsed, allow_special: bool) -> Vec<Step> {
    for tau in goal.effective_thin() {
        if cur.body.complex().contains(&tau) && !cur.is_thin(&tau) {
            if let Some(f) = an2_attach(cur, &tau) {
                return vec![Step::ScalingExtension { attach: f }];
            }
        }
    }
    let mut missing: Vec<&Simplex> = goal
        .body
        .complex()
        .simplices()
        .iter()
        .filter(|s| s.len() >= 3 && !cur.body.complex().contains(s))
        .collect();
    missing.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut out = Vec::new();
    for s in missing {
        let Some(n) = horn_positions(cur, s) else {
            continue;
        };
        let r = s.dim();
        let first: Vec<usize> = n.iter().copied().collect();
        let v = s.vertices();
        let c01 = cur.collapsed.contains(&(v[0].clone(), v[1].clone()));
        let all_thin_in_goal = || {
            position_triangles(r)
                .iter()
                .all(|t| goal.is_thin(&s.select(t)))
        };
        if r == 2 {
            if first == [1] && goal.is_thin(s) {
                out.push(attach(GeneratorKind::An1 { n: 2, i: 1 }, s, None));
            }
            if first == [0] && c01 && allow_special && goal.is_thin(s) {
                out.push(attach(GeneratorKind::SpecialTC { n: 2 }, s, None));
            }
            continue;
        }
        if first == [0] && c01 {
            out.push(attach(GeneratorKind::An3 { n: r }, s, None));
            let horn_thin = position_triangles(r)
                .iter()
                .filter(|t| !(r == 3 && **t == [1, 2, 3]))
                .all(|t| cur.is_thin(&s.select(t)));
            if allow_special && all_thin_in_goal() && horn_thin {
                out.push(attach(GeneratorKind::SpecialTC { n: r }, s, None));
            }
        }
        if let Some(a) = gen_horn_step(cur, s, &n) {
            out.push(Step::GeneratorPushout(a));
        } else if first.len() == 1 && 0 < first[0] && first[0] < r {
            let i = first[0];
            if cur.is_thin(&s.select(&[i - 1, i, i + 1])) {
                out.push(attach(GeneratorKind::An1 { n: r, i }, s, None));
            }
        }
    }
    out
}

struct Dfs<'a> {
    goal: &'a Collapsed,
    opts: SearchOptions,
    dead: usize,
}

impl Dfs<'_> {
    fn run(&mut self, cur: Collapsed, path: &mut Vec<Step>) -> bool {
        if cur.same_as(self.goal) {
            return true;
        }
        if !cur.effective_thin().is_subset(&self.goal.effective_thin()) {
            self.dead += 1;
            return false;
        }
        for step in candidate_steps(&cur, self.goal, self.opts.allow_special) {
            if self.dead > self.opts.budget {
                return false;
            }
            let Ok(next) = apply_step(&cur, &step, self.opts.class()) else {
                continue;
            };
            path.push(step);
            if self.run(next, path) {
                return true;
            }
            path.pop();
        }
        self.dead += 1;
        false
    }
}

/// Steps from `start` to `goal`, or `None` when the budget runs out or no
/// move applies. Failure says nothing about membership in either class.
pub fn search_steps(start: &Collapsed, goal: &Collapsed, opts: SearchOptions) -> Option<Vec<Step>> {
    if start.collapsed != goal.collapsed || !start.body.is_scaled_subcomplex_of(&goal.body) {
        return None;
    }
    let mut path = Vec::new();
    let mut dfs = Dfs {
        goal,
        opts,
        dead: 0,
    };
    dfs.run(start.clone(), &mut path).then_some(path)
}

pub fn search_decomposition(
    start: &Collapsed,
    goal: &Collapsed,
    opts: SearchOptions,
) -> Option<Certificate> {
    let steps = search_steps(start, goal, opts)?;
    Some(Certificate {
        class: opts.class(),
        start: start.clone(),
        target: goal.clone(),
        steps,
        notes: vec!["found by search".to_string()],
    })
}
