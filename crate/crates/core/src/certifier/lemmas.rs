//! Certificate builders following the plus/minus filtrations, the
//! inner-horn composite and the co-Segal recursion.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};

use super::search::{an2_attach, gen_horn_step, horn_positions, search_steps, SearchOptions};
use super::verify::apply_step;
use super::{Attach, CertClass, Certificate, Step};
use crate::complex::{Simplex, Vertex, VertexMap};
use crate::config::DEFAULT_SEARCH_BUDGET;
use crate::error::{input, Error, Result};
use crate::generators::GeneratorKind;
use crate::scaling::{restrict_scaling, Collapsed, ScaledComplex};
use crate::tower::{
    columns, cosegal_source, horn_variants, label, parse_label, sort_join, ts, ts_minus, ts_plus,
    HornVariant, Row, PLUS_ROWS,
};

/// Accumulates steps while tracking the current stage.
pub(crate) struct Builder {
    what: String,
    class: CertClass,
    start: Collapsed,
    pub(crate) cur: Collapsed,
    steps: Vec<Step>,
    notes: Vec<String>,
}

impl Builder {
    pub(crate) fn new(what: impl Into<String>, class: CertClass, start: Collapsed) -> Self {
        Builder {
            what: what.into(),
            class,
            cur: start.clone(),
            start,
            steps: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fail(&self, msg: impl std::fmt::Display) -> Error {
        Error::CertifyFailure(format!("{}: {msg}", self.what))
    }

    pub(crate) fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub(crate) fn push(&mut self, step: Step) -> Result<()> {
        self.cur = apply_step(&self.cur, &step, self.class).map_err(|e| self.fail(e))?;
        self.steps.push(step);
        Ok(())
    }

    pub(crate) fn search_to(&mut self, goal: &Collapsed, stage: &str) -> Result<()> {
        let opts = SearchOptions {
            budget: DEFAULT_SEARCH_BUDGET,
            allow_special: self.class == CertClass::TrivialCofibration,
        };
        let steps = search_steps(&self.cur, goal, opts).ok_or_else(|| {
            self.fail(format!("{stage}: search exhausted its budget (unresolved)"))
        })?;
        for s in steps {
            self.push(s)?;
        }
        Ok(())
    }

    /// Adds every mark of `goal` on present triangles that An2 can supply.
    pub(crate) fn scaling_pass(&mut self, goal: &ScaledComplex) -> Result<()> {
        loop {
            let next = goal
                .thin()
                .iter()
                .filter(|t| self.cur.body.complex().contains(t) && !self.cur.is_thin(t))
                .find_map(|t| an2_attach(&self.cur, t));
            match next {
                Some(attach) => self.push(Step::ScalingExtension { attach })?,
                None => return Ok(()),
            }
        }
    }

    pub(crate) fn finish(self, target: Collapsed) -> Result<Certificate> {
        if !self.cur.same_as(&target) {
            return Err(self.fail("the final stage differs from the target"));
        }
        Ok(Certificate {
            class: self.class,
            start: self.start,
            target,
            steps: self.steps,
            notes: self.notes,
        })
    }
}

fn positions(s: &[Vertex]) -> VertexMap {
    s.iter()
        .enumerate()
        .map(|(p, v)| (Vertex::new(p.to_string()), v.clone()))
        .collect()
}

pub(crate) fn identity_on(c: &Collapsed) -> VertexMap {
    c.body
        .complex()
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect()
}

/// Fills the sharp horn Λⁿᵢ of a row simplex (vertices in simplex order).
fn sharp_row_fill(b: &mut Builder, row: &[Vertex], i: usize) -> Result<()> {
    let n = row.len() - 1;
    let simplex = Simplex::new(row.to_vec());
    if b.cur.body.complex().contains(&simplex) {
        return Ok(());
    }
    match n {
        2 | 3 => {
            b.push(Step::GeneratorPushout(Attach {
                gen: GeneratorKind::An1 { n, i },
                attach: positions(row),
                witness_s: None,
            }))?;
            if n == 3 {
                let f: [usize; 5] = if i == 1 {
                    [0, 1, 1, 2, 3]
                } else {
                    [0, 1, 2, 2, 3]
                };
                let attach = f
                    .iter()
                    .enumerate()
                    .map(|(p, &q)| (Vertex::new(p.to_string()), row[q].clone()))
                    .collect();
                b.push(Step::ScalingExtension { attach })?;
            }
            Ok(())
        }
        _ => {
            let m: BTreeSet<usize> = [i].into_iter().collect();
            let a = gen_horn_step(&b.cur, &simplex, &m)
                .ok_or_else(|| b.fail(format!("sharp row horn on {simplex} is not admissible")))?;
            b.push(Step::GeneratorPushout(a))
        }
    }
}

fn labels(row: Row, cols: impl Iterator<Item = usize>) -> impl Iterator<Item = Vertex> {
    cols.map(move |k| label(row, k))
}

/// σ(s,k) = 000…00k, 01k…01(k+s), 11(k+s)…11n.
pub fn sigma_plus(n: usize, s: usize, k: usize) -> Simplex {
    let vs = labels(Row::R00, 0..=k)
        .chain(labels(Row::R01, k..=k + s))
        .chain(labels(Row::R11, k + s..=n));
    Simplex::new(vs.collect())
}

/// σ̄(s,k) = 000…00k, 10(k+s)…10k, 11(k+s)…11n in join order.
pub fn sigma_minus(n: usize, s: usize, k: usize) -> Simplex {
    let vs = labels(Row::R00, 0..=k)
        .chain(labels(Row::R10, k..=k + s))
        .chain(labels(Row::R11, k + s..=n));
    sort_join(vs.collect())
}

fn plus_m(i: usize, s: usize, k: usize) -> Vec<Vertex> {
    if 0 < i && i < k {
        vec![
            label(Row::R00, i),
            label(Row::R01, k),
            label(Row::R01, k + s),
        ]
    } else if k <= i && i <= k + s {
        vec![
            label(Row::R01, k),
            label(Row::R01, i),
            label(Row::R01, k + s),
        ]
    } else {
        vec![
            label(Row::R01, k),
            label(Row::R01, k + s),
            label(Row::R11, i),
        ]
    }
}

fn minus_m(n: usize, i: usize, s: usize, k: usize) -> Option<Vec<Vertex>> {
    let (a, b, c) = (Row::R00, Row::R10, Row::R11);
    let ks = k + s;
    let m = if k == 0 && 0 < i && i < s && s < n {
        vec![label(b, i), label(c, s)]
    } else if k == 0 && 0 < i && i < s && s == n {
        vec![label(b, i)]
    } else if k == 0 && s <= i && i < n {
        vec![label(c, s), label(c, i)]
    } else if 0 < i && i <= k && ks < n {
        vec![label(a, i), label(a, k), label(c, ks)]
    } else if 0 < k && k < i && i < ks && ks < n {
        vec![label(a, k), label(b, i), label(c, ks)]
    } else if 0 < k && ks <= i && i < n {
        vec![label(a, k), label(c, ks), label(c, i)]
    } else if 0 < i && i <= k && ks == n {
        vec![label(a, i), label(a, k)]
    } else if 0 < k && k < i && i < ks && ks == n {
        vec![label(a, k), label(b, i)]
    } else {
        return None;
    };
    Some(m)
}

fn position_set(sigma: &Simplex, m: &[Vertex]) -> Option<BTreeSet<usize>> {
    m.iter().map(|v| sigma.position(v)).collect()
}

/// One batch of the filtration: every σ whose present faces form the listed
/// horn and pass the criterion goes into a single BatchPushout; the rest are
/// filled by search and flagged.
fn filtration_layer(
    b: &mut Builder,
    target: &ScaledComplex,
    layer: Vec<(usize, usize, Simplex, Option<Vec<Vertex>>)>,
) -> Result<()> {
    let mut entries = Vec::new();
    let mut fallback = Vec::new();
    for (s, k, sigma, m) in layer {
        if b.cur.body.complex().contains(&sigma) {
            continue;
        }
        let listed = m.as_deref().and_then(|m| position_set(&sigma, m));
        let step = match (&listed, horn_positions(&b.cur, &sigma)) {
            (Some(m), Some(found)) if *m == found => gen_horn_step(&b.cur, &sigma, m),
            _ => None,
        };
        match step {
            Some(a) => entries.push(a),
            None => fallback.push((s, k, sigma, listed)),
        }
    }
    if !entries.is_empty() {
        b.push(Step::BatchPushout { entries })?;
    }
    for (s, k, sigma, listed) in fallback {
        let what = match listed {
            Some(m) => format!("M = {m:?}"),
            None => "no listed M".to_string(),
        };
        b.note(format!("(s={s}, k={k}) {sigma}: horn table entry not admissible here ({what}); filled by search"));
        let body = b
            .cur
            .body
            .complex()
            .union(&crate::complex::OrderedComplex::from_simplices([sigma])?)?;
        let goal = Collapsed {
            body: restrict_scaling(&body, target)?,
            collapsed: b.cur.collapsed.clone(),
        };
        b.search_to(&goal, &format!("(s={s}, k={k})"))?;
    }
    b.scaling_pass(target)
}

fn check_inner(n: usize, i: usize) -> Result<()> {
    if !(0 < i && i < n) {
        return input(format!("inner horns need 0 < i < n, got n={n}, i={i}"));
    }
    Ok(())
}

/// Λⁿᵢ TS₊ → TSⁿ₊.
pub fn certify_lemma_plus(n: usize, i: usize) -> Result<Certificate> {
    check_inner(n, i)?;
    let target = ts_plus(n);
    let start = Collapsed::plain(horn_variants(n, i, HornVariant::Plus)?);
    let mut b = Builder::new(
        format!("plus lemma (n={n}, i={i})"),
        CertClass::ScaledAnodyne,
        start,
    );
    for row in PLUS_ROWS {
        let vs: Vec<Vertex> = labels(row, 0..=n).collect();
        sharp_row_fill(&mut b, &vs, i)?;
    }
    let bar = Collapsed::plain(horn_variants(n, i, HornVariant::BarPlus)?);
    b.search_to(&bar, "prism stage")?;
    b.note("prism stage (Λ²₁×Δⁿ) filled by search");
    for s in (0..=n).rev() {
        let layer = (0..=n - s)
            .map(|k| (s, k, sigma_plus(n, s, k), Some(plus_m(i, s, k))))
            .collect();
        filtration_layer(&mut b, &target, layer)?;
    }
    b.finish(Collapsed::plain(target))
}

/// Λ̂ⁿᵢ TS₋ → TSⁿ₋.
pub fn certify_lemma_minus(n: usize, i: usize) -> Result<Certificate> {
    check_inner(n, i)?;
    let target = ts_minus(n);
    let start = Collapsed::plain(horn_variants(n, i, HornVariant::HatMinus)?);
    let mut b = Builder::new(
        format!("minus lemma (n={n}, i={i})"),
        CertClass::ScaledAnodyne,
        start,
    );
    let row: Vec<Vertex> = labels(Row::R10, (0..=n).rev()).collect();
    sharp_row_fill(&mut b, &row, n - i)?;
    let bar = Collapsed::plain(horn_variants(n, i, HornVariant::BarMinus)?);
    b.search_to(&bar, "prism stage")?;
    b.note("prism stage Ω(Λ²₁×Δⁿ) filled by search");
    for s in 0..=n {
        let layer = (0..=n - s)
            .map(|k| (s, k, sigma_minus(n, s, k), minus_m(n, i, s, k)))
            .collect();
        filtration_layer(&mut b, &target, layer)?;
    }
    b.finish(Collapsed::plain(target))
}

/// Λⁿᵢ TS → Λⁿᵢ TS ∪ TSⁿ₊ → TSⁿ.
pub fn certify_inner_horn(n: usize, i: usize) -> Result<Certificate> {
    check_inner(n, i)?;
    let plus = certify_lemma_plus(n, i)?;
    let minus = certify_lemma_minus(n, i)?;
    let start = Collapsed::plain(horn_variants(n, i, HornVariant::Full)?);
    let mut b = Builder::new(
        format!("inner horn (n={n}, i={i})"),
        CertClass::ScaledAnodyne,
        start,
    );
    for inner in [plus, minus] {
        let along = identity_on(&inner.target);
        b.push(Step::Transport {
            inner: Box::new(inner),
            along,
        })?;
    }
    b.finish(Collapsed::plain(ts(n).scaled))
}

fn all_subsets(s: &[usize]) -> Vec<Vec<usize>> {
    (1..1u32 << s.len())
        .map(|mask| {
            s.iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, &c)| c)
                .collect()
        })
        .collect()
}

/// The column face S that meets `cols` in an inner horn, with its index j.
fn next_column_face(
    cols: &BTreeSet<Vec<usize>>,
    goal: &BTreeSet<Vec<usize>>,
) -> Option<(Vec<usize>, usize)> {
    let mut pending: Vec<&Vec<usize>> = goal.difference(cols).collect();
    pending.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    pending.into_iter().find_map(|s| {
        if s.len() < 3 {
            return None;
        }
        let missing: Vec<usize> = (0..s.len())
            .filter(|&p| {
                let mut f = s.clone();
                f.remove(p);
                !cols.contains(&f)
            })
            .collect();
        match missing[..] {
            [j] if 0 < j && j + 1 < s.len() => Some((s.clone(), j)),
            _ => None,
        }
    })
}

/// Spine inclusion → TSⁿ, by recursion on n.
pub fn certify_cosegal(n: usize) -> Result<Certificate> {
    let (src, _) = cosegal_source(n)?;
    let mut b = Builder::new(
        format!("co-Segal (n={n})"),
        CertClass::ScaledAnodyne,
        Collapsed::plain(src),
    );
    let target = Collapsed::plain(ts(n).scaled);
    if n == 1 {
        return b.finish(target);
    }
    b.note("co-Segal recursion: level n-1 on columns 0..n-1, then inner-horn column faces, then Λⁿ₁ TS → TSⁿ");
    let mut cols = columns::sets(&columns::spine(n));
    if n >= 3 {
        let inner = certify_cosegal(n - 1)?;
        let along = identity_on(&inner.target);
        b.push(Step::Transport {
            inner: Box::new(inner),
            along,
        })?;
        cols.extend(all_subsets(&(0..n).collect::<Vec<_>>()));
    }
    let goal = columns::sets(&columns::inner_horn(n, 1)?);
    let mut cache: BTreeMap<(usize, usize), Certificate> = BTreeMap::new();
    while !goal.is_subset(&cols) {
        let (face, j) = next_column_face(&cols, &goal).ok_or_else(|| {
            Error::CertifyFailure(format!(
                "co-Segal (n={n}): no column face meets the stage in an inner horn"
            ))
        })?;
        let m = face.len() - 1;
        let inner = match cache.entry((m, j)) {
            Entry::Occupied(e) => e.get().clone(),
            Entry::Vacant(e) => e.insert(certify_inner_horn(m, j)?).clone(),
        };
        let along = inner
            .target
            .body
            .complex()
            .vertices()
            .iter()
            .map(|v| {
                let (row, k) = parse_label(v).expect("TS labels");
                (v.clone(), label(row, face[k]))
            })
            .collect();
        b.push(Step::Transport {
            inner: Box::new(inner),
            along,
        })?;
        cols.extend(all_subsets(&face));
    }
    let last = certify_inner_horn(n, 1)?;
    let along = identity_on(&last.target);
    b.push(Step::Transport {
        inner: Box::new(last),
        along,
    })?;
    b.finish(target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::verify_certificate;

    #[test]
    fn sigma_shapes() {
        let p = sigma_plus(2, 1, 1);
        let names: Vec<&str> = p.vertices().iter().map(|v| v.as_str()).collect();
        assert_eq!(names, ["000", "001", "011", "012", "112"]);
        let s = sigma_minus(2, 2, 0);
        assert_eq!(s.vertices().first().unwrap().as_str(), "000");
        assert_eq!(s.vertices()[1].as_str(), "102");
        assert_eq!(s.len(), 5);
    }

    #[test]
    fn plus_two_one() {
        let c = certify_lemma_plus(2, 1).unwrap();
        let r = verify_certificate(&c);
        assert!(r.ok, "{:?}", r.first_failure);
        assert_eq!(c.target.body, ts_plus(2));
    }

    #[test]
    fn minus_two_one() {
        let c = certify_lemma_minus(2, 1).unwrap();
        let r = verify_certificate(&c);
        assert!(r.ok, "{:?}", r.first_failure);
    }

    #[test]
    fn outer_horn_rejected() {
        assert!(matches!(certify_lemma_plus(2, 0), Err(Error::Input(_))));
        assert!(matches!(certify_lemma_minus(2, 2), Err(Error::Input(_))));
    }

    #[test]
    fn column_planner_at_three() {
        let mut cols = columns::sets(&columns::spine(3));
        cols.extend(all_subsets(&[0, 1, 2]));
        let goal = columns::sets(&columns::inner_horn(3, 1).unwrap());
        assert_eq!(next_column_face(&cols, &goal), Some((vec![1, 2, 3], 1)));
        cols.extend(all_subsets(&[1, 2, 3]));
        assert_eq!(next_column_face(&cols, &goal), Some((vec![0, 1, 3], 1)));
    }
}
