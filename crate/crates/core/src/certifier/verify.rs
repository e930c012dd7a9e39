use std::collections::{BTreeMap, BTreeSet};

use super::{Attach, CertClass, Certificate, Failure, Step, VerifyReport};
use crate::complex::{OrderedComplex, Simplex, Vertex, VertexMap};
use crate::error::{Error, Result};
use crate::generators::{instantiate, AN2_NEW, AN2_T};
use crate::scaling::{Collapsed, ScaledComplex};

struct Fail {
    path: Vec<usize>,
    reason: String,
}

impl Fail {
    fn new(reason: impl Into<String>) -> Self {
        Fail {
            path: Vec::new(),
            reason: reason.into(),
        }
    }

    fn at(mut self, i: usize) -> Self {
        self.path.insert(0, i);
        self
    }
}

type Stats = BTreeMap<String, usize>;

/// Replays a certificate from its start, checking every step, and compares
/// the result with the declared target.
pub fn verify_certificate(c: &Certificate) -> VerifyReport {
    let mut stats = Stats::new();
    let first_failure = replay(c, &mut stats).err().map(|f| Failure {
        step: f.path.first().copied(),
        path: f
            .path
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join("."),
        reason: f.reason,
    });
    VerifyReport {
        ok: first_failure.is_none(),
        class: c.class,
        first_failure,
        stats,
    }
}

/// Applies one step to a state; used by the certificate builders.
pub fn apply_step(cur: &Collapsed, step: &Step, class: CertClass) -> Result<Collapsed> {
    apply(cur, step, class, &mut Stats::new()).map_err(|f| Error::CertifyFailure(f.reason))
}

fn replay(c: &Certificate, stats: &mut Stats) -> std::result::Result<Collapsed, Fail> {
    check_object(&c.start).map_err(|e| Fail::new(format!("start: {e}")))?;
    check_object(&c.target).map_err(|e| Fail::new(format!("target: {e}")))?;
    let mut cur = c.start.clone();
    for (i, step) in c.steps.iter().enumerate() {
        cur = apply(&cur, step, c.class, stats).map_err(|f| f.at(i))?;
    }
    if !cur.same_as(&c.target) {
        return Err(Fail::new(format!(
            "target not reached after {} steps: {}",
            c.steps.len(),
            difference(&cur, &c.target)
        ))
        .at(c.steps.len()));
    }
    Ok(cur)
}

fn check_object(c: &Collapsed) -> Result<()> {
    c.body.complex().validate()?;
    ScaledComplex::new(c.body.complex().clone(), c.body.thin().clone())?;
    Collapsed::new(c.body.clone(), c.collapsed.clone()).map(|_| ())
}

fn difference(got: &Collapsed, want: &Collapsed) -> String {
    let (g, w) = (
        got.body.complex().simplices(),
        want.body.complex().simplices(),
    );
    let mut parts = Vec::new();
    if let Some(s) = w.difference(g).next() {
        parts.push(format!(
            "{} simplices missing (first {s})",
            w.difference(g).count()
        ));
    }
    if let Some(s) = g.difference(w).next() {
        parts.push(format!(
            "{} extra simplices (first {s})",
            g.difference(w).count()
        ));
    }
    let (gt, wt) = (got.effective_thin(), want.effective_thin());
    if let Some(t) = wt.difference(&gt).next() {
        parts.push(format!(
            "{} thin triangles missing (first {t})",
            wt.difference(&gt).count()
        ));
    }
    if let Some(t) = gt.difference(&wt).next() {
        parts.push(format!(
            "{} extra thin triangles (first {t})",
            gt.difference(&wt).count()
        ));
    }
    if got.collapsed != want.collapsed {
        parts.push("collapsed edges differ".to_string());
    }
    parts.join("; ")
}

fn bump(stats: &mut Stats, key: &str) {
    *stats.entry(key.to_string()).or_default() += 1;
}

fn apply(
    cur: &Collapsed,
    step: &Step,
    class: CertClass,
    stats: &mut Stats,
) -> std::result::Result<Collapsed, Fail> {
    bump(stats, step.kind_name());
    match step {
        Step::GeneratorPushout(a) => {
            let (simplices, thin) = check_attach(cur, a, class)?;
            bump(stats, a.gen.name());
            extend(cur, simplices, thin, Vec::new())
        }
        Step::ScalingExtension { attach } => {
            let marks = check_an2(cur, attach)?;
            let body = cur
                .body
                .add_thin(marks)
                .map_err(|e| Fail::new(e.to_string()))?;
            Ok(Collapsed {
                body,
                collapsed: cur.collapsed.clone(),
            })
        }
        Step::BatchPushout { entries } => {
            let mut all = Vec::new();
            let mut thin = Vec::new();
            let mut seen: BTreeSet<Simplex> = BTreeSet::new();
            for (j, a) in entries.iter().enumerate() {
                let (simplices, t) = check_attach(cur, a, class).map_err(|f| f.at(j))?;
                for s in &simplices {
                    if !seen.insert(s.clone()) {
                        return Err(Fail::new(format!("interiors overlap in {s}")).at(j));
                    }
                }
                bump(stats, a.gen.name());
                all.extend(simplices);
                thin.extend(t);
            }
            extend(cur, all, thin, Vec::new())
        }
        Step::Transport { inner, along } => {
            if inner.class > class {
                return Err(Fail::new(format!(
                    "a {} certificate cannot be transported into a {class} one",
                    inner.class
                )));
            }
            let reached = replay(inner, stats).map_err(|f| Fail {
                path: f.path,
                reason: format!("inside transport: {}", f.reason),
            })?;
            transport(cur, &inner.start, &reached, along)
        }
    }
}

fn image(s: &Simplex, f: &VertexMap) -> std::result::Result<Simplex, Fail> {
    s.map(f)
        .ok_or_else(|| Fail::new(format!("attach map is undefined on a vertex of {s}")))
}

fn check_injective(f: &VertexMap, domain: &BTreeSet<Vertex>) -> std::result::Result<(), Fail> {
    let keys: BTreeSet<Vertex> = f.keys().cloned().collect();
    if keys != *domain {
        return Err(Fail::new(
            "attach map domain differs from the generator's vertices",
        ));
    }
    let values: BTreeSet<&Vertex> = f.values().collect();
    if values.len() != f.len() {
        return Err(Fail::new("attach map is not injective"));
    }
    Ok(())
}

fn check_attach(
    cur: &Collapsed,
    a: &Attach,
    class: CertClass,
) -> std::result::Result<(Vec<Simplex>, Vec<Simplex>), Fail> {
    let g = instantiate(&a.gen).map_err(|e| Fail::new(e.to_string()))?;
    if g.kind.is_trivial_cofibration_only() && class == CertClass::ScaledAnodyne {
        return Err(Fail::new(format!(
            "{} is only admitted in trivial_cofibration certificates",
            g.kind
        )));
    }
    if a.witness_s != g.witness {
        return Err(Fail::new(format!(
            "recorded witness {:?} but the criterion gives {:?}",
            a.witness_s, g.witness
        )));
    }
    check_injective(&a.attach, &g.vertices().into_iter().collect())?;
    for s in g.source.complex().simplices() {
        let img = image(s, &a.attach)?;
        if !cur.body.complex().contains(&img) {
            return Err(Fail::new(format!(
                "{}: source simplex {s} maps to {img}, which is not present",
                g.kind
            )));
        }
    }
    for t in g.source.thin() {
        let img = image(t, &a.attach)?;
        if !cur.is_thin(&img) {
            return Err(Fail::new(format!(
                "{}: source thin triangle {t} maps to non-thin {img}",
                g.kind
            )));
        }
    }
    if let Some((x, y)) = &g.collapsed_edge {
        let (fx, fy) = (&a.attach[x], &a.attach[y]);
        if !cur.collapsed.contains(&(fx.clone(), fy.clone())) {
            return Err(Fail::new(format!(
                "{}: edge ({fx},{fy}) is not collapsed",
                g.kind
            )));
        }
    }
    let mut interior = Vec::new();
    for s in g.interior() {
        let img = image(&s, &a.attach)?;
        if cur.body.complex().contains(&img) {
            return Err(Fail::new(format!(
                "{}: interior simplex {img} is already present",
                g.kind
            )));
        }
        interior.push(img);
    }
    let thin = g
        .target
        .thin()
        .iter()
        .map(|t| image(t, &a.attach))
        .collect::<std::result::Result<_, _>>()?;
    Ok((interior, thin))
}

fn check_an2(cur: &Collapsed, attach: &VertexMap) -> std::result::Result<Vec<Simplex>, Fail> {
    let labels: Vec<Vertex> = (0..5).map(|p| Vertex::new(p.to_string())).collect();
    let keys: BTreeSet<&Vertex> = attach.keys().collect();
    if keys != labels.iter().collect() {
        return Err(Fail::new("An2 attach map must be defined exactly on 0..4"));
    }
    let top = image(&Simplex::new(labels.clone()), attach)?;
    let flat = top
        .dedup_adjacent()
        .ok_or_else(|| Fail::new(format!("An2 attach {top} repeats a vertex")))?;
    if !cur.body.complex().contains(&flat) {
        return Err(Fail::new(format!(
            "An2 attach image {flat} is not a simplex"
        )));
    }
    let tri = |p: [usize; 3]| Simplex::new(p.iter().map(|&k| labels[k].clone()).collect());
    for p in AN2_T {
        let img = image(&tri(p), attach)?;
        if !cur.is_thin(&img) {
            return Err(Fail::new(format!(
                "An2: triangle {p:?} maps to non-thin {img}"
            )));
        }
    }
    let mut marks = Vec::new();
    for p in AN2_NEW {
        if let Some(t) = image(&tri(p), attach)?.dedup_adjacent() {
            if t.len() == 3 {
                marks.push(t);
            }
        }
    }
    Ok(marks)
}

fn extend(
    cur: &Collapsed,
    simplices: Vec<Simplex>,
    thin: Vec<Simplex>,
    collapsed: Vec<(Vertex, Vertex)>,
) -> std::result::Result<Collapsed, Fail> {
    let fail = |e: Error| Fail::new(e.to_string());
    let added = OrderedComplex::from_simplices(simplices).map_err(fail)?;
    let body = cur.body.complex().union(&added).map_err(fail)?;
    let mut marks = cur.body.thin().clone();
    marks.extend(thin);
    let body = ScaledComplex::new(body, marks).map_err(fail)?;
    let mut edges = cur.collapsed.clone();
    edges.extend(collapsed);
    Collapsed::new(body, edges).map_err(fail)
}

fn transport(
    cur: &Collapsed,
    start: &Collapsed,
    reached: &Collapsed,
    along: &VertexMap,
) -> std::result::Result<Collapsed, Fail> {
    check_injective(along, reached.body.complex().vertices())?;
    for s in start.body.complex().simplices() {
        let img = image(s, along)?;
        if !cur.body.complex().contains(&img) {
            return Err(Fail::new(format!(
                "transport: {s} maps to {img}, which is not present"
            )));
        }
    }
    for t in start.body.thin() {
        let img = image(t, along)?;
        if !cur.is_thin(&img) {
            return Err(Fail::new(format!(
                "transport: thin {t} maps to non-thin {img}"
            )));
        }
    }
    for (a, b) in &start.collapsed {
        if !cur
            .collapsed
            .contains(&(along[a].clone(), along[b].clone()))
        {
            return Err(Fail::new(format!(
                "transport: collapsed edge ({a},{b}) does not map to a collapsed edge"
            )));
        }
    }
    let mut new = Vec::new();
    for s in reached.body.complex().simplices() {
        if start.body.complex().contains(s) {
            continue;
        }
        let img = image(s, along)?;
        if cur.body.complex().contains(&img) {
            return Err(Fail::new(format!(
                "transport: {img} is already present but not in the image of the start"
            )));
        }
        new.push(img);
    }
    let thin = reached
        .body
        .thin()
        .iter()
        .map(|t| image(t, along))
        .collect::<std::result::Result<_, _>>()?;
    let edges = reached
        .collapsed
        .iter()
        .map(|(a, b)| (along[a].clone(), along[b].clone()))
        .collect();
    extend(cur, new, thin, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{index_labels, standard_horn, standard_simplex};
    use crate::generators::GeneratorKind;

    fn identity(n: usize) -> VertexMap {
        index_labels(n)
            .into_iter()
            .map(|v| (v.clone(), v))
            .collect()
    }

    fn an1_cert() -> Certificate {
        let thin: BTreeSet<Simplex> = [Simplex::from_labels(&["0", "1", "2"])]
            .into_iter()
            .collect();
        let horn = standard_horn(2, &[1].into_iter().collect()).unwrap();
        Certificate {
            class: CertClass::ScaledAnodyne,
            start: Collapsed::plain(ScaledComplex::flat(horn)),
            target: Collapsed::plain(ScaledComplex::new(standard_simplex(2), thin).unwrap()),
            steps: vec![Step::GeneratorPushout(Attach {
                gen: GeneratorKind::An1 { n: 2, i: 1 },
                attach: identity(2),
                witness_s: None,
            })],
            notes: Vec::new(),
        }
    }

    #[test]
    fn single_an1_verifies() {
        let r = verify_certificate(&an1_cert());
        assert!(r.ok, "{:?}", r.first_failure);
        assert_eq!(r.stats["An1"], 1);
    }

    #[test]
    fn emptied_target_thin_fails() {
        let mut c = an1_cert();
        c.target = Collapsed::plain(ScaledComplex::flat(standard_simplex(2)));
        let r = verify_certificate(&c);
        assert!(!r.ok);
        let f = r.first_failure.unwrap();
        assert_eq!(f.step, Some(1));
        assert!(f.reason.contains("extra thin"), "{}", f.reason);
    }

    #[test]
    fn attaching_twice_breaks_the_square() {
        let mut c = an1_cert();
        c.steps.push(c.steps[0].clone());
        let r = verify_certificate(&c);
        assert_eq!(r.first_failure.unwrap().step, Some(1));
    }

    #[test]
    fn special_tc_needs_trivial_cofibration_class() {
        let horn = standard_horn(2, &[0].into_iter().collect()).unwrap();
        let edge = (Vertex::new("0"), Vertex::new("1"));
        let coll: BTreeSet<_> = [edge].into_iter().collect();
        let mut c = Certificate {
            class: CertClass::ScaledAnodyne,
            start: Collapsed::new(ScaledComplex::sharp(horn), coll.clone()).unwrap(),
            target: Collapsed::new(ScaledComplex::sharp(standard_simplex(2)), coll).unwrap(),
            steps: vec![Step::GeneratorPushout(Attach {
                gen: GeneratorKind::SpecialTC { n: 2 },
                attach: identity(2),
                witness_s: None,
            })],
            notes: Vec::new(),
        };
        assert!(!verify_certificate(&c).ok);
        c.class = CertClass::TrivialCofibration;
        let r = verify_certificate(&c);
        assert!(r.ok, "{:?}", r.first_failure);
    }

    #[test]
    fn transport_relabels_and_checks() {
        let inner = an1_cert();
        let along: VertexMap = [("0", "a"), ("1", "b"), ("2", "c")]
            .iter()
            .map(|(x, y)| (Vertex::new(x), Vertex::new(y)))
            .collect();
        let start = inner.start.body.relabel(&along).unwrap();
        let target = inner.target.body.relabel(&along).unwrap();
        let outer = Certificate {
            class: CertClass::ScaledAnodyne,
            start: Collapsed::plain(start),
            target: Collapsed::plain(target),
            steps: vec![Step::Transport {
                inner: Box::new(inner),
                along,
            }],
            notes: Vec::new(),
        };
        let r = verify_certificate(&outer);
        assert!(r.ok, "{:?}", r.first_failure);
        assert_eq!(r.stats["transport"], 1);
    }
}
