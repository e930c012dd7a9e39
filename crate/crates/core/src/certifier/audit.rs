//! A second replay of certificates sharing no state logic with `verify`.
//! Objects are flattened to sets of label tuples and every generator is
//! rebuilt here from its parameters.

use std::collections::{BTreeMap, HashSet};

use serde::Serialize;

use super::{Attach, CertClass, Certificate, Step};
use crate::generators::GeneratorKind;
use crate::scaling::Collapsed;

type Tuple = Vec<String>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditOutcome {
    pub ok: bool,
    pub reason: Option<String>,
}

#[derive(Clone)]
struct State {
    simplices: HashSet<Tuple>,
    thin: HashSet<Tuple>,
    collapsed: HashSet<(String, String)>,
}

impl State {
    fn of(c: &Collapsed) -> State {
        let tup = |s: &crate::complex::Simplex| {
            s.vertices()
                .iter()
                .map(|v| v.as_str().to_string())
                .collect()
        };
        State {
            simplices: c.body.complex().simplices().iter().map(tup).collect(),
            thin: c.body.thin().iter().map(tup).collect(),
            collapsed: c
                .collapsed
                .iter()
                .map(|(a, b)| (a.as_str().to_string(), b.as_str().to_string()))
                .collect(),
        }
    }

    fn joined(&self, a: &str, b: &str) -> bool {
        self.collapsed.contains(&(a.to_string(), b.to_string()))
            || self.collapsed.contains(&(b.to_string(), a.to_string()))
    }

    fn thin_now(&self, t: &[String]) -> bool {
        let mut d: Tuple = t.to_vec();
        d.dedup();
        let distinct: HashSet<&String> = d.iter().collect();
        if distinct.len() != d.len() {
            return false;
        }
        d.len() < 3
            || self.thin.contains(&d)
            || self.joined(&d[0], &d[1])
            || self.joined(&d[1], &d[2])
    }

    fn effective_thin(&self) -> HashSet<Tuple> {
        self.simplices
            .iter()
            .filter(|s| s.len() == 3 && self.thin_now(s))
            .cloned()
            .collect()
    }

    fn add(&mut self, s: Tuple) {
        for mask in 1..1u64 << s.len() {
            let face: Tuple = s
                .iter()
                .enumerate()
                .filter(|(j, _)| mask >> j & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect();
            self.simplices.insert(face);
        }
    }

    fn determinate(&self) -> Result<(), String> {
        let mut by_set: BTreeMap<Vec<&String>, &Tuple> = BTreeMap::new();
        for s in &self.simplices {
            let mut key: Vec<&String> = s.iter().collect();
            key.sort();
            if key.windows(2).any(|w| w[0] == w[1]) {
                return Err(format!("{s:?} repeats a vertex"));
            }
            if let Some(other) = by_set.insert(key, s) {
                return Err(format!("{s:?} and {other:?} share a vertex set"));
            }
        }
        Ok(())
    }
}

struct Shape {
    r: usize,
    source: Vec<Vec<usize>>,
    source_thin: Vec<[usize; 3]>,
    target_thin: Vec<[usize; 3]>,
    collapse01: bool,
    special: bool,
    witness: Option<usize>,
}

fn subsets(r: usize) -> impl Iterator<Item = Vec<usize>> {
    (1..1u64 << (r + 1)).map(move |mask| (0..=r).filter(|j| mask >> j & 1 == 1).collect())
}

fn horn(r: usize, m: &[usize]) -> Vec<Vec<usize>> {
    subsets(r)
        .filter(|s| (0..=r).any(|j| !m.contains(&j) && !s.contains(&j)))
        .collect()
}

fn triangles(r: usize) -> Vec<[usize; 3]> {
    subsets(r)
        .filter(|s| s.len() == 3)
        .map(|s| [s[0], s[1], s[2]])
        .collect()
}

/// The witness s of the generalized-horn criterion, or why there is none.
fn witness(r: usize, m: &[usize], thin: &[[usize; 3]]) -> Result<usize, String> {
    let t = *m.iter().max().ok_or("empty M")?;
    if r < 3 || t >= r || m.len() > r - 2 {
        return Err(format!("M = {m:?} does not fit r = {r}"));
    }
    let s = (0..t)
        .rev()
        .find(|x| !m.contains(x))
        .ok_or("no s below the last run of M")?;
    if m.len() == r - 2 {
        let rest: Vec<usize> = (0..=r).filter(|x| !m.contains(x)).collect();
        if thin.contains(&[rest[0], rest[1], rest[2]]) {
            return Err("triangle opposite M is thin".into());
        }
    }
    match (s..t).find(|&i| !thin.contains(&[i, t, t + 1])) {
        Some(i) => Err(format!("[{i}, {t}, {}] not thin", t + 1)),
        None => Ok(s),
    }
}

fn shape(g: &GeneratorKind) -> Result<Shape, String> {
    let keep = |src: &[Vec<usize>], t: Vec<[usize; 3]>| -> Vec<[usize; 3]> {
        t.into_iter()
            .filter(|x| src.iter().any(|s| s[..] == x[..]))
            .collect()
    };
    Ok(match g {
        GeneratorKind::An1 { n, i } => {
            if !(0 < *i && i < n) {
                return Err("An1 index out of range".into());
            }
            let src = horn(*n, &[*i]);
            let mid = vec![[i - 1, *i, i + 1]];
            Shape {
                r: *n,
                source_thin: keep(&src, mid.clone()),
                source: src,
                target_thin: mid,
                collapse01: false,
                special: false,
                witness: None,
            }
        }
        GeneratorKind::An2 => {
            let t = vec![[0, 2, 4], [1, 2, 3], [0, 1, 3], [1, 3, 4], [0, 1, 2]];
            let mut all = t.clone();
            all.extend([[0, 3, 4], [0, 1, 4]]);
            Shape {
                r: 4,
                source: subsets(4).collect(),
                source_thin: t,
                target_thin: all,
                collapse01: false,
                special: false,
                witness: None,
            }
        }
        GeneratorKind::An3 { n } => {
            if *n < 3 {
                return Err("An3 needs n > 2".into());
            }
            let src = horn(*n, &[0]);
            let t = vec![[0, 1, *n]];
            Shape {
                r: *n,
                source_thin: keep(&src, t.clone()),
                source: src,
                target_thin: t,
                collapse01: true,
                special: false,
                witness: None,
            }
        }
        GeneratorKind::GenHorn { r, m, thin } => {
            let s = witness(*r, m, thin)?;
            let src = horn(*r, m);
            Shape {
                r: *r,
                source_thin: keep(&src, thin.clone()),
                source: src,
                target_thin: thin.clone(),
                collapse01: false,
                special: false,
                witness: Some(s),
            }
        }
        GeneratorKind::SpecialTC { n } => {
            if *n < 2 {
                return Err("SpecialTC needs n >= 2".into());
            }
            let src = horn(*n, &[0]);
            Shape {
                r: *n,
                source_thin: keep(&src, triangles(*n)),
                source: src,
                target_thin: triangles(*n),
                collapse01: true,
                special: true,
                witness: None,
            }
        }
    })
}

fn lookup(map: &BTreeMap<String, String>, ps: &[usize]) -> Result<Tuple, String> {
    ps.iter()
        .map(|p| {
            map.get(&p.to_string())
                .cloned()
                .ok_or_else(|| format!("position {p} unmapped"))
        })
        .collect()
}

fn plain_map(m: &crate::complex::VertexMap) -> BTreeMap<String, String> {
    m.iter()
        .map(|(a, b)| (a.as_str().to_string(), b.as_str().to_string()))
        .collect()
}

fn injective_on(map: &BTreeMap<String, String>, dom: &HashSet<String>) -> Result<(), String> {
    let keys: HashSet<String> = map.keys().cloned().collect();
    if keys != *dom {
        return Err("map domain mismatch".into());
    }
    let vals: HashSet<&String> = map.values().collect();
    if vals.len() != map.len() {
        return Err("map not injective".into());
    }
    Ok(())
}

/// Checks an attachment against `st` and returns its new simplices and marks.
fn attach(st: &State, a: &Attach, class: CertClass) -> Result<(Vec<Tuple>, Vec<Tuple>), String> {
    let sh = shape(&a.gen)?;
    if sh.special && class != CertClass::TrivialCofibration {
        return Err("special generator in a scaled anodyne certificate".into());
    }
    if a.witness_s != sh.witness {
        return Err(format!(
            "witness {:?} recorded, {:?} recomputed",
            a.witness_s, sh.witness
        ));
    }
    let f = plain_map(&a.attach);
    injective_on(&f, &(0..=sh.r).map(|p| p.to_string()).collect())?;
    for s in &sh.source {
        let img = lookup(&f, s)?;
        if !st.simplices.contains(&img) {
            return Err(format!("source image {img:?} absent"));
        }
    }
    for t in &sh.source_thin {
        let img = lookup(&f, t)?;
        if !st.thin_now(&img) {
            return Err(format!("source mark {img:?} not thin"));
        }
    }
    if sh.collapse01 {
        let e = (f["0"].clone(), f["1"].clone());
        if !st.collapsed.contains(&e) {
            return Err(format!("edge {e:?} not collapsed"));
        }
    }
    let mut new = Vec::new();
    for s in subsets(sh.r).filter(|s| !sh.source.contains(s)) {
        let img = lookup(&f, &s)?;
        if st.simplices.contains(&img) {
            return Err(format!("interior image {img:?} already present"));
        }
        new.push(img);
    }
    let marks = sh
        .target_thin
        .iter()
        .map(|t| lookup(&f, t))
        .collect::<Result<_, _>>()?;
    Ok((new, marks))
}

fn scaling(st: &State, m: &crate::complex::VertexMap) -> Result<Vec<Tuple>, String> {
    let f = plain_map(m);
    if f.len() != 5 || (0..5).any(|p| !f.contains_key(&p.to_string())) {
        return Err("An2 map must be defined on 0..4".into());
    }
    let mut top = lookup(&f, &[0, 1, 2, 3, 4])?;
    top.dedup();
    if !st.simplices.contains(&top) {
        return Err(format!("{top:?} is not a simplex"));
    }
    for t in [[0, 2, 4], [1, 2, 3], [0, 1, 3], [1, 3, 4], [0, 1, 2]] {
        if !st.thin_now(&lookup(&f, &t)?) {
            return Err(format!("{t:?} does not land on a thin triangle"));
        }
    }
    let mut out = Vec::new();
    for t in [[0, 3, 4], [0, 1, 4]] {
        let mut img = lookup(&f, &t)?;
        img.dedup();
        if img.len() == 3 {
            out.push(img);
        }
    }
    Ok(out)
}

fn step(st: &mut State, s: &Step, class: CertClass) -> Result<(), String> {
    match s {
        Step::GeneratorPushout(a) => {
            let (new, marks) = attach(st, a, class)?;
            new.into_iter().for_each(|x| st.add(x));
            st.thin.extend(marks);
        }
        Step::BatchPushout { entries } => {
            let mut seen = HashSet::new();
            let mut all = Vec::new();
            for a in entries {
                let (new, marks) = attach(st, a, class)?;
                for x in &new {
                    if !seen.insert(x.clone()) {
                        return Err(format!("batch interiors meet at {x:?}"));
                    }
                }
                all.push((new, marks));
            }
            for (new, marks) in all {
                new.into_iter().for_each(|x| st.add(x));
                st.thin.extend(marks);
            }
        }
        Step::ScalingExtension { attach } => {
            let marks = scaling(st, attach)?;
            st.thin.extend(marks);
        }
        Step::Transport { inner, along } => {
            if inner.class > class {
                return Err("transported certificate has a larger class".into());
            }
            let done = run(inner)?;
            let begin = State::of(&inner.start);
            let f = plain_map(along);
            let dom: HashSet<String> = done
                .simplices
                .iter()
                .filter(|s| s.len() == 1)
                .map(|s| s[0].clone())
                .collect();
            injective_on(&f, &dom)?;
            let img = |t: &Tuple| -> Tuple { t.iter().map(|x| f[x].clone()).collect() };
            for s in &begin.simplices {
                if !st.simplices.contains(&img(s)) {
                    return Err(format!("transport start {s:?} not present"));
                }
            }
            for t in &begin.thin {
                if !st.thin_now(&img(t)) {
                    return Err(format!("transport start mark {t:?} not thin"));
                }
            }
            for (a, b) in &begin.collapsed {
                if !st.collapsed.contains(&(f[a].clone(), f[b].clone())) {
                    return Err(format!("transport edge ({a},{b}) not collapsed"));
                }
            }
            for s in done.simplices.difference(&begin.simplices) {
                if st.simplices.contains(&img(s)) {
                    return Err(format!("transported simplex {:?} already present", img(s)));
                }
            }
            for s in &done.simplices {
                st.simplices.insert(img(s));
            }
            st.thin.extend(done.thin.iter().map(img));
            st.collapsed.extend(
                done.collapsed
                    .iter()
                    .map(|(a, b)| (f[a].clone(), f[b].clone())),
            );
        }
    }
    st.determinate()
}

fn run(c: &Certificate) -> Result<State, String> {
    let mut st = State::of(&c.start);
    for (i, s) in c.steps.iter().enumerate() {
        step(&mut st, s, c.class).map_err(|e| format!("step {i}: {e}"))?;
    }
    let want = State::of(&c.target);
    if st.simplices != want.simplices {
        return Err("replayed simplices differ from the target".into());
    }
    if st.collapsed != want.collapsed {
        return Err("replayed collapsed edges differ from the target".into());
    }
    if st.effective_thin() != want.effective_thin() {
        return Err("replayed thin triangles differ from the target".into());
    }
    Ok(st)
}

/// Replays `c` on tuple sets and compares with its target.
pub fn audit_certificate(c: &Certificate) -> AuditOutcome {
    match run(c) {
        Ok(_) => AuditOutcome {
            ok: true,
            reason: None,
        },
        Err(e) => AuditOutcome {
            ok: false,
            reason: Some(e),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn horn_sizes() {
        assert_eq!(horn(2, &[1]).len(), 5);
        assert_eq!(horn(3, &[1, 2]).len(), 11);
    }

    #[test]
    fn witness_matches_criterion() {
        use crate::generators::gen_horn_admissible;
        for r in 3..6 {
            for m in subsets(r - 1) {
                let tri = triangles(r);
                for mask in [0u64, u64::MAX, 0x5555] {
                    let thin: Vec<[usize; 3]> = tri
                        .iter()
                        .enumerate()
                        .filter(|(j, _)| mask >> (j % 64) & 1 == 1)
                        .map(|(_, t)| *t)
                        .collect();
                    let ours = witness(r, &m, &thin).ok();
                    let theirs = gen_horn_admissible(
                        r,
                        &m.iter().copied().collect(),
                        &thin.iter().copied().collect(),
                    )
                    .map(|a| a.witness())
                    .unwrap_or(None);
                    assert_eq!(ours, theirs, "r={r} m={m:?} mask={mask:x}");
                }
            }
        }
    }
}
