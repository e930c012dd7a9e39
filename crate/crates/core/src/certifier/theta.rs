//! The θ-maps of the completeness argument and the double-collapse check.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::lemmas::{identity_on, Builder};
use super::search::{search_decomposition, SearchOptions};
use super::{CertClass, Certificate, Step};
use crate::complex::{find_isomorphism_with, quotient_vertex_map, Orientation, Vertex, VertexMap};
use crate::error::{input, Error, Result};
use crate::scaling::{restrict_scaling, Collapsed, ScaledComplex};
use crate::tower::{boundary_face_complex, fsr, theta_complexes, ts, Face, WScaling};

fn reach(c: &Collapsed) -> BTreeMap<Vertex, BTreeSet<Vertex>> {
    let mut next: BTreeMap<&Vertex, Vec<&Vertex>> = BTreeMap::new();
    for e in c.body.complex().simplices().iter().filter(|s| s.len() == 2) {
        let v = e.vertices();
        next.entry(&v[0]).or_default().push(&v[1]);
    }
    for (a, b) in &c.collapsed {
        next.entry(b).or_default().push(a);
    }
    let mut out = BTreeMap::new();
    for v in c.body.complex().vertices() {
        let mut seen: BTreeSet<Vertex> = BTreeSet::new();
        let mut todo = vec![v];
        while let Some(x) = todo.pop() {
            for &y in next.get(x).into_iter().flatten() {
                if seen.insert(y.clone()) {
                    todo.push(y);
                }
            }
        }
        out.insert(v.clone(), seen);
    }
    out
}

/// Ordered pairs (a, b) with a directed path a → b in `target` but none in
/// `start`. Collapsed edges count in both directions. Every step kind keeps
/// this relation unchanged, so a nonempty answer rules out any certificate.
pub fn reachability_gaps(start: &Collapsed, target: &Collapsed) -> Vec<(Vertex, Vertex)> {
    let (rs, rt) = (reach(start), reach(target));
    let mut gaps = Vec::new();
    for (a, bs) in &rt {
        for b in bs {
            let both = start.body.complex().has_vertex(a) && start.body.complex().has_vertex(b);
            if a != b && both && !rs.get(a).is_some_and(|r| r.contains(b)) {
                gaps.push((a.clone(), b.clone()));
            }
        }
    }
    gaps
}

fn plain_cert(from: &ScaledComplex, to: &ScaledComplex, what: &str) -> Result<Certificate> {
    search_decomposition(
        &Collapsed::plain(from.clone()),
        &Collapsed::plain(to.clone()),
        SearchOptions::default(),
    )
    .ok_or_else(|| Error::CertifyFailure(format!("{what}: search exhausted its budget")))
}

/// θᵢ: E₀ → E₂, as a trivial-cofibration certificate.
pub fn certify_theta(i: usize) -> Result<Certificate> {
    let t = theta_complexes(i)?;
    let gaps = reachability_gaps(t.source(), t.target());
    if !gaps.is_empty() {
        let shown: Vec<String> = gaps.iter().map(|(a, b)| format!("{a}→{b}")).collect();
        return Err(Error::CertifyFailure(format!(
            "theta_{i}: the target has directed paths the source lacks ({}); no pushout, scaling extension or \
             transport creates new reachability, so no certificate exists",
            shown.join(", ")
        )));
    }
    let mut b = Builder::new(
        format!("theta_{i}"),
        CertClass::TrivialCofibration,
        t.source().clone(),
    );
    let f_cert = plain_cert(&t.f[0], &t.f[2], "F chain")?;
    let along = identity_on(&f_cert.target);
    b.push(Step::Transport {
        inner: Box::new(f_cert),
        along,
    })?;
    b.note("F chain certified on the uncollapsed objects and transported along the edge collapse");
    b.search_to(&t.e[1], "E1")?;
    let g_cert = plain_cert(&t.g[0], &t.g[2], "G chain")?;
    let along = identity_on(&g_cert.target);
    b.push(Step::Transport {
        inner: Box::new(g_cert),
        along,
    })?;
    b.note("G chain certified on the uncollapsed objects and transported along the edge collapse");
    b.search_to(&t.e[2], "E2")?;
    b.finish(t.e[2].clone())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DIsoReport {
    pub i: usize,
    /// The isomorphism from the double collapse onto ts(0).
    pub iso: VertexMap,
}

/// Collapses the ∂^F and ∂^R rows of FSRⁱ to edges and compares the result,
/// with its scaling, against ts(0).
pub fn d_iso_check(i: usize, scaling: WScaling) -> Result<DIsoReport> {
    if i > 1 {
        return input(format!("d_iso_check needs i in {{0, 1}}, got {i}"));
    }
    let f = fsr(i, scaling)?;
    for face in [Face::F, Face::R] {
        let part = restrict_scaling(&boundary_face_complex(1, face), &f)?;
        if let Some(t) = part
            .complex()
            .simplices_of_dim(2)
            .into_iter()
            .find(|t| !part.thin().contains(t))
        {
            return Err(Error::AuditFailure(format!(
                "d_iso({i}): thin sets differ, ∂^{face} triangle {t} is not thin so ∂^{face} → Δ¹♯ is no collapse"
            )));
        }
    }
    let mut vmap: VertexMap = f
        .complex()
        .vertices()
        .iter()
        .map(|v| (v.clone(), v.clone()))
        .collect();
    for (from, to) in [
        ("011", "010"),
        ("111", "110"),
        ("001", "000"),
        ("101", "100"),
    ] {
        vmap.insert(Vertex::new(from), Vertex::new(to));
    }
    let (q, map) = quotient_vertex_map(f.complex(), &vmap)?;
    let thin = f
        .thin()
        .iter()
        .filter_map(|t| map.image_of(t))
        .filter(|t| t.len() == 3)
        .collect();
    let q = ScaledComplex::new(q, thin)?;
    let t0 = ts(0).scaled;
    let accept = |s: &crate::complex::Simplex, img: &crate::complex::Simplex| {
        q.thin().contains(s) == t0.thin().contains(img)
    };
    let iso = find_isomorphism_with(
        q.complex(),
        t0.complex(),
        &VertexMap::new(),
        Orientation::Preserving,
        &accept,
    )
    .ok_or_else(|| {
        Error::AuditFailure(format!(
            "d_iso({i}): no scaling-preserving isomorphism ({} thin in the collapse, {} in ts(0))",
            q.thin().len(),
            t0.thin().len()
        ))
    })?;
    Ok(DIsoReport {
        i,
        iso: iso.vmap().clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certifier::verify_certificate;

    #[test]
    fn theta_one_verifies() {
        let c = certify_theta(1).unwrap();
        let r = verify_certificate(&c);
        assert!(r.ok, "{:?}", r.first_failure);
        assert!(c.target.same_as(theta_complexes(1).unwrap().target()));
    }

    #[test]
    fn theta_zero_is_obstructed() {
        let t = theta_complexes(0).unwrap();
        let gaps = reachability_gaps(t.source(), t.target());
        assert!(gaps.contains(&(Vertex::new("000"), Vertex::new("010"))));
        assert!(matches!(certify_theta(0), Err(Error::CertifyFailure(_))));
    }

    #[test]
    fn d_iso_tilde_and_plain() {
        for i in 0..2 {
            assert!(d_iso_check(i, WScaling::Tilde).is_ok(), "i={i}");
        }
        assert!(matches!(
            d_iso_check(1, WScaling::Plain),
            Err(Error::AuditFailure(_))
        ));
    }
}
