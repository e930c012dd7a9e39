use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;

use super::{boundary_face_complex, columns, label, parts, ts, ts_of, Face, Row};
use crate::complex::{
    find_isomorphism_with, ComplexMap, OrderedComplex, Orientation, Vertex, VertexMap,
};
use crate::error::{input, Error, Result};
use crate::scaling::{restrict_scaling, ScaledComplex, ScaledMap};

/// The cosimplicial objects: TS^• and its four boundary faces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tower {
    Full,
    Face(Face),
}

impl Tower {
    pub const ALL: [Tower; 5] = [
        Tower::Full,
        Tower::Face(Face::T),
        Tower::Face(Face::F),
        Tower::Face(Face::R),
        Tower::Face(Face::B),
    ];

    pub fn object(self, n: usize) -> ScaledComplex {
        match self {
            Tower::Full => ts(n).scaled,
            Tower::Face(f) => {
                restrict_scaling(&boundary_face_complex(n, f), &ts(n).scaled).expect("face")
            }
        }
    }

    pub fn name(self) -> String {
        match self {
            Tower::Full => "TS".to_string(),
            Tower::Face(f) => format!("face-{f}"),
        }
    }
}

impl FromStr for Tower {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" | "TS" => Ok(Tower::Full),
            other => Ok(Tower::Face(other.trim_start_matches("face-").parse()?)),
        }
    }
}

fn column_map(source: &ScaledComplex, f: impl Fn(usize) -> usize) -> VertexMap {
    source
        .complex()
        .vertices()
        .iter()
        .map(|v| {
            let (row, k) = parts(v);
            (v.clone(), label(row, f(k)))
        })
        .collect()
}

fn delta(j: usize) -> impl Fn(usize) -> usize {
    move |k| if k < j { k } else { k + 1 }
}

fn sigma(j: usize) -> impl Fn(usize) -> usize {
    move |k| if k <= j { k } else { k - 1 }
}

/// Coface dʲ from level n to level n+1: ijk ↦ ij δⱼ(k).
pub fn coface(tower: Tower, n: usize, j: usize) -> Result<ScaledMap> {
    if j > n + 1 {
        return input(format!("coface d^{j} needs j <= {}", n + 1));
    }
    let src = tower.object(n);
    let tgt = tower.object(n + 1);
    ScaledMap::new(&src, &tgt, column_map(&src, delta(j)))
}

/// Codegeneracy sʲ from level n to level n−1: ijk ↦ ij σⱼ(k).
pub fn codegeneracy(tower: Tower, n: usize, j: usize) -> Result<ScaledMap> {
    if n == 0 || j > n - 1 {
        return input(format!("codegeneracy s^{j} is not defined at level {n}"));
    }
    let src = tower.object(n);
    let tgt = tower.object(n - 1);
    ScaledMap::new(&src, &tgt, column_map(&src, sigma(j)))
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct IdentityReport {
    pub tower: String,
    pub max_n: usize,
    pub maps_checked: usize,
    pub identities_checked: usize,
    pub failures: Vec<String>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn compose(first: &VertexMap, second: &VertexMap) -> VertexMap {
    first
        .iter()
        .map(|(v, w)| (v.clone(), second[w].clone()))
        .collect()
}

/// Builds every coface and codegeneracy up to `max_n` (each checked to be a
/// scaled map) and compares both sides of every cosimplicial identity.
pub fn check_tower_identities(tower: Tower, max_n: usize) -> IdentityReport {
    let mut rep = IdentityReport {
        tower: tower.name(),
        max_n,
        ..Default::default()
    };
    // d[n][j]: level n → n+1, s[n][j]: level n → n−1
    let mut d: Vec<Vec<VertexMap>> = Vec::new();
    let mut s: Vec<Vec<VertexMap>> = Vec::new();
    for n in 0..=max_n {
        let mut dn = Vec::new();
        if n < max_n {
            for j in 0..=n + 1 {
                match coface(tower, n, j) {
                    Ok(m) => dn.push(m.vmap().clone()),
                    Err(e) => {
                        rep.failures.push(format!("d^{j} at level {n}: {e}"));
                        dn.push(VertexMap::new());
                    }
                }
                rep.maps_checked += 1;
            }
        }
        d.push(dn);
        let mut sn = Vec::new();
        for j in 0..n {
            match codegeneracy(tower, n, j) {
                Ok(m) => sn.push(m.vmap().clone()),
                Err(e) => {
                    rep.failures.push(format!("s^{j} at level {n}: {e}"));
                    sn.push(VertexMap::new());
                }
            }
            rep.maps_checked += 1;
        }
        s.push(sn);
    }
    if !rep.failures.is_empty() {
        return rep;
    }
    let check = |ok: bool, what: String, rep: &mut IdentityReport| {
        rep.identities_checked += 1;
        if !ok {
            rep.failures.push(what);
        }
    };
    for n in 0..=max_n {
        let id: VertexMap = tower
            .object(n)
            .complex()
            .vertices()
            .iter()
            .map(|v| (v.clone(), v.clone()))
            .collect();
        // d^j d^i = d^i d^{j-1} for i < j, level n → n+2
        if n + 2 <= max_n {
            for j in 0..=n + 2 {
                for i in 0..j {
                    let lhs = compose(&d[n][i], &d[n + 1][j]);
                    let rhs = compose(&d[n][j - 1], &d[n + 1][i]);
                    check(
                        lhs == rhs,
                        format!("d^{j}d^{i} = d^{i}d^{} at level {n}", j - 1),
                        &mut rep,
                    );
                }
            }
        }
        // s^j s^i = s^i s^{j+1} for i <= j, level n → n−2
        if n >= 2 {
            for j in 0..=n - 2 {
                for i in 0..=j {
                    let lhs = compose(&s[n][i], &s[n - 1][j]);
                    let rhs = compose(&s[n][j + 1], &s[n - 1][i]);
                    check(
                        lhs == rhs,
                        format!("s^{j}s^{i} = s^{i}s^{} at level {n}", j + 1),
                        &mut rep,
                    );
                }
            }
        }
        // s^j d^i, level n → n+1 → n
        if n < max_n {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = compose(&d[n][i], &s[n + 1][j]);
                    let rhs = if i < j {
                        compose(&s[n][j - 1], &d[n - 1][i])
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        compose(&s[n][j], &d[n - 1][i - 1])
                    };
                    check(lhs == rhs, format!("s^{j}d^{i} at level {n}"), &mut rep);
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, Serialize)]
pub struct LatchingReport {
    pub n: usize,
    pub union_size: usize,
    pub explicit_size: usize,
    pub total_size: usize,
    pub equal: bool,
}

/// Union of the coface images from level n−1 compared with
/// (Δ²×∂Δⁿ) ∪ Ω(Δ²×∂Δⁿ).
pub fn latching(n: usize) -> Result<(OrderedComplex, LatchingReport)> {
    if n == 0 {
        return input("latching objects start at level 1");
    }
    let mut union = OrderedComplex::empty();
    for j in 0..=n {
        union = union.union(&coface(Tower::Full, n - 1, j)?.map().image())?;
    }
    let explicit = ts_of(n, &columns::boundary(n)?);
    let rep = LatchingReport {
        n,
        union_size: union.len(),
        explicit_size: explicit.complex().len(),
        total_size: ts(n).scaled.complex().len(),
        equal: &union == explicit.complex(),
    };
    Ok((union, rep))
}

/// TS(Spⁿ) with its inclusion into TSⁿ.
pub fn cosegal_source(n: usize) -> Result<(ScaledComplex, ScaledMap)> {
    if n == 0 {
        return input("co-Segal sources start at level 1");
    }
    let src = ts_of(n, &columns::spine(n));
    let inc = ScaledMap::inclusion(&src, &ts(n).scaled)?;
    Ok((src, inc))
}

fn rev_hint(n: usize, b: &OrderedComplex) -> VertexMap {
    b.vertices()
        .iter()
        .map(|v| {
            let (row, k) = parts(v);
            let row = if row == Row::R11 { Row::R00 } else { row };
            (v.clone(), label(row, n - k))
        })
        .collect()
}

fn rev_iso(n: usize) -> Result<ComplexMap> {
    let full = ts(n).scaled;
    let b = restrict_scaling(&boundary_face_complex(n, Face::B), &full)?;
    let r = restrict_scaling(&boundary_face_complex(n, Face::R), &full)?;
    let r_op = r.opposite();
    let accept = |s: &crate::complex::Simplex, img: &crate::complex::Simplex| {
        s.len() != 3 || b.is_thin(s) == r_op.is_thin(img)
    };
    find_isomorphism_with(
        b.complex(),
        r.complex(),
        &rev_hint(n, b.complex()),
        Orientation::Reversing,
        &accept,
    )
    .ok_or_else(|| Error::AuditFailure(format!("no reversing isomorphism ∂^B ≅ ∂^R at level {n}")))
}

/// The orientation-reversing, scaling-preserving isomorphism ∂^B TSⁿ ≅ ∂^R TSⁿ,
/// checked to intertwine dʲ with d^{n+1−j}.
pub fn rev_duality_check(n: usize) -> Result<ComplexMap> {
    let phi = rev_iso(n)?;
    let phi_next = rev_iso(n + 1)?;
    for j in 0..=n + 1 {
        let dj = coface(Tower::Face(Face::B), n, j)?;
        let dr = coface(Tower::Face(Face::R), n, n + 1 - j)?;
        for v in phi.source().vertices() {
            let lhs: &Vertex = &phi_next.vmap()[&dj.vmap()[v]];
            let rhs: &Vertex = &dr.vmap()[&phi.vmap()[v]];
            if lhs != rhs {
                return Err(Error::AuditFailure(format!(
                    "d^{j} and d^{} are not intertwined at {v} (level {n})",
                    n + 1 - j
                )));
            }
        }
    }
    Ok(phi)
}

/// Images of TS¹ along consecutive column pairs, whose union is TS(Spⁿ).
pub fn consecutive_images(n: usize) -> Result<BTreeSet<crate::complex::Simplex>> {
    let one = ts(1).scaled;
    let mut out = BTreeSet::new();
    for k in 0..n {
        let vmap = column_map(&one, |c| k + c);
        for s in one.complex().simplices() {
            out.insert(s.map(&vmap).expect("mapped"));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coface_from_zero() {
        let d1 = coface(Tower::Full, 0, 1).unwrap();
        let cols: BTreeSet<usize> = d1
            .map()
            .image()
            .vertices()
            .iter()
            .map(|v| parts(v).1)
            .collect();
        assert_eq!(cols, [0].into_iter().collect());
        assert!(coface(Tower::Full, 0, 2).is_err());
    }

    #[test]
    fn identities_low_levels() {
        for t in Tower::ALL {
            let rep = check_tower_identities(t, 2);
            assert!(rep.passed(), "{:?}", rep.failures);
            assert!(rep.identities_checked > 0);
        }
    }

    #[test]
    fn codegeneracy_collapses() {
        let s0 = codegeneracy(Tower::Full, 1, 0).unwrap();
        assert_eq!(s0.map().image(), ts(0).scaled.complex().clone());
    }

    #[test]
    fn latching_one_and_two() {
        let (u, rep) = latching(1).unwrap();
        assert!(rep.equal);
        assert!(u.len() < ts(1).scaled.complex().len());
        assert!(latching(2).unwrap().1.equal);
    }

    #[test]
    fn cosegal_source_levels() {
        assert_eq!(cosegal_source(1).unwrap().0, ts(1).scaled);
        let (s2, _) = cosegal_source(2).unwrap();
        assert_eq!(s2.complex().vertices().len(), 12);
        assert_eq!(s2.complex().simplices(), &consecutive_images(2).unwrap());
    }

    #[test]
    fn rev_duality_small() {
        for n in 0..3 {
            rev_duality_check(n).unwrap();
        }
    }
}
