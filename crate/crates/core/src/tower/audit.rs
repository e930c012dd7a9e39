use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{minus_families, parts, plus_families, ts, ts_minus, ts_plus, Row, TsPart};
use crate::complex::{OrderedComplex, Simplex};
use crate::error::{Error, Result};

/// Result of recomputing a thin set from the family inequalities.
#[derive(Debug, Clone, Serialize)]
pub struct ThinAuditReport {
    pub n: usize,
    pub part: String,
    pub total: usize,
    pub thin: usize,
    pub families: BTreeMap<String, usize>,
    pub overlaps: usize,
    pub failures: Vec<String>,
}

impl ThinAuditReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        if self.passed() {
            Ok(self)
        } else {
            Err(Error::AuditFailure(self.failures.join("; ")))
        }
    }
}

/// Plus families a triangle (in grid order) belongs to.
pub fn plus_family_member(t: &Simplex) -> Vec<&'static str> {
    let [(r0, a), (r1, b), (r2, c)] = triple(t);
    let mut out = Vec::new();
    if r0 == r1 && r1 == r2 && r0 != Row::R10 && a < b && b < c {
        out.push("same-row");
    }
    match (r0, r1, r2) {
        (Row::R00, Row::R01, Row::R01) if a <= b && b < c => out.push("00-01-01"),
        (Row::R01, Row::R01, Row::R11) if a < b && b <= c => out.push("01-01-11"),
        (Row::R00, Row::R01, Row::R11) if a <= b && b <= c => out.push("00-01-11"),
        _ => {}
    }
    out
}

/// Minus families a triangle (in join order) belongs to.
pub fn minus_family_member(t: &Simplex) -> Vec<&'static str> {
    let [(r0, a), (r1, b), (r2, c)] = triple(t);
    let mut out = Vec::new();
    let same = r0 == r1 && r1 == r2;
    let increasing = a < b && b < c;
    let decreasing = a > b && b > c;
    if same && ((r0 == Row::R10 && decreasing) || (matches!(r0, Row::R00 | Row::R11) && increasing))
    {
        out.push("same-row");
    }
    match (r0, r1, r2) {
        (Row::R00, Row::R00, Row::R10) if a < b && b <= c => out.push("00-00-10"),
        (Row::R10, Row::R11, Row::R11) if a <= b && b < c => out.push("10-11-11"),
        _ => {}
    }
    out
}

fn triple(t: &Simplex) -> [(Row, usize); 3] {
    let v = t.vertices();
    assert_eq!(v.len(), 3, "triangles only");
    [parts(&v[0]), parts(&v[1]), parts(&v[2])]
}

fn audit_part(
    complex: &OrderedComplex,
    member: &dyn Fn(&Simplex) -> Vec<&'static str>,
    listed: &[Simplex],
    prefix: &str,
    rep: &mut ThinAuditReport,
) -> BTreeSet<Simplex> {
    let mut recomputed = BTreeSet::new();
    for t in complex.simplices_of_dim(2) {
        let fams = member(&t);
        if fams.len() > 1 {
            rep.overlaps += 1;
        }
        for f in &fams {
            *rep.families.entry(format!("{prefix}{f}")).or_default() += 1;
        }
        if !fams.is_empty() {
            recomputed.insert(t);
        }
    }
    for t in listed {
        if !complex.contains(t) {
            rep.failures
                .push(format!("family member {t} is not a 2-simplex"));
        }
    }
    recomputed
}

/// Recomputes the thin set of TSⁿ₊, TSⁿ₋ or TSⁿ by evaluating the family
/// predicates on every 2-simplex and compares with the stored set.
pub fn thin_audit(n: usize, part: TsPart) -> ThinAuditReport {
    let (complex, stored) = match part {
        TsPart::Plus => {
            let p = ts_plus(n);
            (p.complex().clone(), p.thin().clone())
        }
        TsPart::Minus => {
            let m = ts_minus(n);
            (m.complex().clone(), m.thin().clone())
        }
        TsPart::Full => {
            let t = ts(n).scaled;
            (t.complex().clone(), t.thin().clone())
        }
    };
    let name = match part {
        TsPart::Plus => "plus",
        TsPart::Minus => "minus",
        TsPart::Full => "full",
    };
    let mut rep = ThinAuditReport {
        n,
        part: name.to_string(),
        total: complex.simplices_of_dim(2).len(),
        thin: stored.len(),
        families: BTreeMap::new(),
        overlaps: 0,
        failures: Vec::new(),
    };
    let plus_listed: Vec<Simplex> = plus_families(n)
        .into_iter()
        .map(|t| Simplex::new(t.to_vec()))
        .collect();
    let minus_listed: Vec<Simplex> = minus_families(n)
        .into_iter()
        .map(|t| {
            let mut v = t.to_vec();
            v.sort_by_key(super::join_key);
            Simplex::new(v)
        })
        .collect();
    let recomputed = match part {
        TsPart::Plus => audit_part(&complex, &plus_family_member, &plus_listed, "", &mut rep),
        TsPart::Minus => audit_part(&complex, &minus_family_member, &minus_listed, "", &mut rep),
        TsPart::Full => {
            let plus = ts_plus(n);
            let minus = ts_minus(n);
            let mut r = audit_part(
                plus.complex(),
                &plus_family_member,
                &plus_listed,
                "plus:",
                &mut rep,
            );
            r.extend(audit_part(
                minus.complex(),
                &minus_family_member,
                &minus_listed,
                "minus:",
                &mut rep,
            ));
            r
        }
    };
    for t in stored.difference(&recomputed) {
        rep.failures
            .push(format!("stored thin {t} satisfies no family"));
    }
    for t in recomputed.difference(&stored) {
        rep.failures
            .push(format!("{t} satisfies a family but is not stored thin"));
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_at_one() {
        let p = thin_audit(1, TsPart::Plus);
        assert!(p.passed(), "{:?}", p.failures);
        assert_eq!((p.total, p.thin), (10, 6));
        let m = thin_audit(1, TsPart::Minus);
        assert!(m.passed(), "{:?}", m.failures);
        assert_eq!((m.total, m.thin), (10, 2));
        let f = thin_audit(1, TsPart::Full);
        assert!(f.passed(), "{:?}", f.failures);
        assert_eq!((f.total, f.thin), (18, 8));
        let z = thin_audit(0, TsPart::Full);
        assert_eq!((z.total, z.thin), (2, 1));
    }

    #[test]
    fn predicates() {
        let t = Simplex::from_labels(&["000", "011", "112"]);
        assert_eq!(plus_family_member(&t), vec!["00-01-11"]);
        let t = Simplex::from_labels(&["000", "001", "112"]);
        assert!(plus_family_member(&t).is_empty());
        let t = Simplex::from_labels(&["102", "101", "100"]);
        assert_eq!(minus_family_member(&t), vec!["same-row"]);
    }
}
