use scaledss::certifier::{
    audit_certificate, certify_cosegal, certify_inner_horn, certify_lemma_minus,
    certify_lemma_plus, verify_certificate, Certificate, Step,
};
use scaledss::generators::{gen_horn_admissible, GeneratorKind};
use scaledss::scaling::Collapsed;
use scaledss::tower::{ts, ts_minus, ts_plus};

fn check(c: &Certificate, what: &str) {
    let r = verify_certificate(c);
    assert!(r.ok, "{what}: {:?}", r.first_failure);
    let a = audit_certificate(c);
    assert!(a.ok, "{what}: audit says {:?}", a.reason);
    for at in c.attachments() {
        if let GeneratorKind::GenHorn { r, m, thin } = &at.gen {
            let adm = gen_horn_admissible(
                *r,
                &m.iter().copied().collect(),
                &thin.iter().copied().collect(),
            )
            .unwrap();
            assert_eq!(
                adm.witness(),
                at.witness_s,
                "{what}: witness for {}",
                at.gen
            );
        }
    }
}

#[test]
fn plus_lemma_up_to_four() {
    for n in 2..=4 {
        for i in 1..n {
            let c = certify_lemma_plus(n, i).unwrap();
            check(&c, &format!("plus {n},{i}"));
            assert!(c.target.same_as(&Collapsed::plain(ts_plus(n))));
        }
    }
}

#[test]
fn minus_lemma_up_to_four() {
    for n in 2..=4 {
        for i in 1..n {
            let c = certify_lemma_minus(n, i).unwrap();
            check(&c, &format!("minus {n},{i}"));
            assert!(c.target.same_as(&Collapsed::plain(ts_minus(n))));
        }
    }
}

#[test]
fn inner_horns_and_cosegal() {
    for n in 2..=3 {
        for i in 1..n {
            let c = certify_inner_horn(n, i).unwrap();
            check(&c, &format!("inner {n},{i}"));
            assert!(c.target.same_as(&Collapsed::plain(ts(n).scaled)));
        }
    }
    for n in 1..=3 {
        let c = certify_cosegal(n).unwrap();
        check(&c, &format!("cosegal {n}"));
        if n == 1 {
            assert!(c.steps.is_empty());
        }
    }
}

#[test]
fn dropping_a_step_is_caught_by_both_replays() {
    let mut c = certify_lemma_plus(3, 1).unwrap();
    let last = c
        .steps
        .iter()
        .rposition(|s| matches!(s, Step::BatchPushout { .. } | Step::GeneratorPushout(_)))
        .unwrap();
    c.steps.remove(last);
    assert!(!verify_certificate(&c).ok);
    assert!(!audit_certificate(&c).ok);
}
