//! Acceptance criteria 1-9, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};

use scaledss::certifier::{
    audit_certificate, certify_cosegal, certify_inner_horn, certify_lemma_minus,
    certify_lemma_plus, certify_theta, d_iso_check, search_decomposition, verify_certificate,
    Attach, CertClass, Certificate, SearchOptions, Step,
};
use scaledss::complex::{
    find_isomorphism_with, OrderedComplex, Orientation, Simplex, Vertex, VertexMap,
};
use scaledss::generators::{gen_horn_admissible, GeneratorKind};
use scaledss::scaling::{restrict_scaling, Collapsed, ScaledComplex};
use scaledss::tower::{
    check_tower_identities, consecutive_images, cosegal_source, latching, oplax_square,
    rev_duality_check, thin_audit, tilde_extras, ts, ts_minus, ts_plus, Tower, TsPart, WScaling,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn triangles(s: &ScaledComplex) -> usize {
    s.complex()
        .simplices()
        .iter()
        .filter(|t| t.len() == 3)
        .count()
}

fn criterion_1() -> Outcome {
    for n in 0..=5 {
        for part in [TsPart::Plus, TsPart::Minus, TsPart::Full] {
            let r = thin_audit(n, part);
            ensure(r.passed(), || format!("n={n} {part:?}: {:?}", r.failures))?;
        }
    }
    // Counting oracle at n=1, straight from the built objects.
    let expect = [
        (TsPart::Plus, ts_plus(1), 10, 6),
        (TsPart::Minus, ts_minus(1), 10, 2),
        (TsPart::Full, ts(1).scaled, 18, 8),
    ];
    for (part, obj, total, thin) in expect {
        let r = thin_audit(1, part);
        let got = (r.total, r.thin, triangles(&obj), obj.thin().len());
        ensure(got == (total, thin, total, thin), || {
            format!("n=1 {part:?}: got {got:?}, want {total}/{thin}")
        })?;
    }
    Ok("n<=5, all parts; n=1 counts 10/6, 10/2, 18/8".into())
}

fn criterion_2() -> Outcome {
    let mut ids = 0;
    for tower in Tower::ALL {
        let r = check_tower_identities(tower, 4);
        ensure(r.passed(), || format!("{}: {:?}", r.tower, r.failures))?;
        ids += r.identities_checked;
    }
    Ok(format!("{ids} identities over 5 towers, n<=4"))
}

fn criterion_3() -> Outcome {
    for n in 1..=4 {
        let (_, r) = latching(n).map_err(|e| e.to_string())?;
        ensure(r.equal, || {
            format!(
                "n={n}: union {} vs explicit {}",
                r.union_size, r.explicit_size
            )
        })?;
    }
    Ok("latching = (Δ²×∂Δⁿ) ∪ Ω(Δ²×∂Δⁿ) for 1<=n<=4".into())
}

fn check_cert(c: &Certificate, what: &str) -> Result<(), String> {
    let r = verify_certificate(c);
    ensure(r.ok, || format!("{what}: {:?}", r.first_failure))?;
    let a = audit_certificate(c);
    ensure(a.ok, || format!("{what}: audit {:?}", a.reason))?;
    for at in c.attachments() {
        if let GeneratorKind::GenHorn { r, m, thin } = &at.gen {
            let adm = gen_horn_admissible(
                *r,
                &m.iter().copied().collect(),
                &thin.iter().copied().collect(),
            )
            .map_err(|e| e.to_string())?;
            ensure(
                adm.witness().is_some() && adm.witness() == at.witness_s,
                || format!("{what}: witness of {}", at.gen),
            )?;
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for n in 2..=4 {
        for i in 1..n {
            let p = certify_lemma_plus(n, i).map_err(|e| e.to_string())?;
            check_cert(&p, &format!("plus({n},{i})"))?;
            ensure(p.target.body == ts_plus(n), || {
                format!("plus({n},{i}) target")
            })?;
            let m = certify_lemma_minus(n, i).map_err(|e| e.to_string())?;
            check_cert(&m, &format!("minus({n},{i})"))?;
            ensure(m.target.body == ts_minus(n), || {
                format!("minus({n},{i}) target")
            })?;
            count += 2;
        }
    }
    Ok(format!("{count} certificates, witnesses re-checked"))
}

fn criterion_5() -> Outcome {
    for n in 2..=4 {
        for i in 1..n {
            let c = certify_inner_horn(n, i).map_err(|e| e.to_string())?;
            check_cert(&c, &format!("inner({n},{i})"))?;
            ensure(c.target.body == ts(n).scaled, || {
                format!("inner({n},{i}) target")
            })?;
        }
    }
    for n in 1..=3 {
        let c = certify_cosegal(n).map_err(|e| e.to_string())?;
        check_cert(&c, &format!("cosegal({n})"))?;
        let (src, _) = cosegal_source(n).map_err(|e| e.to_string())?;
        let images = consecutive_images(n).map_err(|e| e.to_string())?;
        ensure(src.complex().simplices() == &images, || {
            format!("cosegal({n}) source is not the union of images")
        })?;
        ensure(c.start.body == src, || format!("cosegal({n}) start"))?;
    }
    Ok("inner horns n<=4, co-Segal n<=3".into())
}

fn criterion_6() -> Outcome {
    let t1 = ts(1).scaled;
    for s in tilde_extras() {
        ensure(t1.complex().contains(&s), || {
            format!("{s} is not a 2-simplex of TS¹")
        })?;
    }
    for i in 0..2 {
        d_iso_check(i, WScaling::Tilde).map_err(|e| e.to_string())?;
    }
    ensure(d_iso_check(1, WScaling::Plain).is_err(), || {
        "plain scaling passed d_iso".into()
    })?;
    let c1 = certify_theta(1).map_err(|e| e.to_string())?;
    check_cert(&c1, "theta_1")?;
    ensure(
        c1.attachments()
            .iter()
            .any(|a| matches!(a.gen, GeneratorKind::SpecialTC { .. })),
        || "theta_1 uses no SpecialTC".into(),
    )?;
    ensure(
        c1.steps.iter().any(|s| matches!(s, Step::Transport { .. })),
        || "theta_1 has no transport".into(),
    )?;
    match certify_theta(0) {
        Ok(c0) => check_cert(&c0, "theta_0").map(|_| "θ₀ and θ₁ verify, d_iso for i=0,1".into()),
        Err(e) => Err(format!(
            "theta_1 verifies and d_iso passes, but theta_0 does not: {e}"
        )),
    }
}

fn criterion_7() -> Outcome {
    for n in 0..=3 {
        rev_duality_check(n).map_err(|e| e.to_string())?;
    }
    Ok("∂^B ≅ (∂^R)^op intertwining cofaces, n<=3".into())
}

fn random_pair(
    rng: &mut StdRng,
    top: &[Simplex],
    ambient: &ScaledComplex,
) -> (Collapsed, Collapsed, Simplex) {
    let sigma = top.choose(rng).expect("nonempty").clone();
    let body = OrderedComplex::from_simplices([sigma.clone()]).expect("faces of ts(2)");
    let big = restrict_scaling(&body, ambient).expect("sub");
    // Drop the top, one codimension-one face, and sometimes more faces and marks.
    let wild = rng.random_bool(0.4);
    let mut drop = vec![sigma.clone(), sigma.face(rng.random_range(0..sigma.len()))];
    if wild {
        drop.extend(
            (0..sigma.len())
                .filter(|_| rng.random_bool(0.3))
                .map(|p| sigma.face(p)),
        );
    }
    let small = body.filter(|s| !drop.contains(s));
    let thin: BTreeSet<Simplex> = big
        .thin()
        .iter()
        .filter(|t| small.contains(t) && (!wild || rng.random_bool(0.8)))
        .cloned()
        .collect();
    let small = ScaledComplex::new(small, thin).expect("thin triangles kept");
    (Collapsed::plain(small), Collapsed::plain(big), sigma)
}

/// A one-step certificate gluing Δ^σ in by its horn, right or wrong.
fn guess(a: &Collapsed, b: &Collapsed, sigma: &Simplex) -> Certificate {
    let r = sigma.dim();
    let gen = if r >= 3 {
        GeneratorKind::GenHorn {
            r,
            m: vec![1],
            thin: Vec::new(),
        }
    } else {
        GeneratorKind::An1 { n: 2, i: 1 }
    };
    let attach = sigma
        .vertices()
        .iter()
        .enumerate()
        .map(|(p, v)| (Vertex::new(p.to_string()), v.clone()))
        .collect();
    Certificate {
        class: CertClass::ScaledAnodyne,
        start: a.clone(),
        target: b.clone(),
        steps: vec![Step::GeneratorPushout(Attach {
            gen,
            attach,
            witness_s: None,
        })],
        notes: Vec::new(),
    }
}

fn tamper(c: &Certificate, rng: &mut StdRng) -> Certificate {
    let mut t = c.clone();
    match rng.random_range(0..3) {
        0 if !t.steps.is_empty() => {
            let j = rng.random_range(0..t.steps.len());
            t.steps.remove(j);
        }
        1 if t.steps.len() > 1 => t.steps.swap(0, 1),
        _ => {
            let thin: BTreeSet<Simplex> = t.target.body.thin().iter().skip(1).cloned().collect();
            t.target.body =
                ScaledComplex::new(t.target.body.complex().clone(), thin).expect("subset");
        }
    }
    t
}

fn criterion_8() -> Outcome {
    let ambient = ts(2).scaled;
    let top = ambient.complex().maximal_simplices();
    let mut rng = StdRng::seed_from_u64(0x5ca1ed);
    let opts = SearchOptions {
        budget: 32,
        allow_special: false,
    };
    let (mut found, mut agreed) = (0, 0);
    let mut accepted = 0;
    for k in 0..1000 {
        let (a, b, sigma) = random_pair(&mut rng, &top, &ambient);
        let (label, c) = match search_decomposition(&a, &b, opts) {
            Some(c) => {
                found += 1;
                ("found", c)
            }
            None => ("guessed", guess(&a, &b, &sigma)),
        };
        for (label, cert) in [(label, c.clone()), ("tampered", tamper(&c, &mut rng))] {
            let v = verify_certificate(&cert).ok;
            let au = audit_certificate(&cert).ok;
            ensure(v == au, || {
                format!("pair {k} ({label}): verify {v}, audit {au}")
            })?;
            ensure(label != "found" || v, || {
                format!("pair {k}: search returned a certificate that does not verify")
            })?;
            agreed += 1;
            accepted += usize::from(v);
        }
    }
    Ok(format!(
        "1000 pairs, {found} found by search; {agreed} verdicts agree ({accepted} accepted)"
    ))
}

fn criterion_9() -> Outcome {
    let (t0, sq) = (ts(0).scaled, oplax_square());
    let accept = |s: &Simplex, img: &Simplex| t0.thin().contains(s) == sq.thin().contains(img);
    let iso = find_isomorphism_with(
        t0.complex(),
        sq.complex(),
        &VertexMap::new(),
        Orientation::Preserving,
        &accept,
    );
    let iso = iso.ok_or("no scaling-preserving isomorphism")?;
    let shown: Vec<String> = iso.vmap().iter().map(|(a, b)| format!("{a}↦{b}")).collect();
    Ok(shown.join(" "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("thin-family audits", criterion_1),
        ("cosimplicial identities", criterion_2),
        ("latching objects", criterion_3),
        ("plus/minus lemma certificates", criterion_4),
        ("inner horns and co-Segal", criterion_5),
        ("completeness objects and θ-maps", criterion_6),
        ("rev duality", criterion_7),
        ("verify/audit agreement on random searches", criterion_8),
        ("ts(0) is the oplax square", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS  {name} ({secs:.2}s): {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
