use std::collections::BTreeSet;

use proptest::prelude::*;

use scaledss::certifier::{
    audit_certificate, certify_lemma_plus, verify_certificate, Attach, CertClass, Certificate, Step,
};
use scaledss::complex::{
    find_isomorphism, OrderedComplex, Orientation, Simplex, Vertex, VertexMap,
};
use scaledss::generators::{gen_horn_admissible, instantiate, position_triangles, GeneratorKind};
use scaledss::io::{from_json_str, to_canonical_json};
use scaledss::scaling::{restrict_scaling, Collapsed, ScaledComplex};
use scaledss::tower::ts;

/// A subcomplex of ts(2) spanned by a subset of its maximal simplices.
fn sub_ts2() -> impl Strategy<Value = ScaledComplex> {
    let top = ts(2).scaled.complex().maximal_simplices();
    proptest::sample::subsequence(top.clone(), 1..=top.len()).prop_map(|gens| {
        let body = OrderedComplex::from_simplices(gens).unwrap();
        restrict_scaling(&body, &ts(2).scaled).unwrap()
    })
}

fn gen_horn() -> impl Strategy<Value = (usize, BTreeSet<usize>, BTreeSet<[usize; 3]>)> {
    (3usize..=6).prop_flat_map(|r| {
        let tris = position_triangles(r);
        let n = tris.len();
        (
            Just(r),
            proptest::collection::btree_set(0..r, 1..=r - 2),
            proptest::collection::vec(any::<bool>(), n).prop_map(move |keep| {
                tris.iter()
                    .zip(keep)
                    .filter(|(_, k)| *k)
                    .map(|(t, _)| *t)
                    .collect()
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn json_round_trip_is_canonical(k in sub_ts2()) {
        let text = to_canonical_json(&k).unwrap();
        let back: ScaledComplex = from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &k);
        prop_assert_eq!(to_canonical_json(&back).unwrap(), text);
    }

    #[test]
    fn relabelled_complex_is_isomorphic(k in sub_ts2(), shift in 0usize..100) {
        let vmap: VertexMap = k.complex().vertices().iter().enumerate()
            .map(|(j, v)| (v.clone(), Vertex::new(format!("v{}", j + shift)))).collect();
        let moved = k.complex().relabel(&vmap).unwrap();
        let iso = find_isomorphism(k.complex(), &moved, &VertexMap::new(), Orientation::Preserving);
        prop_assert!(iso.is_some());
    }

    #[test]
    fn admissible_generalized_horns_replay((r, m, thin) in gen_horn()) {
        let adm = gen_horn_admissible(r, &m, &thin).unwrap();
        let Some(s) = adm.witness() else { return Ok(()) };
        prop_assert!(s < *m.iter().next_back().unwrap() && !m.contains(&s));
        let gen = GeneratorKind::GenHorn { r, m: m.iter().copied().collect(), thin: thin.iter().copied().collect() };
        let g = instantiate(&gen).unwrap();
        let attach: VertexMap = g.vertices().into_iter().map(|v| (v.clone(), v)).collect();
        let c = Certificate {
            class: CertClass::ScaledAnodyne,
            start: Collapsed::plain(g.source.clone()),
            target: Collapsed::plain(g.target.clone()),
            steps: vec![Step::GeneratorPushout(Attach { gen, attach, witness_s: Some(s) })],
            notes: Vec::new(),
        };
        prop_assert!(verify_certificate(&c).ok);
        prop_assert!(audit_certificate(&c).ok);
    }

    #[test]
    fn generator_source_sits_in_target((r, m, thin) in gen_horn()) {
        let gen = GeneratorKind::GenHorn { r, m: m.iter().copied().collect(), thin: thin.iter().copied().collect() };
        if let Ok(g) = instantiate(&gen) {
            prop_assert!(g.source.is_scaled_subcomplex_of(&g.target));
            prop_assert!(!g.interior().is_empty());
            prop_assert!(g.interior().contains(&Simplex::new(g.vertices())));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn replays_agree_on_damaged_certificates(drop in any::<prop::sample::Index>(), swap in any::<bool>()) {
        let mut c = certify_lemma_plus(3, 1).unwrap();
        let j = drop.index(c.steps.len());
        if swap && j + 1 < c.steps.len() {
            c.steps.swap(j, j + 1);
        } else {
            c.steps.remove(j);
        }
        let v = verify_certificate(&c);
        prop_assert_eq!(v.ok, audit_certificate(&c).ok);
        prop_assert!(!v.ok || swap);
    }

    #[test]
    fn certificates_round_trip(n in 2usize..=3) {
        let c = certify_lemma_plus(n, 1).unwrap();
        let text = to_canonical_json(&c).unwrap();
        let back: Certificate = from_json_str(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(verify_certificate(&back), verify_certificate(&c));
    }
}
