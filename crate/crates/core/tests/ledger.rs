use pgonal::expr::Params;
use pgonal::ledger::{classify_symmetries, verify_all, verify_case, Budget, Ledger, Verdict};
use proptest::prelude::*;

fn small() -> Budget {
    Budget {
        primes: vec![3],
        q_max: 4,
    }
}

#[test]
fn small_budget_runs_cleanly() {
    let ledger = Ledger::bundled().unwrap();
    let rep = verify_all(&ledger, &small(), 2).unwrap();
    assert_eq!(rep.summary.errors, 0);
    assert_eq!(rep.summary.structural_failures, 0);
    assert_eq!(rep.summary.cases.len(), ledger.entries().len());
    for c in &rep.cases {
        for cl in c.claims() {
            if cl.verdict == Verdict::Mismatch {
                assert!(
                    cl.witness.is_some(),
                    "{} {}: {}",
                    c.case,
                    cl.claim,
                    cl.computed
                );
            }
        }
    }
}

#[test]
fn json_and_text_agree_on_the_summary() {
    let ledger = Ledger::bundled().unwrap();
    let rep = verify_all(&ledger, &small(), 1).unwrap();
    let v: serde_json::Value = serde_json::from_str(&rep.to_json()).unwrap();
    let s = &v["summary"];
    let line = format!(
        "summary: {} runs, {} claims, {} MATCH, {} MISMATCH",
        s["runs"], s["claims"], s["matches"], s["mismatches"]
    );
    assert!(rep.render_text().contains(&line), "{line}");
}

#[test]
fn loaded_file_equals_bundled() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ledger.toml");
    let a = Ledger::load(std::path::Path::new(path)).unwrap();
    let b = Ledger::bundled().unwrap();
    assert_eq!(a.ids(), b.ids());
}

fn all_tuples() -> Vec<(String, Params)> {
    let ledger = Ledger::bundled().unwrap();
    let mut out = Vec::new();
    for e in ledger.entries() {
        for t in e.tuples(&Budget::default()).unwrap() {
            out.push((e.id.clone(), t.params));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_realization_is_structurally_sound(idx in 0usize..400) {
        let tuples = all_tuples();
        let (id, params) = &tuples[idx % tuples.len()];
        let ledger = Ledger::bundled().unwrap();
        let rep = verify_case(&ledger, id, params).unwrap();
        prop_assert!(rep.error.is_none());
        for v in &rep.variants {
            prop_assert!(v.structure.ok(), "{id} {params:?}: {:?}", v.structure);
        }
    }

    #[test]
    fn classes_partition_the_symmetries(idx in 0usize..400) {
        let tuples = all_tuples();
        let (id, params) = &tuples[idx % tuples.len()];
        let ledger = Ledger::bundled().unwrap();
        let g = ledger.entry(id).unwrap().realize(params, None).unwrap();
        let classes = classify_symmetries(&g).unwrap();
        let mut members: Vec<usize> = classes.iter().flat_map(|c| c.members.clone()).collect();
        members.sort_unstable();
        prop_assert_eq!(members, g.anticonformal_involutions());
        for c in &classes {
            prop_assert_eq!(g.order() % c.members.len(), 0);
            prop_assert!(c.n_sigma.contains(c.representative));
            prop_assert!(c.n_phi_sigma.contains(g.phi()));
        }
    }
}
