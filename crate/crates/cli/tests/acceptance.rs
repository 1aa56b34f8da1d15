//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::BTreeSet;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_rational::Ratio;
use pgonal::epi::{
    check_surface_kernel, enumerate_surface_kernel_epis, kernel_genus, theta1, theta2, theta3,
    ConnectorImage, EnumerateOptions,
};
use pgonal::expr::Params;
use pgonal::group::{SignedGroup, Target};
use pgonal::ledger::{verify_all, verify_case, Budget, Ledger, Verdict};
use pgonal::signature::{
    cyclic_p_gonal_signature, parse_signature, real_cyclic_signatures, GeneratorKind, TargetFamily,
};
use pgonal::species::{
    allowed_species, schreier_sign_test, species, three_condition_sign, verify_theorem2, Flag,
};

const LIMIT_1: Duration = Duration::from_secs(1);
const LIMIT_2: Duration = Duration::from_secs(1);
const LIMIT_3: Duration = Duration::from_secs(1);
const LIMIT_4: Duration = Duration::from_secs(1);
const LIMIT_5: Duration = Duration::from_secs(60);
const LIMIT_6: Duration = Duration::from_secs(60);
const LIMIT_7: Duration = Duration::from_secs(10);
const LIMIT_8: Duration = Duration::from_secs(120);
const LIMIT_9: Duration = Duration::from_secs(120);
const JOBS_N: u32 = 8;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(pairs: &[(&str, i64)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn sigma_of(epi: &pgonal::epi::SurfaceKernelEpi) -> usize {
    epi.image(GeneratorKind::Reflection { cycle: 0, index: 0 })
        .expect("reflection")
}

fn c1_area() -> Check {
    for (text, num, den) in [
        ("(0,+,[3,3],{(3,3,3,3)})", 5, 3),
        ("(0,[3,3,3,3])", 2, 3),
        ("(2,[-])", 2, 1),
    ] {
        let a = parse_signature(text).map_err(|e| e.to_string())?.area();
        ensure(a == Ratio::new(num, den), || format!("{text}: {a}"))?;
    }
    Ok("5/3, 2/3, 2".into())
}

fn c2_genus() -> Check {
    let real = real_cyclic_signatures(3, 5).map_err(|e| e.to_string())?;
    let sols: Vec<(usize, usize)> = real
        .iter()
        .filter(|(_, f)| *f == TargetFamily::DihedralOrCyclic)
        .map(|(s, _)| (s.proper_periods().len(), s.period_cycles()[0].len()))
        .collect();
    ensure(
        sols.len() == 4 && sols.iter().all(|(u, v)| 2 * u + v == 7),
        || format!("(3,5): {sols:?}"),
    )?;
    for (s, _) in &real {
        ensure(s.kernel_surface_genus(6) == Ok(5), || format!("{s}"))?;
    }
    let rem: Vec<_> = real_cyclic_signatures(3, 4)
        .map_err(|e| e.to_string())?
        .into_iter()
        .filter(|(_, f)| *f == TargetFamily::CyclicOnly)
        .collect();
    ensure(
        rem.len() == 1 && rem[0].0.proper_periods().len() == 3,
        || format!("(3,4): {rem:?}"),
    )?;
    ensure(rem[0].0.kernel_surface_genus(6) == Ok(4), || {
        "(3,4) genus".into()
    })?;
    let c = cyclic_p_gonal_signature(5, 16).map_err(|e| e.to_string())?;
    ensure(c.proper_periods().len() == 10, || format!("(5,16): {c}"))?;
    ensure(c.kernel_surface_genus(5) == Ok(16), || {
        "(5,16) genus".into()
    })?;
    Ok("4 solutions of 2u+v=7, u=3, u=10".into())
}

fn c3_constructions() -> Check {
    let epis = [
        (theta1(3, 5), 5),
        (theta2(3, 4), 4),
        (theta3(3, 4, Target::Dihedral, ConnectorImage::Identity), 4),
        (theta3(3, 4, Target::Cyclic, ConnectorImage::Identity), 4),
        (
            theta3(3, 4, Target::Cyclic, ConnectorImage::RotationPower(1)),
            4,
        ),
    ];
    // r does not commute with the reflection image in D_p
    ensure(
        theta3(3, 4, Target::Dihedral, ConnectorImage::RotationPower(1)).is_err(),
        || "theta3 onto D_3 accepted connector r".into(),
    )?;
    for (e, g) in epis {
        let e = e.map_err(|e| e.to_string())?;
        check_surface_kernel(e.signature(), e.target(), e.images())
            .map_err(|v| format!("{}: {v:?}", e.signature()))?;
        let k = kernel_genus(&e).map_err(|e| e.to_string())?;
        ensure(k == g as u64, || format!("{}: genus {k}", e.signature()))?;
    }
    Ok("genera 5, 4, 4".into())
}

fn c4_species() -> Check {
    let cases = [
        (theta1(3, 5), -1),
        (theta2(3, 4), 1),
        (theta3(3, 4, Target::Dihedral, ConnectorImage::Identity), -3),
        (theta3(3, 4, Target::Cyclic, ConnectorImage::Identity), 3),
        (
            theta3(3, 4, Target::Cyclic, ConnectorImage::RotationPower(1)),
            1,
        ),
    ];
    let mut got = Vec::new();
    for (e, want) in cases {
        let e = e.map_err(|e| e.to_string())?;
        let sp = species(&e, sigma_of(&e)).map_err(|e| e.to_string())?;
        ensure(sp.value() == want, || {
            format!("{}: {sp}, want {want}", e.signature())
        })?;
        got.push(sp.to_string());
    }
    Ok(got.join(" "))
}

fn c5_theorem2() -> Check {
    let mut total = 0;
    for g in [5, 6] {
        let rep = verify_theorem2(3, g, EnumerateOptions::default()).map_err(|e| e.to_string())?;
        let allowed = allowed_species(3, g).map_err(|e| e.to_string())?;
        for r in &rep.records {
            let v: i64 = r.species.parse().map_err(|_| r.species.clone())?;
            let bad = !allowed.contains(&v) || (r.target == "C_6" && v < 0);
            // anything outside the rule must at least be flagged
            ensure(!bad || r.flag == Flag::Finding, || {
                format!("unflagged {v}: {}", r.epi)
            })?;
        }
        ensure(rep.summary.findings == 0, || rep.render_text())?;
        total += rep.summary.epis;
    }
    Ok(format!("{total} epis, 0 findings"))
}

fn c6_sign_rule() -> Check {
    let t = Arc::new(SignedGroup::target(3, Target::Dihedral).map_err(|e| e.to_string())?);
    let mut n = 0;
    for g in [5, 6] {
        for (sig, _) in real_cyclic_signatures(3, g).map_err(|e| e.to_string())? {
            let epis =
                enumerate_surface_kernel_epis(&sig, Arc::clone(&t), EnumerateOptions::default())
                    .map_err(|e| e.to_string())?;
            for e in &epis {
                let a = three_condition_sign(e);
                let b = schreier_sign_test(e, sigma_of(e)).map_err(|e| e.to_string())?;
                ensure(a == b, || format!("{}: {a} vs {b}", e.record()))?;
                n += 1;
            }
        }
    }
    Ok(format!("{n} D_3 epis agree"))
}

fn c7_hand_cases() -> Check {
    let ledger = Ledger::bundled().map_err(|e| e.to_string())?;
    for (id, q, classes) in [("1a", 2, "2"), ("1a", 5, "1"), ("1b", 5, "1")] {
        let r =
            verify_case(&ledger, id, &params(&[("p", 3), ("q", q)])).map_err(|e| e.to_string())?;
        ensure(r.all_match(), || format!("{id} q={q} not all MATCH"))?;
        let claims: Vec<_> = r.claims().collect();
        ensure(claims[0].computed == classes, || {
            format!("{id} q={q}: {} classes", claims[0].computed)
        })?;
        let norm = claims
            .iter()
            .find(|c| c.claim.starts_with("normalizer"))
            .ok_or("no normalizer claim")?;
        let want = if id == "1b" { "D_3" } else { "G" };
        ensure(norm.expected == want, || {
            format!("{id}: normalizer {}", norm.expected)
        })?;
        if id == "1b" {
            ensure(norm.via.as_deref() == Some("N_G(⟨φ,σ⟩)"), || {
                format!("1b via {:?}", norm.via)
            })?;
        }
    }
    let r =
        verify_case(&ledger, "2a", &params(&[("p", 3), ("q", 3)])).map_err(|e| e.to_string())?;
    let claims: Vec<_> = r.claims().collect();
    ensure(claims[0].verdict == Verdict::Match, || {
        "2a class count".into()
    })?;
    let bad: Vec<_> = claims
        .iter()
        .filter(|c| c.verdict == Verdict::Mismatch)
        .collect();
    ensure(
        bad.len() == 1 && bad[0].claim.starts_with("normalizer"),
        || format!("2a: {bad:?}"),
    )?;
    let w = bad[0].witness.as_ref().ok_or("2a: no witness")?;
    ensure(w.items.iter().any(|i| i.order == 12), || {
        format!("2a witness {w:?}")
    })?;
    Ok("1a/1b all MATCH, 2a normalizer MISMATCH with order-12 witness".into())
}

fn c8_full_run() -> Check {
    let ledger = Ledger::bundled().map_err(|e| e.to_string())?;
    let budget = Budget::default();
    let a = verify_all(&ledger, &budget, 1).map_err(|e| e.to_string())?;
    let b = verify_all(&ledger, &budget, 1).map_err(|e| e.to_string())?;
    ensure(a.to_json() == b.to_json(), || {
        "report differs between runs".into()
    })?;
    ensure(a.summary.errors == 0, || {
        format!("{} errors", a.summary.errors)
    })?;
    let ids: BTreeSet<String> = ledger.ids().into_iter().map(String::from).collect();
    let covered: BTreeSet<String> = a.summary.cases.iter().cloned().collect();
    ensure(ids == covered, || {
        format!("uncovered: {:?}", ids.difference(&covered))
    })?;
    for c in &a.cases {
        for cl in c.claims() {
            ensure(cl.verdict == Verdict::Match || cl.witness.is_some(), || {
                format!("{} {}: MISMATCH without witness", c.case, cl.claim)
            })?;
        }
    }
    let s = &a.summary;
    Ok(format!(
        "{} entries, {} runs, {} MATCH, {} MISMATCH",
        covered.len(),
        s.runs,
        s.matches,
        s.mismatches
    ))
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_pgonal"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    match out.status.code() {
        Some(0) | Some(3) => Ok(out.stdout),
        c => Err(format!(
            "{args:?} exited {c:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        )),
    }
}

fn c9_structure() -> Check {
    let ledger = Ledger::bundled().map_err(|e| e.to_string())?;
    let rep =
        verify_all(&ledger, &Budget::default(), JOBS_N as usize).map_err(|e| e.to_string())?;
    let mut groups = 0;
    for c in &rep.cases {
        for v in &c.variants {
            ensure(v.structure.ok(), || {
                format!("{} {:?}: {:?}", c.case, c.params, v.structure)
            })?;
            groups += 1;
        }
    }
    let n = JOBS_N.to_string();
    for extra in [&[][..], &["--json"][..]] {
        let mut one = vec!["verify-all", "--jobs", "1"];
        let mut many = vec!["verify-all", "--jobs", &n];
        one.extend(extra);
        many.extend(extra);
        ensure(cli(&one)? == cli(&many)?, || {
            format!("output differs across --jobs ({extra:?})")
        })?;
    }
    Ok(format!(
        "{groups} groups sound, output stable across --jobs 1/{JOBS_N}"
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("exact signature arithmetic", LIMIT_1, c1_area),
        ("genus relations", LIMIT_2, c2_genus),
        ("constructions", LIMIT_3, c3_constructions),
        ("species of constructions", LIMIT_4, c4_species),
        ("species sweep", LIMIT_5, c5_theorem2),
        ("sign-rule equivalence", LIMIT_6, c6_sign_rule),
        ("ledger hand cases", LIMIT_7, c7_hand_cases),
        ("full ledger run", LIMIT_8, c8_full_run),
        ("structural suite", LIMIT_9, c9_structure),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, f)) in criteria.into_iter().enumerate() {
        let t0 = Instant::now();
        let res = f();
        let dt = t0.elapsed();
        let res = res.and_then(|m| {
            if dt <= limit {
                Ok(m)
            } else {
                Err(format!("took {dt:.2?}, limit {limit:?}"))
            }
        });
        match &res {
            Ok(m) => println!("criterion {} {name}: PASS ({dt:.2?}) {m}", i + 1),
            Err(m) => {
                println!("criterion {} {name}: FAIL ({dt:.2?}) {m}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
