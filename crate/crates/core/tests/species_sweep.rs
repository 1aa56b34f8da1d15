use pgonal::epi::EnumerateOptions;
use pgonal::species::{allowed_species, verify_theorem2};

#[test]
fn genus_five_sweep_has_no_findings() {
    let rep = verify_theorem2(3, 5, EnumerateOptions::default()).unwrap();
    assert_eq!(rep.summary.epis, 240);
    assert_eq!(rep.summary.findings, 0, "{}", rep.render_text());
    let allowed = allowed_species(3, 5).unwrap();
    assert!(rep.summary.species_seen.iter().all(|s| allowed.contains(s)));
}

#[test]
fn sweep_is_independent_of_jobs() {
    let one = verify_theorem2(
        3,
        5,
        EnumerateOptions {
            jobs: 1,
            ..Default::default()
        },
    )
    .unwrap();
    let four = verify_theorem2(
        3,
        5,
        EnumerateOptions {
            jobs: 4,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(one, four);
}

#[test]
fn below_the_bound_is_rejected() {
    assert!(verify_theorem2(3, 4, EnumerateOptions::default()).is_err());
}
