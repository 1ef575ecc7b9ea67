use super::*;

fn flagged(reports: &[Report], s: Status) -> Vec<&str> {
    reports
        .iter()
        .filter(|r| r.status == s)
        .map(|r| r.id.as_str())
        .collect()
}

#[test]
fn unknown_suites_are_rejected() {
    assert!(matches!(run_suite("lemma-9.9"), Err(CheckError::UnknownSuite(_))));
}

#[test]
fn status_names() {
    let names: Vec<String> = [Status::Pass, Status::Fail, Status::MismatchReported]
        .iter()
        .map(|s| s.to_string())
        .collect();
    assert_eq!(names, ["pass", "fail", "mismatch-reported"]);
}

#[test]
fn closed_form_mismatches_are_certified() {
    let r = run_suite("lemma-2.7").unwrap();
    assert!(flagged(&r, Status::Fail).is_empty());
    assert_eq!(
        flagged(&r, Status::MismatchReported),
        [
            "closed-Y2",
            "closed-Z2",
            "closed-U3",
            "closed-X2-in-Y",
            "closed-Y2-in-Z",
            "printed-forward-4",
            "printed-forward-5",
            "printed-forward-6"
        ]
    );
    let pf3 = r.iter().find(|x| x.id == "printed-forward-3").unwrap();
    assert_eq!(pf3.status, Status::Pass);
}

#[test]
fn center_suite() {
    let r = run_suite("center").unwrap();
    assert_eq!(r[0].id, "center-kernel");
    assert_eq!(r[0].status, Status::Pass);
    assert_eq!(r.len(), 13);
    assert_eq!(flagged(&r, Status::MismatchReported), ["center-form-T3-r"]);
    assert!(flagged(&r, Status::Fail).is_empty());
}

#[test]
fn straightening_suite_reports_the_printed_p51() {
    let r = run_suite("lemma-2.4").unwrap();
    assert_eq!(r.len(), 16);
    assert_eq!(flagged(&r, Status::MismatchReported), ["p-5-1-printed"]);
    assert!(flagged(&r, Status::Fail).is_empty());
}

#[test]
fn reports_are_deterministic() {
    assert_eq!(run_suite("lemma-2.9").unwrap(), run_suite("lemma-2.9").unwrap());
    assert_eq!(roundtrip_cases(7, 4).len(), 4);
    let a: Vec<String> = roundtrip_cases(7, 4).iter().map(|c| c.g.to_string()).collect();
    let b: Vec<String> = roundtrip_cases(7, 4).iter().map(|c| c.g.to_string()).collect();
    assert_eq!(a, b);
}

#[test]
fn small_suites_pass() {
    for s in ["serre", "rootvec", "corollary-2.6", "lemma-2.9", "corollary-2.12"] {
        let r = run_suite(s).unwrap();
        assert!(!r.is_empty());
        assert_eq!(tally(&r).0, r.len(), "{s}: {:?}", flagged(&r, Status::Fail));
    }
}

#[test]
fn a_few_round_trips() {
    let r = roundtrip(11, 3).unwrap();
    assert_eq!(tally(&r), (3, 0, 0), "{r:?}");
}

#[test]
fn random_elements_respect_the_degree_bound() {
    let pres = g2::presentation();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let a = random_element(&mut rng, &pres, 4, 3);
        for e in a.terms().keys() {
            assert!(e.iter().all(|&x| x >= 0));
            assert!(e.iter().sum::<i32>() <= 4);
        }
    }
}
