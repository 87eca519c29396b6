use std::sync::OnceLock;

use proptest::prelude::*;
use splitrec::artifact::{parse_automorphism_file, Artifact, Provenance, State};
use splitrec::poly_parse::parse_poly;
use splitrec::report::report_json;
use splitrec::{verify_parallel, CliError, Tuning};
use splitrec_core::galois::{discover_automorphisms, find_normal_element, DEFAULT_NORMAL_BOUND};
use splitrec_core::rat::frac;
use splitrec_core::verify::{verify_range, Bundle};
use splitrec_core::{catalog, Irreducibility, NumberField, PolyQ};

fn solved(example: catalog::Example) -> State {
    let field = example.field().unwrap();
    let group = discover_automorphisms(&field, None).unwrap();
    let alpha = find_normal_element(&group, DEFAULT_NORMAL_BOUND).unwrap();
    let bundle = Bundle::for_all_classes(group, alpha).unwrap();
    let mut state = State::new(field, Provenance::new("test"));
    state.bundle = Some(bundle);
    state
}

fn s3_json() -> &'static str {
    static TEXT: OnceLock<String> = OnceLock::new();
    TEXT.get_or_init(|| solved(catalog::S3).to_json().unwrap())
}

fn tampered(edit: impl FnOnce(&mut Artifact)) -> Result<State, CliError> {
    let mut a: Artifact = serde_json::from_str(s3_json()).unwrap();
    edit(&mut a);
    State::from_artifact(&a)
}

#[test]
fn save_load_save_is_byte_identical() {
    for example in [catalog::S3, catalog::D4] {
        let first = solved(example).to_json().unwrap();
        let second = State::from_json(&first).unwrap().to_json().unwrap();
        assert_eq!(first, second);
    }
    let field = NumberField::new(PolyQ::from_ints(&[1, 1, 1]), Irreducibility::Certify).unwrap();
    let bare = State::new(field, Provenance::new("splitrec build --poly x^2+x+1")).to_json().unwrap();
    assert_eq!(State::from_json(&bare).unwrap().to_json().unwrap(), bare);
}

#[test]
fn tampering_is_detected() {
    assert!(tampered(|_| {}).is_ok());
    assert!(tampered(|a| a.version = 2).is_err());
    assert!(tampered(|a| a.irreducibility = "probably".into()).is_err());
    assert!(tampered(|a| a.recurrences.as_mut().unwrap()[0].initial[0] = "-1/2".into()).is_err());
    assert!(tampered(|a| a.recurrences.as_mut().unwrap()[0].bad_primes.push(5)).is_err());
    assert!(tampered(|a| a.conjugacy_classes.as_mut().unwrap().swap(1, 2)).is_err());
    assert!(tampered(|a| a.automorphisms.as_mut().unwrap().swap(0, 1)).is_err());
    assert!(tampered(|a| a.automorphisms.as_mut().unwrap()[1][0] = "7".into()).is_err());
    assert!(tampered(|a| a.normal_element = None).is_err());
    assert!(tampered(|a| a.defining_poly[6] = "128".into()).is_err());
}

#[test]
fn unknown_fields_are_rejected() {
    let text = s3_json().replacen("\"version\"", "\"extra\": 1,\n  \"version\"", 1);
    assert!(State::from_json(&text).is_err());
}

#[test]
fn automorphism_files_in_both_shapes() {
    let bare = parse_automorphism_file(r#"[["0", "1"], ["-1", "-1"]]"#).unwrap();
    let wrapped = parse_automorphism_file(r#"{"automorphisms": [["0", "1"], ["-1", "-1"]]}"#).unwrap();
    assert_eq!(bare, wrapped);
    assert_eq!(bare[1][0], frac(-1, 1));
    assert!(parse_automorphism_file(r#"[["0", "x"]]"#).is_err());
}

#[test]
fn parallel_report_equals_sequential() {
    let state = State::from_json(s3_json()).unwrap();
    let bundle = state.bundle.as_ref().unwrap();
    let seq = verify_range(bundle, 2, 20_000).unwrap();
    for (segment_size, jobs) in [(1000, 1), (4096, 0), (37, 3)] {
        let tuning = Tuning { segment_size, jobs, ..Tuning::default() };
        let par = verify_parallel(bundle, 2, 20_000, &tuning).unwrap();
        assert_eq!(report_json(bundle, &par), report_json(bundle, &seq));
    }
}

fn small_poly() -> impl Strategy<Value = PolyQ> {
    proptest::collection::vec((-50i64..50, 1i64..5), 0..6)
        .prop_map(|cs| PolyQ::from_coeffs(cs.into_iter().map(|(n, d)| frac(n, d)).collect()))
}

proptest! {
    #[test]
    fn display_parses_back(p in small_poly()) {
        prop_assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn whitespace_is_ignored(p in small_poly()) {
        let spaced: String = p.to_string().chars().flat_map(|c| [c, ' ']).collect();
        prop_assert_eq!(parse_poly(&spaced).unwrap(), p);
    }
}
