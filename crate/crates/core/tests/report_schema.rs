mod common;

use newtonpoly::invariants::critical_exponents;
use newtonpoly::report::AnalysisReport;

#[test]
fn reports_validate_against_published_schema() {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/report.schema.json")).expect("schema parses");
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let mut corpus = common::full_corpus();
    corpus.truncate(40);
    for (i, phi) in corpus.iter().enumerate() {
        let rep = critical_exponents(phi).unwrap();
        let ts = (i % 2 == 0).then_some(1_700_000_000);
        let doc: serde_json::Value = serde_json::from_str(&AnalysisReport::new(&phi.to_string(), &rep, ts).to_json()).unwrap();
        let errors: Vec<String> = validator.iter_errors(&doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
        assert!(errors.is_empty(), "{phi}: {errors:?}");
    }
}

#[test]
fn schema_rejects_float_rationals() {
    let schema: serde_json::Value = serde_json::from_str(include_str!("../../../docs/report.schema.json")).unwrap();
    let validator = jsonschema::validator_for(&schema).unwrap();
    let rep = critical_exponents(&common::poly("x1^4+x2^2")).unwrap();
    let mut doc: serde_json::Value = serde_json::from_str(&AnalysisReport::new("x1^4+x2^2", &rep, None).to_json()).unwrap();
    assert!(validator.is_valid(&doc));
    doc["heightData"]["h"] = serde_json::json!(1.3333);
    assert!(!validator.is_valid(&doc));
}
