use std::process::{Command, Output};

use serde::de::DeserializeOwned;
use serde::Serialize;

use cycloforge::reproduce::ReportRow;
use cycloforge_cli::schema::*;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cycloforge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Parses JSON output into its schema type and checks that re-emitting it
/// reproduces the original bytes.
fn round_trip<T: Serialize + DeserializeOwned>(args: &[&str]) -> T {
    let o = run(args);
    assert!(
        o.status.success(),
        "{:?}",
        String::from_utf8_lossy(&o.stderr)
    );
    let text = stdout(&o);
    let value: T = serde_json::from_str(&text).unwrap();
    let again = serde_json::to_string_pretty(&value).unwrap() + "\n";
    assert_eq!(again, text);
    value
}

#[test]
fn cosets_of_21() {
    let doc: CosetsJson = round_trip(&["cosets", "--n", "21", "--q", "2", "--json"]);
    assert_eq!(doc.cosets.len(), 6);
    assert_eq!(doc.a_set, vec![1, 5]);
    assert_eq!(doc.order, 6);
    assert_eq!(doc.cosets[1], vec![1, 2, 4, 8, 11, 16]);
    let text = stdout(&run(&["cosets", "--n", "21"]));
    assert!(text.contains("A(n) = {1,5}"));
}

#[test]
fn factors_of_x15() {
    let doc: FactorsJson = round_trip(&["factor", "--n", "15", "--q", "2", "--json"]);
    assert_eq!(doc.factors.len(), 5);
    let degrees: Vec<usize> = doc.factors.iter().map(|f| f.degree).collect();
    assert_eq!(degrees.iter().sum::<usize>(), 15);
    let doc: FactorsJson = round_trip(&[
        "factor",
        "--n",
        "15",
        "--field-poly",
        "4,1,0",
        "--subfield",
        "2",
        "--json",
    ]);
    assert_eq!(doc.factors.len(), 9);
    assert_eq!(doc.field_poly, PolyJson::Exponents(vec![0, 1, 4]));
}

#[test]
fn analyze_length_41() {
    let doc: AnalyzeJson = round_trip(&[
        "analyze",
        "--n",
        "41",
        "--q",
        "2",
        "--defining-set",
        "coset:1",
        "--json",
    ]);
    assert_eq!(doc.code.bch_bound, 6);
    assert_eq!(doc.code.optimal_reps, vec![3]);
    assert_eq!(doc.code.dimension, 21);
    assert_eq!(doc.certified, None);
    let by_rep: Vec<(usize, usize)> = doc
        .representatives
        .iter()
        .map(|r| (r.a, r.apparent_distance))
        .collect();
    assert_eq!(by_rep, vec![(1, 4), (3, 6)]);
}

#[test]
fn analyze_with_certificate() {
    let doc: AnalyzeJson = round_trip(&[
        "analyze",
        "--n",
        "21",
        "--field-poly",
        "6,5,4,2,0",
        "--defining-set",
        "coset:1,3,7",
        "--certify",
        "--json",
    ]);
    assert_eq!(doc.code.bch_bound, 5);
    assert_eq!(doc.code.bose_distance, cycloforge::BoseDistance::Bch(4));
    assert_eq!(
        doc.code.alpha,
        AlphaJson::MinPoly(PolyJson::Exponents(vec![0, 2, 4, 5, 6]))
    );
    assert_eq!(doc.certified, Some(true));
    assert!(doc.certificate.is_some());
}

#[test]
fn mindist_and_exit_codes() {
    let doc: MindistJson = round_trip(&[
        "mindist",
        "--n",
        "15",
        "--defining-set",
        "1,2,3,4,6,8,9,12",
        "--json",
    ]);
    assert_eq!((doc.dimension, doc.min_distance), (7, 5));
    assert!(doc.exhaustive);

    let o = run(&["mindist", "--n", "15", "--defining-set", "1,2"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("NotCosetClosed"));

    let o = run(&["mindist", "--n", "15"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&[
        "analyze",
        "--n",
        "15",
        "--q",
        "4",
        "--defining-set",
        "coset:1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    let o = run(&[
        "analyze",
        "--n",
        "15",
        "--field-poly",
        "4,x",
        "--defining-set",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["reproduce", "n99"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("UnknownTable"));
}

#[test]
fn fast_upper_reaches_the_bound() {
    let o = run(&[
        "mindist",
        "--n",
        "31",
        "--defining-set",
        "coset:1,3",
        "--fast-upper",
        "--json",
    ]);
    let doc: MindistJson = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc.min_distance, doc.bch_bound);
}

#[test]
fn forge_modes() {
    let doc: ForgeJson = round_trip(&[
        "forge",
        "--n",
        "15",
        "--field-poly",
        "4,1,0",
        "--mode",
        "divisor",
        "--verify",
        "--json",
    ]);
    assert!(doc.records.iter().all(|r| r.verified == Some(true)));
    assert!(doc
        .records
        .iter()
        .any(|r| (r.dimension, r.delta, r.k) == (7, 5, 0)));

    let doc: ForgeJson = round_trip(&["forge", "--n", "15", "--mode", "primitive", "--json"]);
    assert_eq!(doc.records.len(), 2);

    let doc: ForgeJson = round_trip(&[
        "forge",
        "--n",
        "21",
        "--field-poly",
        "6,5,4,2,0",
        "--mode",
        "congruence",
        "--json",
    ]);
    assert!(doc.records.iter().all(|r| r.source == "congruence"));

    let doc: ForgeJson = round_trip(&[
        "forge",
        "--n",
        "15",
        "--field-poly",
        "4,1,0",
        "--mode",
        "extend",
        "--generator",
        "11,10,9,8,6,4,3,0",
        "--k",
        "3",
        "--verify",
        "--json",
    ]);
    let found: Vec<(usize, usize)> = doc
        .records
        .iter()
        .map(|r| r.bch.as_ref().map(|b| (b.delta, r.dimension)).unwrap())
        .collect();
    assert!(found.contains(&(4, 10)));
    assert!(doc.records.iter().all(|r| r.verified == Some(true)));

    let o = run(&["forge", "--n", "21", "--mode", "primitive"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reproduce_outputs() {
    let rows: Vec<ReportRow> = round_trip(&["reproduce", "n15", "--emit", "json"]);
    assert_eq!(rows.len(), 8);
    assert!(rows.iter().all(|r| r.exhaustive));

    let a = run(&["reproduce", "n21", "--emit", "csv"]);
    let b = run(&["reproduce", "n21", "--emit", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.starts_with(
        "n,q,complement_defining_set,dimension,min_distance,bch_bound,bose_distance\n"
    ));
    assert!(text.contains("\n21,2,C(0)+C(1)+C(3),10,5,5,4\n"));

    let o = run(&["reproduce", "bose21"]);
    assert!(o.status.success());
}

#[test]
fn small_codes_table_reports_its_misprints() {
    let o = run(&["reproduce", "small-codes"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    let bad: Vec<&str> = text.lines().filter(|l| l.starts_with("MISMATCH")).collect();
    assert_eq!(bad.len(), 4, "{text}");
    for row in [
        "n=25  complement:3 5",
        "n=27  complement:3 ",
        "n=31  complement:3 7 ",
        "n=31  complement:5 9 15",
    ] {
        assert!(bad.iter().any(|l| l.contains(row)), "{row}");
    }
}
