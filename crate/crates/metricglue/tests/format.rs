//! Round-trip and rejection tests for the JSON document layer.

use metricglue::format::{
    load_point_map, read_json, DistJson, FormatError, HomDoc, PairsDoc, PartitionDoc, SpaceDoc,
};
use metricglue_core::hom::internal_hom;
use metricglue_core::pathconvex::PairSet;
use metricglue_core::space::two_point;
use metricglue_core::{ExtDist, PointId};
use tempfile::TempDir;

fn doc(json: &str) -> SpaceDoc {
    serde_json::from_str(json).expect("space JSON")
}

#[test]
fn distances_round_trip_bit_exact() {
    let ugly = 0.1f64 + 0.2; // 0.30000000000000004
    let original = SpaceDoc {
        points: vec!["a".into(), "b".into()],
        dist: vec![
            vec![DistJson::Num(0.0), DistJson::Num(ugly)],
            vec![DistJson::Num(ugly), DistJson::Num(0.0)],
        ],
    };
    let text = serde_json::to_string(&original).unwrap();
    let back: SpaceDoc = serde_json::from_str(&text).unwrap();
    assert_eq!(back, original);
    match &back.dist[0][1] {
        DistJson::Num(v) => assert_eq!(v.to_bits(), ugly.to_bits()),
        other => panic!("expected a number, got {other:?}"),
    }
}

#[test]
fn the_only_nonnumeric_token_is_inf() {
    let ok = ExtDist::try_from(&DistJson::Word("inf".into())).unwrap();
    assert!(ok.is_infinite());
    for bad in ["Infinity", "INF", "NaN", ""] {
        let got = ExtDist::try_from(&DistJson::Word(bad.into()));
        assert!(
            matches!(got, Err(FormatError::BadToken(_))),
            "token '{bad}' must be rejected"
        );
    }
}

#[test]
fn infinite_entries_survive_a_full_space_round_trip() {
    let x = two_point(ExtDist::INF).unwrap();
    let emitted = SpaceDoc::from_semi(x.as_semi());
    let text = serde_json::to_string(&emitted).unwrap();
    let re = doc(&text).to_metric(1e-9).unwrap();
    assert_eq!(re.as_semi(), x.as_semi());
}

#[test]
fn asymmetric_matrices_are_rejected() {
    let d = doc(r#"{"points":["a","b"],"dist":[[0,1.0],[2.0,0]]}"#);
    assert!(d.to_metric(1e-9).is_err());
    assert!(d.to_semi(1e-9).is_err());
}

#[test]
fn ragged_matrices_are_rejected() {
    let d = doc(r#"{"points":["a","b"],"dist":[[0,1.0],[1.0]]}"#);
    assert!(d.to_parts().is_err());
}

#[test]
fn space_refs_resolve_relative_to_the_referencing_file() {
    let dir = TempDir::new().unwrap();
    std::fs::create_dir(dir.path().join("sub")).unwrap();
    std::fs::write(
        dir.path().join("sub/leaf.json"),
        r#"{"points":["a","b"],"dist":[[0,1.0],[1.0,0]]}"#,
    )
    .unwrap();
    let morph = dir.path().join("morph.json");
    std::fs::write(
        &morph,
        r#"{"source": "sub/leaf.json",
            "target": {"points":["z"],"dist":[[0]]},
            "map": {"a": "z", "b": "z"}}"#,
    )
    .unwrap();
    let pm = load_point_map(&morph, 1e-9).expect("relative reference resolves");
    assert_eq!(pm.source().len(), 2);
    assert_eq!(pm.target().len(), 1);
}

#[test]
fn unreadable_and_malformed_files_report_their_path() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("missing.json");
    let err = read_json::<SpaceDoc>(&missing).unwrap_err();
    assert!(err.to_string().contains("missing.json"));

    let broken = dir.path().join("broken.json");
    std::fs::write(&broken, "{").unwrap();
    let err = read_json::<SpaceDoc>(&broken).unwrap_err();
    assert!(err.to_string().contains("broken.json"));
}

#[test]
fn hom_docs_carry_the_catalog_beside_the_base() {
    let x = doc(r#"{"points":["a","b"],"dist":[[0,1.0],[1.0,0]]}"#)
        .to_metric(1e-9)
        .unwrap();
    let hom = internal_hom(&x, &x, 1e-9, 1_000_000).unwrap();
    let emitted = HomDoc::from_hom(&hom);
    let v = serde_json::to_value(&emitted).unwrap();
    // The base space's fields sit at the top level, beside the catalog.
    assert!(v["points"].is_array());
    assert!(v["dist"].is_array());
    assert!(v["catalog"].is_object());
    let back: HomDoc = serde_json::from_value(v).unwrap();
    assert_eq!(back, emitted);
}

#[test]
fn pair_sets_round_trip() {
    let x = doc(r#"{"points":["a","b","c"],"dist":[[0,1.0,1.0],[1.0,0,2.0],[1.0,2.0,0]]}"#)
        .to_metric(1e-9)
        .unwrap();
    let set = PairSet::new(
        &x,
        vec![(PointId::new("a").unwrap(), PointId::new("c").unwrap())],
    )
    .unwrap();
    let emitted = PairsDoc::from_pair_set(&set);
    let text = serde_json::to_string(&emitted).unwrap();
    let back: PairsDoc = serde_json::from_str(&text).unwrap();
    let reparsed = back.to_pair_set(&x).unwrap();
    assert_eq!(reparsed.pairs(), set.pairs());
}

#[test]
fn overlapping_partition_blocks_are_rejected() {
    let x = doc(r#"{"points":["a","b"],"dist":[[0,1.0],[1.0,0]]}"#)
        .to_metric(1e-9)
        .unwrap();
    let p: PartitionDoc = serde_json::from_str(r#"{"blocks": [["a","b"],["a"]]}"#).unwrap();
    assert!(p.to_relation(x.as_semi()).is_err());
}
