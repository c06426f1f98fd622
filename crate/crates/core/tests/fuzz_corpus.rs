//! Replays the checked-in fuzz seeds through the fuzz targets' round-trip checks.

use std::fs;
use std::path::PathBuf;

use cyclebound::l1metric::parse_embedding;
use cyclebound::pointset::{parse_pointset, parse_runs, GraphParams, PointSet, VertexAddress};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<(String, Vec<u8>)> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            (path.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn pointset_seeds() {
    for (name, data) in seeds("parse_pointset") {
        let text = String::from_utf8(data).unwrap();
        match parse_pointset(&text) {
            Ok(points) => {
                assert_eq!(points.to_p1_string(), text, "{name}");
                assert_eq!(PointSet::construct(points.params()).unwrap(), points, "{name}");
            }
            Err(_) => assert_eq!(name, "truncated"),
        }
    }
}

#[test]
fn embedding_seeds() {
    let points = PointSet::construct(GraphParams::new(2, 2).unwrap()).unwrap();
    for (name, data) in seeds("parse_embedding") {
        let text = String::from_utf8(data).unwrap();
        let emb = parse_embedding(&text, &points).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(emb.to_l1emb_string(&points), text, "{name}");
    }
}

#[test]
fn address_seeds() {
    for (name, data) in seeds("parse_address") {
        let text = String::from_utf8(data).unwrap();
        let addr: VertexAddress = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(addr.to_string(), text);
    }
}

#[test]
fn runs_seeds() {
    for (name, data) in seeds("parse_runs") {
        let (&len, rest) = data.split_first().unwrap();
        let text = std::str::from_utf8(rest).unwrap();
        match parse_runs(text, u64::from(len)) {
            Ok(label) => assert_eq!(label.to_string(), text, "{name}"),
            Err(_) => assert_eq!(name, "unordered"),
        }
    }
}
