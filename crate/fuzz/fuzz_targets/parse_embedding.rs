#![no_main]

use std::sync::OnceLock;

use cyclebound::l1metric::{distortion, parse_embedding};
use cyclebound::pointset::{GraphParams, PointSet};
use libfuzzer_sys::fuzz_target;

fn points() -> &'static PointSet {
    static POINTS: OnceLock<PointSet> = OnceLock::new();
    POINTS.get_or_init(|| PointSet::construct(GraphParams::new(2, 2).unwrap()).unwrap())
}

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let points = points();
    if let Ok(emb) = parse_embedding(text, points) {
        let written = emb.to_l1emb_string(points);
        assert_eq!(parse_embedding(&written, points).unwrap(), emb);
        let _ = distortion(points, &emb);
    }
});
