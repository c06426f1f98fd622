#![no_main]

use cyclebound::pointset::{parse_pointset, PointSet};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(points) = parse_pointset(text) {
        let written = points.to_p1_string();
        assert_eq!(parse_pointset(&written).unwrap(), points);
        // only addresses and lengths are validated, labels may be arbitrary
        let _ = PointSet::construct(points.params());
    }
});
