#![no_main]

use cyclebound::pointset::parse_runs;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&len, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let len = u64::from(len);
    if let Ok(label) = parse_runs(text, len) {
        assert_eq!(label.len(), len);
        let shown = label.to_string();
        assert_eq!(parse_runs(&shown, len).unwrap(), label);
        assert_eq!(label.to_bits().iter().filter(|&&b| b).count() as u64, label.count_ones());
    }
});
