#![no_main]

use cyclebound::pointset::VertexAddress;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(addr) = text.parse::<VertexAddress>() {
        let shown = addr.to_string();
        assert_eq!(shown.parse::<VertexAddress>().unwrap(), addr);
    }
});
