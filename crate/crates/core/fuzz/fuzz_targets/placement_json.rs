#![no_main]

use libfuzzer_sys::fuzz_target;
use uavkm::io::{parse_placement, placement_to_string};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(p) = parse_placement(text) {
            let again = parse_placement(&placement_to_string(&p)).expect("re-parse");
            assert_eq!(again, p);
        }
    }
});
