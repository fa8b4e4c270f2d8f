#![no_main]

use libfuzzer_sys::fuzz_target;
use uavkm_cli::args::{
    parse_area, parse_config, parse_loads, parse_modes, CompareArgs, GenerateArgs, PlaceArgs,
    COMPARE_KEYS, GENERATE_KEYS, PLACE_KEYS,
};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_config::<GenerateArgs>(text, GENERATE_KEYS) {
        if let Some(a) = &g.area {
            let _ = parse_area(a);
        }
        if let Some(l) = &g.loads {
            let _ = parse_loads(l);
        }
    }
    if let Ok(p) = parse_config::<PlaceArgs>(text, PLACE_KEYS) {
        let _ = p.solve.config(uavkm::Mode::WeightedReplication);
    }
    if let Ok(c) = parse_config::<CompareArgs>(text, COMPARE_KEYS) {
        if let Some(m) = &c.modes {
            let _ = parse_modes(m);
        }
    }
    let _ = parse_area(text);
    let _ = parse_modes(text);
});
