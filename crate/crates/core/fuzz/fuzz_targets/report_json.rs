#![no_main]

use libfuzzer_sys::fuzz_target;
use uavkm::io::{parse_report, report_to_json_string, report_to_table};

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok((r, c)) = parse_report(text) {
            let again = parse_report(&report_to_json_string(&r, c.as_ref())).expect("re-parse");
            assert_eq!(again, (r.clone(), c.clone()));
            let _ = report_to_table(&r, c.as_ref());
        }
    }
});
