#![no_main]

use libfuzzer_sys::fuzz_target;
use uavkm::io::{parse_scenario, scenario_to_string};
use uavkm::{solve, Mode, SolveConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(s) = parse_scenario(text) else { return };

    // Whatever parses must survive a write/read cycle unchanged.
    let again = parse_scenario(&scenario_to_string(&s)).expect("re-parse");
    assert_eq!(again, s);

    // A valid scenario must be accepted downstream.
    if s.users.len() > 64 || s.k > 8 || s.check().is_err() {
        return;
    }
    for mode in Mode::ALL {
        let cfg = SolveConfig {
            restarts: 1,
            max_iters: 50,
            ..SolveConfig::with_mode(mode)
        };
        let sol = solve(&s, &cfg).expect("valid scenario solves");
        assert_eq!(sol.placement.assignment.len(), s.users.len());
        assert!(sol.placement.assignment.values().all(|&c| c < s.k));
        assert!(sol.report.objective >= 0.0);
    }
});
