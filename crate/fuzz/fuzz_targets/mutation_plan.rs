#![no_main]

use knot_cluster::planner::MutationPlan;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(p) = MutationPlan::from_json(12, s) {
            let again = MutationPlan::from_json(12, &p.to_json().to_string()).expect("plan output parses");
            assert_eq!(again, p);
        }
    }
});
