#![no_main]

use knot_cluster::planner::ReplayFile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = ReplayFile::from_json(s);
    }
});
