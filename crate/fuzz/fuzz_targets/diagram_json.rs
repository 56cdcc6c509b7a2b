#![no_main]

use knot_cluster::LinkDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = LinkDiagram::from_json(s) {
            let j = d.to_json();
            assert_eq!(LinkDiagram::from_json(&j).expect("JSON output parses").to_json(), j);
        }
    }
});
