#![no_main]

use knot_cluster::LinkDiagram;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(d) = LinkDiagram::parse_pd(s) {
            let again = LinkDiagram::parse_pd(&d.to_pd()).expect("PD output parses");
            assert_eq!(again.n(), d.n());
        }
    }
});
