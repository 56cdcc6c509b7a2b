#![no_main]

use knot_cluster::{LaurentPoly, Vars};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for vars in [Vars::T, Vars::Y(12), Vars::XY(4)] {
            if let Ok(p) = LaurentPoly::parse(vars, s) {
                assert_eq!(LaurentPoly::parse(vars, &p.to_string()).as_ref(), Ok(&p));
            }
        }
    }
});
