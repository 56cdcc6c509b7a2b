#![no_main]

use knot_cluster::{LaurentPoly, Vars};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = serde_json::from_str::<serde_json::Value>(s) {
            for vars in [Vars::T, Vars::Y(3), Vars::XY(2)] {
                let _ = LaurentPoly::from_json(vars, &v);
            }
        }
    }
});
