#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::decode_family_spec;

// Only the admissibility checks run: building can be arbitrarily large.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = decode_family_spec(text) {
        let _ = spec.order();
        let _ = spec.to_string();
    }
});
