#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::{decode_presemifield, encode_presemifield};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(s) = decode_presemifield(text) {
        let again =
            decode_presemifield(&encode_presemifield(&s)).expect("re-encoded document decodes");
        assert_eq!(again, s);
    }
});
