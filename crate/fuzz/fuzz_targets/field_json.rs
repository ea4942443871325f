#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::{decode_field, field_doc, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(ctx) = decode_field(text) {
        let again = decode_field(&to_json(&field_doc(&ctx))).expect("re-encoded field decodes");
        assert_eq!(again, ctx);
    }
});
