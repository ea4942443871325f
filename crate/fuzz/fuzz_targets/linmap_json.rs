#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::{decode_linmap, linmap_doc, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = decode_linmap(text) {
        let again = decode_linmap(&to_json(&linmap_doc(&f))).expect("re-encoded map decodes");
        assert_eq!(again, f);
        let _ = f.invert();
    }
});
