#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::{decode_mapspace, mapspace_doc, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(space) = decode_mapspace(text) {
        let again =
            decode_mapspace(&to_json(&mapspace_doc(&space))).expect("re-encoded space decodes");
        assert!(again.same_space(&space));
    }
});
