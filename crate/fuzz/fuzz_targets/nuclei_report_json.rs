#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::{decode_report, report_doc, to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = decode_report(text) {
        let again = decode_report(&to_json(&report_doc(&r))).expect("re-encoded report decodes");
        assert_eq!(again.orders(), r.orders());
    }
});
