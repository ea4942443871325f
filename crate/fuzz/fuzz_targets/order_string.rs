#![no_main]

use libfuzzer_sys::fuzz_target;
use semifield_lab::exchange::parse_order;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(order) = parse_order(text) {
        assert_eq!(parse_order(&order.to_string()).unwrap(), order);
    }
});
