#![no_main]

use libfuzzer_sys::fuzz_target;
use sqg::experiments::{record_from_json, record_to_json};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(record) = record_from_json(text) {
        let again = record_to_json(&record).expect("accepted record serializes");
        assert_eq!(record_from_json(&again).expect("round trip"), record);
    }
});
