#![no_main]

use libfuzzer_sys::fuzz_target;
use sqg::experiments::{read_ledger_csv, write_ledger_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(ledger) = read_ledger_csv(data) {
        let mut out = Vec::new();
        write_ledger_csv(&mut out, &ledger).expect("accepted ledger writes");
        assert_eq!(read_ledger_csv(out.as_slice()).expect("round trip"), ledger);
    }
});
