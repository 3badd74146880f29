#![no_main]

use libfuzzer_sys::fuzz_target;
use sqg::experiments::{read_theta0_csv, write_theta0_csv};

fuzz_target!(|data: &[u8]| {
    if let Ok(samples) = read_theta0_csv(data) {
        let mut out = Vec::new();
        write_theta0_csv(&mut out, &samples).expect("accepted samples write");
        assert_eq!(read_theta0_csv(out.as_slice()).expect("round trip"), samples);
    }
});
