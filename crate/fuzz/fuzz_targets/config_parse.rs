#![no_main]

use libfuzzer_sys::fuzz_target;
use sqg::experiments::{ConfigOverrides, RunConfig};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(overrides) = ConfigOverrides::parse(text) {
        if let Ok(cfg) = overrides.apply(RunConfig::default()) {
            cfg.validate().expect("applied config validates");
        }
    }
});
