#![no_main]

use libfuzzer_sys::fuzz_target;
use sqg::experiments::Checkpoint;

fuzz_target!(|data: &[u8]| {
    if let Ok(ckpt) = Checkpoint::decode(data) {
        // anything accepted must re-encode to the same bytes
        assert_eq!(ckpt.encode(), data);
        let _ = ckpt.into_state();
    }
});
