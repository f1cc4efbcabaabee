#![no_main]

use libfuzzer_sys::fuzz_target;
use wcc_core::bench::RunConfig;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(cfg) = RunConfig::from_text(text) {
            let _ = cfg.scheme();
        }
    }
});
