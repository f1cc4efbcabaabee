#![no_main]

use libfuzzer_sys::fuzz_target;
use wcc_core::bench::parse_mesh_list;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_mesh_list(text);
    }
});
