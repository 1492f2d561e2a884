#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_samples_json;

fuzz_target!(|data: &str| {
    let _ = parse_samples_json(data, None);
});
