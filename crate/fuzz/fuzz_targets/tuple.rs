#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_tuple;

fuzz_target!(|data: &str| {
    let _ = parse_tuple(data, None, 1e-9);
});
