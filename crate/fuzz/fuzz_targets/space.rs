#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_space_spec;

fuzz_target!(|data: &str| {
    let _ = parse_space_spec(data);
});
