#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_points;

fuzz_target!(|data: &str| {
    let _ = parse_points(data);
});
