#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::angle::{parse_angle, parse_angle_list};

fuzz_target!(|data: &str| {
    let _ = parse_angle(data);
    let _ = parse_angle_list(data);
});
