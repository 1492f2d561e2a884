#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_omega_table;

fuzz_target!(|data: &str| {
    let _ = parse_omega_table(data);
});
