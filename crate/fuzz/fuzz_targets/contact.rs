#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_contact;

fuzz_target!(|data: &str| {
    let _ = parse_contact(data);
});
