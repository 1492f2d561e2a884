#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::bordism::{BettiVector, BordismLabel};

fuzz_target!(|data: &str| {
    let _ = data.parse::<BettiVector>();
    let _ = data.parse::<BordismLabel>();
});
