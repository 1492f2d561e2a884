#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::{mp1_element_to_value, parse_mp1_context, parse_mp1_element};

// Context and element separated by a NUL byte.
fuzz_target!(|data: &str| {
    let Some((ctx, elem)) = data.split_once('\0') else { return };
    let Ok(ctx) = parse_mp1_context(ctx, 1e-9) else { return };
    if let Ok(a) = parse_mp1_element(elem, &ctx) {
        let text = mp1_element_to_value(&a).to_string();
        let b = parse_mp1_element(&text, &ctx).expect("encoded element reparses");
        assert_eq!(a.w, b.w);
    }
});
