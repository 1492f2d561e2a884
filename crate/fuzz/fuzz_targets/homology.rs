#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::parse_homology;

fuzz_target!(|data: &str| {
    if let Ok(groups) = parse_homology(data) {
        for g in groups {
            let shown = g.to_string();
            let again: maslov_kit::bordism::GroupDescriptor = shown.parse().expect("displayed group reparses");
            assert_eq!(g, again);
        }
    }
});
