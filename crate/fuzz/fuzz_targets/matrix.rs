#![no_main]

use libfuzzer_sys::fuzz_target;
use maslov_kit::io::{matrix_to_value, parse_matrix};

fuzz_target!(|data: &str| {
    if let Ok(m) = parse_matrix(data) {
        let again = parse_matrix(&matrix_to_value(&m).to_string()).expect("encoded matrix reparses");
        assert_eq!((m.rows(), m.cols(), m.is_exact()), (again.rows(), again.cols(), again.is_exact()));
    }
});
