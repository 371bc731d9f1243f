#![no_main]

use hornkit::parse::parse_step_string;
use hornkit::strings::{cell_dimension, lift, project, substring_uv};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(sigma) = parse_step_string(text) else {
        return;
    };
    assert_eq!(sigma.to_string(), text.trim());
    let _ = cell_dimension(&sigma);
    if sigma.steps() == 2 {
        let base = project(&sigma, 2).unwrap();
        let fiber = substring_uv(&sigma, 1, 2).unwrap();
        assert_eq!(lift(&base, &fiber).unwrap(), sigma);
    }
});
