#![no_main]

use hornkit::parse::parse_shape;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((d, r, n)) = parse_shape(text) {
        assert!(0 < d && d < r && r < n);
    }
});
