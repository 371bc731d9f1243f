#![no_main]

use hornkit::parse::parse_classes;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    match parse_classes(text) {
        Ok(classes) => {
            assert!(!classes.is_empty());
            let first = (classes[0].rows(), classes[0].cap());
            assert!(classes.iter().all(|c| (c.rows(), c.cap()) == first));
        }
        Err(hornkit::Error::Parse { pos, .. }) => assert!(pos <= text.len()),
        Err(other) => panic!("unexpected error kind {other:?}"),
    }
});
