#![no_main]

use hornkit::parse::parse_partition;
use hornkit::strings::{partition_to_string, string_to_partition};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(lambda) = parse_partition(text) {
        let again = parse_partition(&lambda.to_string()).expect("display output parses");
        assert_eq!(again, lambda);
        assert_eq!(string_to_partition(&partition_to_string(&lambda)).unwrap(), lambda);
    }
});
