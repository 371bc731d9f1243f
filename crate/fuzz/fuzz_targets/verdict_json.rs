#![no_main]

use hornkit::horn::Verdict;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(verdict) = serde_json::from_slice::<Verdict>(data) {
        let text = serde_json::to_string(&verdict).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&text).unwrap(), verdict);
        if let Some(v) = &verdict.violated {
            let _ = v.inequality.is_consistent();
        }
    }
});
