#![no_main]

use hornkit::horn::HornInequality;
use hornkit::strings::Partition;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(h) = serde_json::from_slice::<HornInequality>(data) else {
        return;
    };
    let consistent = h.is_consistent();
    if h.r < h.n && h.n <= 64 {
        let lambdas = vec![Partition::full(h.r, h.n - h.r); h.indices.len()];
        let slack = h.evaluate(&lambdas);
        if consistent {
            // the full classes satisfy every inequality
            assert!(slack.unwrap() >= 0);
        }
    }
});
