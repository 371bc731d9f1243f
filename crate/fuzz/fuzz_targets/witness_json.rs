#![no_main]

use hornkit::witness::{verify_witness, WitnessTrace};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(trace) = serde_json::from_slice::<WitnessTrace>(data) else {
        return;
    };
    let Some(first) = trace.levels.first() else {
        return;
    };
    if first.classes.iter().any(|c| c.rows() > 12 || c.cap() > 12) {
        return;
    }
    let _ = verify_witness(&trace, &first.classes);
});
