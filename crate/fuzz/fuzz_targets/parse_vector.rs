#![no_main]

use std::sync::Arc;

use evokit::ga::{VectorGenome, VectorSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let bits = Arc::new(VectorSpec::bits(8).unwrap());
    let reals = Arc::new(VectorSpec::reals(4, -1.0, 1.0).unwrap());
    for spec in [&bits, &reals] {
        if let Ok(v) = VectorGenome::parse(text, spec) {
            let again = VectorGenome::parse(&v.to_string(), spec).expect("formatted vector parses");
            assert_eq!(v.cells(), again.cells());
        }
    }
});
