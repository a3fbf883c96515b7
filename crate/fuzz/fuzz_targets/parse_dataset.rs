#![no_main]

use evokit::experiment::parse_dataset_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = parse_dataset_csv(data) {
        assert!(p.n_features() >= 1);
        assert_eq!(p.targets().len(), p.n_samples());
    }
});
