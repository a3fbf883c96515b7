#![no_main]

use evokit::experiment::ExperimentConfig;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(cfg) = ExperimentConfig::from_toml_str(text) {
        let again = ExperimentConfig::from_toml_str(&cfg.to_toml_string())
            .expect("serialized config parses");
        assert_eq!(cfg, again);
    }
});
