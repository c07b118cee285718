#![no_main]

use dws_cli::config::parse_config_str;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(map) = parse_config_str(text) {
            // accepted keys are normalized
            for key in map.keys() {
                assert!(!key.is_empty());
                assert!(!key.contains('_'));
            }
        }
    }
});
