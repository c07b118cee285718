#![no_main]

use dws_cli::reference::parse_reference_csv;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(rows) = parse_reference_csv(text) {
            for row in rows {
                assert!(row.e_ref.is_finite());
            }
        }
    }
});
