#![no_main]

use libfuzzer_sys::fuzz_target;
use subcount::verify::VerificationReport;

fuzz_target!(|data: &[u8]| {
    if let Ok(report) = serde_json::from_slice::<VerificationReport>(data) {
        let text = serde_json::to_string(&report).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&back).unwrap(), text);
    }
});
