#![no_main]
use bpq_cli::report::{to_json, verdict_report_from_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(report) = verdict_report_from_json(s) {
        let text = to_json(&report);
        let back = verdict_report_from_json(&text).expect("serialized report parses");
        assert_eq!(back, report);
    }
});
