#![no_main]
use bpq_core::sequences::BiPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<BiPoly>() {
        // canonical form must re-parse to the same polynomial
        let rendered = p.to_string();
        let back: BiPoly = rendered.parse().expect("canonical rendering parses");
        assert_eq!(back, p);
        assert_eq!(back.to_string(), rendered);
    }
});
