#![no_main]
use bpq_core::sequences::{gf_expand_symbolic, SeriesNumerator};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(num) = s.parse::<SeriesNumerator>() {
        let terms = gf_expand_symbolic(&num, 8);
        assert_eq!(terms.len(), 8);
        for (k, c) in num.coefficients().iter().enumerate().take(2) {
            assert_eq!(&terms[k], c);
        }
    }
});
