#![no_main]

use libfuzzer_sys::fuzz_target;
use vknot_core::based_matrix::BasedMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(m) = BasedMatrix::from_json(text) else { return };
    assert_eq!(BasedMatrix::from_json(&m.to_json()).unwrap(), m);
    // Canonical search is exponential in the worst case.
    if m.n() <= 8 {
        let c = m.canonical_form();
        assert_eq!(c.canonical_form(), c);
    }
});
