#![no_main]

use libfuzzer_sys::fuzz_target;
use vknot_core::invariants;
use vknot_core::GaussDiagram;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(d) = text.parse::<GaussDiagram>() else { return };
    let printed = d.to_string();
    let again: GaussDiagram = printed.parse().unwrap();
    assert_eq!(again, d);
    assert_eq!(again.to_string(), printed);
    if d.num_arrows() <= 12 {
        let _ = invariants::pt(&d);
        let _ = invariants::pt_mod2(&d);
    }
});
