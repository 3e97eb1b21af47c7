#![no_main]

use libfuzzer_sys::fuzz_target;
use vknot_core::diagram::{parse_gauss_code, Framing, Kind};

fuzz_target!(|data: &[u8]| {
    let Some((&flags, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let kind = if flags & 1 == 0 { Kind::Closed } else { Kind::Long };
    let framing = if flags & 2 == 0 { Framing::Framed } else { Framing::Unframed };
    if let Ok(d) = parse_gauss_code(text, kind, framing) {
        assert!(d.validate().is_ok());
    }
});
