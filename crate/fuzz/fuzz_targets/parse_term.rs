#![no_main]

use hyperterm::signature::Signature;
use hyperterm::term::{parse_term, render_term};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let sig = Signature::new([("f", 2), ("g", 1), ("h", 3)]).unwrap();
    if let Ok(t) = parse_term(text, &sig) {
        // canonical text parses back to the same term
        assert_eq!(parse_term(&render_term(&t, &sig), &sig).unwrap(), t);
    }
});
