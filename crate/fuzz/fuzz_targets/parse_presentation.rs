#![no_main]

use hyperterm::variety::parse_presentation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(p) = parse_presentation(text) {
        assert_eq!(parse_presentation(&p.to_string()).unwrap(), p);
    }
});
