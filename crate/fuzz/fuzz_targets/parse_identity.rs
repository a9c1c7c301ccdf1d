#![no_main]

use hyperterm::variety::{parse_identity, parse_word};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(id) = parse_identity(text) {
        assert_eq!(parse_identity(&id.to_string()).unwrap(), id);
    }
    let _ = parse_word(text);
});
