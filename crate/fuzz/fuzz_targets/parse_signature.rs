#![no_main]

use hyperterm::signature::parse_signature;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(sig) = parse_signature(text) {
        assert_eq!(parse_signature(&sig.to_string()).unwrap(), sig);
    }
});
