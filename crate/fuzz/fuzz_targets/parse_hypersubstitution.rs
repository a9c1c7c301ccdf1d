#![no_main]

use hyperterm::hyp::parse_hypersubstitution;
use hyperterm::signature::Signature;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let sig = Signature::new([("f", 2), ("g", 2)]).unwrap();
    if let Ok(h) = parse_hypersubstitution(text, &sig) {
        assert_eq!(
            parse_hypersubstitution(&h.display().to_string(), &sig).unwrap(),
            h
        );
    }
});
