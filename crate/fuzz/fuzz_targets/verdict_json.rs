#![no_main]

use hyperterm::variety::{FiniteSemigroup, Verdict};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = serde_json::from_slice::<Verdict>(data) {
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(serde_json::from_str::<Verdict>(&text).unwrap(), v);
    }
    // tables that decode are associative by construction
    if let Ok(s) = serde_json::from_slice::<FiniteSemigroup>(data) {
        assert_eq!(
            FiniteSemigroup::new(s.order(), s.rows().concat()).unwrap(),
            s
        );
    }
});
