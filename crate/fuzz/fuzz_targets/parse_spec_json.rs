#![no_main]

use cuh_core::spec::ClassSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = ClassSpec::from_json(src) {
        let again = ClassSpec::from_json(&spec.to_json().to_string()).expect("serialized spec parses");
        assert!(again.same_class(&spec));
    }
});
