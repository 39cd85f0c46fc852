#![no_main]

use cuh_core::io::{parse_graph_json, write_graph_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_json(src) {
        let json = write_graph_json(&g);
        let h = parse_graph_json(&json).expect("writer output parses");
        assert_eq!(write_graph_json(&h), json);
    }
});
