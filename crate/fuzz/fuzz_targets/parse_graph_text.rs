#![no_main]

use cuh_core::io::{parse_graph_text, write_graph_text};
use libfuzzer_sys::fuzz_target;

// Accepted input must survive a write and re-parse unchanged.
fuzz_target!(|data: &[u8]| {
    let Ok(src) = std::str::from_utf8(data) else { return };
    if let Ok(g) = parse_graph_text(src) {
        let text = write_graph_text(&g);
        let h = parse_graph_text(&text).expect("writer output parses");
        assert_eq!(write_graph_text(&h), text);
    }
});
