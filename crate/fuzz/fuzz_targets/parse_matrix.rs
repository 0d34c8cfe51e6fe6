#![no_main]

use libfuzzer_sys::fuzz_target;
use scenario_games::io::{parse_matrix, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(rows) = parse_matrix(text) {
        assert_eq!(parse_matrix(&write_matrix(&rows)).unwrap(), rows);
    }
});
