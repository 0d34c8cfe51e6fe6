#![no_main]

use libfuzzer_sys::fuzz_target;
use scenario_games::io::parse_partition;
use scenario_games::GroundSet;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let ground = GroundSet::new(["a", "b", "c", "d", "e", "f"]).unwrap();
    if let Ok(p) = parse_partition(text, &ground) {
        let again = parse_partition(&p.display(&ground).to_string(), &ground).unwrap();
        assert_eq!(again, p);
    }
});
