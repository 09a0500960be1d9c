#![no_main]

use libfuzzer_sys::fuzz_target;
use seqkey::ShotList;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(shots) = ShotList::parse(text) {
        let again = ShotList::parse(&shots.to_json()).expect("re-parse");
        assert_eq!(again, shots);
        assert_eq!(shots.shots().first().map(|s| s.start), Some(0));
    }
});
