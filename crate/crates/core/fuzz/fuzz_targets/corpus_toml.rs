#![no_main]

use libfuzzer_sys::fuzz_target;
use subcount::groups::parse_corpus;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(corpus) = parse_corpus(text) {
            let _ = corpus.groups(120);
        }
    }
});
