#![no_main]

use libfuzzer_sys::fuzz_target;
use subcount::groups::{format_permutation, parse_permutation};

fuzz_target!(|data: &[u8]| {
    let Some((&degree, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    if let Ok(perm) = parse_permutation(text, degree as usize) {
        let again = parse_permutation(&format_permutation(&perm), degree as usize).unwrap();
        assert_eq!(perm, again);
    }
});
