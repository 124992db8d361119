#![no_main]

use libfuzzer_sys::fuzz_target;
use subcount::groups::parse_group_file;

// A small order cap keeps closure computations cheap on hostile input.
const ORDER_CAP: usize = 720;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(input) = parse_group_file(text, ORDER_CAP) {
            assert!(input.group.order() <= ORDER_CAP);
            assert!(input.subgroup.is_subgroup_of(&input.group));
        }
    }
});
