//! Timed acceptance checks for `subcount`; run with `cargo test -p subcount-suite --test acceptance`.
