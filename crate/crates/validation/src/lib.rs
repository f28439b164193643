//! Holds the `acceptance` test target, which checks the shipped scenarios
//! against their reference numbers. Run it with
//! `cargo test -p hedoc-validation --test acceptance`.
