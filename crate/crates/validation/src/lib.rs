//! Acceptance suite for `wcc_core`.
//!
//! The criteria live in the `acceptance` test target, which has its own `main`
//! and prints one PASS/FAIL line per criterion:
//!
//! ```sh
//! cargo test -p wcc-validation --test acceptance -- 1 3
//! ```
//!
//! It is a separate package so that `cargo test --workspace` runs it after the
//! unit and integration tests of the other crates.
