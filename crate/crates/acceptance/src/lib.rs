//! Empty library; the acceptance suite lives in the `acceptance` test target,
//! sourced from `crates/core/tests/acceptance.rs`.
