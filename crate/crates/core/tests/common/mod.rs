#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::OnceLock;

use bruhat_core::{Ball, CoxeterSystem};

pub const SMALL: &[&str] = &["A1", "A2", "A3", "A4", "B3", "D4", "H3", "I2(5)", "I2(7)"];

/// Systems are built once per test binary and shared.
pub fn system(id: &str) -> &'static CoxeterSystem {
    static CACHE: OnceLock<HashMap<&'static str, CoxeterSystem>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["A1", "A2", "A3", "A4", "A5", "B3", "B4", "D4", "H3", "F4", "I2(5)", "I2(7)"]
            .into_iter()
            .map(|id| (id, CoxeterSystem::preset(id, 64).unwrap()))
            .collect()
    });
    &all[id]
}

pub fn ball(id: &str) -> &'static Ball<'static> {
    static CACHE: OnceLock<HashMap<&'static str, Ball<'static>>> = OnceLock::new();
    let all = CACHE.get_or_init(|| {
        ["A1", "A2", "A3", "A4", "A5", "B3", "B4", "D4", "H3", "F4", "I2(5)", "I2(7)"]
            .into_iter()
            .map(|id| (id, Ball::whole(system(id)).unwrap()))
            .collect()
    });
    &all[id]
}
