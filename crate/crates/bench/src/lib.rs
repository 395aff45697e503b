//! Fixtures shared by the benchmarks.

use bruhat_core::{CoxeterSystem, ReflectionSet};

/// A finite preset with a registry deep enough to be complete.
pub fn finite(id: &str) -> CoxeterSystem {
    CoxeterSystem::preset(id, 64).expect("known preset")
}

/// Every `k`-th reflection, a spread-out set of moderate size.
pub fn spread(sys: &CoxeterSystem, k: usize) -> ReflectionSet {
    let n = sys.num_positive_roots();
    ReflectionSet::from_ids(n, (0..n as u32).step_by(k))
}
