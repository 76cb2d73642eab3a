//! Shared fixtures for the benchmarks in `benches/`.

use std::sync::Arc;

use pipedreams_core::{Base, GroupType, SignedPermutation};

/// A shape to benchmark together with its truncation level.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub group: GroupType,
    pub perm: SignedPermutation,
    pub k: usize,
}

impl Fixture {
    pub fn new(group: GroupType, perm: &str, k: usize) -> Self {
        let perm = SignedPermutation::parse(perm).expect("fixture permutation parses");
        Self { group, perm, k }
    }

    /// Label used as the benchmark parameter.
    pub fn label(&self) -> String {
        format!("{}[{}]k{}", self.group, self.perm, self.k)
    }

    pub fn base(&self, double: bool) -> Arc<Base> {
        Arc::new(Base::new(self.group, self.perm.n(), self.k, double).expect("fixture base builds"))
    }
}

/// Longest elements and a few mid-length shapes in rank three.
pub fn rank_three() -> Vec<Fixture> {
    vec![
        Fixture::new(GroupType::A, "3 2 1", 0),
        Fixture::new(GroupType::B, "-3 1 2", 3),
        Fixture::new(GroupType::C, "-1 -2 -3", 3),
        Fixture::new(GroupType::D, "-1 -2 3", 3),
        Fixture::new(GroupType::D, "1 -3 -2", 2),
    ]
}
