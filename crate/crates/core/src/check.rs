use serde::Serialize;

use crate::ring::ElementId;

/// Outcome of an exhaustive check: either it holds, or the first
/// violating tuple in index order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    pub witness: Option<Vec<ElementId>>,
}

impl Check {
    pub fn pass() -> Self {
        Check { holds: true, witness: None }
    }

    pub fn fail(witness: Vec<ElementId>) -> Self {
        Check { holds: false, witness: Some(witness) }
    }

    pub fn from_witness(witness: Option<Vec<ElementId>>) -> Self {
        match witness {
            Some(w) => Check::fail(w),
            None => Check::pass(),
        }
    }

    /// First failure wins.
    pub fn and_then(self, next: impl FnOnce() -> Check) -> Check {
        if self.holds {
            next()
        } else {
            self
        }
    }
}
