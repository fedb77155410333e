//! Classification verdicts with witnesses and certainty tiers.

use alloc::string::String;
use alloc::vec::Vec;

use crate::pairing::Point;

/// How a verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tier {
    /// Decided by an exact inertia test or matrix identity.
    Exact,
    /// No counterexample among `samples` sampled probes.
    Probed { samples: usize },
}

impl Tier {
    /// The weaker of two tiers.
    pub fn min(self, other: Tier) -> Tier {
        match (self, other) {
            (Tier::Exact, t) | (t, Tier::Exact) => t,
            (Tier::Probed { samples: a }, Tier::Probed { samples: b }) => Tier::Probed { samples: a.min(b) },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// A single point certifying the verdict, e.g. `c(z) < 0` or `φ(z) < c(z)`.
    Point(Point),
    /// Two points with `c(z − w) < 0`.
    Pair(Point, Point),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub tier: Tier,
    /// The criterion that produced the verdict.
    pub criterion: &'static str,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn exact(holds: bool, criterion: &'static str) -> Self {
        Self {
            holds,
            tier: Tier::Exact,
            criterion,
            witness: None,
        }
    }

    pub fn with_witness(mut self, witness: Option<Witness>) -> Self {
        self.witness = witness;
        self
    }

    pub fn with_tier(mut self, tier: Tier) -> Self {
        self.tier = tier;
        self
    }
}

/// The seven class flags of a monotone relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub n: usize,
    pub monotone: Verdict,
    pub skew: Verdict,
    pub representable: Verdict,
    pub ni: Verdict,
    pub unique: Verdict,
    pub dual_representable: Verdict,
    pub maximal: Verdict,
    /// Only for double-cones: whether the linear hull is monotone.
    pub hull_monotone: Option<Verdict>,
    pub notes: Vec<String>,
}

impl ClassificationReport {
    /// Named flags in a fixed order.
    pub fn flags(&self) -> [(&'static str, &Verdict); 7] {
        [
            ("monotone", &self.monotone),
            ("skew", &self.skew),
            ("representable", &self.representable),
            ("ni", &self.ni),
            ("unique", &self.unique),
            ("dual_representable", &self.dual_representable),
            ("maximal", &self.maximal),
        ]
    }

    /// Structural implications every report must satisfy.
    pub fn is_consistent(&self) -> bool {
        let m = self.maximal.holds;
        let implies = |a: bool, b: bool| !a || b;
        implies(m, self.representable.holds && self.ni.holds)
            && implies(self.ni.holds, self.unique.holds)
            && implies(self.skew.holds, self.monotone.holds)
            && m == (self.dual_representable.holds && self.unique.holds)
            && m == (self.representable.holds && self.ni.holds)
    }
}
