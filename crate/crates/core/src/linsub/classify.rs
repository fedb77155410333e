use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Signed;

use super::{fitz_dom, is_monotone, is_skew, FitzForm};
use crate::matrix::{self, Mat};
use crate::pairing::{self, Point};
use crate::report::{ClassificationReport, Verdict, Witness};
use crate::scalar::{self, Scalar};
use crate::subspace::Subspace;

pub(crate) const MONOTONE: &str = "c is positive semidefinite on the relation";
pub(crate) const SKEW: &str = "c vanishes identically on the relation";
const REPRESENTABLE: &str = "a closed monotone subspace is representable";
const NI: &str = "phi - c is positive semidefinite on dom phi";
const UNIQUE: &str = "NI, or dom phi is monotone";
const DUAL: &str = "dual representable coincides with maximal in finite dimension";
const MAXIMAL: &str = "monotone, representable and NI";
const UNDEFINED: &str = "class flags are defined for monotone relations only";

/// The pieces of the `φ − c` analysis shared by the classifier and the
/// extension loop.
pub(crate) struct Excess {
    pub dom: Subspace,
    pub q: Mat,
    pub diag: matrix::Diagonalization,
}

impl Excess {
    pub fn new(l: &Subspace) -> Self {
        let form = FitzForm::new(l).expect("caller checked monotonicity");
        let dom = fitz_dom(l).expect("caller checked monotonicity");
        let q = form.excess_on(&dom);
        let diag = matrix::diagonalize(&q).expect("symmetric");
        Self { dom, q, diag }
    }

    /// A point `z` with `φ(z) < c(z)`.
    pub fn negative_point(&self) -> Option<Vec<Scalar>> {
        self.diag.negative_direction().map(|d| self.dom.combine(d))
    }
}

/// Full classification of a linear subspace.
pub fn classify(l: &Subspace) -> ClassificationReport {
    let n = l.n();
    let mono = is_monotone(l);
    let skew = is_skew(l);
    let monotone = Verdict::exact(mono.monotone, MONOTONE).with_witness(mono.witness.map(Witness::Point));
    let skew = Verdict::exact(skew, SKEW);
    if !monotone.holds {
        let undefined = Verdict::exact(false, UNDEFINED);
        return ClassificationReport {
            n,
            monotone,
            skew,
            representable: undefined.clone(),
            ni: undefined.clone(),
            unique: undefined.clone(),
            dual_representable: undefined.clone(),
            maximal: undefined,
            hull_monotone: None,
            notes: vec![UNDEFINED.to_string()],
        };
    }

    let excess = Excess::new(l);
    let ni_point = excess.negative_point().map(|v| Point::from_flat(&v).expect("even length"));
    let ni = Verdict::exact(ni_point.is_none(), NI).with_witness(ni_point.clone().map(Witness::Point));

    let dom_check = is_monotone(&excess.dom);
    let unique_witness = match (&ni_point, &dom_check.witness) {
        (Some(z0), Some(e)) => Some(non_unique_pair(&excess, z0, e)),
        _ => None,
    };
    let unique = Verdict::exact(ni.holds || dom_check.monotone, UNIQUE).with_witness(unique_witness);

    let maximal = Verdict::exact(ni.holds, MAXIMAL).with_witness(ni_point.map(Witness::Point));
    let dual_representable = Verdict {
        criterion: DUAL,
        ..maximal.clone()
    };
    ClassificationReport {
        n,
        monotone,
        skew,
        representable: Verdict::exact(true, REPRESENTABLE),
        ni,
        unique,
        dual_representable,
        maximal,
        hull_monotone: None,
        notes: vec![
            "representability: finite-dimensional subspaces are closed".to_string(),
            DUAL.to_string(),
        ],
    }
}

/// Two points of `[φ ≤ c]` that are not monotonically related: `z0 ± t·e`
/// where `φ(z0) < c(z0)` and `c(e) < 0`, with `t` halved until both lie
/// in `[φ ≤ c]`.
fn non_unique_pair(excess: &Excess, z0: &Point, e: &Point) -> Witness {
    let coords = |p: &Point| excess.dom.coordinates(&p.to_flat()).expect("point of dom phi");
    let u = coords(z0);
    let v = coords(e);
    let q = &excess.q;
    let excess_at = |w: &[Scalar]| q.bilinear(w, w);
    let mut t = scalar::one();
    let half = scalar::frac(1, 2);
    loop {
        let plus: Vec<Scalar> = u.iter().zip(&v).map(|(a, b)| a + &t * b).collect();
        let minus: Vec<Scalar> = u.iter().zip(&v).map(|(a, b)| a - &t * b).collect();
        if !excess_at(&plus).is_positive() && !excess_at(&minus).is_positive() {
            let p = Point::from_flat(&excess.dom.combine(&plus)).expect("even length");
            let m = Point::from_flat(&excess.dom.combine(&minus)).expect("even length");
            debug_assert!(pairing::cval(&p.sub(&m)).is_negative());
            return Witness::Pair(p, m);
        }
        t *= &half;
    }
}
