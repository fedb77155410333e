//! The skew operator `T` on finitely supported sequences,
//! `(Tx)_n = Σ_k x_k + x_n − 2 Σ_{k≤n} x_k`, paired with `ℓ₁` exactly.
//!
//! `Tx` is constant beyond the last support index, so it is stored as a
//! finite head plus a tail constant.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::Error;
use crate::scalar::Scalar;

/// A finitely supported sequence indexed from 1.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FinSeq {
    support: Vec<(usize, Scalar)>,
}

impl FinSeq {
    /// Builds a sequence from `(index, value)` pairs; repeated indices are
    /// summed and zero values dropped.
    pub fn from_pairs<I>(pairs: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut entries: Vec<(usize, Scalar)> = pairs.into_iter().collect();
        if entries.iter().any(|(i, _)| *i == 0) {
            return Err(Error::BadIndex);
        }
        entries.sort_by_key(|(i, _)| *i);
        let mut support: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match support.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => support.push((i, v)),
            }
        }
        support.retain(|(_, v)| !v.is_zero());
        Ok(Self { support })
    }

    /// The unit vector `e_i`.
    pub fn unit(i: usize) -> Result<Self, Error> {
        Self::from_pairs([(i, crate::scalar::one())])
    }

    pub fn support(&self) -> &[(usize, Scalar)] {
        &self.support
    }

    pub fn get(&self, i: usize) -> Scalar {
        self.support
            .binary_search_by_key(&i, |(j, _)| *j)
            .map(|k| self.support[k].1.clone())
            .unwrap_or_else(|_| Scalar::zero())
    }

    pub fn max_index(&self) -> usize {
        self.support.last().map_or(0, |(i, _)| *i)
    }

    /// `⟨x, e⟩ = Σ x_k`
    pub fn sum(&self) -> Scalar {
        self.support.iter().map(|(_, v)| v).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }
}

/// An eventually constant sequence: `head` covers indices `1..=head.len()`,
/// every later entry equals `tail`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvConstSeq {
    pub head: Vec<Scalar>,
    pub tail: Scalar,
}

impl EvConstSeq {
    pub fn get(&self, i: usize) -> Scalar {
        debug_assert!(i >= 1);
        self.head.get(i - 1).cloned().unwrap_or_else(|| self.tail.clone())
    }

    /// `self + s·e` where `e = (1, 1, …)`.
    pub fn shift(&self, s: &Scalar) -> Self {
        Self {
            head: self.head.iter().map(|v| v + s).collect(),
            tail: &self.tail + s,
        }
    }
}

pub fn gossez_apply(x: &FinSeq) -> EvConstSeq {
    let total = x.sum();
    let mut prefix = Scalar::zero();
    let head = (1..=x.max_index())
        .map(|n| {
            let xn = x.get(n);
            prefix += &xn;
            &total + xn - &prefix * Scalar::from_integer(2.into())
        })
        .collect();
    EvConstSeq { head, tail: -total }
}

/// `⟨x, y⟩ = Σ x_i y_i` for `x ∈ ℓ₁`, `y ∈ ℓ∞`.
pub fn pair(x: &FinSeq, y: &EvConstSeq) -> Scalar {
    x.support.iter().map(|(i, v)| v * y.get(*i)).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    /// Exact residual; `None` when the identity's hypothesis does not hold.
    pub residual: Option<Scalar>,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.residual.as_ref().is_none_or(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub checks: Vec<IdentityCheck>,
    /// `⟨Tv + ⟨v,e⟩e, v⟩`, which equals `⟨v,e⟩²`.
    pub witness_value: Scalar,
}

impl IdentityReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(IdentityCheck::passed)
    }
}

/// Evaluates the pairing identities of `T` at `x` and `v`.
pub fn check_identities(x: &FinSeq, v: &FinSeq) -> IdentityReport {
    let tx = gossez_apply(x);
    let tv = gossez_apply(v);
    let xe = x.sum();
    let ve = v.sum();
    let t1x = tx.shift(&xe);
    let t1v = tv.shift(&ve);
    let witness_value = pair(v, &t1v);
    let check = |name, residual| IdentityCheck {
        name,
        residual: Some(residual),
    };
    let checks = alloc::vec![
        check("skew <x,Tx> = 0", pair(x, &tx)),
        check("skew <v,Tv> = 0", pair(v, &tv)),
        check("antisymmetry <x,Tv> + <v,Tx> = 0", pair(x, &tv) + pair(v, &tx)),
        check("limit lim Tx = -<x,e>", &tx.tail + &xe),
        check("T1 x = Tx + <x,e>e vanishes at infinity", t1x.tail.clone()),
        IdentityCheck {
            name: "orthogonality <Tx,v> + <Tv+<v,e>e, x> = 0 for <x,e> = 0",
            residual: xe.is_zero().then(|| pair(v, &tx) + pair(x, &t1v)),
        },
        check("<Tv+<v,e>e, v> = <v,e>^2", &witness_value - &ve * &ve),
    ];
    IdentityReport { checks, witness_value }
}
