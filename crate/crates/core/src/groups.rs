//! Finitely generated abelian groups plus divisible `(ℚ/ℤ)^r` summands, and
//! extension records for groups known only up to a filtration.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `ℤ/t₁ ⊕ … ⊕ ℤ/tₘ ⊕ ℤ^f ⊕ (ℚ/ℤ)^r` with `t₁ | t₂ | … | tₘ`, all `tᵢ ≥ 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAbGroup")]
pub struct AbGroup {
    torsion: Vec<u64>,
    free_rank: u32,
    divisible_rank: u32,
}

#[derive(Deserialize)]
struct RawAbGroup {
    #[serde(default)]
    torsion: Vec<u64>,
    #[serde(default)]
    free_rank: u32,
    #[serde(default)]
    divisible_rank: u32,
}

impl TryFrom<RawAbGroup> for AbGroup {
    type Error = Error;

    fn try_from(raw: RawAbGroup) -> Result<Self> {
        AbGroup::new(&raw.torsion, raw.free_rank, raw.divisible_rank)
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// Invariant factors of `⊕ ℤ/nᵢ`, ascending. Orders equal to 1 vanish.
fn invariant_factors(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: std::collections::BTreeMap<u64, Vec<u64>> = Default::default();
    for &n in orders {
        for (p, q) in prime_powers(n) {
            by_prime.entry(p).or_default().push(q);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            factors[i] *= q;
        }
    }
    factors.reverse();
    factors
}

impl AbGroup {
    /// Canonicalizes any list of cyclic orders; rejects order 0 (use
    /// `free_rank` for ℤ summands).
    pub fn new(orders: &[u64], free_rank: u32, divisible_rank: u32) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::InvalidDescriptor("cyclic order 0; use free_rank for Z summands".into()));
        }
        Ok(AbGroup { torsion: invariant_factors(orders), free_rank, divisible_rank })
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    /// `ℤ/n`; trivial for `n = 1`.
    pub fn cyclic(n: u64) -> Self {
        Self::power(n, 1)
    }

    /// `(ℤ/n)^k`.
    pub fn power(n: u64, k: usize) -> Self {
        assert!(n > 0, "cyclic order must be positive");
        Self::new(&vec![n; k], 0, 0).expect("positive orders")
    }

    pub fn free(rank: u32) -> Self {
        AbGroup { free_rank: rank, ..Self::default() }
    }

    pub fn divisible(rank: u32) -> Self {
        AbGroup { divisible_rank: rank, ..Self::default() }
    }

    /// Invariant factors, ascending, each dividing the next.
    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn free_rank(&self) -> u32 {
        self.free_rank
    }

    pub fn divisible_rank(&self) -> u32 {
        self.divisible_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0 && self.divisible_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0 && self.divisible_rank == 0
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let orders: Vec<u64> = self.torsion.iter().chain(&other.torsion).copied().collect();
        AbGroup {
            torsion: invariant_factors(&orders),
            free_rank: self.free_rank + other.free_rank,
            divisible_rank: self.divisible_rank + other.divisible_rank,
        }
    }

    pub fn equals(&self, other: &Self) -> bool {
        self == other
    }

    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn exponent(&self) -> Exponent {
        if !self.is_finite() {
            return Exponent::Infinite;
        }
        Exponent::Finite(self.torsion.iter().fold(1, |acc, &t| acc.lcm(&t)))
    }

    /// Dimension of the 2-torsion `{x : 2x = 0}` of the torsion part.
    pub fn two_rank(&self) -> usize {
        self.torsion.iter().filter(|t| *t % 2 == 0).count()
    }
}

impl fmt::Display for AbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|t| format!("Z/{t}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        match self.divisible_rank {
            0 => {}
            1 => parts.push("Q/Z".into()),
            r => parts.push(format!("(Q/Z)^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u64),
    Infinite,
}

impl Exponent {
    pub fn divides(&self, n: u64) -> bool {
        matches!(self, Exponent::Finite(e) if n.is_multiple_of(*e))
    }
}

impl Serialize for Exponent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Exponent::Finite(e) => s.serialize_u64(*e),
            Exponent::Infinite => s.serialize_str("infinite"),
        }
    }
}

/// A group `E` sitting in `0 → sub → E → quotient → 0`, with the extension
/// resolved only when it is determined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionDatum {
    pub sub: AbGroup,
    pub quotient: AbGroup,
    pub resolved: Option<AbGroup>,
    pub note: String,
}

impl ExtensionDatum {
    /// Records the extension; it resolves itself when either end is trivial.
    pub fn new(sub: AbGroup, quotient: AbGroup, note: impl Into<String>) -> Self {
        let resolved = if sub.is_trivial() {
            Some(quotient.clone())
        } else if quotient.is_trivial() {
            Some(sub.clone())
        } else {
            None
        };
        ExtensionDatum { sub, quotient, resolved, note: note.into() }
    }

    /// Attaches a resolution, checking orders when everything is finite.
    pub fn with_resolution(mut self, group: AbGroup) -> Result<Self> {
        if let (Some(a), Some(b), Some(c)) = (self.sub.order(), self.quotient.order(), group.order()) {
            if a * b != c {
                return Err(Error::Internal(format!(
                    "resolution {group} has order {c}, extension of {} by {} has order {}",
                    self.quotient,
                    self.sub,
                    a * b
                )));
            }
        }
        self.resolved = Some(group);
        Ok(self)
    }

    /// `|sub| · |quotient|`, which every extension shares.
    pub fn order(&self) -> Option<u64> {
        Some(self.sub.order()? * self.quotient.order()?)
    }
}

/// A group that is either known outright or known as an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupValue {
    Resolved(AbGroup),
    Extension(ExtensionDatum),
}

impl GroupValue {
    /// The group itself, if determined.
    pub fn resolved(&self) -> Option<&AbGroup> {
        match self {
            GroupValue::Resolved(g) => Some(g),
            GroupValue::Extension(e) => e.resolved.as_ref(),
        }
    }

    pub fn order(&self) -> Option<u64> {
        match self {
            GroupValue::Resolved(g) => g.order(),
            GroupValue::Extension(e) => e.order(),
        }
    }
}

impl From<AbGroup> for GroupValue {
    fn from(g: AbGroup) -> Self {
        GroupValue::Resolved(g)
    }
}

impl From<ExtensionDatum> for GroupValue {
    fn from(e: ExtensionDatum) -> Self {
        GroupValue::Extension(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(orders: &[u64]) -> AbGroup {
        AbGroup::new(orders, 0, 0).unwrap()
    }

    #[test]
    fn direct_sums() {
        assert_eq!(AbGroup::cyclic(2).direct_sum(&AbGroup::cyclic(4)).torsion(), &[2, 4]);
        let a = g(&[3, 8, 2]);
        assert_eq!(AbGroup::trivial().direct_sum(&a), a);
        assert_eq!(g(&[2, 2]).direct_sum(&AbGroup::cyclic(8)).torsion(), &[2, 2, 8]);
        assert_eq!(g(&[2, 3]).torsion(), &[6]);
        assert_eq!(g(&[4, 6]).torsion(), &[2, 12]);
        assert_eq!(g(&[1, 1]), AbGroup::trivial());
    }

    #[test]
    fn equality() {
        assert!(g(&[2, 4]).equals(&g(&[4, 2])));
        assert!(!AbGroup::cyclic(8).equals(&g(&[4, 2])));
        assert!(!AbGroup::free(1).equals(&AbGroup::cyclic(2)));
    }

    #[test]
    fn exponents() {
        assert_eq!(g(&[2, 8]).exponent(), Exponent::Finite(8));
        assert_eq!(AbGroup::trivial().exponent(), Exponent::Finite(1));
        assert_eq!(AbGroup::divisible(1).exponent(), Exponent::Infinite);
        assert_eq!(AbGroup::free(2).exponent(), Exponent::Infinite);
        assert!(g(&[2, 4]).exponent().divides(8));
    }

    #[test]
    fn rejects_zero_order() {
        assert!(AbGroup::new(&[0], 0, 0).is_err());
        assert!(serde_json::from_str::<AbGroup>(r#"{"torsion":[0]}"#).is_err());
    }

    #[test]
    fn json_shape() {
        let a = AbGroup::new(&[8, 4], 1, 2).unwrap();
        let text = serde_json::to_string(&a).unwrap();
        assert_eq!(text, r#"{"torsion":[4,8],"free_rank":1,"divisible_rank":2}"#);
        let back: AbGroup = serde_json::from_str(r#"{"torsion":[8,4],"free_rank":1,"divisible_rank":2}"#).unwrap();
        assert_eq!(back, a);
        assert_eq!(a.to_string(), "Z/4 + Z/8 + Z + (Q/Z)^2");
        assert_eq!(AbGroup::trivial().to_string(), "0");
    }

    #[test]
    fn extensions() {
        let e = ExtensionDatum::new(AbGroup::cyclic(2), AbGroup::cyclic(4), "test");
        assert_eq!(e.resolved, None);
        assert_eq!(e.order(), Some(8));
        assert!(e.clone().with_resolution(AbGroup::cyclic(8)).is_ok());
        assert!(e.with_resolution(AbGroup::cyclic(4)).is_err());
        let split = ExtensionDatum::new(AbGroup::trivial(), AbGroup::cyclic(4), "test");
        assert_eq!(split.resolved, Some(AbGroup::cyclic(4)));
    }

    #[test]
    fn two_rank_counts_even_factors() {
        assert_eq!(g(&[3, 2, 4]).two_rank(), 2);
        assert_eq!(g(&[9]).two_rank(), 0);
    }

    fn orders() -> impl Strategy<Value = Vec<u64>> {
        prop::collection::vec(1u64..40, 0..5)
    }

    proptest! {
        #[test]
        fn canonical_form_is_stable(a in orders()) {
            let x = g(&a);
            prop_assert_eq!(g(x.torsion()), x.clone());
            prop_assert!(x.torsion().windows(2).all(|w| w[1] % w[0] == 0));
            prop_assert!(x.torsion().iter().all(|&t| t >= 2));
            prop_assert_eq!(x.order(), Some(a.iter().product::<u64>()));
        }

        #[test]
        fn direct_sum_laws(a in orders(), b in orders(), c in orders(), f in 0u32..3, r in 0u32..3) {
            let (x, y, z) = (AbGroup::new(&a, f, 0).unwrap(), AbGroup::new(&b, 0, r).unwrap(), g(&c));
            prop_assert!(x.direct_sum(&y).equals(&y.direct_sum(&x)));
            prop_assert!(x.direct_sum(&y).direct_sum(&z).equals(&x.direct_sum(&y.direct_sum(&z))));
        }
    }
}
