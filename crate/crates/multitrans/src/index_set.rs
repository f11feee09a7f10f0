//! Subsets of the hitting-time axis.
//!
//! Every exact computation in this crate lands in the class of ultimately
//! periodic subsets of the positive integers, which is closed under union,
//! intersection and dilation preimages.  `ExactSet` stores such a set in a
//! canonical form (minimal eventual modulus, then minimal threshold) so that
//! structural equality is set equality.  `ExplicitSet` stores a set only up
//! to a horizon and is the honest output of every bounded lane.
//!
//! Throughout the crate the time axis starts at 1; index 0 is never a
//! member of any set.

use crate::error::{Error, Result};
use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// Largest eventual modulus an exact computation may produce.
pub const MODULUS_CAP: u64 = 1 << 22;
/// Largest evaluation window used when combining exact sets.
pub const WINDOW_CAP: u64 = 1 << 24;

/// Ultimately periodic set in canonical form:
/// `exceptional ∪ { n >= threshold : n mod modulus ∈ residues }`,
/// with `exceptional ⊂ [1, threshold)`, minimal modulus, then minimal
/// threshold for that modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct ExactSet {
    exceptional: Vec<u64>,
    modulus: u64,
    residues: Vec<u64>,
    threshold: u64,
}

/// Raw, possibly non-canonical form used for (de)serialization.
#[derive(Debug, Clone, Deserialize)]
pub struct RawExactSet {
    pub exceptional: Vec<u64>,
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub threshold: u64,
}

impl ExactSet {
    /// Builds and canonicalizes.  Accepts any consistent raw description.
    pub fn from_parts(
        exceptional: Vec<u64>,
        modulus: u64,
        residues: Vec<u64>,
        threshold: u64,
    ) -> Result<ExactSet> {
        if modulus == 0 {
            return Err(Error::Parse("modulus must be positive".into()));
        }
        if modulus > MODULUS_CAP {
            return Err(Error::Capacity(format!(
                "modulus {modulus} exceeds cap {MODULUS_CAP}"
            )));
        }
        if threshold == 0 {
            return Err(Error::Parse("threshold must be positive".into()));
        }
        let mut residues = residues;
        residues.sort_unstable();
        residues.dedup();
        if residues.last().is_some_and(|&r| r >= modulus) {
            return Err(Error::Parse("residue outside [0, modulus)".into()));
        }
        let mut exceptional = exceptional;
        exceptional.sort_unstable();
        exceptional.dedup();
        if exceptional.first().is_some_and(|&e| e == 0) {
            return Err(Error::Parse("0 cannot be a member; indices start at 1".into()));
        }
        Ok(Self::canonicalize(exceptional, modulus, residues, threshold))
    }

    /// The empty set.
    pub fn empty() -> ExactSet {
        ExactSet { exceptional: vec![], modulus: 1, residues: vec![], threshold: 1 }
    }

    /// All of the positive integers.
    pub fn all() -> ExactSet {
        ExactSet { exceptional: vec![], modulus: 1, residues: vec![0], threshold: 1 }
    }

    /// `{ n >= 1 : n mod m ∈ rs }`.
    pub fn residue_class(m: u64, rs: &[u64]) -> Result<ExactSet> {
        ExactSet::from_parts(vec![], m, rs.to_vec(), 1)
    }

    /// A finite set.
    pub fn finite(elements: &[u64]) -> Result<ExactSet> {
        ExactSet::from_parts(elements.to_vec(), 1, vec![], 1)
    }

    /// Builds from a membership predicate that is `p`-periodic on
    /// `[n0, ∞)`.  The predicate is only consulted on `[1, n0 + p)`.
    pub(crate) fn from_periodic_fn(n0: u64, p: u64, f: impl Fn(u64) -> bool) -> Result<ExactSet> {
        if p == 0 || n0 == 0 {
            return Err(Error::Bounds("periodic window needs p >= 1, n0 >= 1".into()));
        }
        if p > MODULUS_CAP || n0.saturating_add(p) > WINDOW_CAP {
            return Err(Error::Capacity(format!(
                "evaluation window [1, {}) exceeds cap",
                n0.saturating_add(p)
            )));
        }
        let mut exceptional = Vec::new();
        for n in 1..n0 {
            if f(n) {
                exceptional.push(n);
            }
        }
        let mut residues: Vec<u64> = (n0..n0 + p).filter(|&n| f(n)).map(|n| n % p).collect();
        residues.sort_unstable();
        residues.dedup();
        Ok(Self::canonicalize(exceptional, p, residues, n0))
    }

    fn canonicalize(
        mut exceptional: Vec<u64>,
        mut modulus: u64,
        mut residues: Vec<u64>,
        mut threshold: u64,
    ) -> ExactSet {
        // Absorb exceptional elements at or above the threshold: raise the
        // threshold past them, folding the displaced tail stretch into the
        // exceptional part.
        if let Some(&emax) = exceptional.last() {
            if emax >= threshold {
                let new_threshold = emax + 1;
                for n in threshold..new_threshold {
                    if residues.binary_search(&(n % modulus)).is_ok() {
                        exceptional.push(n);
                    }
                }
                exceptional.sort_unstable();
                exceptional.dedup();
                threshold = new_threshold;
            }
        }

        // Minimal modulus: smallest divisor under which the residue set is
        // shift-invariant.
        for d in 1..=modulus {
            if modulus % d != 0 {
                continue;
            }
            let invariant = residues
                .iter()
                .all(|&r| residues.binary_search(&((r + d) % modulus)).is_ok())
                && residues
                    .iter()
                    .all(|&r| residues.binary_search(&((r + modulus - d) % modulus)).is_ok());
            if invariant {
                residues.retain(|&r| r < d);
                modulus = d;
                break;
            }
        }

        // Minimal threshold: walk down while the step below already obeys
        // the tail rule.
        while threshold > 1 {
            let n = threshold - 1;
            let in_exc = exceptional.binary_search(&n).is_ok();
            let in_tail = residues.binary_search(&(n % modulus)).is_ok();
            if in_exc != in_tail {
                break;
            }
            if in_exc {
                let pos = exceptional.binary_search(&n).unwrap();
                exceptional.remove(pos);
            }
            threshold = n;
        }

        ExactSet { exceptional, modulus, residues, threshold }
    }

    pub fn exceptional(&self) -> &[u64] {
        &self.exceptional
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residues(&self) -> &[u64] {
        &self.residues
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    pub fn contains(&self, n: u64) -> bool {
        if n == 0 {
            return false;
        }
        if n >= self.threshold {
            self.residues.binary_search(&(n % self.modulus)).is_ok()
        } else {
            self.exceptional.binary_search(&n).is_ok()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.exceptional.is_empty() && self.residues.is_empty()
    }

    pub fn is_infinite(&self) -> bool {
        !self.residues.is_empty()
    }

    /// A cofinite set misses only finitely many indices.
    pub fn is_cofinite(&self) -> bool {
        self.residues.len() as u64 == self.modulus
    }

    /// Smallest member, if any.
    pub fn min_element(&self) -> Option<u64> {
        if let Some(&e) = self.exceptional.first() {
            return Some(e);
        }
        if self.residues.is_empty() {
            return None;
        }
        (self.threshold..self.threshold + self.modulus).find(|&n| self.contains(n))
    }

    /// Largest member of a finite set; `None` when infinite or empty.
    pub fn max_element_finite(&self) -> Option<u64> {
        if self.is_infinite() {
            return None;
        }
        self.exceptional.last().copied()
    }

    /// Restriction to `[1, horizon]`.
    pub fn truncate(&self, horizon: u64) -> ExplicitSet {
        let elements = (1..=horizon).filter(|&n| self.contains(n)).collect();
        ExplicitSet { elements, horizon }
    }

    fn combine(a: &ExactSet, b: &ExactSet, f: impl Fn(bool, bool) -> bool) -> Result<ExactSet> {
        let p = lcm_capped(a.modulus, b.modulus)?;
        let n0 = a.threshold.max(b.threshold);
        ExactSet::from_periodic_fn(n0, p, |n| f(a.contains(n), b.contains(n)))
    }

    pub fn union(&self, other: &ExactSet) -> Result<ExactSet> {
        Self::combine(self, other, |x, y| x || y)
    }

    pub fn intersect(&self, other: &ExactSet) -> Result<ExactSet> {
        Self::combine(self, other, |x, y| x && y)
    }

    /// `{ k >= 1 : a·k ∈ self }`.
    pub fn dilation_preimage(&self, a: u64) -> Result<ExactSet> {
        if a == 0 {
            return Err(Error::Bounds("dilation factor must be positive".into()));
        }
        let q = self.modulus / self.modulus.gcd(&a);
        let k0 = self.threshold.div_ceil(a).max(1);
        let probe_top = k0.checked_add(q).and_then(|k| a.checked_mul(k));
        if probe_top.is_none() {
            return Err(Error::Capacity("dilation probe overflows".into()));
        }
        ExactSet::from_periodic_fn(k0, q, |k| self.contains(a * k))
    }

    /// `{ n + s : n ∈ self }`.
    pub fn shift_up(&self, s: u64) -> Result<ExactSet> {
        let threshold = self
            .threshold
            .checked_add(s)
            .filter(|&t| t <= WINDOW_CAP)
            .ok_or_else(|| Error::Capacity("shift pushes threshold past cap".into()))?;
        let exceptional = self.exceptional.iter().map(|&e| e + s).collect();
        let residues = {
            let mut rs: Vec<u64> = self.residues.iter().map(|&r| (r + s) % self.modulus).collect();
            rs.sort_unstable();
            rs
        };
        Ok(Self::canonicalize(exceptional, self.modulus, residues, threshold))
    }

    /// Exact subset test.
    pub fn subset_of(&self, other: &ExactSet) -> Result<bool> {
        let p = lcm_capped(self.modulus, other.modulus)?;
        let n0 = self.threshold.max(other.threshold);
        Ok((1..n0 + p).all(|n| !self.contains(n) || other.contains(n)))
    }
}

/// Finite view of a set: membership is known exactly on `[1, horizon]`
/// and unknown beyond.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExplicitSet {
    elements: Vec<u64>,
    horizon: u64,
}

#[derive(Debug, Clone, Deserialize)]
pub struct RawExplicitSet {
    pub elements: Vec<u64>,
    pub horizon: u64,
}

impl ExplicitSet {
    pub fn new(mut elements: Vec<u64>, horizon: u64) -> Result<ExplicitSet> {
        elements.sort_unstable();
        elements.dedup();
        if elements.first().is_some_and(|&e| e == 0) {
            return Err(Error::Parse("0 cannot be a member; indices start at 1".into()));
        }
        if elements.last().is_some_and(|&e| e > horizon) {
            return Err(Error::Parse("element beyond horizon".into()));
        }
        Ok(ExplicitSet { elements, horizon })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    /// `Some(membership)` within the horizon, `None` beyond it.
    pub fn contains_bounded(&self, n: u64) -> Option<bool> {
        if n == 0 {
            return Some(false);
        }
        if n > self.horizon {
            return None;
        }
        Some(self.elements.binary_search(&n).is_ok())
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Longest run of consecutive members, with its starting index.
    pub fn longest_run(&self) -> (u64, u64) {
        let mut best = (0, 0);
        let mut run_start = 0;
        let mut run_len = 0;
        let mut prev = 0;
        for &e in &self.elements {
            if prev != 0 && e == prev + 1 {
                run_len += 1;
            } else {
                run_start = e;
                run_len = 1;
            }
            if run_len > best.0 {
                best = (run_len, run_start);
            }
            prev = e;
        }
        best
    }
}

/// Either representation, tagged the way the file formats expect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IndexSet {
    Exact(ExactSet),
    Explicit(ExplicitSet),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "lowercase")]
enum RawIndexSet {
    Exact(RawExactSet),
    Explicit(RawExplicitSet),
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D>(deserializer: D) -> std::result::Result<IndexSet, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawIndexSet::deserialize(deserializer)?;
        let built = match raw {
            RawIndexSet::Exact(r) => {
                ExactSet::from_parts(r.exceptional, r.modulus, r.residues, r.threshold)
                    .map(IndexSet::Exact)
            }
            RawIndexSet::Explicit(r) => {
                ExplicitSet::new(r.elements, r.horizon).map(IndexSet::Explicit)
            }
        };
        built.map_err(serde::de::Error::custom)
    }
}

impl IndexSet {
    pub fn as_exact(&self) -> Option<&ExactSet> {
        match self {
            IndexSet::Exact(e) => Some(e),
            IndexSet::Explicit(_) => None,
        }
    }

    pub fn as_explicit(&self) -> Option<&ExplicitSet> {
        match self {
            IndexSet::Explicit(e) => Some(e),
            IndexSet::Exact(_) => None,
        }
    }

    /// Membership where decidable.
    pub fn contains_bounded(&self, n: u64) -> Option<bool> {
        match self {
            IndexSet::Exact(e) => Some(e.contains(n)),
            IndexSet::Explicit(e) => e.contains_bounded(n),
        }
    }
}

pub(crate) fn lcm_capped(a: u64, b: u64) -> Result<u64> {
    let g = a.gcd(&b);
    let l = (a / g).checked_mul(b).ok_or_else(|| {
        Error::Capacity(format!("lcm({a}, {b}) overflows"))
    })?;
    if l > MODULUS_CAP {
        return Err(Error::Capacity(format!("lcm({a}, {b}) = {l} exceeds cap {MODULUS_CAP}")));
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn odds() -> ExactSet {
        ExactSet::residue_class(2, &[1]).unwrap()
    }

    fn evens() -> ExactSet {
        ExactSet::residue_class(2, &[0]).unwrap()
    }

    #[test]
    fn canonical_forms() {
        // Odds from 7 up: modulus shrinks to 2, threshold walks down to the
        // first even number not in the set.
        let s = ExactSet::from_parts(vec![], 4, vec![1, 3], 7).unwrap();
        assert_eq!(s.modulus(), 2);
        assert_eq!(s.residues(), &[1]);
        assert_eq!(s.threshold(), 6);
        assert!(s.exceptional().is_empty());
        assert!(!s.contains(5) && s.contains(7));

        // The same tail with the low odds supplied explicitly is all odds.
        let s = ExactSet::from_parts(vec![1, 3, 5], 4, vec![1, 3], 7).unwrap();
        assert_eq!(s, odds());
        assert_eq!(s.threshold(), 1);
        assert!(s.exceptional().is_empty());

        let t = ExactSet::from_parts(vec![2, 4, 9], 1, vec![], 1).unwrap();
        assert_eq!(t.threshold(), 10);
        assert_eq!(t.exceptional(), &[2, 4, 9]);
        assert!(!t.is_infinite());

        let all = ExactSet::from_parts(vec![1, 2, 3], 3, vec![0, 1, 2], 4).unwrap();
        assert_eq!(all, ExactSet::all());
        assert!(all.is_cofinite());
    }

    #[test]
    fn exceptional_above_threshold_is_absorbed() {
        // {1} ∪ {n >= 2 even} ∪ {7}: the stray 7 forces threshold 8.
        let s = ExactSet::from_parts(vec![1, 7], 2, vec![0], 2).unwrap();
        assert!(s.contains(1) && s.contains(7));
        assert!(s.contains(2) && s.contains(4) && s.contains(6) && s.contains(8));
        assert!(!s.contains(3) && !s.contains(5) && !s.contains(9));
        assert!(s.contains(100) && !s.contains(101));
        // Canonical: modulus stays 2, threshold is 8, odd members below are
        // exceptional.
        assert_eq!(s.modulus(), 2);
        assert_eq!(s.threshold(), 8);
        assert_eq!(s.exceptional(), &[1, 2, 4, 6, 7]);
    }

    #[test]
    fn canonical_is_idempotent_and_representation_independent() {
        let a = ExactSet::from_parts(vec![3], 6, vec![0, 2, 4], 5).unwrap();
        let b = ExactSet::from_parts(
            (1..40).filter(|&n| n == 3 || (n >= 5 && n % 2 == 0)).collect(),
            2,
            vec![0],
            40,
        )
        .unwrap();
        assert_eq!(a, b);
        let c = ExactSet::from_parts(
            a.exceptional().to_vec(),
            a.modulus(),
            a.residues().to_vec(),
            a.threshold(),
        )
        .unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn membership_zero_and_bounds() {
        assert!(!odds().contains(0));
        assert!(odds().contains(1));
        assert!(ExactSet::empty().is_empty());
        assert_eq!(ExactSet::empty().min_element(), None);
        assert_eq!(odds().min_element(), Some(1));
        assert_eq!(evens().min_element(), Some(2));
    }

    #[test]
    fn union_intersect_dilate() {
        let u = odds().union(&evens()).unwrap();
        assert_eq!(u, ExactSet::all());
        let i = odds().intersect(&evens()).unwrap();
        assert!(i.is_empty());

        // {k : 2k odd} = ∅, {k : 2k even} = all, {k : 3k ≡ 0 mod 6} = evens.
        assert!(odds().dilation_preimage(2).unwrap().is_empty());
        assert_eq!(evens().dilation_preimage(2).unwrap(), ExactSet::all());
        let mult6 = ExactSet::residue_class(6, &[0]).unwrap();
        assert_eq!(mult6.dilation_preimage(3).unwrap(), evens());
    }

    #[test]
    fn dilation_respects_threshold() {
        // S = {n >= 10}: {k : 3k ∈ S} = {k >= 4}.
        let s = ExactSet::from_parts(vec![], 1, vec![0], 10).unwrap();
        let d = s.dilation_preimage(3).unwrap();
        assert!(!d.contains(3) && d.contains(4));
        assert_eq!(d.threshold(), 4);
    }

    #[test]
    fn truncate_and_runs() {
        let t = evens().truncate(9);
        assert_eq!(t.elements(), &[2, 4, 6, 8]);
        assert_eq!(t.longest_run(), (1, 2));
        let full = ExactSet::all().truncate(5);
        assert_eq!(full.longest_run(), (5, 1));
        assert_eq!(full.contains_bounded(6), None);
        assert_eq!(full.contains_bounded(5), Some(true));
    }

    #[test]
    fn subset_checks() {
        let mult4 = ExactSet::residue_class(4, &[0]).unwrap();
        assert!(mult4.subset_of(&evens()).unwrap());
        assert!(!evens().subset_of(&mult4).unwrap());
        assert!(ExactSet::empty().subset_of(&mult4).unwrap());
    }

    #[test]
    fn naive_window_agreement() {
        // Exhaustive cross-check of set algebra against direct membership
        // on a window, over a grid of small parameter choices.
        let mut sets = Vec::new();
        for p in 1..=6u64 {
            for mask in 0..(1u64 << p) {
                let rs: Vec<u64> = (0..p).filter(|&r| mask >> r & 1 == 1).collect();
                sets.push(ExactSet::from_parts(vec![3, 5], p, rs, 9).unwrap());
            }
        }
        for a in sets.iter().step_by(7) {
            for b in sets.iter().step_by(11) {
                let u = a.union(b).unwrap();
                let i = a.intersect(b).unwrap();
                for n in 0..200 {
                    assert_eq!(u.contains(n), a.contains(n) || b.contains(n));
                    assert_eq!(i.contains(n), a.contains(n) && b.contains(n));
                }
                for f in 1..=4u64 {
                    let d = a.dilation_preimage(f).unwrap();
                    for k in 0..100 {
                        assert_eq!(d.contains(k), k >= 1 && a.contains(f * k), "f={f} k={k}");
                    }
                }
            }
        }
    }

    #[test]
    fn serde_round_trip() {
        let s = IndexSet::Exact(ExactSet::from_parts(vec![], 1, vec![0], 2).unwrap());
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(
            json,
            r#"{"exact":{"exceptional":[],"modulus":1,"residues":[0],"threshold":2}}"#
        );
        let back: IndexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);

        let e = IndexSet::Explicit(ExplicitSet::new(vec![2, 4], 8).unwrap());
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"explicit":{"elements":[2,4],"horizon":8}}"#);
        let back: IndexSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);

        // Non-canonical input canonicalizes on ingestion.
        let raw = r#"{"exact":{"exceptional":[],"modulus":4,"residues":[1,3],"threshold":7}}"#;
        let got: IndexSet = serde_json::from_str(raw).unwrap();
        assert_eq!(got.as_exact().unwrap().modulus(), 2);
    }
}
