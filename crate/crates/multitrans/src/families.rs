//! Families of index sets closed upward under inclusion, generated by
//! step vectors: a set F belongs to the family of the vector
//! a = (a_1, ..., a_r) when for every shift vector n ∈ Z+^r some k >= 1
//! puts a_i·k + n_i into F for all i.  Also the classical families
//! (infinite, cofinite, thick) and finite difference-set search.
//!
//! The exact decision rests on the tail of the canonical set: whether a
//! shift vector admits a witness depends only on its residues mod the
//! set's modulus once all entries are past the threshold, and small
//! entries can only be easier to satisfy (the exceptional part adds
//! members).  So coverage of all residue classes decides the verdict,
//! and the lexicographically least refuting shift vector always fits in
//! the box [0, threshold + modulus)^r.

use crate::error::{Error, Result};
use crate::index_set::{ExactSet, ExplicitSet, IndexSet};
use crate::systems::validate_vector;
use crate::verdict::{Verdict, Witness};
use serde::{Deserialize, Serialize};

/// Modulus cap for the exact membership decision.
pub const MEMBER_MODULUS_CAP: u64 = 1 << 11;
/// Cap on the number of residue classes (modulus^r) scanned.
pub const MEMBER_CLASS_CAP: u128 = 1 << 22;
/// Cap on the witness box (threshold + modulus)^r; above it the witness
/// falls back to the least refuted class lifted past the threshold.
pub const WITNESS_BOX_CAP: u128 = 1 << 22;
/// Node budget for the difference-subset search.
pub const DIFFERENCE_SEARCH_BUDGET: u64 = 4_000_000;

/// Search bounds for horizon-limited membership checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub n_max: u64,
    pub k_max: u64,
}

/// A family selector, as ingested from CLI/JSON queries.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyQuery {
    /// Infinite sets.
    Inf,
    /// Cofinite sets.
    Cf,
    /// Sets with arbitrarily long runs.
    Thick,
    /// The family of one step vector.
    #[serde(rename = "vec")]
    Vector { a: Vec<u64> },
    /// Intersection over the vectors (1), (1,2), ..., (1,...,r_max).
    Infty { r_max: u64 },
    /// Intersection over the prefixes of a fixed sequence.
    Seq { prefix: Vec<u64> },
}

/// Lexicographically least residue class (m_1, ..., m_r) ∈ (Z/p)^r that
/// no k covers, i.e. for every k some coordinate has
/// (a_i·k + m_i) mod p outside `residues`.  `None` means full coverage.
pub(crate) fn refuted_class(p: u64, residues: &[u64], a: &[u64]) -> Result<Option<Vec<u64>>> {
    validate_vector(a)?;
    let r = a.len();
    if residues.is_empty() {
        return Ok(Some(vec![0; r]));
    }
    if residues.len() as u64 == p {
        return Ok(None);
    }
    if p > MEMBER_MODULUS_CAP {
        return Err(Error::Capacity(format!("modulus {p} above membership cap")));
    }
    (p as u128)
        .checked_pow(r as u32)
        .filter(|&c| c <= MEMBER_CLASS_CAP)
        .ok_or_else(|| Error::Capacity(format!("{p}^{r} residue classes above cap")))?;

    // rows[i][c]: bitset over k ∈ [0, p) of "(a_i·k + c) mod p is a
    // residue of the set".
    let words = (p as usize).div_ceil(64);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(r);
    for &ai in a {
        let mut table = vec![0u64; p as usize * words];
        for k in 0..p {
            let val = ai % p * k % p;
            for &rho in residues {
                let c = (rho + p - val) % p;
                table[c as usize * words + (k / 64) as usize] |= 1 << (k % 64);
            }
        }
        rows.push(table);
    }

    let mut m = vec![0u64; r];
    let mut inter = vec![0u64; words];
    loop {
        inter.copy_from_slice(&rows[0][m[0] as usize * words..(m[0] as usize + 1) * words]);
        let mut live = inter.iter().any(|&w| w != 0);
        for i in 1..r {
            if !live {
                break;
            }
            live = false;
            let row = &rows[i][m[i] as usize * words..(m[i] as usize + 1) * words];
            for (w, &rw) in inter.iter_mut().zip(row) {
                *w &= rw;
                live |= *w != 0;
            }
        }
        if !live {
            return Ok(Some(m));
        }
        let mut i = r;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            m[i] += 1;
            if m[i] < p {
                break;
            }
            m[i] = 0;
        }
    }
}

/// Whether no k >= 1 satisfies a_i·k + n_i ∈ F for all i.  Exact: the
/// pattern over k stabilizes once every entry passes the threshold, so
/// scanning one extra period settles the existential.
fn refuted_vector(f: &ExactSet, a: &[u64], n: &[u64]) -> bool {
    let p = f.modulus();
    let k_stab = a
        .iter()
        .zip(n)
        .map(|(&ai, &ni)| f.threshold().saturating_sub(ni).div_ceil(ai))
        .max()
        .unwrap_or(1);
    for k in 1..=k_stab + p {
        if a.iter().zip(n).all(|(&ai, &ni)| f.contains(ai * k + ni)) {
            return false;
        }
    }
    true
}

/// Exact membership of an ultimately periodic set in the family of the
/// vector `a`.  `Fails` carries the lexicographically least refuting
/// shift vector (unless the witness box exceeds its cap, in which case
/// the least refuted residue class is lifted past the threshold).
pub fn member_exact(f: &ExactSet, a: &[u64]) -> Result<Verdict> {
    let p = f.modulus();
    let class = match refuted_class(p, f.residues(), a)? {
        None => return Ok(Verdict::Holds),
        Some(c) => c,
    };
    let r = a.len();
    let edge = f.threshold() + p;
    let in_cap = (edge as u128).checked_pow(r as u32).is_some_and(|b| b <= WITNESS_BOX_CAP);
    if in_cap {
        let mut n = vec![0u64; r];
        loop {
            if refuted_vector(f, a, &n) {
                return Ok(Verdict::fails(Witness::NVector(n)));
            }
            let mut i = r;
            loop {
                assert!(i > 0, "a refuted class guarantees a witness inside the box");
                i -= 1;
                n[i] += 1;
                if n[i] < edge {
                    break;
                }
                n[i] = 0;
            }
        }
    }
    let lifted: Vec<u64> = class
        .iter()
        .map(|&c| {
            let base = f.threshold();
            base + (c + p - base % p) % p
        })
        .collect();
    debug_assert!(refuted_vector(f, a, &lifted));
    Ok(Verdict::fails(Witness::NVector(lifted)))
}

/// Horizon-limited membership for an explicit set.  `Holds` covers the
/// scanned bounds only; `Fails` is returned just for shift vectors whose
/// whole horizon-permitted k-range was scanned, so it cannot contradict
/// [`member_exact`] on a truncation whose horizon dominates the
/// threshold (margin (H - n_max)/max(a) >= threshold + modulus).
pub fn member_bounded(f: &ExplicitSet, a: &[u64], bounds: &Bounds) -> Result<Verdict> {
    validate_vector(a)?;
    if bounds.n_max == 0 && bounds.k_max == 0 {
        return Err(Error::Bounds("bounds must be positive".into()));
    }
    if bounds.k_max == 0 {
        return Err(Error::Bounds("k_max must be >= 1".into()));
    }
    let h = f.horizon();
    for &ai in a {
        if ai.checked_mul(bounds.k_max).and_then(|v| v.checked_add(bounds.n_max)).is_none_or(|v| v > h)
        {
            return Err(Error::Bounds(format!(
                "a={a:?} with k_max={} n_max={} probes beyond horizon {h}",
                bounds.k_max, bounds.n_max
            )));
        }
    }
    let r = a.len();
    let mut unresolved: Option<(Vec<u64>, u64)> = None;
    let mut n = vec![0u64; r];
    loop {
        let cap = a.iter().zip(&n).map(|(&ai, &ni)| (h - ni) / ai).min().unwrap();
        let k_hi = bounds.k_max.min(cap);
        let mut found = false;
        for k in 1..=k_hi {
            if a
                .iter()
                .zip(&n)
                .all(|(&ai, &ni)| f.contains_bounded(ai * k + ni) == Some(true))
            {
                found = true;
                break;
            }
        }
        if !found {
            if k_hi >= cap {
                return Ok(Verdict::fails(Witness::NVector(n)));
            }
            if unresolved.is_none() {
                unresolved = Some((n.clone(), cap));
            }
        }
        let mut i = r;
        let mut done = false;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            n[i] += 1;
            if n[i] <= bounds.n_max {
                break;
            }
            n[i] = 0;
        }
        if done {
            break;
        }
    }
    if let Some((n, cap)) = unresolved {
        return Ok(Verdict::unknown(format!(
            "n <= {} k <= {}: no witness for n={n:?} within k_max, horizon allows k <= {cap}",
            bounds.n_max, bounds.k_max
        )));
    }
    Ok(Verdict::Holds)
}

/// Infinitely many members?  Exact sets answer exactly; explicit sets
/// can only report what the horizon shows.
pub fn is_infinite(f: &IndexSet) -> Verdict {
    match f {
        IndexSet::Exact(e) => {
            if e.is_infinite() {
                Verdict::Holds
            } else {
                let note = match e.max_element_finite() {
                    Some(m) => format!("no members past {m}"),
                    None => "empty set".to_string(),
                };
                Verdict::fails(Witness::Note(note))
            }
        }
        IndexSet::Explicit(e) => Verdict::unknown(format!(
            "{} members within horizon {}; the tail is not visible",
            e.len(),
            e.horizon()
        )),
    }
}

/// Complement finite?  For an ultimately periodic set this means every
/// residue class eventually appears.
pub fn is_cofinite(f: &IndexSet) -> Verdict {
    match f {
        IndexSet::Exact(e) => match missing_class(e) {
            None => Verdict::Holds,
            Some(c) => Verdict::fails(Witness::ResidueVector {
                residues: vec![c],
                modulus: e.modulus(),
            }),
        },
        IndexSet::Explicit(e) => Verdict::unknown(format!(
            "{} of {} positions filled within horizon; the tail is not visible",
            e.len(),
            e.horizon()
        )),
    }
}

/// Arbitrarily long runs?  An ultimately periodic set has them exactly
/// when it is cofinite, so the two checks coincide on exact sets.
/// Explicit sets report the longest observed run.
pub fn is_thick(f: &IndexSet) -> Verdict {
    match f {
        IndexSet::Exact(e) => match missing_class(e) {
            None => Verdict::Holds,
            Some(c) => Verdict::fails(Witness::ResidueVector {
                residues: vec![c],
                modulus: e.modulus(),
            }),
        },
        IndexSet::Explicit(e) => {
            let (len, start) = e.longest_run();
            Verdict::unknown(format!(
                "longest run within horizon {} has length {len} starting at {start}",
                e.horizon()
            ))
        }
    }
}

fn missing_class(e: &ExactSet) -> Option<u64> {
    (0..e.modulus()).find(|c| e.residues().binary_search(c).is_err())
}

/// Conjunction over the staircase vectors (1), (1,2), ..., up to
/// `r_max`, reported at that truncation depth.
pub fn member_infty(f: &IndexSet, r_max: u64, bounds: Option<&Bounds>) -> Result<Verdict> {
    if r_max == 0 {
        return Err(Error::Bounds("r_max must be >= 1".into()));
    }
    let vectors: Vec<Vec<u64>> = (1..=r_max).map(|r| (1..=r).collect()).collect();
    conjunction(f, &vectors, bounds, &format!("truncation at r_max={r_max}"))
}

/// Conjunction over the prefixes of `prefix`, reported at that depth.
pub fn member_seq(f: &IndexSet, prefix: &[u64], bounds: Option<&Bounds>) -> Result<Verdict> {
    validate_vector(prefix)?;
    let vectors: Vec<Vec<u64>> = (1..=prefix.len()).map(|i| prefix[..i].to_vec()).collect();
    conjunction(f, &vectors, bounds, &format!("prefix depth {}", prefix.len()))
}

fn conjunction(
    f: &IndexSet,
    vectors: &[Vec<u64>],
    bounds: Option<&Bounds>,
    label: &str,
) -> Result<Verdict> {
    let mut unknown: Option<String> = None;
    for (depth0, a) in vectors.iter().enumerate() {
        let depth = depth0 as u64 + 1;
        let v = match f {
            IndexSet::Exact(e) => member_exact(e, a)?,
            IndexSet::Explicit(e) => {
                let b = bounds
                    .ok_or_else(|| Error::Bounds("explicit sets need search bounds".into()))?;
                // Shrink k_max so every prefix stays within the horizon.
                let max_a = *a.iter().max().unwrap();
                let k_fit = (e.horizon().saturating_sub(b.n_max)) / max_a;
                let k_max = b.k_max.min(k_fit);
                if k_max == 0 {
                    unknown.get_or_insert(format!("depth {depth}: horizon exhausted"));
                    continue;
                }
                member_bounded(e, a, &Bounds { n_max: b.n_max, k_max })?
            }
        };
        match v {
            Verdict::Holds => {}
            Verdict::Fails { witness: Witness::NVector(n) } => {
                return Ok(Verdict::fails(Witness::NVectorAtDepth { depth, n }));
            }
            Verdict::Fails { witness } => return Ok(Verdict::fails(witness)),
            Verdict::Unknown { bounds: b } => {
                unknown.get_or_insert(format!("depth {depth}: {b}"));
            }
        }
    }
    Ok(match unknown {
        Some(b) => Verdict::unknown(format!("{label}: {b}")),
        None => Verdict::Holds,
    })
}

/// Searches for an m-element set B whose pairwise differences all lie in
/// `a_set`.  When the residue 0 sits in the tail, an arithmetic
/// progression is constructed directly; otherwise a depth-first search
/// over [1, bound] runs under a node budget.  A found B is rechecked.
pub fn find_difference_subset(
    a_set: &IndexSet,
    m: usize,
    bound: u64,
) -> Result<(Verdict, Option<Vec<u64>>)> {
    if m < 2 {
        return Err(Error::Bounds("difference sets need at least 2 elements".into()));
    }
    if let IndexSet::Exact(e) = a_set {
        if e.residues().binary_search(&0).is_ok() {
            let p = e.modulus();
            let c = p * e.threshold().div_ceil(p);
            let b: Vec<u64> = (1..=m as u64).map(|j| j * c).collect();
            recheck_differences(a_set, &b)?;
            return Ok((Verdict::Holds, Some(b)));
        }
    }
    let contains = |d: u64| -> bool {
        match a_set {
            IndexSet::Exact(e) => e.contains(d),
            IndexSet::Explicit(e) => e.contains_bounded(d) == Some(true),
        }
    };
    let top = match a_set {
        IndexSet::Exact(_) => bound,
        IndexSet::Explicit(e) => bound.min(e.horizon()),
    };
    let mut chosen: Vec<u64> = Vec::with_capacity(m);
    let mut budget = DIFFERENCE_SEARCH_BUDGET;
    if dfs_difference(&contains, top, m, &mut chosen, &mut budget) {
        recheck_differences(a_set, &chosen)?;
        return Ok((Verdict::Holds, Some(chosen)));
    }
    let reason = if budget == 0 {
        format!("search budget exhausted within [1, {top}]")
    } else {
        format!("no {m}-element set within [1, {top}]")
    };
    Ok((Verdict::unknown(reason), None))
}

fn dfs_difference(
    contains: &impl Fn(u64) -> bool,
    top: u64,
    m: usize,
    chosen: &mut Vec<u64>,
    budget: &mut u64,
) -> bool {
    if chosen.len() == m {
        return true;
    }
    let start = chosen.last().map_or(1, |&l| l + 1);
    for x in start..=top {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if chosen.iter().all(|&b| contains(x - b)) {
            chosen.push(x);
            if dfs_difference(contains, top, m, chosen, budget) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

fn recheck_differences(a_set: &IndexSet, b: &[u64]) -> Result<()> {
    for (i, &x) in b.iter().enumerate() {
        for &y in &b[..i] {
            let member = match a_set {
                IndexSet::Exact(e) => e.contains(x - y),
                IndexSet::Explicit(e) => e.contains_bounded(x - y) == Some(true),
            };
            if !member {
                return Err(Error::SelfCheck(format!(
                    "difference {} of {x} and {y} is not a verified member",
                    x - y
                )));
            }
        }
    }
    Ok(())
}

/// Asserts the upward-closure implication member(F) ⇒ member(G) for a
/// verified subset pair F ⊆ G; returns both verdicts.
pub fn upward_closure_check(f: &ExactSet, g: &ExactSet, a: &[u64]) -> Result<(Verdict, Verdict)> {
    if !f.subset_of(g)? {
        return Err(Error::Bounds("upward closure needs F ⊆ G".into()));
    }
    let vf = member_exact(f, a)?;
    let vg = member_exact(g, a)?;
    if vf.is_holds() && !vg.is_holds() {
        return Err(Error::SelfCheck(format!(
            "membership lost moving up: F {} but G {}",
            vf.tag(),
            vg.tag()
        )));
    }
    Ok((vf, vg))
}

/// One entry point for query dispatch (the CLI face).
pub fn evaluate(q: &FamilyQuery, set: &IndexSet, bounds: Option<&Bounds>) -> Result<Verdict> {
    match q {
        FamilyQuery::Inf => Ok(is_infinite(set)),
        FamilyQuery::Cf => Ok(is_cofinite(set)),
        FamilyQuery::Thick => Ok(is_thick(set)),
        FamilyQuery::Vector { a } => match set {
            IndexSet::Exact(e) => member_exact(e, a),
            IndexSet::Explicit(e) => {
                let b = bounds
                    .ok_or_else(|| Error::Bounds("explicit sets need search bounds".into()))?;
                member_bounded(e, a, b)
            }
        },
        FamilyQuery::Infty { r_max } => member_infty(set, *r_max, bounds),
        FamilyQuery::Seq { prefix } => member_seq(set, prefix, bounds),
    }
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
    fn member_exact_examples() {
        assert!(member_exact(&ExactSet::all(), &[1, 2, 3]).unwrap().is_holds());

        let v = member_exact(&odds(), &[1, 2]).unwrap();
        assert_eq!(v.witness(), Some(&Witness::NVector(vec![0, 0])));

        let mod3 = ExactSet::residue_class(3, &[1]).unwrap();
        assert!(member_exact(&mod3, &[1]).unwrap().is_holds());
    }

    #[test]
    fn member_exact_single_vector_is_infinitude() {
        let sets = [
            ExactSet::all(),
            ExactSet::empty(),
            odds(),
            evens(),
            ExactSet::finite(&[3, 7, 9]).unwrap(),
            ExactSet::residue_class(6, &[1, 4]).unwrap(),
            ExactSet::from_parts(vec![2], 5, vec![0, 3], 11).unwrap(),
        ];
        for f in &sets {
            let member = member_exact(f, &[1]).unwrap();
            assert_eq!(member.is_holds(), f.is_infinite(), "{f:?}");
        }
    }

    #[test]
    fn exceptional_part_never_changes_the_verdict() {
        let tails: Vec<ExactSet> = vec![
            odds(),
            evens(),
            ExactSet::residue_class(6, &[1, 4]).unwrap(),
            ExactSet::residue_class(4, &[0, 1]).unwrap(),
        ];
        let vectors: Vec<Vec<u64>> = vec![vec![1], vec![2], vec![1, 2], vec![2, 3], vec![1, 1, 2]];
        for t in &tails {
            let decorated = ExactSet::from_parts(
                vec![1, 2, 3],
                t.modulus(),
                t.residues().to_vec(),
                t.threshold().max(4),
            )
            .unwrap();
            for a in &vectors {
                let plain = member_exact(t, a).unwrap();
                let extra = member_exact(&decorated, a).unwrap();
                assert!(plain.same_tag(&extra), "tail {t:?} vector {a:?}");
            }
        }
    }

    #[test]
    fn member_bounded_examples() {
        let interval = ExplicitSet::new((1..=4096).collect(), 4096).unwrap();
        let v = member_bounded(&interval, &[1, 2, 3], &Bounds { n_max: 16, k_max: 1000 }).unwrap();
        assert!(v.is_holds());

        // A safe refutation of (0,1) needs the whole horizon-permitted
        // k-range scanned, which caps n_max at 2 here.
        let evens_x = evens().truncate(4096);
        let v = member_bounded(&evens_x, &[1, 2], &Bounds { n_max: 2, k_max: 2047 }).unwrap();
        assert_eq!(v.witness(), Some(&Witness::NVector(vec![0, 1])));

        // Same check with a small k budget cannot conclude.
        let v = member_bounded(&evens_x, &[1, 2], &Bounds { n_max: 16, k_max: 100 }).unwrap();
        assert!(v.is_unknown());
    }

    #[test]
    fn member_bounded_respects_horizon() {
        let evens_x = evens().truncate(64);
        assert!(member_bounded(&evens_x, &[1, 2], &Bounds { n_max: 16, k_max: 1000 }).is_err());
    }

    #[test]
    fn bounded_agrees_with_exact_on_truncations() {
        let sets = [odds(), evens(), ExactSet::residue_class(3, &[1]).unwrap(), ExactSet::all()];
        let vectors: Vec<Vec<u64>> = vec![vec![1], vec![1, 2], vec![2, 3]];
        for f in &sets {
            let trunc = f.truncate(4096);
            for a in &vectors {
                let exact = member_exact(f, a).unwrap();
                let max_a = *a.iter().max().unwrap();
                let bounds = Bounds { n_max: 30, k_max: (4096 - 30) / max_a };
                let bounded = member_bounded(&trunc, a, &bounds).unwrap();
                match (&exact, &bounded) {
                    (Verdict::Holds, Verdict::Fails { .. })
                    | (Verdict::Fails { .. }, Verdict::Holds) => {
                        panic!("contradiction for {f:?} at {a:?}: {} vs {}", exact.tag(), bounded.tag())
                    }
                    _ => {}
                }
            }
        }

        // When the full k-range for the zero vector is scannable, the
        // bounded lane reproduces the exact lex-least witness.
        let exact = member_exact(&odds(), &[1, 2]).unwrap();
        let bounded =
            member_bounded(&odds().truncate(4096), &[1, 2], &Bounds { n_max: 0, k_max: 2048 })
                .unwrap();
        assert_eq!(exact.witness(), bounded.witness());
    }

    #[test]
    fn classical_families() {
        let all = IndexSet::Exact(ExactSet::all());
        assert!(is_thick(&all).is_holds());
        assert!(is_cofinite(&all).is_holds());
        assert!(is_infinite(&all).is_holds());

        let ev = IndexSet::Exact(evens());
        assert!(is_thick(&ev).is_fails());
        assert!(is_cofinite(&ev).is_fails());
        assert!(is_infinite(&ev).is_holds());

        let late = IndexSet::Exact(ExactSet::from_parts(vec![], 1, vec![0], 100).unwrap());
        assert!(is_cofinite(&late).is_holds());
        assert!(is_thick(&late).is_holds());

        let fin = IndexSet::Exact(ExactSet::finite(&[1, 2, 3]).unwrap());
        assert!(is_infinite(&fin).is_fails());

        let x = IndexSet::Explicit(evens().truncate(64));
        assert!(is_thick(&x).is_unknown());
        assert!(is_cofinite(&x).is_unknown());
        assert!(is_infinite(&x).is_unknown());
    }

    #[test]
    fn infty_and_seq() {
        let all = IndexSet::Exact(ExactSet::all());
        assert!(member_infty(&all, 4, None).unwrap().is_holds());

        let odd = IndexSet::Exact(odds());
        let v = member_infty(&odd, 4, None).unwrap();
        match v.witness() {
            Some(Witness::NVectorAtDepth { depth, .. }) => assert_eq!(*depth, 2),
            w => panic!("unexpected witness {w:?}"),
        }

        let missing_low = ExactSet::from_parts(vec![], 1, vec![0], 51).unwrap();
        assert!(member_infty(&IndexSet::Exact(missing_low), 4, None).unwrap().is_holds());

        assert!(member_seq(&all, &[1, 2, 4, 8], None).unwrap().is_holds());

        let ev = IndexSet::Exact(evens());
        let v = member_seq(&ev, &[2], None).unwrap();
        match v.witness() {
            Some(Witness::NVectorAtDepth { depth, n }) => {
                assert_eq!((*depth, n.as_slice()), (1, &[1u64][..]));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn difference_subsets() {
        let ev = IndexSet::Exact(evens());
        let (v, b) = find_difference_subset(&ev, 4, 64).unwrap();
        assert!(v.is_holds());
        assert_eq!(b.unwrap(), vec![2, 4, 6, 8]);

        let odd = IndexSet::Exact(odds());
        let (v, b) = find_difference_subset(&odd, 3, 64).unwrap();
        assert!(v.is_unknown());
        assert!(b.is_none());

        let thirds = IndexSet::Exact(ExactSet::residue_class(3, &[0]).unwrap());
        let (v, b) = find_difference_subset(&thirds, 3, 64).unwrap();
        assert!(v.is_holds());
        assert_eq!(b.unwrap(), vec![3, 6, 9]);

        // A two-element difference set inside the odds does exist.
        let (v, b) = find_difference_subset(&odd, 2, 64).unwrap();
        assert!(v.is_holds());
        assert_eq!(b.unwrap(), vec![1, 2]);
    }

    #[test]
    fn upward_closure() {
        let (vf, vg) = upward_closure_check(&evens(), &ExactSet::all(), &[1]).unwrap();
        assert!(vf.is_holds() && vg.is_holds());

        let (vf, _) = upward_closure_check(&ExactSet::empty(), &odds(), &[1, 2]).unwrap();
        assert!(vf.is_fails());

        assert!(upward_closure_check(&ExactSet::all(), &evens(), &[1]).is_err());
    }

    #[test]
    fn evaluate_dispatch() {
        let q: FamilyQuery = serde_json::from_str(r#"{"kind":"vec","a":[1,2]}"#).unwrap();
        let v = evaluate(&q, &IndexSet::Exact(odds()), None).unwrap();
        assert_eq!(serde_json::to_string(&v).unwrap(), r#"{"verdict":"fails","witness":[0,0]}"#);

        let q: FamilyQuery = serde_json::from_str(r#"{"kind":"thick"}"#).unwrap();
        assert!(evaluate(&q, &IndexSet::Exact(ExactSet::all()), None).unwrap().is_holds());

        let q: FamilyQuery = serde_json::from_str(r#"{"kind":"infty","r_max":3}"#).unwrap();
        assert!(evaluate(&q, &IndexSet::Exact(ExactSet::all()), None).unwrap().is_holds());
    }
}
