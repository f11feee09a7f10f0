//! Hitting-time sets N(U,V) = {n >= 1 : f^n(U) meets V} and the
//! product-transitivity checks built from them.
//!
//! Finite maps and SFTs get exact ultimately periodic answers; spacing
//! shifts get explicit sets valid to a horizon.  Product boxes reduce to
//! the dilation form {k : a_i k ∈ N(U_i, V_i) for all i}.

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::index_set::{ExactSet, ExplicitSet, IndexSet};
use crate::systems::{
    validate_vector, DynSystem, FiniteMap, OrbitProfile, Sft, SpacingFrontier, SpacingShift,
};
use crate::verdict::{Verdict, Witness};
use std::collections::{HashMap, HashSet};

/// Tuple-pair enumerations refuse to exceed this many pairs.
pub const TUPLE_PAIR_CAP: u128 = 1 << 20;

fn point_at(prof: &OrbitProfile, n: u64) -> usize {
    let tail = prof.tail_len as u64;
    let idx = if n < prof.path.len() as u64 {
        n
    } else {
        tail + (n - tail) % prof.cycle_len as u64
    };
    prof.path[idx as usize]
}

/// Exact hitting set for point-set cylinders of a finite map: the union
/// over u ∈ U of { n : f^n(u) ∈ V }, each ultimately periodic with the
/// orbit's pre-period and cycle length.
pub fn hitting_finite(sys: &FiniteMap, u: &Cylinder, v: &Cylinder) -> Result<ExactSet> {
    let us = sys.validate_cylinder(u)?;
    let vs = sys.validate_cylinder(v)?;
    let mut acc = ExactSet::empty();
    for &x in &us {
        let prof = sys.orbit_profile(x);
        let n0 = (prof.tail_len as u64).max(1);
        let p = prof.cycle_len as u64;
        let single =
            ExactSet::from_periodic_fn(n0, p, |n| vs.binary_search(&point_at(&prof, n)).is_ok())?;
        acc = acc.union(&single)?;
    }
    Ok(acc)
}

/// Exact hitting set N([u],[v]) for word cylinders of an SFT.
///
/// Small shifts `1 <= n < |u|` need the two words to agree on their
/// overlap and the merged word to stay admissible; shifts `n >= |u|`
/// need a walk from the last letter of `u` to the first letter of `v`
/// of exactly `n - |u| + 1` edges.
pub fn hitting_sft(sys: &Sft, u: &Cylinder, v: &Cylinder) -> Result<ExactSet> {
    let uw = sys.validate_cylinder(u)?;
    let vw = sys.validate_cylinder(v)?;
    hitting_sft_words(sys, &uw, &vw)
}

pub fn hitting_sft_words(sys: &Sft, uw: &[usize], vw: &[usize]) -> Result<ExactSet> {
    sys.validate_word(uw)?;
    sys.validate_word(vw)?;
    let mut small = Vec::new();
    for n in 1..uw.len() {
        if merge_admissible(sys, uw, vw, n) {
            small.push(n as u64);
        }
    }
    let x = *uw.last().unwrap();
    let y = vw[0];
    let walks = if sys.is_irreducible() {
        sys.walk_set_irreducible(x, y)?
    } else {
        sys.walk_set_general(x, y)?
    };
    let far = walks.shift_up(uw.len() as u64 - 1)?;
    ExactSet::finite(&small)?.union(&far)
}

/// Whether placing `v` at offset `n < |u|` over `u` yields an admissible
/// word: consistent on the overlap, edges present past the end of `u`.
fn merge_admissible(sys: &Sft, uw: &[usize], vw: &[usize], n: usize) -> bool {
    let lu = uw.len();
    let len = lu.max(n + vw.len());
    for (j, &vj) in vw.iter().enumerate() {
        let i = n + j;
        if i < lu && uw[i] != vj {
            return false;
        }
    }
    for i in lu..len {
        let prev = if i - 1 < lu { uw[i - 1] } else { vw[i - 1 - n] };
        if !sys.has_edge(prev, vw[i - n]) {
            return false;
        }
    }
    true
}

/// Brute-force lane: decides each `n ∈ [1, h]` by a fresh frontier sweep
/// over the merged constraint word.  Independent of the walk-set algebra.
pub fn hitting_sft_brute(sys: &Sft, uw: &[usize], vw: &[usize], h: u64) -> Result<ExplicitSet> {
    sys.validate_word(uw)?;
    sys.validate_word(vw)?;
    if h == 0 {
        return Err(Error::Bounds("horizon must be >= 1".into()));
    }
    let lu = uw.len();
    let lv = vw.len();
    let mut elements = Vec::new();
    for n in 1..=h as usize {
        let len = lu.max(n + lv);
        let constraint = |i: usize| -> u64 {
            let mut c = sys.retained_mask();
            if i < lu {
                c &= 1 << uw[i];
            }
            if i >= n && i < n + lv {
                c &= 1 << vw[i - n];
            }
            c
        };
        let mut mask = constraint(0);
        for i in 1..len {
            let mut next = 0u64;
            let mut m = mask;
            while m != 0 {
                let x = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= sys.adjacency()[x];
            }
            mask = next & constraint(i);
            if mask == 0 {
                break;
            }
        }
        if mask != 0 {
            elements.push(n as u64);
        }
    }
    ExplicitSet::new(elements, h)
}

/// Horizon-bounded hitting set for a spacing shift, by DP over the
/// distance-to-last-1 automaton.
pub fn hitting_spacing(
    sys: &SpacingShift,
    u: &Cylinder,
    v: &Cylinder,
    h: u64,
) -> Result<ExplicitSet> {
    let uw = sys.validate_cylinder(u)?;
    let vw = sys.validate_cylinder(v)?;
    hitting_spacing_words(sys, &uw, &vw, h)
}

pub fn hitting_spacing_words(
    sys: &SpacingShift,
    uw: &[u8],
    vw: &[u8],
    h: u64,
) -> Result<ExplicitSet> {
    sys.validate_word(uw)?;
    sys.validate_word(vw)?;
    if h == 0 {
        return Err(Error::Bounds("horizon must be >= 1".into()));
    }
    if h + vw.len() as u64 > sys.horizon() {
        return Err(Error::Bounds(format!(
            "shift horizon {h} plus |v| = {} exceeds system capacity {}",
            vw.len(),
            sys.horizon()
        )));
    }
    let lu = uw.len() as u64;
    let mut elements = Vec::new();
    for n in 1..uw.len().min(h as usize + 1) {
        if spacing_merge_admissible(sys, uw, vw, n) {
            elements.push(n as u64);
        }
    }
    let mut frontier = SpacingFrontier::start(sys, sys.entry_state(uw));
    let mut n = lu;
    while n <= h {
        if frontier.compatible_with(sys, vw) {
            elements.push(n);
        }
        frontier.step(sys);
        n += 1;
    }
    ExplicitSet::new(elements, h)
}

fn spacing_merge_admissible(sys: &SpacingShift, uw: &[u8], vw: &[u8], n: usize) -> bool {
    let lu = uw.len();
    let len = lu.max(n + vw.len());
    let mut w = Vec::with_capacity(len);
    for i in 0..len {
        let from_u = (i < lu).then(|| uw[i]);
        let from_v = (i >= n && i < n + vw.len()).then(|| vw[i - n]);
        match (from_u, from_v) {
            (Some(a), Some(b)) if a != b => return false,
            (Some(a), _) => w.push(a),
            (_, Some(b)) => w.push(b),
            (None, None) => unreachable!("merged word has no free positions"),
        }
    }
    sys.word_admissible(&w)
}

/// `{ k >= 1 : a_i · k ∈ S_i for every i }`.  All-exact inputs give an
/// exact answer; any explicit input truncates the result to the largest
/// k every coordinate can still see.
pub fn intersect_dilations(sets: &[IndexSet], a: &[u64]) -> Result<IndexSet> {
    validate_vector(a)?;
    if sets.len() != a.len() {
        return Err(Error::Bounds(format!(
            "{} sets against a vector of length {}",
            sets.len(),
            a.len()
        )));
    }
    if sets.iter().all(|s| matches!(s, IndexSet::Exact(_))) {
        let mut acc = ExactSet::all();
        for (s, &ai) in sets.iter().zip(a) {
            let e = s.as_exact().unwrap();
            acc = acc.intersect(&e.dilation_preimage(ai)?)?;
        }
        return Ok(IndexSet::Exact(acc));
    }
    let mut cap = u64::MAX;
    for (s, &ai) in sets.iter().zip(a) {
        if let IndexSet::Explicit(e) = s {
            cap = cap.min(e.horizon() / ai);
        }
    }
    if cap == 0 {
        return Err(Error::Bounds("explicit horizon below the smallest dilation step".into()));
    }
    let mut elements = Vec::new();
    'next_k: for k in 1..=cap {
        for (s, &ai) in sets.iter().zip(a) {
            let hit = match s {
                IndexSet::Exact(e) => e.contains(ai * k),
                IndexSet::Explicit(e) => {
                    e.contains_bounded(ai * k).expect("k capped inside horizon")
                }
            };
            if !hit {
                continue 'next_k;
            }
        }
        elements.push(k);
    }
    Ok(IndexSet::Explicit(ExplicitSet::new(elements, cap)?))
}

pub(crate) fn intersect_dilations_exact(sets: &[&ExactSet], a: &[u64]) -> Result<ExactSet> {
    let mut acc = ExactSet::all();
    for (s, &ai) in sets.iter().zip(a) {
        acc = acc.intersect(&s.dilation_preimage(ai)?)?;
    }
    Ok(acc)
}

/// Transitivity of `f^{a_1} x ... x f^{a_r}`.
///
/// Finite maps and SFTs are decided exactly; `depth` only shapes the
/// spacing-shift lane, whose three verdicts are claims at the system's
/// horizon (a `Fails` witness records the cylinder tuple left unwitnessed
/// within the horizon, a `Holds` covers the depth-bounded cylinder pairs).
pub fn a_transitive(sys: &DynSystem, a: &[u64], depth: usize) -> Result<Verdict> {
    validate_vector(a)?;
    match sys {
        DynSystem::Map(m) => a_transitive_map(m, a),
        DynSystem::Shift(s) => a_transitive_sft(s, a),
        DynSystem::Spacing(s) => a_transitive_spacing(s, a, depth),
    }
}

fn a_transitive_map(m: &FiniteMap, a: &[u64]) -> Result<Verdict> {
    if m.size() == 1 {
        return Ok(Verdict::Holds);
    }
    if !m.is_single_cycle() {
        let (x, y) = m.unreachable_pair().expect("non-transitive map has an unreachable pair");
        return Ok(Verdict::fails(Witness::CylinderPair {
            u: Cylinder::points(vec![x]),
            v: Cylinder::points(vec![y]),
        }));
    }
    residue_criterion(m.size() as u64, a)
}

fn a_transitive_sft(s: &Sft, a: &[u64]) -> Result<Verdict> {
    if !s.is_irreducible() {
        let (x, y) =
            s.unreachable_vertex_pair().expect("reducible graph has an unreachable vertex pair");
        return Ok(Verdict::fails(Witness::CylinderPair {
            u: Cylinder::word(vec![x]),
            v: Cylinder::word(vec![y]),
        }));
    }
    residue_criterion(s.period().expect("irreducible"), a)
}

/// Core arithmetic shared by the exact lanes: all of (Z/p)^r must be of
/// the form (a_1 k, ..., a_r k) mod p for some k.
pub fn residue_criterion(p: u64, a: &[u64]) -> Result<Verdict> {
    validate_vector(a)?;
    if p == 1 {
        return Ok(Verdict::Holds);
    }
    let r = a.len();
    let mut achieved: HashSet<Vec<u64>> = HashSet::new();
    for k in 0..p {
        achieved.insert(a.iter().map(|&ai| ai % p * k % p).collect());
    }
    let full = (p as u128).checked_pow(r as u32);
    if full == Some(achieved.len() as u128) {
        return Ok(Verdict::Holds);
    }
    // Lexicographic scan stops within achieved.len() + 1 steps.
    let mut c = vec![0u64; r];
    loop {
        if !achieved.contains(&c) {
            return Ok(Verdict::fails(Witness::ResidueVector { residues: c, modulus: p }));
        }
        let mut i = r;
        loop {
            assert!(i > 0, "missing vector exists when the count is short");
            i -= 1;
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
        }
    }
}

fn a_transitive_spacing(sys: &SpacingShift, a: &[u64], depth: usize) -> Result<Verdict> {
    if depth == 0 {
        return Err(Error::Bounds("depth must be >= 1".into()));
    }
    let words = sys.words_up_to(depth as u64);
    let r = a.len();
    (words.len() as u128)
        .checked_pow(2 * r as u32)
        .filter(|&c| c <= TUPLE_PAIR_CAP)
        .ok_or_else(|| Error::Capacity("too many cylinder tuples at this depth".into()))?;
    let max_a = *a.iter().max().unwrap();
    let max_len = words.iter().map(|w| w.len() as u64).max().unwrap();
    if sys.horizon() <= max_len || (sys.horizon() - max_len) / max_a == 0 {
        return Ok(Verdict::unknown(format!(
            "horizon {} too small for depth {} at steps {:?}",
            sys.horizon(),
            depth,
            a
        )));
    }

    let mut cache: HashMap<(usize, usize), ExplicitSet> = HashMap::new();
    let word_count = words.len();
    let mut us_idx = vec![0usize; r];
    loop {
        let mut vs_idx = vec![0usize; r];
        loop {
            let mut k_cap = u64::MAX;
            for i in 0..r {
                let h_i = sys.horizon() - words[vs_idx[i]].len() as u64;
                k_cap = k_cap.min(h_i / a[i]);
            }
            let mut found = false;
            'scan: for k in 1..=k_cap {
                for i in 0..r {
                    let key = (us_idx[i], vs_idx[i]);
                    if !cache.contains_key(&key) {
                        let h_i = sys.horizon() - words[vs_idx[i]].len() as u64;
                        let set =
                            hitting_spacing_words(sys, &words[us_idx[i]], &words[vs_idx[i]], h_i)?;
                        cache.insert(key, set);
                    }
                    let hit = cache[&key].contains_bounded(a[i] * k).expect("k capped");
                    if !hit {
                        continue 'scan;
                    }
                }
                found = true;
                break;
            }
            if !found {
                return Ok(Verdict::fails(Witness::CylinderTuple {
                    us: us_idx.iter().map(|&i| Cylinder::bits(words[i].clone())).collect(),
                    vs: vs_idx.iter().map(|&i| Cylinder::bits(words[i].clone())).collect(),
                }));
            }
            if !odometer(&mut vs_idx, word_count) {
                break;
            }
        }
        if !odometer(&mut us_idx, word_count) {
            break;
        }
    }
    Ok(Verdict::Holds)
}

fn odometer(digits: &mut [usize], base: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// Exact decision plus an independent tuple-box cross-check.
///
/// The cross-check recomputes transitivity from hitting sets: finite
/// maps get the materialized product's single-cycle test, SFTs get
/// emptiness tests of `intersect_dilations` over word tuples up to
/// `depth` (at most `budget` tuple pairs, in enumeration order).  A
/// conclusive disagreement is reported as a self-check error.
pub fn a_transitive_checked(
    sys: &DynSystem,
    a: &[u64],
    depth: usize,
    budget: u64,
) -> Result<Verdict> {
    let fast = a_transitive(sys, a, depth)?;
    match sys {
        DynSystem::Map(m) => {
            let prod = crate::systems::ProductSystem::new(DynSystem::Map(m.clone()), a.to_vec())?;
            if let Ok(product) = prod.materialize() {
                let brute = product.is_single_cycle();
                if brute != fast.is_holds() {
                    return Err(Error::SelfCheck(format!(
                        "product simulation says transitive={brute}, structural lane says {}",
                        fast.tag()
                    )));
                }
            }
        }
        DynSystem::Shift(s) => {
            let (complete, refuted) = sft_box_scan(s, a, depth, budget)?;
            match (&fast, refuted) {
                (Verdict::Holds, Some((us, vs))) => {
                    return Err(Error::SelfCheck(format!(
                        "box ({us:?}) -> ({vs:?}) has empty dilation intersection but the residue lane holds"
                    )));
                }
                (Verdict::Fails { .. }, None) if complete => {
                    return Err(Error::SelfCheck(
                        "residue lane fails but every box tuple intersects".into(),
                    ));
                }
                _ => {}
            }
        }
        DynSystem::Spacing(_) => {}
    }
    Ok(fast)
}

/// Scans word-tuple boxes in enumeration order; returns whether the scan
/// covered every tuple pair and the first refuting pair found, if any.
fn sft_box_scan(
    s: &Sft,
    a: &[u64],
    depth: usize,
    budget: u64,
) -> Result<(bool, Option<(Vec<Vec<usize>>, Vec<Vec<usize>>)>)> {
    let words = s.words_up_to(depth);
    let r = a.len();
    let word_count = words.len();
    let total = (word_count as u128).checked_pow(2 * r as u32);
    let complete = total.is_some_and(|t| t <= budget as u128);
    let mut sets: HashMap<(usize, usize), ExactSet> = HashMap::new();
    let mut scanned: u64 = 0;
    let mut us_idx = vec![0usize; r];
    'outer: loop {
        let mut vs_idx = vec![0usize; r];
        loop {
            if scanned >= budget {
                break 'outer;
            }
            scanned += 1;
            let mut slots: Vec<&ExactSet> = Vec::with_capacity(r);
            for i in 0..r {
                let key = (us_idx[i], vs_idx[i]);
                if !sets.contains_key(&key) {
                    let set = hitting_sft_words(s, &words[us_idx[i]], &words[vs_idx[i]])?;
                    sets.insert(key, set);
                }
            }
            for i in 0..r {
                slots.push(&sets[&(us_idx[i], vs_idx[i])]);
            }
            if intersect_dilations_exact(&slots, a)?.is_empty() {
                let us = us_idx.iter().map(|&i| words[i].clone()).collect();
                let vs = vs_idx.iter().map(|&i| words[i].clone()).collect();
                return Ok((complete, Some((us, vs))));
            }
            if !odometer(&mut vs_idx, word_count) {
                break;
            }
        }
        if !odometer(&mut us_idx, word_count) {
            break;
        }
    }
    Ok((complete, None))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(xs: &[usize]) -> Cylinder {
        Cylinder::points(xs.to_vec())
    }

    fn wrd(xs: &[usize]) -> Cylinder {
        Cylinder::word(xs.to_vec())
    }

    #[test]
    fn finite_hitting_examples() {
        let c3 = FiniteMap::cycle(3);
        let n = hitting_finite(&c3, &pts(&[0]), &pts(&[1])).unwrap();
        assert_eq!(n, ExactSet::residue_class(3, &[1]).unwrap());

        let id2 = FiniteMap::new(vec![0, 1]).unwrap();
        let n = hitting_finite(&id2, &pts(&[0]), &pts(&[1])).unwrap();
        assert!(n.is_empty());
        let n = hitting_finite(&id2, &pts(&[0]), &pts(&[0])).unwrap();
        assert_eq!(n, ExactSet::all());
    }

    #[test]
    fn finite_hitting_matches_simulation() {
        // Tail into a 2-cycle plus a side branch.
        let f = FiniteMap::new(vec![1, 2, 3, 2, 0, 3]).unwrap();
        for x in 0..f.size() {
            for y in 0..f.size() {
                let n = hitting_finite(&f, &pts(&[x]), &pts(&[y])).unwrap();
                for t in 1..=50u64 {
                    assert_eq!(n.contains(t), f.iterate(x, t) == y, "x={x} y={y} t={t}");
                }
                assert!(n.modulus() <= 2);
            }
        }
        // Union over a two-point U.
        let n = hitting_finite(&f, &pts(&[0, 4]), &pts(&[3])).unwrap();
        for t in 1..=50u64 {
            assert_eq!(n.contains(t), f.iterate(0, t) == 3 || f.iterate(4, t) == 3);
        }
    }

    #[test]
    fn sft_hitting_examples() {
        let two_cycle = Sft::new(2, &[(0, 1), (1, 0)]).unwrap();
        let n = hitting_sft(&two_cycle, &wrd(&[0]), &wrd(&[0])).unwrap();
        assert_eq!(n, ExactSet::from_parts(vec![], 2, vec![0], 2).unwrap());

        let gm = Sft::golden_mean();
        let n = hitting_sft(&gm, &wrd(&[1]), &wrd(&[1])).unwrap();
        assert_eq!(n, ExactSet::from_parts(vec![], 1, vec![0], 2).unwrap());
        assert!(!n.contains(1) && n.contains(2) && n.contains(3));

        let full = Sft::full_shift(2);
        let n = hitting_sft(&full, &wrd(&[0]), &wrd(&[1])).unwrap();
        assert_eq!(n, ExactSet::all());
    }

    #[test]
    fn sft_hitting_overlap_part() {
        let gm = Sft::golden_mean();
        // u = 01, v = 10: placing v at n=1 merges to 010.
        let n = hitting_sft(&gm, &wrd(&[0, 1]), &wrd(&[1, 0])).unwrap();
        assert!(n.contains(1));
        // u = 01, v = 1x cannot sit at n >= 2 immediately after ...1.
        assert!(!n.contains(2));
        assert!(n.contains(3));

        // Overlap mismatch: u = 00, v = 1 at n = 1.
        let n = hitting_sft(&gm, &wrd(&[0, 0]), &wrd(&[1])).unwrap();
        assert!(!n.contains(1));
        assert!(n.contains(2));
    }

    #[test]
    fn sft_exact_agrees_with_brute() {
        let systems = [
            Sft::golden_mean(),
            Sft::full_shift(2),
            Sft::new(2, &[(0, 1), (1, 0)]).unwrap(),
            Sft::new(3, &[(0, 1), (1, 2), (2, 0), (0, 0)]).unwrap(),
            Sft::new(4, &[(0, 1), (1, 2), (2, 3), (3, 0), (1, 0)]).unwrap(),
            // Reducible: a 1-cycle feeding a 2-cycle.
            Sft::new(3, &[(0, 0), (0, 1), (1, 2), (2, 1)]).unwrap(),
        ];
        for sys in &systems {
            for u in sys.words_up_to(2) {
                for v in sys.words_up_to(2) {
                    let exact = hitting_sft_words(sys, &u, &v).unwrap();
                    let brute = hitting_sft_brute(sys, &u, &v, 64).unwrap();
                    assert_eq!(exact.truncate(64), brute, "u={u:?} v={v:?}");
                }
            }
        }
    }

    #[test]
    fn spacing_hitting_examples() {
        let one = Cylinder::bits(vec![1]);
        let full = SpacingShift::full_like(64);
        let n = hitting_spacing(&full, &one, &one, 10).unwrap();
        assert_eq!(n.elements(), (1..=10).collect::<Vec<u64>>());

        let evens = SpacingShift::new((1..=32).map(|g| 2 * g).collect(), 64).unwrap();
        let n = hitting_spacing(&evens, &one, &one, 10).unwrap();
        assert_eq!(n.elements(), vec![2, 4, 6, 8, 10]);

        let threes = SpacingShift::new(vec![3], 64).unwrap();
        let n = hitting_spacing(&threes, &one, &one, 10).unwrap();
        assert_eq!(n.elements(), vec![3, 6, 9]);
    }

    #[test]
    fn spacing_hitting_overlap_and_capacity() {
        let evens = SpacingShift::new(vec![2, 4], 16).unwrap();
        // u = 101, v = 1: v can sit on the 1 at offset 2.
        let u = Cylinder::bits(vec![1, 0, 1]);
        let v = Cylinder::bits(vec![1]);
        let n = hitting_spacing(&evens, &u, &v, 8).unwrap();
        assert!(n.contains_bounded(2) == Some(true));
        assert!(n.contains_bounded(1) == Some(false));
        assert!(n.contains_bounded(4) == Some(true));
        assert!(hitting_spacing(&evens, &u, &v, 16).is_err());
    }

    #[test]
    fn dilation_intersections() {
        let s1 = IndexSet::Exact(ExactSet::residue_class(3, &[1]).unwrap());
        let s2 = IndexSet::Exact(ExactSet::all());
        let out = intersect_dilations(&[s1, s2], &[1, 2]).unwrap();
        assert_eq!(out.as_exact().unwrap(), &ExactSet::residue_class(3, &[1]).unwrap());

        let odd = IndexSet::Exact(ExactSet::residue_class(2, &[1]).unwrap());
        let out = intersect_dilations(&[odd.clone(), odd.clone()], &[1, 2]).unwrap();
        assert!(out.as_exact().unwrap().is_empty());

        let gm = IndexSet::Exact(ExactSet::from_parts(vec![], 1, vec![0], 2).unwrap());
        let out = intersect_dilations(&[gm.clone(), gm.clone()], &[2, 3]).unwrap();
        assert_eq!(out.as_exact().unwrap(), &ExactSet::all());
    }

    #[test]
    fn dilation_intersections_explicit_lane() {
        let exact = IndexSet::Exact(ExactSet::residue_class(2, &[0]).unwrap());
        let explicit =
            IndexSet::Explicit(ExplicitSet::new(vec![2, 4, 6, 8, 10, 12], 12).unwrap());
        let out = intersect_dilations(&[exact, explicit], &[1, 3]).unwrap();
        let e = out.as_explicit().unwrap();
        assert_eq!(e.horizon(), 4);
        assert_eq!(e.elements(), vec![2, 4]);
    }

    #[test]
    fn a_transitive_examples() {
        let c3 = DynSystem::Map(FiniteMap::cycle(3));
        let v = a_transitive(&c3, &[1, 2], 1).unwrap();
        assert_eq!(
            v.witness(),
            Some(&Witness::ResidueVector { residues: vec![0, 1], modulus: 3 })
        );

        let full = DynSystem::Shift(Sft::full_shift(2));
        assert!(a_transitive(&full, &[1, 2, 3], 1).unwrap().is_holds());

        let two_cycle = DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap());
        assert!(a_transitive(&two_cycle, &[1, 2], 1).unwrap().is_fails());
        assert!(a_transitive(&two_cycle, &[1], 1).unwrap().is_holds());
        assert!(a_transitive(&two_cycle, &[2], 1).unwrap().is_fails());

        let gm = DynSystem::Shift(Sft::golden_mean());
        assert!(a_transitive(&gm, &[2, 3, 4], 1).unwrap().is_holds());

        let c3m = DynSystem::Map(FiniteMap::cycle(3));
        assert!(a_transitive(&c3m, &[2], 1).unwrap().is_holds());
        assert!(a_transitive(&c3m, &[3], 1).unwrap().is_fails());
    }

    #[test]
    fn a_transitive_reducible_and_nontransitive() {
        let split = DynSystem::Map(FiniteMap::new(vec![0, 2, 1]).unwrap());
        let v = a_transitive(&split, &[1], 1).unwrap();
        assert!(matches!(v.witness(), Some(Witness::CylinderPair { .. })));

        let feed = DynSystem::Shift(Sft::new(3, &[(0, 0), (0, 1), (1, 2), (2, 1)]).unwrap());
        let v = a_transitive(&feed, &[1, 1], 1).unwrap();
        match v.witness() {
            Some(Witness::CylinderPair { u, v }) => {
                assert_eq!((u.display().as_str(), v.display().as_str()), ("[1]", "[0]"));
            }
            w => panic!("unexpected witness {w:?}"),
        }
    }

    #[test]
    fn a_transitive_spacing_lane() {
        let evens = SpacingShift::new((1..=16).map(|g| 2 * g).collect(), 128).unwrap();
        let sys = DynSystem::Spacing(evens);
        // (1,1) needs a common k hitting both coordinates; U=[1],V=[1]
        // only admits even k, and pairs across parity cannot both hit.
        let v = a_transitive(&sys, &[1, 1], 2).unwrap();
        assert!(v.is_fails(), "expected at-horizon refutation, got {}", v.tag());

        let full = DynSystem::Spacing(SpacingShift::full_like(128));
        assert!(a_transitive(&full, &[1, 2], 2).unwrap().is_holds());
    }

    #[test]
    fn checked_lane_agreement() {
        let cases: Vec<(DynSystem, Vec<u64>)> = vec![
            (DynSystem::Map(FiniteMap::cycle(3)), vec![1, 2]),
            (DynSystem::Map(FiniteMap::cycle(5)), vec![2]),
            (DynSystem::Map(FiniteMap::new(vec![1, 0, 2]).unwrap()), vec![1]),
            (DynSystem::Shift(Sft::golden_mean()), vec![1, 2]),
            (DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap()), vec![1, 2]),
            (DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap()), vec![1]),
        ];
        for (sys, a) in &cases {
            a_transitive_checked(sys, a, 2, 10_000).unwrap();
        }
    }
}
