//! Finite-horizon evidence for proximal, scrambled, and sensitive
//! behaviour.
//!
//! Distances use the shift metric d(x,y) = 2^(-j) with j the first
//! coordinate where the points differ, handled as exponents so deep
//! agreement never underflows.  All positive findings here are evidence
//! at a horizon, not proofs: liminf and limsup are tail quantities.

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::systems::{DynSystem, FiniteMap, Sft, SpacingShift};
use crate::verdict::{Verdict, Witness};
use serde::Serialize;
use std::collections::VecDeque;

/// Cap on recorded close/far time lists; totals are kept separately.
pub const TIME_LIST_CAP: usize = 64;
/// Cap on the probe horizon (stored word prefixes grow linearly).
pub const EVIDENCE_HORIZON_CAP: u64 = 1 << 20;

/// A candidate scrambled pair with its recomputable classification.
///
/// `x_word`/`y_word` are stored prefixes long enough to certify every
/// listed time; `rule` names the generator.  ε = 2^(-eps_exp); a time is
/// close when the observed agreement depth exceeds `eps_exp`, far when
/// the words differ at that coordinate (distance 1 > δ).
#[derive(Debug, Clone, Serialize)]
pub struct PairEvidence {
    pub rule: String,
    pub x_word: Vec<usize>,
    pub y_word: Vec<usize>,
    pub horizon: u64,
    pub delta: f64,
    pub eps_exp: u64,
    pub close_times: Vec<u64>,
    pub close_count: u64,
    pub far_times: Vec<u64>,
    pub far_count: u64,
    /// Exponent of the smallest observed distance: the liminf proxy is
    /// 2^(-this).
    pub liminf_proxy_exp: u64,
}

impl PairEvidence {
    /// Recomputes every classification from the stored pair; any
    /// mismatch with the recorded fields is an error.
    pub fn verify(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::SelfCheck("delta outside (0,1)".into()));
        }
        if self.x_word.len() != self.y_word.len() || (self.x_word.len() as u64) <= self.horizon {
            return Err(Error::SelfCheck("stored words shorter than the horizon".into()));
        }
        let (close, close_n, far, far_n, proxy) =
            extract_times(&self.x_word, &self.y_word, self.horizon, self.eps_exp);
        if close != self.close_times
            || close_n != self.close_count
            || far != self.far_times
            || far_n != self.far_count
            || proxy != self.liminf_proxy_exp
        {
            return Err(Error::SelfCheck("recomputed classification differs".into()));
        }
        if close_n == 0 || far_n == 0 {
            return Err(Error::SelfCheck("evidence needs both close and far times".into()));
        }
        Ok(())
    }
}

/// Block layout for the doubling pattern: lengths 2^i, alternating
/// disagree/agree roles.  Returns per-position agree flags.
fn doubling_roles(total: usize, start_agree: bool) -> Vec<bool> {
    let mut roles = Vec::with_capacity(total);
    let mut agree = start_agree;
    let mut len = 1u64;
    while roles.len() < total {
        for _ in 0..len {
            if roles.len() == total {
                break;
            }
            roles.push(agree);
        }
        agree = !agree;
        len = len.saturating_mul(2);
    }
    roles
}

fn extract_times(
    x: &[usize],
    y: &[usize],
    horizon: u64,
    eps_exp: u64,
) -> (Vec<u64>, u64, Vec<u64>, u64, u64) {
    let total = x.len();
    // next_diff[t]: least q >= t with x_q != y_q, or total.
    let mut next_diff = vec![total; total + 1];
    for t in (0..total).rev() {
        next_diff[t] = if x[t] != y[t] { t } else { next_diff[t + 1] };
    }
    let mut close = Vec::new();
    let mut close_n = 0u64;
    let mut far = Vec::new();
    let mut far_n = 0u64;
    let mut proxy = 0u64;
    for t in 0..=horizon.min(total as u64 - 1) {
        let depth = (next_diff[t as usize] - t as usize) as u64;
        proxy = proxy.max(depth);
        if depth == 0 {
            far_n += 1;
            if far.len() < TIME_LIST_CAP {
                far.push(t);
            }
        } else if depth > eps_exp {
            close_n += 1;
            if close.len() < TIME_LIST_CAP {
                close.push(t);
            }
        }
    }
    (close, close_n, far, far_n, proxy)
}

fn successors_mask(s: &Sft, mask: u64) -> u64 {
    let mut out = 0u64;
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out |= s.adjacency()[v];
        m &= m - 1;
    }
    out
}

/// Shortest cycle through `v` as a vertex word, walked once.
fn shortest_cycle(s: &Sft, v: usize) -> Option<Vec<usize>> {
    if s.has_edge(v, v) {
        return Some(vec![v]);
    }
    let n = s.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for w in 0..n {
        if s.has_edge(v, w) && s.is_retained(w) {
            parent[w] = v;
            queue.push_back(w);
        }
    }
    while let Some(u) = queue.pop_front() {
        for w in 0..n {
            if !s.has_edge(u, w) {
                continue;
            }
            if w == v {
                let mut path = vec![u];
                let mut c = u;
                while parent[c] != v {
                    c = parent[c];
                    path.push(c);
                }
                path.push(v);
                path.reverse();
                return Some(path);
            }
            if s.is_retained(w) && parent[w] == usize::MAX {
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Tries to realize the doubling pattern against the periodic point of
/// `x_cycle`: a frontier of admissible y-positions is advanced under
/// the per-position constraint, then one walk is chained back.
fn sft_doubling_pair(s: &Sft, x_cycle: &[usize], roles: &[bool]) -> Option<Vec<usize>> {
    let total = roles.len();
    let retained = s.retained_mask();
    let mut masks: Vec<u64> = Vec::with_capacity(total);
    let mut cur = 0u64;
    for (t, &agree) in roles.iter().enumerate() {
        let xt = x_cycle[t % x_cycle.len()];
        let allowed = if agree { 1u64 << xt } else { retained & !(1u64 << xt) };
        cur = if t == 0 { allowed & retained } else { successors_mask(s, cur) & allowed };
        if cur == 0 {
            return None;
        }
        masks.push(cur);
    }
    let mut y = vec![0usize; total];
    let mut pick = masks[total - 1].trailing_zeros() as usize;
    y[total - 1] = pick;
    for t in (0..total - 1).rev() {
        let mut m = masks[t];
        loop {
            assert!(m != 0, "frontier chain must close");
            let v = m.trailing_zeros() as usize;
            if s.has_edge(v, pick) {
                pick = v;
                break;
            }
            m &= m - 1;
        }
        y[t] = pick;
    }
    Some(y)
}

/// Greedy 1-placement against x = 0^∞: one far position per disagree
/// block where a single allowed gap can land there; blocks out of reach
/// are skipped.
fn spacing_doubling_ones(s: &SpacingShift, roles: &[bool], total: usize) -> Vec<usize> {
    let mut ones: Vec<usize> = Vec::new();
    let mut t = 0usize;
    while t < total {
        // Find the current block extent.
        let role = roles[t];
        let mut end = t;
        while end < total && roles[end] == role {
            end += 1;
        }
        if !role {
            // Disagree block [t, end).
            match ones.last() {
                None => ones.push(t),
                Some(&p) => {
                    if let Some(&g) = s
                        .gaps()
                        .iter()
                        .find(|&&g| p as u64 + g >= t as u64 && p as u64 + g < end as u64)
                    {
                        ones.push(p + g as usize);
                    }
                }
            }
        }
        t = end;
    }
    ones
}

/// Searches for a δ-scrambled pair realized by alternating agree and
/// disagree blocks of doubling lengths.  `Holds` means evidence at the
/// horizon was found and self-verified; `Unknown` means this generator
/// produced nothing admissible, which proves no absence.  Finite maps
/// are settled exactly: orbits that meet coincide forever, so liminf 0
/// forces limsup 0.
pub fn find_scrambled_pair(
    sys: &DynSystem,
    delta: f64,
    horizon: u64,
) -> Result<(Verdict, Option<PairEvidence>)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Bounds("delta must lie in (0,1)".into()));
    }
    if horizon > EVIDENCE_HORIZON_CAP {
        return Err(Error::Capacity(format!("horizon above {EVIDENCE_HORIZON_CAP}")));
    }
    if horizon < 8 {
        return Ok((
            Verdict::unknown("horizon too small to exhibit both close and far events"),
            None,
        ));
    }
    let eps_exp = horizon / 4;
    let total = (horizon + eps_exp + 1) as usize;
    match sys {
        DynSystem::Map(_) => Ok((
            Verdict::fails(Witness::Note(
                "orbits that meet coincide forever; a finite deterministic system has no \
                 scrambled pairs"
                    .into(),
            )),
            None,
        )),
        DynSystem::Shift(s) => {
            let mut cycles: Vec<Vec<usize>> = Vec::new();
            for v in 0..s.vertex_count() {
                if s.is_retained(v) && cycles.len() < 16 {
                    if let Some(c) = shortest_cycle(s, v) {
                        if !cycles.contains(&c) {
                            cycles.push(c);
                        }
                    }
                }
            }
            for start_agree in [false, true] {
                let roles = doubling_roles(total, start_agree);
                for c in &cycles {
                    if let Some(y) = sft_doubling_pair(s, c, &roles) {
                        let x: Vec<usize> = (0..total).map(|t| c[t % c.len()]).collect();
                        if let Some(ev) =
                            build_evidence("doubling-blocks", x, y, horizon, delta, eps_exp)
                        {
                            ev.verify()?;
                            return Ok((Verdict::Holds, Some(ev)));
                        }
                    }
                }
            }
            Ok((
                Verdict::unknown(format!(
                    "no admissible doubling-block pair at horizon {horizon}; absence is not a proof"
                )),
                None,
            ))
        }
        DynSystem::Spacing(sp) => {
            if total as u64 > sp.horizon() {
                return Err(Error::Bounds(format!(
                    "probe horizon {horizon} plus certification pad needs capacity {total}, \
                     system allows {}",
                    sp.horizon()
                )));
            }
            let roles = doubling_roles(total, false);
            let ones = spacing_doubling_ones(sp, &roles, total);
            let mut y = vec![0usize; total];
            for &q in &ones {
                y[q] = 1;
            }
            let x = vec![0usize; total];
            match build_evidence("doubling-blocks-sparse", x, y, horizon, delta, eps_exp) {
                Some(ev) => {
                    ev.verify()?;
                    Ok((Verdict::Holds, Some(ev)))
                }
                None => Ok((
                    Verdict::unknown(format!(
                        "allowed gaps cannot reach the doubling blocks at horizon {horizon}; \
                         absence is not a proof"
                    )),
                    None,
                )),
            }
        }
    }
}

fn build_evidence(
    rule: &str,
    x: Vec<usize>,
    y: Vec<usize>,
    horizon: u64,
    delta: f64,
    eps_exp: u64,
) -> Option<PairEvidence> {
    let (close, close_n, far, far_n, proxy) = extract_times(&x, &y, horizon, eps_exp);
    if close_n == 0 || far_n == 0 {
        return None;
    }
    Some(PairEvidence {
        rule: rule.into(),
        x_word: x,
        y_word: y,
        horizon,
        delta,
        eps_exp,
        close_times: close,
        close_count: close_n,
        far_times: far,
        far_count: far_n,
        liminf_proxy_exp: proxy,
    })
}

/// All pairs (x, y), x ≤ y, whose orbits eventually collide.  Exact: in
/// a finite system the first collision happens within tail + cycle
/// steps, so probing 2·size steps is exhaustive.
pub fn proximal_pairs(sys: &FiniteMap) -> Vec<(usize, usize)> {
    let s = sys.size();
    let probe = 2 * s as u64 + 2;
    let mut out = Vec::new();
    for x in 0..s {
        for y in x..s {
            if (0..=probe).any(|n| sys.iterate(x, n) == sys.iterate(y, n)) {
                out.push((x, y));
            }
        }
    }
    out
}

/// Exhaustive scrambled-pair scan of a finite map: a pair qualifies if
/// its orbits collide (liminf 0) yet separate again afterwards (limsup
/// positive).  Determinism makes the second condition unsatisfiable, and
/// the scan confirms it literally.
pub fn scrambled_pairs_finite(sys: &FiniteMap) -> Vec<(usize, usize)> {
    let s = sys.size();
    let probe = 2 * s as u64 + 2;
    let mut out = Vec::new();
    for x in 0..s {
        for y in x + 1..s {
            let meet = (0..=probe).find(|&n| sys.iterate(x, n) == sys.iterate(y, n));
            if let Some(t) = meet {
                let separates_after =
                    (t..=t + s as u64 + 1).any(|n| sys.iterate(x, n) != sys.iterate(y, n));
                if separates_after {
                    out.push((x, y));
                }
            }
        }
    }
    out
}

/// Two extensions of one cylinder that separate to distance 1 by the
/// stated time; `left` and `right` agree on `base` and differ at
/// position `time`.
#[derive(Debug, Clone, Serialize)]
pub struct SensitivityWitness {
    pub base: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub time: u64,
}

/// For every cylinder word of depth ≤ `depth`, looks for a reachable
/// branch vertex within the horizon and splits the walk there.  `Holds`
/// returns one witness per cylinder; a cylinder whose extensions never
/// branch refutes sensitivity at that δ.
pub fn sensitivity_witness(
    sys: &Sft,
    delta: f64,
    depth: usize,
    horizon: u64,
) -> Result<(Verdict, Vec<SensitivityWitness>)> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::Bounds("delta must lie in (0,1)".into()));
    }
    let mut witnesses = Vec::new();
    for w in sys.words_up_to(depth) {
        let end = *w.last().expect("words are non-empty");
        match nearest_branch(sys, end) {
            None => {
                return Ok((
                    Verdict::fails(Witness::Cylinder(Cylinder::word(w))),
                    Vec::new(),
                ));
            }
            Some(path) => {
                let time = (w.len() + path.len()) as u64;
                if time > horizon {
                    return Ok((
                        Verdict::unknown(format!(
                            "branch for a depth-{} cylinder sits at time {time}, past horizon \
                             {horizon}",
                            w.len()
                        )),
                        Vec::new(),
                    ));
                }
                let branch = *path.last().unwrap_or(&end);
                let mut outs =
                    (0..sys.vertex_count()).filter(|&c| sys.has_edge(branch, c));
                let c1 = outs.next().expect("branch vertex has two successors");
                let c2 = outs.next().expect("branch vertex has two successors");
                let mut base = w.clone();
                base.extend_from_slice(&path);
                let mut left = base.clone();
                left.push(c1);
                let mut right = base.clone();
                right.push(c2);
                witnesses.push(SensitivityWitness { base: w, left, right, time });
            }
        }
    }
    Ok((Verdict::Holds, witnesses))
}

/// Shortest path (as the vertex word after `from`) to a vertex with two
/// or more successors; empty path when `from` itself branches.
fn nearest_branch(sys: &Sft, from: usize) -> Option<Vec<usize>> {
    let outdeg =
        |v: usize| (0..sys.vertex_count()).filter(|&w| sys.has_edge(v, w)).count();
    if outdeg(from) >= 2 {
        return Some(Vec::new());
    }
    let n = sys.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    parent[from] = from;
    queue.push_back(from);
    while let Some(u) = queue.pop_front() {
        for w in 0..n {
            if sys.has_edge(u, w) && parent[w] == usize::MAX {
                parent[w] = u;
                if outdeg(w) >= 2 {
                    let mut path = vec![w];
                    let mut c = u;
                    while c != from {
                        path.push(c);
                        c = parent[c];
                    }
                    path.reverse();
                    return Some(path);
                }
                queue.push_back(w);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_shift_evidence() {
        let sys = DynSystem::Shift(Sft::full_shift(2));
        let (v, ev) = find_scrambled_pair(&sys, 0.5, 1024).unwrap();
        assert!(v.is_holds());
        let ev = ev.unwrap();
        ev.verify().unwrap();
        assert!(ev.liminf_proxy_exp >= 8);
        assert_ne!(ev.x_word, ev.y_word);
        // The y walk respects the edge relation.
        let s = Sft::full_shift(2);
        for t in 0..ev.y_word.len() - 1 {
            assert!(s.has_edge(ev.y_word[t], ev.y_word[t + 1]));
        }
    }

    #[test]
    fn proxy_tightens_as_horizon_doubles() {
        let sys = DynSystem::Shift(Sft::full_shift(2));
        let (_, small) = find_scrambled_pair(&sys, 0.5, 1 << 10).unwrap();
        let (_, large) = find_scrambled_pair(&sys, 0.5, 1 << 18).unwrap();
        let small = small.unwrap().liminf_proxy_exp;
        let large = large.unwrap().liminf_proxy_exp;
        assert!(small >= 8);
        assert!(large >= 16);
        assert!(large > small);
    }

    #[test]
    fn finite_maps_never_scramble() {
        let m = FiniteMap::new(vec![1, 2, 0]).unwrap();
        let (v, ev) = find_scrambled_pair(&DynSystem::Map(m), 0.5, 256).unwrap();
        assert!(v.is_fails());
        assert!(ev.is_none());

        // Exhaustive over every map on up to 3 states.
        for size in 1..=3usize {
            let mut table = vec![0usize; size];
            let mut done = false;
            while !done {
                let m = FiniteMap::new(table.clone()).unwrap();
                assert!(scrambled_pairs_finite(&m).is_empty(), "{table:?}");
                let mut i = 0;
                loop {
                    if i == size {
                        done = true;
                        break;
                    }
                    table[i] += 1;
                    if table[i] < size {
                        break;
                    }
                    table[i] = 0;
                    i += 1;
                }
            }
        }
    }

    #[test]
    fn proximal_examples() {
        let merge = FiniteMap::new(vec![1, 1, 1]).unwrap();
        assert_eq!(proximal_pairs(&merge).len(), 6);

        let cycle = FiniteMap::cycle(3);
        let diag: Vec<_> = (0..3).map(|i| (i, i)).collect();
        assert_eq!(proximal_pairs(&cycle), diag);

        // A mixed map: brute-force definition to n = 40 agrees.
        let m = FiniteMap::new(vec![3, 0, 1, 4, 3, 2]).unwrap();
        let got = proximal_pairs(&m);
        for x in 0..6 {
            for y in x..6 {
                let brute = (0..=40u64).any(|n| m.iterate(x, n) == m.iterate(y, n));
                assert_eq!(got.contains(&(x, y)), brute, "({x},{y})");
            }
        }
    }

    #[test]
    fn golden_mean_generator_is_honest() {
        let sys = DynSystem::Shift(Sft::golden_mean());
        let (v, ev) = find_scrambled_pair(&sys, 0.5, 256).unwrap();
        match (&v, &ev) {
            (Verdict::Holds, Some(e)) => e.verify().unwrap(),
            (Verdict::Unknown { .. }, None) => {}
            other => panic!("unexpected outcome {other:?}"),
        }
    }

    #[test]
    fn spacing_evidence() {
        let full = DynSystem::Spacing(SpacingShift::full_like(2048));
        let (v, ev) = find_scrambled_pair(&full, 0.5, 1024).unwrap();
        assert!(v.is_holds());
        ev.unwrap().verify().unwrap();

        let evens = DynSystem::Spacing(SpacingShift::new(vec![2, 4], 2048).unwrap());
        let (v, ev) = find_scrambled_pair(&evens, 0.5, 1024).unwrap();
        assert!(v.is_holds());
        let ev = ev.unwrap();
        ev.verify().unwrap();
        // Placed 1s respect the allowed gaps.
        let ones: Vec<usize> =
            (0..ev.y_word.len()).filter(|&t| ev.y_word[t] == 1).collect();
        for pair in ones.windows(2) {
            assert!((pair[1] - pair[0]) % 2 == 0);
        }
    }

    #[test]
    fn sensitivity_examples() {
        let (v, ws) = sensitivity_witness(&Sft::full_shift(2), 0.5, 2, 16).unwrap();
        assert!(v.is_holds());
        assert_eq!(ws.len(), Sft::full_shift(2).words_up_to(2).len());

        let (v, ws) = sensitivity_witness(&Sft::golden_mean(), 0.25, 3, 32).unwrap();
        assert!(v.is_holds());
        for w in &ws {
            assert_ne!(w.left[w.time as usize], w.right[w.time as usize]);
            assert_eq!(&w.left[..w.base.len()], &w.base[..]);
            let s = Sft::golden_mean();
            for t in 0..w.left.len() - 1 {
                assert!(s.has_edge(w.left[t], w.left[t + 1]));
                assert!(s.has_edge(w.right[t], w.right[t + 1]));
            }
        }

        let fixed = Sft::new(1, &[(0, 0)]).unwrap();
        let (v, ws) = sensitivity_witness(&fixed, 0.5, 2, 16).unwrap();
        assert!(v.is_fails());
        assert!(ws.is_empty());
    }
}
