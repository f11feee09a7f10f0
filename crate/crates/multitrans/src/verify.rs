//! Cross-checking harness: each check re-derives two sides of one
//! equivalence by distinct computations and reports their agreement.
//! Exact-lane disagreement always means an implementation defect, never
//! new mathematics, so the corpus drivers treat it as fatal.

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::families::{member_bounded, member_exact, refuted_class, Bounds};
use crate::hitting::{
    a_transitive, hitting_finite, hitting_sft_words, hitting_spacing_words, residue_criterion,
};
use crate::index_set::ExactSet;
use crate::systems::{tower, DynSystem, ESystemWitness, FiniteMap, Sft};
use crate::verdict::Verdict;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::HashMap;

/// One compared case.  `fatal` marks a disagreement with no Unknown on
/// either side.
#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub system: String,
    pub a: String,
    #[serde(rename = "side_L")]
    pub side_l: String,
    #[serde(rename = "side_R")]
    pub side_r: String,
    pub agree: bool,
    pub fatal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AgreementReport {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub truncation: Option<String>,
    pub skipped: bool,
    pub cases: Vec<CaseReport>,
    pub agree_count: u64,
    pub disagree_count: u64,
    pub fatal_count: u64,
}

impl AgreementReport {
    fn collect(label: &str, truncation: Option<String>, cases: Vec<CaseReport>) -> AgreementReport {
        let agree_count = cases.iter().filter(|c| c.agree).count() as u64;
        let disagree_count = cases.len() as u64 - agree_count;
        let fatal_count = cases.iter().filter(|c| c.fatal).count() as u64;
        AgreementReport {
            label: label.into(),
            truncation,
            skipped: false,
            cases,
            agree_count,
            disagree_count,
            fatal_count,
        }
    }

    fn skipped(label: &str, reason: String) -> AgreementReport {
        AgreementReport {
            label: label.into(),
            truncation: Some(reason),
            skipped: true,
            cases: Vec::new(),
            agree_count: 0,
            disagree_count: 0,
            fatal_count: 0,
        }
    }

    pub fn all_agree(&self) -> bool {
        !self.skipped && self.disagree_count == 0
    }

    /// One row per case; descriptors and vectors are comma-free by
    /// construction, free-text fields are sanitized.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("label,system,a,side_L,side_R,agree,fatal,witness\n");
        for c in &self.cases {
            let clean = |s: &str| s.replace([',', '\n'], ";");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.label,
                c.system,
                c.a,
                clean(&c.side_l),
                clean(&c.side_r),
                c.agree,
                c.fatal,
                clean(c.witness.as_deref().unwrap_or("")),
            ));
        }
        out
    }
}

/// Aggregate outcome of a corpus sweep; only offending cases are kept.
#[derive(Debug, Clone, Serialize)]
pub struct CorpusSummary {
    pub label: String,
    pub systems: u64,
    pub total_cases: u64,
    pub agree: u64,
    pub fatal_disagreements: u64,
    pub sampled_validations: u64,
    pub failures: Vec<CaseReport>,
}

impl CorpusSummary {
    pub fn all_agree(&self) -> bool {
        self.total_cases == self.agree && self.fatal_disagreements == 0
    }

    /// Header plus one row per retained failure (empty sweep -> header only).
    pub fn failures_csv(&self) -> String {
        let mut out = String::from("label,system,a,side_L,side_R,agree,fatal,witness\n");
        for c in &self.failures {
            let clean = |s: &str| s.replace([',', '\n'], ";");
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                self.label,
                c.system,
                c.a,
                clean(&c.side_l),
                clean(&c.side_r),
                c.agree,
                c.fatal,
                clean(c.witness.as_deref().unwrap_or("")),
            ));
        }
        out
    }
}

fn vtag(v: &Verdict) -> String {
    v.tag().to_string()
}

fn describe(v: &Verdict) -> String {
    match v.witness() {
        Some(w) => format!("{} [{}]", v.tag(), w.display()),
        None => match v {
            Verdict::Unknown { bounds } => format!("unknown ({bounds})"),
            _ => v.tag().to_string(),
        },
    }
}

fn dotted(a: &[u64]) -> String {
    a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
}

/// Verdict-only membership cache keyed by the tail of the canonical set
/// and the vector.  Sound because the exact verdict ignores the
/// exceptional part (it only shifts which k witnesses a vector).
pub struct MemberMemo {
    cache: HashMap<(u64, Vec<u64>, Vec<u64>), bool>,
}

impl MemberMemo {
    pub fn new() -> MemberMemo {
        MemberMemo { cache: HashMap::new() }
    }

    pub fn holds(&mut self, p: u64, residues: &[u64], a: &[u64]) -> Result<bool> {
        let key = (p, residues.to_vec(), a.to_vec());
        if let Some(&v) = self.cache.get(&key) {
            return Ok(v);
        }
        let v = refuted_class(p, residues, a)?.is_none();
        self.cache.insert(key, v);
        Ok(v)
    }
}

impl Default for MemberMemo {
    fn default() -> Self {
        MemberMemo::new()
    }
}

// ---------------------------------------------------------------------------
// Corpus enumerators (fixed lexicographic order, so reports reproduce).

/// Every map table on 1..=max_states points, sizes ascending, tables in
/// lexicographic order.
pub fn functional_graphs(max_states: usize) -> Vec<FiniteMap> {
    let mut out = Vec::new();
    for size in 1..=max_states {
        let mut table = vec![0usize; size];
        let mut done = false;
        while !done {
            out.push(FiniteMap::new(table.clone()).expect("valid table"));
            let mut i = size;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                table[i] += 1;
                if table[i] < size {
                    break;
                }
                table[i] = 0;
            }
        }
    }
    out
}

/// All vectors with 1 ≤ r ≤ r_max and entries in 1..=entry_max, ordered
/// by length then lexicographically.
pub fn vectors_up_to(r_max: usize, entry_max: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for r in 1..=r_max {
        let mut a = vec![1u64; r];
        let mut done = false;
        while !done {
            out.push(a.clone());
            let mut i = r;
            loop {
                if i == 0 {
                    done = true;
                    break;
                }
                i -= 1;
                a[i] += 1;
                if a[i] <= entry_max {
                    break;
                }
                a[i] = 1;
            }
        }
    }
    out
}

fn expand_rows(mask: u64, n: usize) -> Vec<u64> {
    (0..n).map(|i| (mask >> (i * n)) & ((1u64 << n) - 1)).collect()
}

fn edges_of(rows: &[u64], n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for (u, &row) in rows.iter().enumerate() {
        for v in 0..n {
            if row >> v & 1 == 1 {
                edges.push((u, v));
            }
        }
    }
    edges
}

fn raw_strongly_connected(rows: &[u64], n: usize) -> bool {
    let full = (1u64 << n) - 1;
    let mut fwd = 1u64;
    loop {
        let mut next = fwd;
        let mut m = fwd;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            next |= rows[v];
            m &= m - 1;
        }
        if next == fwd {
            break;
        }
        fwd = next;
    }
    if fwd != full {
        return false;
    }
    let mut bwd = 1u64;
    loop {
        let mut next = bwd;
        for (v, &row) in rows.iter().enumerate() {
            if row & bwd != 0 {
                next |= 1 << v;
            }
        }
        if next == bwd {
            break;
        }
        bwd = next;
    }
    bwd == full
}

/// Cycle-length gcd of a strongly connected digraph, via BFS level
/// differences.
fn raw_period(rows: &[u64], n: usize) -> u64 {
    let mut level = vec![u64::MAX; n];
    level[0] = 0;
    let mut frontier = vec![0usize];
    let mut depth = 0u64;
    let mut g = 0u64;
    while !frontier.is_empty() {
        depth += 1;
        let mut next = Vec::new();
        for &v in &frontier {
            let mut m = rows[v];
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                m &= m - 1;
                if level[w] == u64::MAX {
                    level[w] = depth;
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    for (v, &row) in rows.iter().enumerate() {
        let mut m = row;
        while m != 0 {
            let w = m.trailing_zeros() as usize;
            m &= m - 1;
            g = g.gcd(&(level[v] + 1).abs_diff(level[w]));
        }
    }
    g.max(1)
}

/// All vertex shifts on 1..=max_vertices vertices whose full vertex set
/// is strongly connected, adjacency masks ascending.
pub fn irreducible_sfts(max_vertices: usize) -> Vec<Sft> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for mask in 0u64..1 << (n * n) {
            let rows = expand_rows(mask, n);
            if rows.iter().all(|&r| r != 0) && raw_strongly_connected(&rows, n) {
                out.push(Sft::new(n, &edges_of(&rows, n)).expect("strongly connected input"));
            }
        }
    }
    out
}

/// Seeded random gap sets, each non-empty with gaps ≤ max_gap.
pub fn random_gap_sets(count: usize, max_gap: u64, seed: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut gaps: Vec<u64> = (1..=max_gap).filter(|_| rng.gen_bool(0.5)).collect();
        if gaps.is_empty() {
            gaps.push(rng.gen_range(1..=max_gap));
        }
        out.push(gaps);
    }
    out
}

// ---------------------------------------------------------------------------
// Membership equivalence (CLI token: thm42).

/// Left side: transitivity of the vector product.  Right side: every
/// depth-bounded cylinder-pair hitting set belongs to the family of the
/// vector.  Exact systems must agree; spacing shifts compare bounded
/// verdicts where an Unknown is never fatal.
pub fn verify_membership_equivalence(
    sys: &DynSystem,
    a: &[u64],
    depth: usize,
) -> Result<AgreementReport> {
    let side_l = a_transitive(sys, a, depth)?;
    let (side_r, soft) = membership_side(sys, a, depth)?;
    let agree = side_l.same_tag(&side_r);
    let fatal = !agree && !side_l.is_unknown() && !side_r.is_unknown() && !soft;
    let case = CaseReport {
        system: sys.descriptor(),
        a: dotted(a),
        side_l: describe(&side_l),
        side_r: describe(&side_r),
        agree,
        fatal,
        witness: side_l.witness().or(side_r.witness()).map(|w| w.display()),
    };
    Ok(AgreementReport::collect("thm42", None, vec![case]))
}

/// Conjunction of family membership over all depth-bounded cylinder
/// pairs; the bool marks a horizon-limited lane.
fn membership_side(sys: &DynSystem, a: &[u64], depth: usize) -> Result<(Verdict, bool)> {
    match sys {
        DynSystem::Map(m) => {
            for x in 0..m.size() {
                for y in 0..m.size() {
                    let set =
                        hitting_finite(m, &Cylinder::points(vec![x]), &Cylinder::points(vec![y]))?;
                    let v = member_exact(&set, a)?;
                    if !v.is_holds() {
                        return Ok((v, false));
                    }
                }
            }
            Ok((Verdict::Holds, false))
        }
        DynSystem::Shift(s) => {
            let words = s.words_up_to(depth.max(1));
            for u in &words {
                for v in &words {
                    let set = hitting_sft_words(s, u, v)?;
                    let verdict = member_exact(&set, a)?;
                    if !verdict.is_holds() {
                        return Ok((verdict, false));
                    }
                }
            }
            Ok((Verdict::Holds, false))
        }
        DynSystem::Spacing(sp) => {
            let words = sp.words_up_to(depth.max(1) as u64);
            let max_a = *a.iter().max().unwrap();
            let mut unknown: Option<Verdict> = None;
            for u in &words {
                for v in &words {
                    let h = sp.horizon().saturating_sub(v.len() as u64);
                    let set = hitting_spacing_words(sp, u, v, h)?;
                    let n_max = 8u64.min(h / 2);
                    let k_max = (h.saturating_sub(n_max)) / max_a;
                    if k_max == 0 {
                        return Err(Error::Bounds("horizon too small for bounded membership".into()));
                    }
                    let verdict = member_bounded(&set, a, &Bounds { n_max, k_max })?;
                    match verdict {
                        Verdict::Holds => {}
                        Verdict::Fails { .. } => return Ok((verdict, true)),
                        Verdict::Unknown { .. } => {
                            unknown.get_or_insert(verdict);
                        }
                    }
                }
            }
            match unknown {
                Some(v) => Ok((v, true)),
                None => Ok((Verdict::Holds, true)),
            }
        }
    }
}

/// Map-corpus sweep with a verdict-only membership cache; `sample`
/// cases are revalidated against the uncached full computation.
pub fn membership_equivalence_corpus_maps(
    max_states: usize,
    r_max: usize,
    entry_max: u64,
    sample: u64,
    seed: u64,
) -> Result<CorpusSummary> {
    let maps = functional_graphs(max_states);
    let vectors = vectors_up_to(r_max, entry_max);
    let mut memo = MemberMemo::new();
    let mut failures: Vec<CaseReport> = Vec::new();
    let mut total = 0u64;
    let mut agree = 0u64;

    // Canonical tails of every singleton-pair hitting set, per map.
    let mut tails: Vec<Vec<(u64, Vec<u64>)>> = Vec::with_capacity(maps.len());
    for m in &maps {
        let mut sets = Vec::with_capacity(m.size() * m.size());
        for x in 0..m.size() {
            for y in 0..m.size() {
                let s =
                    hitting_finite(m, &Cylinder::points(vec![x]), &Cylinder::points(vec![y]))?;
                sets.push((s.modulus(), s.residues().to_vec()));
            }
        }
        tails.push(sets);
    }

    for (mi, m) in maps.iter().enumerate() {
        let cycle = m.is_single_cycle();
        let size = m.size() as u64;
        for a in &vectors {
            total += 1;
            let l_holds = cycle && residue_criterion(size, a)?.is_holds();
            let mut r_holds = true;
            for (p, res) in &tails[mi] {
                if !memo.holds(*p, res, a)? {
                    r_holds = false;
                    break;
                }
            }
            if l_holds == r_holds {
                agree += 1;
            } else if failures.len() < 32 {
                failures.push(CaseReport {
                    system: m.size().to_string() + ":" + &dotted(&m.table().iter().map(|&x| x as u64).collect::<Vec<_>>()),
                    a: dotted(a),
                    side_l: l_holds.to_string(),
                    side_r: r_holds.to_string(),
                    agree: false,
                    fatal: true,
                    witness: None,
                });
            }
        }
    }

    // Seeded revalidation without the cache or the structural shortcut.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = 0u64;
    for _ in 0..sample {
        let mi = rng.gen_range(0..maps.len());
        let a = &vectors[rng.gen_range(0..vectors.len())];
        let m = &maps[mi];
        let x = rng.gen_range(0..m.size());
        let y = rng.gen_range(0..m.size());
        let set = hitting_finite(m, &Cylinder::points(vec![x]), &Cylinder::points(vec![y]))?;
        let full = member_exact(&set, a)?.is_holds();
        let cached = memo.holds(set.modulus(), set.residues(), a)?;
        if full != cached {
            return Err(Error::SelfCheck(format!(
                "cache and direct membership split on map {mi}, pair ({x},{y}), a={a:?}"
            )));
        }
        let fast = m.is_single_cycle() && residue_criterion(m.size() as u64, a)?.is_holds();
        let slow = a_transitive(&DynSystem::Map(m.clone()), a, 1)?.is_holds();
        if fast != slow {
            return Err(Error::SelfCheck(format!("transitivity lanes split on map {mi}, a={a:?}")));
        }
        sampled += 1;
    }

    let fatal = failures.len() as u64;
    Ok(CorpusSummary {
        label: "thm42-maps".into(),
        systems: maps.len() as u64,
        total_cases: total,
        agree,
        fatal_disagreements: fatal,
        sampled_validations: sampled,
        failures,
    })
}

/// Vertex-shift corpus sweep.  The right side uses the signature fact
/// for irreducible shifts: the tail of N([u],[v]) is the single class
/// (class(v_0) - class(u_last) + |u| - 1) mod p, so membership only
/// needs (p, that class, a), all cached.  Sampled cases recompute the
/// full hitting set and compare.
pub fn membership_equivalence_corpus_sfts(
    max_vertices: usize,
    r_max: usize,
    entry_max: u64,
    depth: usize,
    sample: u64,
    seed: u64,
) -> Result<CorpusSummary> {
    let shifts = irreducible_sfts(max_vertices);
    let vectors = vectors_up_to(r_max, entry_max);
    let mut memo = MemberMemo::new();
    let mut failures: Vec<CaseReport> = Vec::new();
    let mut total = 0u64;
    let mut agree = 0u64;

    for s in &shifts {
        let p = s.period().unwrap_or(1);
        for a in &vectors {
            total += 1;
            let l_holds = residue_criterion(p, a)?.is_holds();
            let mut r_holds = true;
            'combos: for cu in 0..p {
                for cv in 0..p {
                    for lu in 1..=depth as u64 {
                        let rho = (cv + lu - 1 + p - cu) % p;
                        if !memo.holds(p, &[rho], a)? {
                            r_holds = false;
                            break 'combos;
                        }
                    }
                }
            }
            if l_holds == r_holds {
                agree += 1;
            } else if failures.len() < 32 {
                failures.push(CaseReport {
                    system: s.descriptor_string(),
                    a: dotted(a),
                    side_l: l_holds.to_string(),
                    side_r: r_holds.to_string(),
                    agree: false,
                    fatal: true,
                    witness: None,
                });
            }
        }
    }

    // Sampled full-lane revalidation on real cylinder pairs.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sampled = 0u64;
    for _ in 0..sample {
        let s = &shifts[rng.gen_range(0..shifts.len())];
        let a = &vectors[rng.gen_range(0..vectors.len())];
        let words = s.words_up_to(depth);
        let u = &words[rng.gen_range(0..words.len())];
        let v = &words[rng.gen_range(0..words.len())];
        let set = hitting_sft_words(s, u, v)?;
        let full = member_exact(&set, a)?.is_holds();
        let cached = memo.holds(set.modulus(), set.residues(), a)?;
        if full != cached {
            return Err(Error::SelfCheck(format!(
                "cache and direct membership split on {} pair {u:?}->{v:?}",
                s.descriptor_string()
            )));
        }
        let p = s.period().unwrap_or(1);
        let rho = (s.class_of(v[0]).unwrap_or(0) + u.len() as u64 - 1 + p
            - s.class_of(*u.last().unwrap()).unwrap_or(0))
            % p;
        if set.modulus() != p || set.residues() != [rho] {
            return Err(Error::SelfCheck(format!(
                "signature tail mismatch on {} pair {u:?}->{v:?}: got ({}, {:?})",
                s.descriptor_string(),
                set.modulus(),
                set.residues()
            )));
        }
        sampled += 1;
    }

    let fatal = failures.len() as u64;
    Ok(CorpusSummary {
        label: "thm42-sfts".into(),
        systems: shifts.len() as u64,
        total_cases: total,
        agree,
        fatal_disagreements: fatal,
        sampled_validations: sampled,
        failures,
    })
}

// ---------------------------------------------------------------------------
// Power invariance (CLI token: lemma32).

/// Staircase transitivity of f against that of f^n, aggregated over
/// m ≤ bound (bound ≥ 2, or the one-sided cases are vacuous).  The
/// power side composes map tables explicitly; vertex shifts use the
/// identity that the m-staircase of the n-th power is the n-dilated
/// staircase of the base.
pub fn verify_power_invariance(sys: &DynSystem, n: u64, bound: u64) -> Result<AgreementReport> {
    if n == 0 {
        return Err(Error::Bounds("power must be >= 1".into()));
    }
    if bound < 2 {
        return Err(Error::Bounds("staircase bound must be >= 2".into()));
    }
    let mut detail_l = Vec::new();
    let mut detail_r = Vec::new();
    let mut agg_l = Verdict::Holds;
    let mut agg_r = Verdict::Holds;
    for m in 1..=bound {
        let stair: Vec<u64> = (1..=m).collect();
        let l = a_transitive(sys, &stair, 2)?;
        let r = match sys {
            DynSystem::Map(fm) => {
                a_transitive(&DynSystem::Map(fm.power_table(n)), &stair, 2)?
            }
            DynSystem::Shift(_) => {
                let dilated: Vec<u64> = stair.iter().map(|&x| x * n).collect();
                a_transitive(sys, &dilated, 2)?
            }
            DynSystem::Spacing(_) => {
                return Err(Error::Capability(
                    "power invariance needs an exact-lane system".into(),
                ));
            }
        };
        detail_l.push(format!("m{m}:{}", l.tag()));
        detail_r.push(format!("m{m}:{}", r.tag()));
        if agg_l.is_holds() && !l.is_holds() {
            agg_l = l;
        }
        if agg_r.is_holds() && !r.is_holds() {
            agg_r = r;
        }
    }
    let agree = agg_l.same_tag(&agg_r);
    let case = CaseReport {
        system: sys.descriptor(),
        a: format!("staircase-to-{bound}-power-{n}"),
        side_l: format!("{} ({})", agg_l.tag(), detail_l.join(" ")),
        side_r: format!("{} ({})", agg_r.tag(), detail_r.join(" ")),
        agree,
        fatal: !agree,
        witness: agg_l.witness().or(agg_r.witness()).map(|w| w.display()),
    };
    Ok(AgreementReport::collect("lemma32", None, vec![case]))
}

// ---------------------------------------------------------------------------
// Mixing chain (CLI token: prop33).

/// Three conditions compared pairwise at the given bounds: (1) strong
/// staircase-free transitivity over all sampled vectors, (4) weak
/// mixing of the staircase product f×f²×…×f^k, (5) weak mixing together
/// with staircase transitivity.
pub fn verify_mixing_chain(
    sys: &DynSystem,
    r_max: usize,
    entry_max: u64,
    k_max: u64,
    depth: usize,
) -> Result<AgreementReport> {
    if matches!(sys, DynSystem::Spacing(_)) {
        return Err(Error::Capability("mixing chain needs an exact-lane system".into()));
    }
    let mut strong = Verdict::Holds;
    for a in vectors_up_to(r_max, entry_max) {
        let v = a_transitive(sys, &a, depth)?;
        if !v.is_holds() {
            strong = v;
            break;
        }
    }
    let mut product_wm = Verdict::Holds;
    for k in 1..=k_max {
        let mut a: Vec<u64> = (1..=k).collect();
        a.extend(1..=k);
        let v = a_transitive(sys, &a, depth)?;
        if !v.is_holds() {
            product_wm = v;
            break;
        }
    }
    let mut conj = a_transitive(sys, &[1, 1], depth)?;
    if conj.is_holds() {
        for m in 1..=r_max as u64 {
            let stair: Vec<u64> = (1..=m).collect();
            let v = a_transitive(sys, &stair, depth)?;
            if !v.is_holds() {
                conj = v;
                break;
            }
        }
    }

    let tags = [strong.tag(), product_wm.tag(), conj.tag()];
    let agree = tags[0] == tags[1] && tags[1] == tags[2];
    let mk = |name: &str, v: &Verdict, other: &str| CaseReport {
        system: sys.descriptor(),
        a: name.to_string(),
        side_l: describe(v),
        side_r: other.to_string(),
        agree,
        fatal: !agree,
        witness: v.witness().map(|w| w.display()),
    };
    let cases = vec![
        mk("strong-vectors", &strong, tags[1]),
        mk("staircase-product-weak-mixing", &product_wm, tags[2]),
        mk("weak-mixing-and-staircases", &conj, tags[0]),
    ];
    Ok(AgreementReport::collect("prop33", None, cases))
}

// ---------------------------------------------------------------------------
// Weak disjointness against cyclic E-systems (CLI token: thm53).

/// Requires the base system to pass the tested vector prefix; then every
/// exact hitting set of the base must meet every return-time and every
/// transfer-time set of the cyclic witness system.  The prefix is a
/// finite stand-in for an infinite requirement, so the report always
/// carries a truncation note.
pub fn verify_weak_disjointness(
    sys: &DynSystem,
    a_prefix: &[u64],
    e: &ESystemWitness,
    depth: usize,
) -> Result<AgreementReport> {
    let truncation = format!(
        "tested a length-{} prefix of an infinite vector requirement",
        a_prefix.len()
    );
    let gate = a_transitive(sys, a_prefix, depth)?;
    if !gate.is_holds() {
        return Ok(AgreementReport::skipped(
            "thm53",
            format!("{truncation}; precondition {}", describe(&gate)),
        ));
    }
    let base_sets: Vec<(String, ExactSet)> = match sys {
        DynSystem::Map(m) => {
            let mut v = Vec::new();
            for x in 0..m.size() {
                for y in 0..m.size() {
                    v.push((
                        format!("{x}>{y}"),
                        hitting_finite(m, &Cylinder::points(vec![x]), &Cylinder::points(vec![y]))?,
                    ));
                }
            }
            v
        }
        DynSystem::Shift(s) => {
            let words = s.words_up_to(depth.max(1));
            let mut v = Vec::new();
            for u in &words {
                for w in &words {
                    v.push((
                        format!("{}>{}", dotted(&u.iter().map(|&x| x as u64).collect::<Vec<_>>()),
                                dotted(&w.iter().map(|&x| x as u64).collect::<Vec<_>>())),
                        hitting_sft_words(s, u, w)?,
                    ));
                }
            }
            v
        }
        DynSystem::Spacing(_) => {
            return Err(Error::Capability("weak disjointness needs exact hitting sets".into()));
        }
    };
    let g = e.system();
    let mut cases = Vec::new();
    let mut diag_empty = 0u64;
    let mut full_empty = 0u64;
    let mut checked_diag = 0u64;
    let mut checked_full = 0u64;
    let mut first_offender: Option<String> = None;
    for (tag, nf) in &base_sets {
        for w1 in 0..g.size() {
            for w2 in 0..g.size() {
                let ng =
                    hitting_finite(g, &Cylinder::points(vec![w1]), &Cylinder::points(vec![w2]))?;
                let inter = nf.intersect(&ng)?;
                let empty = inter.is_empty();
                if w1 == w2 {
                    checked_diag += 1;
                    if empty {
                        diag_empty += 1;
                    }
                } else {
                    checked_full += 1;
                    if empty {
                        full_empty += 1;
                    }
                }
                if empty && first_offender.is_none() {
                    first_offender = Some(format!("{tag} against {w1}>{w2}"));
                }
            }
        }
    }
    let diag_ok = diag_empty == 0;
    let full_ok = full_empty == 0;
    cases.push(CaseReport {
        system: sys.descriptor(),
        a: format!("return-times-size-{}", g.size()),
        side_l: "non-empty".into(),
        side_r: format!("{diag_empty} empty of {checked_diag}"),
        agree: diag_ok,
        fatal: !diag_ok,
        witness: if diag_ok { None } else { first_offender.clone() },
    });
    cases.push(CaseReport {
        system: sys.descriptor(),
        a: format!("transfer-times-size-{}", g.size()),
        side_l: "non-empty".into(),
        side_r: format!("{full_empty} empty of {checked_full}"),
        agree: full_ok,
        fatal: !full_ok,
        witness: if full_ok { None } else { first_offender },
    });
    Ok(AgreementReport::collect("thm53", Some(truncation), cases))
}

// ---------------------------------------------------------------------------
// Tower transitive point.

/// If y has full orbit in the base, (y,0) must have full orbit in the
/// k-level tower; checked exhaustively.
pub fn verify_tower_transitive_point(base: &FiniteMap, k: u64) -> Result<Verdict> {
    let y = match base.transitive_points().first().copied() {
        Some(y) => y,
        None => return Err(Error::Bounds("base has no transitive point".into())),
    };
    let t = tower(base, k)?;
    let total = t.size();
    let mut seen = vec![false; total];
    let mut state = y * k as usize;
    for _ in 0..total {
        seen[state] = true;
        state = t.apply(state);
    }
    match seen.iter().position(|&s| !s) {
        None => Ok(Verdict::Holds),
        Some(missing) => Ok(Verdict::fails(crate::verdict::Witness::Note(format!(
            "orbit of ({y},0) misses tower state {missing}"
        )))),
    }
}

// ---------------------------------------------------------------------------
// Period obstruction scan (acceptance sweep).

#[derive(Debug, Clone, Serialize)]
pub struct PeriodScanSummary {
    pub max_vertices: usize,
    pub periodic_systems: u64,
    pub residue_refuted: u64,
    pub brute_refuted: u64,
    pub mixing_systems: u64,
    pub mixing_sampled: u64,
    pub mismatches: u64,
}

impl PeriodScanSummary {
    pub fn all_agree(&self) -> bool {
        self.mismatches == 0
            && self.periodic_systems == self.residue_refuted
            && self.periodic_systems == self.brute_refuted
    }
}

/// Scans every strongly connected adjacency matrix on 2..=max_vertices
/// vertices.  Systems with period >= 2 must fail the (1,2) check by the
/// residue lane and by brute product reachability; mixing systems are
/// counted, and a seeded sample of them must pass every vector with
/// r <= 3 and entries <= 3.
pub fn period_obstruction_scan(
    max_vertices: usize,
    sample: u64,
    seed: u64,
) -> Result<PeriodScanSummary> {
    let vectors = vectors_up_to(3, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = PeriodScanSummary {
        max_vertices,
        periodic_systems: 0,
        residue_refuted: 0,
        brute_refuted: 0,
        mixing_systems: 0,
        mixing_sampled: 0,
        mismatches: 0,
    };
    let mut mixing_seen = 0u64;
    for n in 2..=max_vertices {
        for mask in 0u64..1 << (n * n) {
            let rows = expand_rows(mask, n);
            if rows.iter().any(|&r| r == 0) || !raw_strongly_connected(&rows, n) {
                continue;
            }
            let p = raw_period(&rows, n);
            if p >= 2 {
                summary.periodic_systems += 1;
                if residue_criterion(p, &[1, 2])?.is_fails() {
                    summary.residue_refuted += 1;
                } else {
                    summary.mismatches += 1;
                }
                if brute_pair_refuted(&rows, n) {
                    summary.brute_refuted += 1;
                } else {
                    summary.mismatches += 1;
                }
            } else {
                summary.mixing_systems += 1;
                mixing_seen += 1;
                // Reservoir-free sampling: take roughly `sample` spread
                // over the stream.
                if summary.mixing_sampled < sample && rng.gen_ratio(1, 1 + (mixing_seen / sample.max(1)) as u32)
                {
                    let s = Sft::new(n, &edges_of(&rows, n))?;
                    for a in &vectors {
                        if !a_transitive(&DynSystem::Shift(s.clone()), a, 1)?.is_holds() {
                            summary.mismatches += 1;
                        }
                    }
                    summary.mixing_sampled += 1;
                }
            }
        }
    }
    Ok(summary)
}

/// Exact brute lane for the (1,2) obstruction: reachability patterns
/// stabilize within (n-1)^2 + 1 steps up to the period, so scanning k
/// to 64 settles every 4-tuple for n <= 5.
fn brute_pair_refuted(rows: &[u64], n: usize) -> bool {
    const K: usize = 64;
    let mut reach: Vec<Vec<u64>> = Vec::with_capacity(n);
    for v in 0..n {
        let mut seq = Vec::with_capacity(2 * K + 1);
        let mut cur = 1u64 << v;
        seq.push(cur);
        for _ in 0..2 * K {
            let mut next = 0u64;
            let mut m = cur;
            while m != 0 {
                let w = m.trailing_zeros() as usize;
                next |= rows[w];
                m &= m - 1;
            }
            cur = next;
            seq.push(cur);
        }
        reach.push(seq);
    }
    for x in 0..n {
        for xd in 0..n {
            for y in 0..n {
                for yd in 0..n {
                    let witnessed = (1..=K)
                        .any(|k| reach[x][k] >> xd & 1 == 1 && reach[y][2 * k] >> yd & 1 == 1);
                    if !witnessed {
                        return true;
                    }
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Separation search over spacing shifts.

#[derive(Debug, Clone, Serialize)]
pub struct SeparationRow {
    pub gaps: String,
    pub horizon: u64,
    pub transitive: String,
    pub vec_1_2: String,
    pub weakly_mixing: String,
    pub mixing: String,
}

/// Deterministic property profiles for a stream of gap sets; every
/// verdict is at the horizon.
pub fn search_separation(
    gap_sets: &[Vec<u64>],
    horizon: u64,
    depth: usize,
) -> Result<Vec<SeparationRow>> {
    use crate::classify::{classify, ClassifyBounds};
    use crate::systems::SpacingShift;
    let mut rows = Vec::with_capacity(gap_sets.len());
    for gaps in gap_sets {
        let sys = DynSystem::Spacing(SpacingShift::new(gaps.clone(), horizon)?);
        let record = classify(&sys, &ClassifyBounds { powers: 2, depth })?;
        let v12 = a_transitive(&sys, &[1, 2], depth)?;
        rows.push(SeparationRow {
            gaps: format!("g{}", dotted(gaps)),
            horizon,
            transitive: vtag(&record.transitive),
            vec_1_2: vtag(&v12),
            weakly_mixing: vtag(&record.weakly_mixing),
            mixing: vtag(&record.mixing),
        });
    }
    Ok(rows)
}

pub fn separation_csv(rows: &[SeparationRow]) -> String {
    let mut out = String::from("gaps,horizon,transitive,vec_1_2,weakly_mixing,mixing\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.gaps, r.horizon, r.transitive, r.vec_1_2, r.weakly_mixing, r.mixing
        ));
    }
    out
}

// ---------------------------------------------------------------------------

trait SftDescriptor {
    fn descriptor_string(&self) -> String;
}

impl SftDescriptor for Sft {
    fn descriptor_string(&self) -> String {
        DynSystem::Shift(self.clone()).descriptor()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::systems::SystemSpec;

    fn dyn_map(table: Vec<usize>) -> DynSystem {
        DynSystem::from_spec(SystemSpec::FiniteMap { table }).unwrap()
    }

    #[test]
    fn membership_equivalence_examples() {
        let r = verify_membership_equivalence(&dyn_map(vec![0]), &[3, 1, 4], 1).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("holds"));

        let two = DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap());
        let r = verify_membership_equivalence(&two, &[1, 2], 2).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("fails"));
        assert!(r.cases[0].side_r.starts_with("fails"));

        let golden = DynSystem::Shift(Sft::golden_mean());
        let r = verify_membership_equivalence(&golden, &[1, 2], 3).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("holds"));
    }

    #[test]
    fn membership_equivalence_spacing_lane_is_soft() {
        use crate::systems::SpacingShift;
        let evens = DynSystem::Spacing(SpacingShift::new(vec![2, 4], 512).unwrap());
        let r = verify_membership_equivalence(&evens, &[1, 2], 1).unwrap();
        assert!(!r.cases[0].fatal);
    }

    #[test]
    fn map_corpus_small() {
        let s = membership_equivalence_corpus_maps(3, 2, 3, 50, 7).unwrap();
        assert!(s.all_agree(), "{:?}", s.failures);
        assert_eq!(s.systems, 1 + 4 + 27);
        assert_eq!(s.sampled_validations, 50);
    }

    #[test]
    fn sft_corpus_small() {
        let s = membership_equivalence_corpus_sfts(3, 2, 3, 2, 50, 7).unwrap();
        assert!(s.all_agree(), "{:?}", s.failures);
        assert!(s.systems > 10);
    }

    #[test]
    fn power_invariance_examples() {
        let full = DynSystem::Shift(Sft::full_shift(2));
        let r = verify_power_invariance(&full, 2, 3).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("holds"));

        let r = verify_power_invariance(&dyn_map(vec![1, 2, 0]), 2, 2).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("fails"));

        let r = verify_power_invariance(&dyn_map(vec![1, 0]), 2, 2).unwrap();
        assert!(r.all_agree());
        assert!(r.cases[0].side_l.starts_with("fails"));
        assert!(r.cases[0].side_r.contains("m1:fails"));
    }

    #[test]
    fn power_invariance_on_cycle_corpus() {
        for size in 1..=6usize {
            for n in 1..=4u64 {
                let r = verify_power_invariance(&dyn_map(FiniteMap::cycle(size).table().to_vec()), n, 3)
                    .unwrap();
                assert!(r.all_agree(), "size {size} power {n}");
            }
        }
    }

    #[test]
    fn mixing_chain_examples() {
        let full = DynSystem::Shift(Sft::full_shift(2));
        let r = verify_mixing_chain(&full, 3, 3, 3, 2).unwrap();
        assert!(r.all_agree());
        assert!(r.cases.iter().all(|c| c.side_l.starts_with("holds")));

        let r = verify_mixing_chain(&dyn_map(vec![1, 2, 0]), 3, 3, 3, 1).unwrap();
        assert!(r.all_agree());
        assert!(r.cases.iter().all(|c| c.side_l.starts_with("fails")));

        let golden = DynSystem::Shift(Sft::golden_mean());
        let r = verify_mixing_chain(&golden, 3, 3, 3, 2).unwrap();
        assert!(r.all_agree());
    }

    #[test]
    fn weak_disjointness_examples() {
        let full = DynSystem::Shift(Sft::full_shift(2));
        for size in 2..=4usize {
            let e = ESystemWitness::cycle(size).unwrap();
            let r = verify_weak_disjointness(&full, &[2, 4], &e, 2).unwrap();
            assert!(!r.skipped);
            assert!(r.all_agree(), "size {size}");
        }

        let e = ESystemWitness::cycle(1).unwrap();
        let r = verify_weak_disjointness(&full, &[2, 4], &e, 2).unwrap();
        assert!(r.all_agree());

        let two = DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap());
        let e = ESystemWitness::cycle(3).unwrap();
        let r = verify_weak_disjointness(&two, &[2, 4], &e, 2).unwrap();
        assert!(r.skipped);
    }

    #[test]
    fn tower_points() {
        assert!(verify_tower_transitive_point(&FiniteMap::cycle(2), 2).unwrap().is_holds());
        assert!(verify_tower_transitive_point(&FiniteMap::cycle(3), 3).unwrap().is_holds());
        assert!(verify_tower_transitive_point(&FiniteMap::cycle(1), 5).unwrap().is_holds());
        // A map with a transitive point that is not a single cycle.
        let m = FiniteMap::new(vec![1, 0, 0]).unwrap();
        assert!(verify_tower_transitive_point(&m, 2).unwrap().is_holds());
    }

    #[test]
    fn period_scan_small() {
        let s = period_obstruction_scan(3, 5, 0).unwrap();
        assert!(s.all_agree(), "{s:?}");
        assert!(s.periodic_systems > 0);
        assert!(s.mixing_systems > 0);
    }

    #[test]
    fn separation_profiles() {
        let rows = search_separation(
            &[(1..=8).collect::<Vec<u64>>(), vec![2, 4, 6]],
            256,
            2,
        )
        .unwrap();
        assert_eq!(rows[0].transitive, "holds");
        assert_eq!(rows[0].vec_1_2, "holds");
        assert_eq!(rows[1].vec_1_2, "fails");

        // Deterministic across repeat invocations.
        let sets = random_gap_sets(5, 12, 42);
        let a = search_separation(&sets, 128, 1).unwrap();
        let b = search_separation(&random_gap_sets(5, 12, 42), 128, 1).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }

    #[test]
    fn csv_shape() {
        let two = DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)]).unwrap());
        let r = verify_membership_equivalence(&two, &[1, 2], 2).unwrap();
        let csv = r.to_csv();
        let lines: Vec<&str> = csv.trim().lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].split(',').count(), 8);
        assert_eq!(lines[1].split(',').count(), 8);
    }

    #[test]
    fn enumerator_counts() {
        assert_eq!(functional_graphs(3).len(), 1 + 4 + 27);
        assert_eq!(vectors_up_to(2, 3).len(), 3 + 9);
        let sfts = irreducible_sfts(2);
        // One vertex with a self-loop; two vertices need both cross
        // edges, with four self-loop combinations.
        assert_eq!(sfts.len(), 1 + 4);
    }
}
