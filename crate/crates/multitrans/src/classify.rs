//! Per-system property records: transitivity, total transitivity up to
//! a power bound, weak mixing, mixing, dense small periodic sets, and
//! the conjunction of the last two with total transitivity.
//!
//! Finite maps and vertex shifts answer exactly from cycle/period
//! structure; spacing shifts answer at their truncation horizon.

use crate::cylinder::Cylinder;
use crate::error::Result;
use crate::hitting::{a_transitive, a_transitive_checked, hitting_spacing_words};
use crate::systems::{DynSystem, FiniteMap, Sft, SpacingShift};
use crate::verdict::{Verdict, Witness};
use num_integer::Integer;
use serde::Serialize;

/// Search bounds for the horizon-limited lanes and the total-transitivity
/// power sweep.
#[derive(Debug, Clone, Copy)]
pub struct ClassifyBounds {
    /// Total transitivity is checked for f^m, m up to this bound.
    pub powers: u64,
    /// Cylinder depth for spacing-shift sweeps.
    pub depth: usize,
}

impl Default for ClassifyBounds {
    fn default() -> Self {
        ClassifyBounds { powers: 5, depth: 2 }
    }
}

/// One verdict per property.  `powers_checked` records the sweep bound
/// behind `totally_transitive`; `cross_checked` is set when an
/// independent brute-force lane confirmed the structural answers.
#[derive(Debug, Clone, Serialize)]
pub struct PropertyRecord {
    pub system: String,
    pub transitive: Verdict,
    pub totally_transitive: Verdict,
    pub powers_checked: u64,
    pub weakly_mixing: Verdict,
    pub mixing: Verdict,
    pub dense_small_periodic: Verdict,
    pub hy_candidate: Verdict,
    pub cross_checked: bool,
}

pub fn classify(sys: &DynSystem, bounds: &ClassifyBounds) -> Result<PropertyRecord> {
    match sys {
        DynSystem::Map(m) => classify_map(sys, m, bounds),
        DynSystem::Shift(s) => classify_sft(sys, s, bounds),
        DynSystem::Spacing(s) => classify_spacing(sys, s, bounds),
    }
}

fn conjoin(parts: &[&Verdict]) -> Verdict {
    for v in parts {
        if v.is_fails() {
            return (*v).clone();
        }
    }
    for v in parts {
        if v.is_unknown() {
            return (*v).clone();
        }
    }
    Verdict::Holds
}

fn classify_map(dynsys: &DynSystem, m: &FiniteMap, bounds: &ClassifyBounds) -> Result<PropertyRecord> {
    let s = m.size() as u64;
    let transitive = if m.is_single_cycle() {
        Verdict::Holds
    } else {
        let (x, y) = m.unreachable_pair().expect("non-cycle maps have one");
        Verdict::fails(Witness::CylinderPair {
            u: Cylinder::points(vec![x]),
            v: Cylinder::points(vec![y]),
        })
    };

    let totally_transitive = if !transitive.is_holds() {
        transitive.clone()
    } else {
        match (2..=bounds.powers).find(|&k| s.gcd(&k) > 1) {
            Some(k) => Verdict::fails(Witness::Note(format!(
                "f^{k} splits the {s}-cycle into {} cycles",
                s.gcd(&k)
            ))),
            None => Verdict::Holds,
        }
    };

    // The diagonal product of an s-cycle with itself has s orbits, so
    // only the one-point system is weakly mixing, and the same point is
    // the only mixing case.
    let weakly_mixing = if transitive.is_holds() && s == 1 {
        Verdict::Holds
    } else if !transitive.is_holds() {
        transitive.clone()
    } else {
        Verdict::fails(Witness::Note(format!("f×f splits the diagonal product into {s} orbits")))
    };
    let mixing = if transitive.is_holds() && s == 1 {
        Verdict::Holds
    } else if !transitive.is_holds() {
        transitive.clone()
    } else {
        Verdict::fails(Witness::Note(format!("every return time is a multiple of {s}")))
    };

    let dense_small_periodic = if m.is_permutation() {
        Verdict::Holds
    } else {
        let x = (0..m.size())
            .find(|&x| m.orbit_profile(x).tail_len > 0)
            .expect("non-permutations have a tail point");
        Verdict::fails(Witness::Cylinder(Cylinder::points(vec![x])))
    };

    // Cross-check weak mixing against the materialized product lane.
    let wm_checked = a_transitive_checked(dynsys, &[1, 1], 1, 1 << 16)?;
    debug_assert!(wm_checked.same_tag(&weakly_mixing) || s == 0);

    Ok(PropertyRecord {
        system: dynsys.descriptor(),
        hy_candidate: conjoin(&[&totally_transitive, &dense_small_periodic]),
        transitive,
        totally_transitive,
        powers_checked: bounds.powers,
        weakly_mixing,
        mixing,
        dense_small_periodic,
        cross_checked: true,
    })
}

fn classify_sft(dynsys: &DynSystem, s: &Sft, bounds: &ClassifyBounds) -> Result<PropertyRecord> {
    let transitive = if s.is_irreducible() {
        Verdict::Holds
    } else {
        let (x, y) = s.unreachable_vertex_pair().expect("reducible shifts have one");
        Verdict::fails(Witness::CylinderPair {
            u: Cylinder::word(vec![x]),
            v: Cylinder::word(vec![y]),
        })
    };

    let period = if s.is_irreducible() { s.period().unwrap_or(1) } else { 0 };
    let totally_transitive = if !transitive.is_holds() {
        transitive.clone()
    } else {
        match (2..=bounds.powers).find(|&k| period.gcd(&k) > 1) {
            Some(k) => Verdict::fails(Witness::Note(format!(
                "period {period} shares a factor {} with the exponent {k}",
                period.gcd(&k)
            ))),
            None => Verdict::Holds,
        }
    };

    // Weak mixing coincides with mixing here: the diagonal residue
    // criterion for (1,1) forces period 1, and a primitive graph is
    // mixing outright.
    let mixing = if !transitive.is_holds() {
        transitive.clone()
    } else if period == 1 {
        Verdict::Holds
    } else {
        Verdict::fails(Witness::ResidueVector {
            residues: vec![0],
            modulus: period,
        })
    };
    let weakly_mixing = mixing.clone();

    let dense_small_periodic = match (0..s.vertex_count())
        .find(|&v| s.is_retained(v) && s.sccs()[s.scc_id(v).unwrap()].period.is_none())
    {
        None => Verdict::Holds,
        Some(v) => Verdict::fails(Witness::Cylinder(Cylinder::word(vec![v]))),
    };

    // Independent lanes: the product box scan for weak mixing, and walk
    // positivity past the power-positivity index for mixing.
    let mut cross_checked = false;
    if s.vertex_count() <= 12 {
        a_transitive_checked(dynsys, &[1, 1], bounds.depth.min(2), 1 << 14)?;
        cross_checked = true;
    }
    if s.is_primitive() && s.vertex_count() <= 12 {
        let m = s.retained_mask().count_ones() as u64;
        let bound = (m - 1) * (m - 1) + 1;
        for v in 0..s.vertex_count() {
            if !s.is_retained(v) {
                continue;
            }
            let reach = s.reach_sequence(1 << v);
            for n in bound..bound + 20 {
                let l = lift_len(&reach, n);
                for y in 0..s.vertex_count() {
                    if s.is_retained(y) && !reach.hits(l, y) {
                        return Err(crate::error::Error::SelfCheck(format!(
                            "primitive shift misses {v}->{y} at length {n}"
                        )));
                    }
                }
            }
        }
        cross_checked = true;
    }

    Ok(PropertyRecord {
        system: dynsys.descriptor(),
        hy_candidate: conjoin(&[&totally_transitive, &dense_small_periodic]),
        transitive,
        totally_transitive,
        powers_checked: bounds.powers,
        weakly_mixing,
        mixing,
        dense_small_periodic,
        cross_checked,
    })
}

fn lift_len(r: &crate::systems::ReachSequence, n: u64) -> usize {
    if (n as usize) < r.pre + r.per {
        n as usize
    } else {
        r.pre + ((n as usize - r.pre) % r.per)
    }
}

fn classify_spacing(
    dynsys: &DynSystem,
    s: &SpacingShift,
    bounds: &ClassifyBounds,
) -> Result<PropertyRecord> {
    let depth = bounds.depth.max(1);
    let transitive = a_transitive(dynsys, &[1], depth)?;

    let mut totally_transitive = Verdict::Holds;
    for m in 2..=bounds.powers {
        let v = a_transitive(dynsys, &[m], depth)?;
        if !v.is_holds() {
            totally_transitive = match v {
                Verdict::Fails { witness } => Verdict::fails(Witness::Note(format!(
                    "exponent {m}: {}",
                    witness.display()
                ))),
                other => other,
            };
            break;
        }
    }
    if !transitive.is_holds() {
        totally_transitive = transitive.clone();
    }

    let weakly_mixing = a_transitive(dynsys, &[1, 1], depth)?;

    let mixing = spacing_mixing(s, depth)?;

    let words = s.words_up_to(depth as u64);
    let dense_small_periodic = match words.iter().find(|w| !periodic_in_cylinder(s, w)) {
        None => Verdict::Holds,
        Some(w) => Verdict::fails(Witness::Cylinder(Cylinder::bits(w.clone()))),
    };

    Ok(PropertyRecord {
        system: dynsys.descriptor(),
        hy_candidate: conjoin(&[&totally_transitive, &dense_small_periodic]),
        transitive,
        totally_transitive,
        powers_checked: bounds.powers,
        weakly_mixing,
        mixing,
        dense_small_periodic,
        cross_checked: false,
    })
}

/// Mixing sweep at the horizon: every depth-bounded cylinder pair must
/// show a clear upper half of its truncated hitting set.  One missing
/// time refutes nothing about cofiniteness, so the negative side stays
/// Unknown unless a pair's set is empty outright.
fn spacing_mixing(s: &SpacingShift, depth: usize) -> Result<Verdict> {
    let words = s.words_up_to(depth as u64);
    let mut unknown: Option<String> = None;
    for u in &words {
        for v in &words {
            let h = s.horizon().saturating_sub(v.len() as u64);
            let set = hitting_spacing_words(s, u, v, h)?;
            let cap = set.horizon();
            if set.elements().is_empty() {
                return Ok(Verdict::fails(Witness::CylinderPair {
                    u: Cylinder::bits(u.clone()),
                    v: Cylinder::bits(v.clone()),
                }));
            }
            let last_missing = (1..=cap).rev().find(|&n| set.contains_bounded(n) != Some(true));
            if let Some(n) = last_missing {
                if n > cap / 2 && unknown.is_none() {
                    unknown = Some(format!(
                        "time {n} of {cap} missing for a depth-{depth} pair; tail not clear at horizon"
                    ));
                }
            }
        }
    }
    Ok(match unknown {
        Some(b) => Verdict::unknown(b),
        None => Verdict::Holds,
    })
}

/// Whether some periodic point starts with `w`.  Exact: the all-zero
/// point covers zero words; otherwise a period closes by inserting one
/// extra 1, which needs an allowed gap past the trailing zeros and one
/// past the leading zeros — or the single wrap gap itself is allowed.
fn periodic_in_cylinder(s: &SpacingShift, w: &[u8]) -> bool {
    let lead = match w.iter().position(|&b| b == 1) {
        None => return true,
        Some(i) => i as u64,
    };
    let trail = w.iter().rev().position(|&b| b == 1).unwrap() as u64;
    let top = s.max_gap();
    (top >= trail + 1 && top >= lead + 1) || s.allows_gap(trail + lead + 1)
}
