//! The cross-check harness: each check computes both sides of one
//! equivalence through independent code paths and reports agreement,
//! then corpus sweeps drive the same comparison across every small
//! system.  Reports are written under target/reports/.
//!
//!     cargo run --release --example theorem_checks

use multitrans::systems::ESystemWitness;
use multitrans::verify::{
    membership_equivalence_corpus_maps, membership_equivalence_corpus_sfts,
    verify_membership_equivalence, verify_mixing_chain, verify_power_invariance,
    verify_tower_transitive_point, verify_weak_disjointness,
};
use multitrans::{DynSystem, FiniteMap, Result, Sft};
use std::fs;

fn main() -> Result<()> {
    let golden = DynSystem::Shift(Sft::golden_mean());
    let full = DynSystem::Shift(Sft::full_shift(2));
    let two_cycle = DynSystem::Shift(Sft::new(2, &[(0, 1), (1, 0)])?);

    // Transitivity of the product of powers against family membership of
    // every hitting set, per system and vector.
    println!("membership equivalence (single systems)");
    for (sys, a) in [(&golden, vec![1, 2]), (&full, vec![1, 2, 3]), (&two_cycle, vec![1, 2])] {
        let r = verify_membership_equivalence(sys, &a, 3)?;
        let c = &r.cases[0];
        println!("  {:28} a = {:8} L = {:8} R = {:8} agree = {}",
            c.system, c.a, short(&c.side_l), short(&c.side_r), c.agree);
    }
    println!();

    // Staircase transitivity is invariant under taking powers.
    println!("power invariance");
    for (label, sys, n) in [
        ("full 2-shift", &full, 2u64),
        ("3-cycle", &DynSystem::Map(FiniteMap::cycle(3)), 2),
        ("2-cycle", &DynSystem::Map(FiniteMap::cycle(2)), 2),
    ] {
        let r = verify_power_invariance(sys, n, 3)?;
        let c = &r.cases[0];
        println!("  {:14} n = {n}: L = {:30} R = {:30} agree = {}",
            label, c.side_l, c.side_r, c.agree);
    }
    println!();

    // Strong vector transitivity, weak mixing of the staircase product,
    // and (weak mixing ∧ staircases) stand or fall together.
    println!("mixing chain");
    for (label, sys) in [
        ("full 2-shift", &full),
        ("golden mean", &golden),
        ("3-cycle", &DynSystem::Map(FiniteMap::cycle(3))),
    ] {
        let r = verify_mixing_chain(sys, 3, 3, 3, 2)?;
        let tags: Vec<&str> = r.cases.iter().map(|c| short(&c.side_l)).collect();
        println!("  {:14} {:8} / {:8} / {:8} agree = {}", label, tags[0], tags[1], tags[2], r.all_agree());
    }
    println!();

    // Hitting sets of a passing system must meet every return-time set
    // of a cyclic measure-carrying system.
    println!("weak disjointness against cyclic systems");
    for size in 2..=5 {
        let e = ESystemWitness::cycle(size)?;
        let r = verify_weak_disjointness(&full, &[2, 4], &e, 2)?;
        println!("  full 2-shift vs {size}-cycle: {} intersections, all non-empty = {}",
            r.cases.iter().map(|c| &c.side_r).map(|s| s.split(" of ").last().unwrap_or("?").parse::<u64>().unwrap_or(0)).sum::<u64>(),
            r.all_agree());
    }
    let e = ESystemWitness::cycle(3)?;
    let r = verify_weak_disjointness(&two_cycle, &[2, 4], &e, 2)?;
    println!("  2-cycle shift: skipped = {} ({})", r.skipped, r.truncation.as_deref().unwrap_or(""));
    println!();

    // Tower construction: a transitive point of the base lifts.
    println!("tower transitive points");
    for (base, k) in [(FiniteMap::cycle(2), 2), (FiniteMap::cycle(3), 3), (FiniteMap::cycle(1), 5)] {
        let v = verify_tower_transitive_point(&base, k)?;
        println!("  base size {} with {k} levels: {}", base.size(), v.tag());
    }
    println!();

    // Corpus sweeps; the CSV keeps one row per retained failure.
    println!("corpora");
    let maps = membership_equivalence_corpus_maps(4, 3, 3, 64, 0)?;
    println!("  {}: {} systems, {} cases, agree {}, sampled {}",
        maps.label, maps.systems, maps.total_cases, maps.agree, maps.sampled_validations);
    let sfts = membership_equivalence_corpus_sfts(3, 3, 3, 2, 64, 0)?;
    println!("  {}: {} systems, {} cases, agree {}, sampled {}",
        sfts.label, sfts.systems, sfts.total_cases, sfts.agree, sfts.sampled_validations);

    fs::create_dir_all("target/reports").ok();
    fs::write("target/reports/thm42-maps.json", serde_json::to_string_pretty(&maps).unwrap())
        .expect("write report");
    fs::write("target/reports/thm42-maps.csv", maps.failures_csv()).expect("write report");
    println!("  reports under target/reports/");
    Ok(())
}

fn short(s: &str) -> &str {
    s.split_whitespace().next().unwrap_or(s)
}
