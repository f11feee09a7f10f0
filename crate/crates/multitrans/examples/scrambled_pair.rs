//! Li-Yorke machinery: a certified δ-scrambled pair on the full shift,
//! the exact absence of scrambled pairs in finite maps, and sensitivity
//! witnesses for an SFT.
//!
//!     cargo run --release --example scrambled_pair

use multitrans::chaos::{find_scrambled_pair, scrambled_pairs_finite, sensitivity_witness};
use multitrans::{DynSystem, FiniteMap, Result, Sft};

fn main() -> Result<()> {
    // Doubling agree/disagree blocks give liminf distance 0 (ever longer
    // shared prefixes under shift) and limsup 1 (coordinates that
    // differ).  The evidence object is self-verified before return.
    let full = DynSystem::Shift(Sft::full_shift(2));
    let (verdict, evidence) = find_scrambled_pair(&full, 0.5, 1 << 10)?;
    println!("full 2-shift, delta = 1/2: {}", verdict.tag());
    let e = evidence.expect("full shift admits the doubling pattern");
    println!("  rule            {}", e.rule);
    println!("  horizon         {}", e.horizon);
    println!("  close times     {:?}... ({} total, dist <= 2^-{})",
        &e.close_times[..e.close_times.len().min(6)], e.close_count, e.eps_exp);
    println!("  far times       {:?}... ({} total, dist = 1)",
        &e.far_times[..e.far_times.len().min(6)], e.far_count);
    println!("  liminf proxy    2^-{}", e.liminf_proxy_exp);
    e.verify()?;
    println!("  re-verified     ok");
    println!();

    // Finite maps never scramble: two orbits either stay a positive
    // distance apart or collide and agree forever.  Exhaustive check.
    for table in [vec![0], vec![1, 0], vec![1, 2, 0], vec![1, 0, 0], vec![1, 2, 3, 0]] {
        let m = FiniteMap::new(table.clone())?;
        let pairs = scrambled_pairs_finite(&m);
        println!("map {table:?}: scrambled pairs {pairs:?}");
        assert!(pairs.is_empty());
    }
    let (v, _) = find_scrambled_pair(&DynSystem::Map(FiniteMap::cycle(4)), 0.5, 1 << 10)?;
    println!("4-cycle map, delta = 1/2: {}", v.tag());
    println!();

    // Sensitivity: every cylinder of the golden-mean shift reaches the
    // branch vertex 0, where two extensions split to distance 1.
    let golden = Sft::golden_mean();
    let (v, ws) = sensitivity_witness(&golden, 0.5, 3, 64)?;
    println!("golden mean sensitivity at depth 3: {}", v.tag());
    for w in ws.iter().take(4) {
        println!("  base {:?} splits into {:?} / {:?} at time {}", w.base, w.left, w.right, w.time);
    }
    println!("  ({} witnesses total)", ws.len());

    // A single cycle has no branch anywhere: sensitivity fails with the
    // unbranchable cylinder as witness.
    let two_cycle = Sft::new(2, &[(0, 1), (1, 0)])?;
    let (v, _) = sensitivity_witness(&two_cycle, 0.5, 2, 64)?;
    println!("2-cycle shift sensitivity:          {} ({})",
        v.tag(), v.witness().map(|w| w.display()).unwrap_or_default());
    Ok(())
}
