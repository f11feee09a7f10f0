//! Membership in the vector-generated families: a set F lies in the
//! family of vector a when every translate vector n admits a k with
//! a_i·k + n_i ∈ F in each coordinate.
//!
//!     cargo run --release --example family_membership

use multitrans::families::{
    evaluate, find_difference_subset, is_cofinite, is_thick, member_bounded, member_exact, Bounds,
    FamilyQuery,
};
use multitrans::{ExactSet, IndexSet, Result};

fn main() -> Result<()> {
    let odds = ExactSet::residue_class(2, &[1])?;
    let evens = ExactSet::residue_class(2, &[0])?;

    // The single-coordinate family is exactly the infinite sets, so the
    // odds pass (1) — but (1,2) demands k + n1 and 2k + n2 odd
    // simultaneously, and 2k never changes parity: translate (0,0) has
    // no witness.
    println!("odds vs (1):   {}", member_exact(&odds, &[1])?.tag());
    let v = member_exact(&odds, &[1, 2])?;
    println!("odds vs (1,2): {} witness {}", v.tag(), v.witness().map(|w| w.display()).unwrap_or_default());

    // The bounded lane sees only a truncation yet returns the same
    // refutation, provided k_max covers everything the horizon can
    // witness for the failing translate.
    let v = member_bounded(&odds.truncate(4096), &[1, 2], &Bounds { n_max: 0, k_max: 2048 })?;
    println!("  bounded lane agrees: {} witness {}", v.tag(), v.witness().map(|w| w.display()).unwrap_or_default());
    println!();

    // Thickness is cofiniteness for ultimately periodic sets: both mean
    // every residue class survives.
    let almost_all = ExactSet::from_parts(vec![], 3, vec![0, 1, 2], 7)?;
    println!("{{n >= 7}}: thick {}  cofinite {}",
        is_thick(&IndexSet::Exact(almost_all.clone())).tag(),
        is_cofinite(&IndexSet::Exact(almost_all)).tag());
    println!("evens:     thick {}", is_thick(&IndexSet::Exact(evens.clone())).tag());
    println!();

    // The staircase tower: membership for every (1,...,r) up to a depth.
    let q = FamilyQuery::Infty { r_max: 4 };
    println!("evens vs staircases to depth 4: {}",
        evaluate(&q, &IndexSet::Exact(evens.clone()), None)?.tag());
    let q = FamilyQuery::Seq { prefix: vec![2] };
    let v = evaluate(&q, &IndexSet::Exact(evens.clone()), None)?;
    println!("evens vs prefix (2):            {}", v.tag());
    println!();

    // Difference sets: a 4-element B with all pairwise differences even
    // exists inside any arithmetic progression.
    let (verdict, b) = find_difference_subset(&IndexSet::Exact(evens), 4, 10_000)?;
    println!("B with B-B ⊆ evens, |B| = 4: {} B = {:?}", verdict.tag(), b.unwrap_or_default());

    // No 3-element B has all differences odd: c - a = (c - b) + (b - a)
    // is a sum of two odds.  The search exhausts its budget without a
    // find, and absence of a find is only ever reported as unknown.
    let odds_set = IndexSet::Exact(ExactSet::residue_class(2, &[1])?);
    let (verdict, b) = find_difference_subset(&odds_set, 3, 2_000)?;
    println!("B with B-B ⊆ odds,  |B| = 3: {} B = {:?}", verdict.tag(), b.unwrap_or_default());
    Ok(())
}
