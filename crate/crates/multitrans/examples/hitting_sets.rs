//! Hitting-time sets N(U,V) = {n >= 1 : f^n(U) meets V} across the three
//! system kinds, plus the dilation intersection that powers the
//! product-transitivity checks.
//!
//!     cargo run --release --example hitting_sets

use multitrans::hitting::{hitting_finite, hitting_sft, hitting_spacing, intersect_dilations};
use multitrans::{Cylinder, FiniteMap, IndexSet, Result, Sft, SpacingShift};

fn main() -> Result<()> {
    // Finite map: the orbit of each point is eventually periodic, so the
    // hitting set is exact — a finite exceptional part plus residue
    // classes past a threshold.
    let funnel = FiniteMap::new(vec![1, 0, 0])?;
    let n = hitting_finite(&funnel, &Cylinder::points(vec![2]), &Cylinder::points(vec![1]))?;
    println!("map [1,0,0], N({{2}},{{1}}):");
    println!("  exceptional {:?}", n.exceptional());
    println!("  tail        {:?} mod {} from {}", n.residues(), n.modulus(), n.threshold());
    println!("  contains 1? {}  contains 2? {}  contains 4? {}", n.contains(1), n.contains(2), n.contains(4));
    println!();

    // SFT: shifts smaller than |u| check word overlap, larger shifts
    // count walks; the result is again ultimately periodic.
    let golden = Sft::golden_mean();
    let n = hitting_sft(&golden, &Cylinder::word(vec![1]), &Cylinder::word(vec![1]))?;
    println!("golden mean, N([1],[1]):");
    println!("  = {:?} mod {} from {} (plus {:?})", n.residues(), n.modulus(), n.threshold(), n.exceptional());
    println!();

    let two_cycle = Sft::new(2, &[(0, 1), (1, 0)])?;
    let n = hitting_sft(&two_cycle, &Cylinder::word(vec![0]), &Cylinder::word(vec![0]))?;
    println!("2-cycle shift, N([0],[0]):");
    println!("  = {:?} mod {} from {}", n.residues(), n.modulus(), n.threshold());
    println!();

    // Spacing shift: only horizon-bounded answers exist.  Gap set {2,4}
    // forces 1s onto even positions, and the hitting sets inherit the
    // parity.
    let evens = SpacingShift::new(vec![2, 4], 64)?;
    let n = hitting_spacing(&evens, &Cylinder::bits(vec![1]), &Cylinder::bits(vec![1]), 32)?;
    println!("spacing {{2,4}}, N([1],[1]) to horizon {}:", n.horizon());
    println!("  = {:?}", n.elements());
    println!();

    // The product reduction: k is a hitting time of the (1,2)-product
    // box iff k lies in N(U1,V1) and 2k lies in N(U2,V2).
    let n1 = IndexSet::Exact(hitting_sft(&golden, &Cylinder::word(vec![1]), &Cylinder::word(vec![0]))?);
    let n2 = IndexSet::Exact(hitting_sft(&golden, &Cylinder::word(vec![0]), &Cylinder::word(vec![1]))?);
    let prod = intersect_dilations(&[n1, n2], &[1, 2])?;
    match prod {
        IndexSet::Exact(e) => {
            println!("golden mean, {{k : k ∈ N([1],[0]), 2k ∈ N([0],[1])}}:");
            println!("  = {:?} mod {} from {} (plus {:?})", e.residues(), e.modulus(), e.threshold(), e.exceptional());
        }
        IndexSet::Explicit(_) => unreachable!("both inputs are exact"),
    }
    Ok(())
}
