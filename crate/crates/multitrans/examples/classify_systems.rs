//! Build systems three ways (JSON spec, constructors, builtin shapes)
//! and print their property records.
//!
//!     cargo run --release --example classify_systems

use multitrans::classify::{classify, ClassifyBounds};
use multitrans::{DynSystem, FiniteMap, Result, Sft, SpacingShift};

fn show(label: &str, sys: &DynSystem, bounds: &ClassifyBounds) -> Result<()> {
    let record = classify(sys, bounds)?;
    println!("== {label} ({})", record.system);
    println!("   transitive            {}", record.transitive.tag());
    println!(
        "   totally transitive    {} (powers up to {})",
        record.totally_transitive.tag(),
        record.powers_checked
    );
    println!("   weakly mixing         {}", record.weakly_mixing.tag());
    println!("   mixing                {}", record.mixing.tag());
    println!("   dense small periodic  {}", record.dense_small_periodic.tag());
    println!("   HY candidate          {}", record.hy_candidate.tag());
    if let Some(w) = record.mixing.witness() {
        println!("   mixing witness        {}", w.display());
    }
    println!();
    Ok(())
}

fn main() -> Result<()> {
    let bounds = ClassifyBounds { powers: 6, depth: 2 };

    // From a JSON spec, the same format the CLI ingests.
    let golden = DynSystem::from_json(
        r#"{"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0]]}"#,
    )?;
    show("golden-mean shift", &golden, &bounds)?;

    // Constructors.
    show("full 2-shift", &DynSystem::Shift(Sft::full_shift(2)), &bounds)?;
    show("3-cycle map", &DynSystem::Map(FiniteMap::cycle(3)), &bounds)?;

    // A period-2 vertex shift: transitive but nothing stronger.
    let two_cycle = Sft::new(2, &[(0, 1), (1, 0)])?;
    show("2-cycle shift", &DynSystem::Shift(two_cycle), &bounds)?;

    // A reducible map: the orbit of 2 falls into the 2-cycle {0,1}.
    let funnel = FiniteMap::new(vec![1, 0, 0])?;
    show("funnel map [1,0,0]", &DynSystem::Map(funnel), &bounds)?;

    // Spacing shifts answer at their horizon.
    let evens = DynSystem::Spacing(SpacingShift::new(vec![2, 4, 6], 512)?);
    show("spacing shift, even gaps", &evens, &bounds)?;

    let all_gaps = DynSystem::Spacing(SpacingShift::new((1..=16).collect(), 512)?);
    show("spacing shift, all gaps", &all_gaps, &bounds)?;

    Ok(())
}
