pub mod finite_map;
pub mod sft;
pub mod spacing;

pub use finite_map::{FiniteMap, OrbitProfile};
pub use sft::{ReachSequence, SccInfo, Sft};
pub use spacing::{SpacingFrontier, SpacingShift};

use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Explicit product materialization refuses above this state count.
pub const MATERIALIZE_CAP: u64 = 1_000_000;

/// JSON ingestion format for systems.  Field names are part of the
/// contract: {"kind":"finite_map","table":[...]},
/// {"kind":"sft","vertices":n,"edges":[[u,v],...]},
/// {"kind":"spacing_shift","gaps":[...],"horizon":L}.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemSpec {
    FiniteMap { table: Vec<usize> },
    Sft { vertices: usize, edges: Vec<(usize, usize)> },
    SpacingShift { gaps: Vec<u64>, horizon: u64 },
}

#[derive(Debug, Clone)]
pub enum DynSystem {
    Map(FiniteMap),
    Shift(Sft),
    Spacing(SpacingShift),
}

impl DynSystem {
    pub fn from_spec(spec: SystemSpec) -> Result<DynSystem> {
        match spec {
            SystemSpec::FiniteMap { table } => Ok(DynSystem::Map(FiniteMap::new(table)?)),
            SystemSpec::Sft { vertices, edges } => Ok(DynSystem::Shift(Sft::new(vertices, &edges)?)),
            SystemSpec::SpacingShift { gaps, horizon } => {
                Ok(DynSystem::Spacing(SpacingShift::new(gaps, horizon)?))
            }
        }
    }

    pub fn from_json(text: &str) -> Result<DynSystem> {
        let spec: SystemSpec =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("system: {e}")))?;
        DynSystem::from_spec(spec)
    }

    pub fn kind(&self) -> &'static str {
        match self {
            DynSystem::Map(_) => "finite_map",
            DynSystem::Shift(_) => "sft",
            DynSystem::Spacing(_) => "spacing_shift",
        }
    }

    /// Short comma-free descriptor, safe for CSV cells.
    pub fn descriptor(&self) -> String {
        match self {
            DynSystem::Map(m) => {
                let entries: Vec<String> = m.table().iter().map(|x| x.to_string()).collect();
                format!("map:{}", entries.join("."))
            }
            DynSystem::Shift(s) => {
                let edges: Vec<String> =
                    s.edge_list().iter().map(|(u, v)| format!("{u}>{v}")).collect();
                format!("sft:{}:{}", s.vertex_count(), edges.join("."))
            }
            DynSystem::Spacing(s) => {
                let gaps: Vec<String> = s.gaps().iter().map(|g| g.to_string()).collect();
                format!("sp:h{}:g{}", s.horizon(), gaps.join("."))
            }
        }
    }

    pub fn validate_cylinder(&self, c: &Cylinder) -> Result<()> {
        match self {
            DynSystem::Map(m) => m.validate_cylinder(c).map(|_| ()),
            DynSystem::Shift(s) => s.validate_cylinder(c).map(|_| ()),
            DynSystem::Spacing(s) => s.validate_cylinder(c).map(|_| ()),
        }
    }
}

/// `f^k`.  Finite maps compose eagerly; shift systems stay lazy, so a
/// length-n query against the power resolves to length k·n in the base.
#[derive(Debug, Clone)]
pub enum Powered {
    Map(FiniteMap),
    Shift { base: Sft, exponent: u64 },
    Spacing { base: SpacingShift, exponent: u64 },
}

pub fn power(sys: &DynSystem, k: u64) -> Result<Powered> {
    if k == 0 {
        return Err(Error::Bounds("exponent must be >= 1".into()));
    }
    Ok(match sys {
        DynSystem::Map(m) => Powered::Map(m.power_table(k)),
        DynSystem::Shift(s) => Powered::Shift { base: s.clone(), exponent: k },
        DynSystem::Spacing(s) => Powered::Spacing { base: s.clone(), exponent: k },
    })
}

/// `f^{a_1} x ... x f^{a_r}` in factored form; coordinates evolve
/// independently.
#[derive(Debug, Clone)]
pub struct ProductSystem {
    base: DynSystem,
    a: Vec<u64>,
}

impl ProductSystem {
    pub fn new(base: DynSystem, a: Vec<u64>) -> Result<ProductSystem> {
        validate_vector(&a)?;
        Ok(ProductSystem { base, a })
    }

    pub fn base(&self) -> &DynSystem {
        &self.base
    }

    pub fn vector(&self) -> &[u64] {
        &self.a
    }

    /// Explicit product map for brute-force work.  Tuples are encoded
    /// big-endian (coordinate 1 most significant) so lexicographic order
    /// of tuples matches numeric order of states.
    pub fn materialize(&self) -> Result<FiniteMap> {
        let m = match &self.base {
            DynSystem::Map(m) => m,
            _ => return Err(Error::Capability("materialization needs a finite map".into())),
        };
        let size = m.size() as u64;
        let mut states: u64 = 1;
        for _ in 0..self.a.len() {
            states = states
                .checked_mul(size)
                .filter(|&s| s <= MATERIALIZE_CAP)
                .ok_or_else(|| Error::Capacity("product state count above cap".into()))?;
        }
        let powers: Vec<FiniteMap> = self.a.iter().map(|&ai| m.power_table(ai)).collect();
        let r = self.a.len();
        let mut table = vec![0usize; states as usize];
        let mut tuple = vec![0usize; r];
        for (s, slot) in table.iter_mut().enumerate() {
            decode_tuple(s as u64, size, r, &mut tuple);
            let mut enc: u64 = 0;
            for i in 0..r {
                enc = enc * size + powers[i].apply(tuple[i]) as u64;
            }
            *slot = enc as usize;
        }
        FiniteMap::new(table)
    }
}

pub fn validate_vector(a: &[u64]) -> Result<()> {
    if a.is_empty() {
        return Err(Error::Bounds("vector must have length >= 1".into()));
    }
    if a.iter().any(|&ai| ai == 0) {
        return Err(Error::Bounds("vector entries must be >= 1".into()));
    }
    Ok(())
}

pub fn encode_tuple(tuple: &[usize], size: u64) -> u64 {
    tuple.iter().fold(0u64, |acc, &x| acc * size + x as u64)
}

pub fn decode_tuple(mut s: u64, size: u64, r: usize, out: &mut [usize]) {
    for i in (0..r).rev() {
        out[i] = (s % size) as usize;
        s /= size;
    }
}

/// Skyscraper over `base`: states (x, i) for i < k, stepping the level
/// until it wraps and applies the base map.  Encoded as x·k + i.
pub fn tower(base: &FiniteMap, k: u64) -> Result<FiniteMap> {
    if k == 0 {
        return Err(Error::Bounds("tower height must be >= 1".into()));
    }
    let size = base.size() as u64;
    let states = size.checked_mul(k).filter(|&s| s <= MATERIALIZE_CAP).ok_or_else(|| {
        Error::Capacity("tower state count above cap".into())
    })?;
    let mut table = vec![0usize; states as usize];
    for x in 0..base.size() {
        for i in 0..k {
            let s = x as u64 * k + i;
            table[s as usize] = if i + 1 < k {
                (x as u64 * k + i + 1) as usize
            } else {
                (base.apply(x) as u64 * k) as usize
            };
        }
    }
    FiniteMap::new(table)
}

/// A single cycle carrying the uniform measure: every point has mass
/// 1/size, the pushforward under the map is the measure itself, and the
/// support is everything.  This is the only E-system shape built here.
#[derive(Debug, Clone)]
pub struct ESystemWitness {
    system: FiniteMap,
}

impl ESystemWitness {
    pub fn cycle(size: usize) -> Result<ESystemWitness> {
        ESystemWitness::new(FiniteMap::cycle(size))
    }

    pub fn new(system: FiniteMap) -> Result<ESystemWitness> {
        if !system.is_single_cycle() {
            return Err(Error::InvalidSystem("E-system witness must be a single cycle".into()));
        }
        // Invariance of the uniform measure: every point needs exactly one
        // preimage, so each pushforward mass is again 1/size.
        let mut preimages = vec![0usize; system.size()];
        for x in 0..system.size() {
            preimages[system.apply(x)] += 1;
        }
        if preimages.iter().any(|&c| c != 1) {
            return Err(Error::SelfCheck("uniform measure not invariant".into()));
        }
        Ok(ESystemWitness { system })
    }

    pub fn system(&self) -> &FiniteMap {
        &self.system
    }

    /// Per-point mass as a rational (numerator, denominator).
    pub fn point_mass(&self) -> (u64, u64) {
        (1, self.system.size() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_round_trip() {
        let text = r#"{"kind":"finite_map","table":[1,2,0]}"#;
        let sys = DynSystem::from_json(text).unwrap();
        assert_eq!(sys.kind(), "finite_map");
        assert_eq!(sys.descriptor(), "map:1.2.0");

        let text = r#"{"kind":"sft","vertices":2,"edges":[[0,0],[0,1],[1,0],[1,1]]}"#;
        let sys = DynSystem::from_json(text).unwrap();
        assert_eq!(sys.kind(), "sft");

        let text = r#"{"kind":"spacing_shift","gaps":[2,4],"horizon":64}"#;
        let sys = DynSystem::from_json(text).unwrap();
        assert_eq!(sys.kind(), "spacing_shift");
        assert_eq!(sys.descriptor(), "sp:h64:g2.4");
    }

    #[test]
    fn bad_specs_rejected() {
        assert!(DynSystem::from_json(r#"{"kind":"finite_map","table":[3]}"#).is_err());
        assert!(DynSystem::from_json(r#"{"kind":"sft","vertices":2,"edges":[]}"#).is_err());
        assert!(DynSystem::from_json(r#"{"kind":"spacing_shift","gaps":[0],"horizon":8}"#).is_err());
        assert!(DynSystem::from_json(r#"{"kind":"wat"}"#).is_err());
    }

    #[test]
    fn power_of_cycle() {
        let c3 = FiniteMap::cycle(3);
        let p3 = c3.power_table(3);
        for x in 0..3 {
            assert_eq!(p3.apply(x), x);
        }
        let p2 = c3.power_table(2);
        for x in 0..3 {
            assert_eq!(p2.apply(x), (x + 2) % 3);
        }
    }

    #[test]
    fn product_materialization() {
        // 3-cycle with vector (1,1): nine states, three disjoint 3-cycles.
        let c3 = DynSystem::Map(FiniteMap::cycle(3));
        let prod = ProductSystem::new(c3, vec![1, 1]).unwrap();
        let m = prod.materialize().unwrap();
        assert_eq!(m.size(), 9);
        let mut cycles = std::collections::BTreeSet::new();
        for s in 0..9 {
            let mut orbit: Vec<usize> = vec![s];
            let mut cur = s;
            loop {
                cur = m.apply(cur);
                if cur == s {
                    break;
                }
                orbit.push(cur);
            }
            assert_eq!(orbit.len(), 3);
            orbit.sort_unstable();
            cycles.insert(orbit);
        }
        assert_eq!(cycles.len(), 3);

        // 2-cycle with vector (1,2): sigma x id, not one cycle.
        let c2 = DynSystem::Map(FiniteMap::cycle(2));
        let prod = ProductSystem::new(c2, vec![1, 2]).unwrap();
        let m = prod.materialize().unwrap();
        assert_eq!(m.size(), 4);
        assert!(!m.is_single_cycle());
        for s in 0..4 {
            let mut t = vec![0usize; 2];
            decode_tuple(s as u64, 2, 2, &mut t);
            let image = m.apply(s);
            let mut ti = vec![0usize; 2];
            decode_tuple(image as u64, 2, 2, &mut ti);
            assert_eq!(ti[0], (t[0] + 1) % 2);
            assert_eq!(ti[1], t[1]);
        }
    }

    #[test]
    fn product_coordinates_evolve_independently() {
        let base = FiniteMap::new(vec![1, 2, 0, 2]).unwrap();
        let a = vec![2u64, 3u64];
        let prod = ProductSystem::new(DynSystem::Map(base.clone()), a.clone()).unwrap();
        let m = prod.materialize().unwrap();
        let powers: Vec<FiniteMap> = a.iter().map(|&ai| base.power_table(ai)).collect();
        let size = base.size() as u64;
        for s in 0..m.size() {
            for n in 0..=20u64 {
                let mut t = vec![0usize; 2];
                decode_tuple(s as u64, size, 2, &mut t);
                let reached = m.iterate(s, n);
                let mut tr = vec![0usize; 2];
                decode_tuple(reached as u64, size, 2, &mut tr);
                for i in 0..2 {
                    assert_eq!(tr[i], powers[i].iterate(t[i], n));
                }
            }
        }
    }

    #[test]
    fn materialization_cap() {
        let big = DynSystem::Map(FiniteMap::cycle(101));
        let prod = ProductSystem::new(big, vec![1, 1, 1]).unwrap();
        assert!(prod.materialize().is_err());
    }

    #[test]
    fn tower_shapes() {
        let c2 = FiniteMap::cycle(2);
        let t = tower(&c2, 2).unwrap();
        assert_eq!(t.size(), 4);
        assert!(t.is_single_cycle());
        // (0,0) is a transitive point.
        assert!(t.transitive_points().contains(&0));

        let c3 = FiniteMap::cycle(3);
        let t = tower(&c3, 2).unwrap();
        assert_eq!(t.size(), 6);
        assert!(t.is_single_cycle());

        let g = FiniteMap::new(vec![1, 0, 2]).unwrap();
        let t1 = tower(&g, 1).unwrap();
        assert_eq!(t1.table(), g.table());
    }

    #[test]
    fn tower_zero_level_recovers_base() {
        let g = FiniteMap::new(vec![2, 0, 1, 1]).unwrap();
        for k in 1..=4u64 {
            let t = tower(&g, k).unwrap();
            for x in 0..g.size() {
                let s = x as u64 * k;
                assert_eq!(t.iterate(s as usize, k), (g.apply(x) as u64 * k) as usize);
            }
        }
    }

    #[test]
    fn e_system_witness_validation() {
        let w = ESystemWitness::cycle(5).unwrap();
        assert_eq!(w.point_mass(), (1, 5));
        assert!(ESystemWitness::new(FiniteMap::new(vec![0, 0]).unwrap()).is_err());
    }
}
