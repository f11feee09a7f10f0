use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A self-map of a finite discrete space `{0, ..., size-1}`.
///
/// Everything about such a system is decidable by walking the functional
/// graph: each point runs along a tail into a cycle, so orbits are
/// eventually periodic with pre-period and period at most `size`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteMap {
    table: Vec<usize>,
}

/// Orbit shape of a single point: the walk `x, f(x), f^2(x), ...` first
/// visits `tail_len` transient points, then loops through a cycle of
/// length `cycle_len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitProfile {
    /// Visited points in order, one full tail plus one full cycle.
    pub path: Vec<usize>,
    pub tail_len: usize,
    pub cycle_len: usize,
}

impl FiniteMap {
    pub fn new(table: Vec<usize>) -> Result<FiniteMap> {
        if table.is_empty() {
            return Err(Error::InvalidSystem("finite map needs at least one point".into()));
        }
        let size = table.len();
        if let Some(&bad) = table.iter().find(|&&t| t >= size) {
            return Err(Error::InvalidSystem(format!(
                "table entry {bad} outside domain of size {size}"
            )));
        }
        Ok(FiniteMap { table })
    }

    /// The rotation `i -> i+1 mod size`.
    pub fn cycle(size: usize) -> FiniteMap {
        assert!(size >= 1, "cycle needs at least one point");
        FiniteMap { table: (0..size).map(|i| (i + 1) % size).collect() }
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `f^n(x)` for arbitrary `n`, reduced through the orbit cycle.
    pub fn iterate(&self, x: usize, n: u64) -> usize {
        let size = self.table.len() as u64;
        if n <= size {
            let mut y = x;
            for _ in 0..n {
                y = self.table[y];
            }
            return y;
        }
        let prof = self.orbit_profile(x);
        let tail = prof.tail_len as u64;
        let cyc = prof.cycle_len as u64;
        let idx = tail + (n - tail) % cyc;
        prof.path[idx as usize]
    }

    pub fn orbit_profile(&self, x: usize) -> OrbitProfile {
        let mut seen = vec![usize::MAX; self.table.len()];
        let mut path = Vec::new();
        let mut cur = x;
        loop {
            if seen[cur] != usize::MAX {
                let tail_len = seen[cur];
                let cycle_len = path.len() - tail_len;
                return OrbitProfile { path, tail_len, cycle_len };
            }
            seen[cur] = path.len();
            path.push(cur);
            cur = self.table[cur];
        }
    }

    /// Table of `f^k`.
    pub fn power_table(&self, k: u64) -> FiniteMap {
        let table = (0..self.table.len()).map(|x| self.iterate(x, k)).collect();
        FiniteMap { table }
    }

    pub fn is_permutation(&self) -> bool {
        let mut hit = vec![false; self.table.len()];
        for &t in &self.table {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// A finite discrete system is transitive exactly when the map is one
    /// full cycle through every point.
    pub fn is_single_cycle(&self) -> bool {
        let prof = self.orbit_profile(0);
        prof.tail_len == 0 && prof.cycle_len == self.table.len()
    }

    /// Points whose forward orbit visits the whole space.
    pub fn transitive_points(&self) -> Vec<usize> {
        (0..self.table.len())
            .filter(|&x| self.orbit_profile(x).path.len() == self.table.len())
            .collect()
    }

    /// Lexicographically least pair `(x, y)` such that no `f^n(x) = y`
    /// with `n >= 1`, if the map is not transitive.
    pub fn unreachable_pair(&self) -> Option<(usize, usize)> {
        for x in 0..self.table.len() {
            let prof = self.orbit_profile(x);
            let mut reach = vec![false; self.table.len()];
            // n >= 1: the start point only counts if the orbit returns.
            for &p in &prof.path[1..] {
                reach[p] = true;
            }
            if prof.tail_len == 0 {
                reach[x] = true;
            }
            if let Some(y) = (0..self.table.len()).find(|&y| !reach[y]) {
                return Some((x, y));
            }
        }
        None
    }

    pub fn validate_cylinder(&self, c: &Cylinder) -> Result<Vec<usize>> {
        match c {
            Cylinder::Points(pts) => {
                if pts.is_empty() {
                    return Err(Error::InadmissibleCylinder("empty point set".into()));
                }
                if let Some(&bad) = pts.iter().find(|&&p| p >= self.table.len()) {
                    return Err(Error::InadmissibleCylinder(format!(
                        "point {bad} outside domain of size {}",
                        self.table.len()
                    )));
                }
                Ok(pts.clone())
            }
            _ => Err(Error::InadmissibleCylinder(
                "finite maps take point-set cylinders".into(),
            )),
        }
    }
}
