use crate::cylinder::Cylinder;
use crate::error::{Error, Result};

/// Gap values are capped so that the admissibility automaton stays small.
pub const GAP_CAP: u64 = 4096;

/// Horizon-truncated spacing shift over `{0, 1}`.
///
/// A word is admissible when the gap between every pair of consecutive
/// 1-symbols lies in the allowed set `gaps`.  Only words up to `horizon`
/// are ever examined, so every answer computed here is a statement about
/// that finite window; nothing is claimed about the full system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacingShift {
    gaps: Vec<u64>,
    gap_lookup: Vec<bool>,
    horizon: u64,
}

impl SpacingShift {
    pub fn new(mut gaps: Vec<u64>, horizon: u64) -> Result<SpacingShift> {
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.first().is_some_and(|&g| g == 0) {
            return Err(Error::InvalidSystem("gap 0 is not a gap".into()));
        }
        if gaps.last().is_some_and(|&g| g > GAP_CAP) {
            return Err(Error::Capacity(format!("gap beyond cap {GAP_CAP}")));
        }
        if horizon == 0 {
            return Err(Error::InvalidSystem("horizon must be positive".into()));
        }
        let max_gap = gaps.last().copied().unwrap_or(0);
        let mut gap_lookup = vec![false; max_gap as usize + 1];
        for &g in &gaps {
            gap_lookup[g as usize] = true;
        }
        Ok(SpacingShift { gaps, gap_lookup, horizon })
    }

    /// Behaves like the full shift out to the horizon: every gap allowed.
    pub fn full_like(horizon: u64) -> SpacingShift {
        SpacingShift::new((1..=horizon.min(GAP_CAP)).collect(), horizon).expect("valid gaps")
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn max_gap(&self) -> u64 {
        self.gaps.last().copied().unwrap_or(0)
    }

    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    pub fn allows_gap(&self, g: u64) -> bool {
        (g as usize) < self.gap_lookup.len() && self.gap_lookup[g as usize]
    }

    pub fn word_admissible(&self, w: &[u8]) -> bool {
        let mut last_one: Option<usize> = None;
        for (i, &b) in w.iter().enumerate() {
            if b > 1 {
                return false;
            }
            if b == 1 {
                if let Some(j) = last_one {
                    if !self.allows_gap((i - j) as u64) {
                        return false;
                    }
                }
                last_one = Some(i);
            }
        }
        true
    }

    pub fn validate_word(&self, w: &[u8]) -> Result<()> {
        if w.is_empty() {
            return Err(Error::InadmissibleCylinder("empty word".into()));
        }
        if w.len() as u64 > self.horizon {
            return Err(Error::Bounds(format!(
                "word length {} beyond horizon {}",
                w.len(),
                self.horizon
            )));
        }
        if !self.word_admissible(w) {
            return Err(Error::InadmissibleCylinder("gap between 1-symbols not allowed".into()));
        }
        Ok(())
    }

    pub fn validate_cylinder(&self, c: &Cylinder) -> Result<Vec<u8>> {
        match c {
            Cylinder::Bits(b) => {
                self.validate_word(b)?;
                Ok(b.clone())
            }
            _ => Err(Error::InadmissibleCylinder("spacing shifts take 0/1 word cylinders".into())),
        }
    }

    /// All admissible words of length `1..=depth`, in length-then-lex order.
    pub fn words_up_to(&self, depth: u64) -> Vec<Vec<u8>> {
        let depth = depth.min(self.horizon) as usize;
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<u8>> = vec![vec![0], vec![1]];
        for _ in 0..depth {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for w in &frontier {
                for b in [0u8, 1u8] {
                    let mut ext = w.clone();
                    ext.push(b);
                    if b == 0 || self.one_extension_ok(w) {
                        next.push(ext);
                    }
                }
            }
            frontier = next;
        }
        out
    }

    fn one_extension_ok(&self, w: &[u8]) -> bool {
        match w.iter().rposition(|&b| b == 1) {
            None => true,
            Some(j) => self.allows_gap((w.len() - j) as u64),
        }
    }

    /// State of the admissibility automaton after reading a word: distance
    /// back to the last 1-symbol, `None` when the word has no 1 yet.
    /// Distances beyond the largest allowed gap all behave alike (no
    /// further 1 can ever be placed), so they collapse to `max_gap + 1`.
    pub fn entry_state(&self, w: &[u8]) -> Option<u64> {
        w.iter()
            .rposition(|&b| b == 1)
            .map(|j| ((w.len() - j) as u64).min(self.max_gap() + 1))
    }
}

/// Reachable-state sets of the admissibility automaton, advanced one
/// filler symbol at a time.  State index 0 is "no 1 seen", indices
/// `1..=max_gap+1` are capped distances since the last 1.
pub struct SpacingFrontier {
    bits: Vec<u64>,
    max_gap: u64,
}

impl SpacingFrontier {
    pub fn start(sys: &SpacingShift, state: Option<u64>) -> SpacingFrontier {
        let max_gap = sys.max_gap();
        let states = max_gap as usize + 2;
        let mut f = SpacingFrontier { bits: vec![0; states.div_ceil(64)], max_gap };
        match state {
            None => f.set(0),
            Some(d) => f.set(d.min(max_gap + 1) as usize),
        }
        f
    }

    fn set(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    /// Advance over one filler symbol (either 0 or 1 may be emitted).
    pub fn step(&mut self, sys: &SpacingShift) {
        let mut next = vec![0u64; self.bits.len()];
        let cap = self.max_gap as usize + 1;
        let mut can_place_one = self.get(0);
        for d in 1..=cap {
            if self.get(d) {
                let nd = (d + 1).min(cap);
                next[nd / 64] |= 1 << (nd % 64);
                if d <= self.max_gap as usize && sys.allows_gap(d as u64) {
                    can_place_one = true;
                }
            }
        }
        if self.get(0) {
            next[0] |= 1;
        }
        if can_place_one {
            next[1 / 64] |= 1 << 1;
        }
        self.bits = next;
    }

    /// Whether some reachable state lets `v` follow immediately.
    pub fn compatible_with(&self, sys: &SpacingShift, v: &[u8]) -> bool {
        let q = match v.iter().position(|&b| b == 1) {
            None => return !self.is_empty(),
            Some(q) => q as u64,
        };
        if self.get(0) {
            return true;
        }
        for d in 1..=self.max_gap + 1 {
            if self.get(d as usize) && sys.allows_gap(d + q) {
                return true;
            }
        }
        false
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn admissibility() {
        let s = SpacingShift::new(vec![2], 64).unwrap();
        assert!(s.word_admissible(&[1, 0, 1]));
        assert!(!s.word_admissible(&[1, 1]));
        assert!(!s.word_admissible(&[1, 0, 0, 1]));
        assert!(s.word_admissible(&[0, 0, 0]));
        assert!(s.word_admissible(&[1, 0, 1, 0, 1]));
    }

    #[test]
    fn word_enumeration_counts() {
        // Gaps {2}: words of length 3 allow 1s only at distance 2.
        let s = SpacingShift::new(vec![2], 64).unwrap();
        let words = s.words_up_to(3);
        let len3: Vec<_> = words.iter().filter(|w| w.len() == 3).collect();
        for w in &len3 {
            assert!(s.word_admissible(w));
        }
        // 8 raw words minus 101-violations: forbidden are those with a gap
        // of 1 or 3 between consecutive ones.
        assert_eq!(len3.len(), 5);
    }

    #[test]
    fn frontier_matches_direct_enumeration() {
        // Every reachable automaton state corresponds to a real filler.
        let s = SpacingShift::new(vec![2, 3], 32).unwrap();
        let u = [1u8];
        let mut frontier = SpacingFrontier::start(&s, s.entry_state(&u));
        for filler_len in 0..10usize {
            // Direct: all fillers of this length, checked for consistency.
            let mut states = std::collections::BTreeSet::new();
            for mask in 0..(1u32 << filler_len) {
                let mut w = u.to_vec();
                for i in 0..filler_len {
                    w.push((mask >> i & 1) as u8);
                }
                if s.word_admissible(&w) {
                    states.insert(s.entry_state(&w));
                }
            }
            for d in 1..=s.max_gap() + 1 {
                let direct = states.contains(&Some(d));
                assert_eq!(
                    frontier.get(d as usize),
                    direct,
                    "state {d} at filler length {filler_len}"
                );
            }
            assert_eq!(frontier.get(0), states.contains(&None));
            frontier.step(&s);
        }
    }
}
