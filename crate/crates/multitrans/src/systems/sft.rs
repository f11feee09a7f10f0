use crate::cylinder::Cylinder;
use crate::error::{Error, Result};
use crate::index_set::ExactSet;
use num_integer::Integer;
use std::collections::HashMap;

/// Vertex cap; adjacency rows are single machine words.
pub const VERTEX_CAP: usize = 64;

/// A one-sided vertex shift: points are infinite walks through a digraph,
/// read as sequences of vertex labels.
///
/// Construction prunes vertices that cannot lie on a two-sided-infinite
/// walk (iteratively removing in-degree-0 and out-degree-0 vertices) and
/// precomputes the strongly connected components of what remains, with
/// the cycle-length gcd and cyclic classes of each component.
#[derive(Debug, Clone)]
pub struct Sft {
    vertex_count: usize,
    adj: Vec<u64>,
    retained: u64,
    scc_id: Vec<Option<usize>>,
    sccs: Vec<SccInfo>,
    /// Cyclic class of each retained vertex within its component, when
    /// the component carries a cycle.
    class_of: Vec<Option<u64>>,
    irreducible: bool,
}

#[derive(Debug, Clone)]
pub struct SccInfo {
    pub members: u64,
    /// gcd of cycle lengths through the component; `None` for a trivial
    /// component with no self-loop.
    pub period: Option<u64>,
    /// Number of vertices in each cyclic class, indexed by class.
    pub class_sizes: Vec<u64>,
}

impl Sft {
    pub fn new(vertices: usize, edges: &[(usize, usize)]) -> Result<Sft> {
        if vertices == 0 {
            return Err(Error::InvalidSystem("vertex shift needs at least one vertex".into()));
        }
        if vertices > VERTEX_CAP {
            return Err(Error::Capacity(format!(
                "vertex count {vertices} exceeds cap {VERTEX_CAP}"
            )));
        }
        let mut adj = vec![0u64; vertices];
        for &(u, v) in edges {
            if u >= vertices || v >= vertices {
                return Err(Error::InvalidSystem(format!(
                    "edge ({u}, {v}) outside vertex range 0..{vertices}"
                )));
            }
            adj[u] |= 1 << v;
        }
        Sft::from_adjacency(adj)
    }

    /// Build from adjacency rows (`adj[u]` bit `v` set when `u -> v`).
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Sft> {
        let vertices = adj.len();
        if vertices == 0 || vertices > VERTEX_CAP {
            return Err(Error::InvalidSystem("bad adjacency size".into()));
        }
        let full: u64 = if vertices == 64 { u64::MAX } else { (1 << vertices) - 1 };
        if adj.iter().any(|&row| row & !full != 0) {
            return Err(Error::InvalidSystem("adjacency row addresses missing vertex".into()));
        }
        let mut radj = vec![0u64; vertices];
        for u in 0..vertices {
            let mut row = adj[u];
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                radj[v] |= 1 << u;
            }
        }

        // Essential part: iteratively drop vertices with no outgoing or no
        // incoming edge inside the retained set.
        let mut retained = full;
        loop {
            let mut next = retained;
            let mut m = retained;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                if adj[v] & retained == 0 || radj[v] & retained == 0 {
                    next &= !(1 << v);
                }
            }
            if next == retained {
                break;
            }
            retained = next;
        }
        if retained == 0 {
            return Err(Error::InvalidSystem(
                "graph prunes to nothing: no vertex lies on an infinite walk".into(),
            ));
        }

        let (scc_id, comp_masks) = strongly_connected(&adj, retained, vertices);
        let mut sccs = Vec::new();
        let mut class_of = vec![None; vertices];
        for &members in &comp_masks {
            let info = component_structure(&adj, members, &mut class_of);
            sccs.push(info);
        }
        let irreducible = sccs.len() == 1 && sccs[0].members == retained;
        Ok(Sft { vertex_count: vertices, adj, retained, scc_id, sccs, class_of, irreducible })
    }

    /// Full shift on `n` symbols.
    pub fn full_shift(n: usize) -> Sft {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        Sft::from_adjacency(vec![full; n]).expect("full shift is always valid")
    }

    /// The golden-mean shift: two symbols, word `11` forbidden.
    pub fn golden_mean() -> Sft {
        Sft::new(2, &[(0, 0), (0, 1), (1, 0)]).expect("static graph")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    pub fn retained_mask(&self) -> u64 {
        self.retained
    }

    pub fn is_retained(&self, v: usize) -> bool {
        v < self.vertex_count && self.retained >> v & 1 == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.vertex_count && self.adj[u] >> v & 1 == 1
    }

    /// Retained edges in lexicographic order.
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.vertex_count {
            for v in 0..self.vertex_count {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn sccs(&self) -> &[SccInfo] {
        &self.sccs
    }

    pub fn scc_id(&self, v: usize) -> Option<usize> {
        self.scc_id.get(v).copied().flatten()
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    /// Period of the whole shift; defined when irreducible.
    pub fn period(&self) -> Option<u64> {
        if self.irreducible {
            self.sccs[0].period
        } else {
            None
        }
    }

    pub fn is_primitive(&self) -> bool {
        self.period() == Some(1)
    }

    pub fn class_of(&self, v: usize) -> Option<u64> {
        self.class_of.get(v).copied().flatten()
    }

    /// Validates a vertex word as a non-empty admissible cylinder.
    pub fn validate_word(&self, w: &[usize]) -> Result<()> {
        if w.is_empty() {
            return Err(Error::InadmissibleCylinder("empty word".into()));
        }
        for &v in w {
            if v >= self.vertex_count {
                return Err(Error::InadmissibleCylinder(format!(
                    "vertex {v} outside range 0..{}",
                    self.vertex_count
                )));
            }
            if !self.is_retained(v) {
                return Err(Error::InadmissibleCylinder(format!(
                    "vertex {v} lies on no infinite walk"
                )));
            }
        }
        for pair in w.windows(2) {
            if !self.has_edge(pair[0], pair[1]) {
                return Err(Error::InadmissibleCylinder(format!(
                    "missing edge {} -> {}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }

    pub fn validate_cylinder(&self, c: &Cylinder) -> Result<Vec<usize>> {
        match c {
            Cylinder::Word(w) => {
                self.validate_word(w)?;
                Ok(w.clone())
            }
            _ => Err(Error::InadmissibleCylinder("vertex shifts take word cylinders".into())),
        }
    }

    /// All admissible words of length `1..=depth`, in length-then-lex order.
    pub fn words_up_to(&self, depth: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut frontier: Vec<Vec<usize>> = (0..self.vertex_count)
            .filter(|&v| self.is_retained(v))
            .map(|v| vec![v])
            .collect();
        for _ in 0..depth {
            out.extend(frontier.iter().cloned());
            let mut next = Vec::new();
            for w in &frontier {
                let last = *w.last().unwrap();
                let mut row = self.adj[last] & self.retained;
                while row != 0 {
                    let v = row.trailing_zeros() as usize;
                    row &= row - 1;
                    let mut ext = w.clone();
                    ext.push(v);
                    next.push(ext);
                }
            }
            frontier = next;
        }
        out
    }

    /// Frontier masks from `start`: entry `l` is the set of vertices
    /// reachable by a walk of exactly `l` edges, together with the point
    /// where the mask sequence starts repeating and its cycle length.
    pub fn reach_sequence(&self, start: u64) -> ReachSequence {
        let mut masks = vec![start & self.retained];
        let mut seen: HashMap<u64, usize> = HashMap::new();
        seen.insert(masks[0], 0);
        loop {
            let cur = *masks.last().unwrap();
            let mut next = 0u64;
            let mut m = cur;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                next |= self.adj[v];
            }
            next &= self.retained;
            if let Some(&at) = seen.get(&next) {
                let pre = at;
                let per = masks.len() - at;
                return ReachSequence { masks, pre, per };
            }
            seen.insert(next, masks.len());
            masks.push(next);
        }
    }

    /// Exact walk-length set `{ l >= 1 : some walk x -> y of l edges }`,
    /// valid for any (also reducible) graph via the frontier sequence.
    pub fn walk_set_general(&self, x: usize, y: usize) -> Result<ExactSet> {
        let seq = self.reach_sequence(1u64 << x);
        let n0 = seq.pre.max(1) as u64;
        let p = seq.per as u64;
        ExactSet::from_periodic_fn(n0, p, |l| seq.hits(l as usize, y))
    }

    /// Exact walk-length set through an irreducible graph, built from the
    /// period structure: lengths sit in one residue class mod p, all large
    /// enough members of that class occur (threshold from the primitivity
    /// exponent bound (m-1)^2 + 1 of the class graph), and the stretch
    /// below the threshold is decided by a frontier sweep.
    pub fn walk_set_irreducible(&self, x: usize, y: usize) -> Result<ExactSet> {
        if !self.irreducible {
            return Err(Error::Capability("walk_set_irreducible needs an irreducible graph".into()));
        }
        let p = self.sccs[0].period.expect("irreducible essential graph has cycles");
        let cx = self.class_of(x).expect("retained vertex has a class");
        let cy = self.class_of(y).expect("retained vertex has a class");
        let delta = (cy + p - cx % p) % p;
        let m = self.sccs[0].class_sizes[cy as usize];
        let wielandt = (m - 1) * (m - 1) + 1;
        let bound = (delta + p * wielandt).max(1);

        // Frontier sweep far enough to cover [1, bound + p).
        let mut table = vec![false; (bound + p) as usize];
        let mut cur = 1u64 << x;
        for l in 1..bound + p {
            let mut next = 0u64;
            let mut mm = cur;
            while mm != 0 {
                let v = mm.trailing_zeros() as usize;
                mm &= mm - 1;
                next |= self.adj[v];
            }
            next &= self.retained;
            table[l as usize] = next >> y & 1 == 1;
            cur = next;
        }
        ExactSet::from_periodic_fn(bound, p, |l| {
            if l < bound + p {
                table[l as usize]
            } else {
                l % p == delta
            }
        })
    }

    /// Lexicographically least ordered pair of vertices with no
    /// connecting walk, when the graph is reducible.
    pub fn unreachable_vertex_pair(&self) -> Option<(usize, usize)> {
        if self.irreducible {
            return None;
        }
        for x in 0..self.vertex_count {
            if !self.is_retained(x) {
                continue;
            }
            let seq = self.reach_sequence(1 << x);
            let mut union = 0u64;
            for &m in &seq.masks[1..] {
                union |= m;
            }
            if seq.pre == 0 {
                // Purely periodic: the start mask recurs at positive time.
                union |= seq.masks[0];
            }
            for y in 0..self.vertex_count {
                if self.is_retained(y) && union >> y & 1 == 0 {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// See [`Sft::reach_sequence`].
pub struct ReachSequence {
    pub masks: Vec<u64>,
    pub pre: usize,
    pub per: usize,
}

impl ReachSequence {
    /// Whether `y` is reachable in exactly `l` steps.
    pub fn hits(&self, l: usize, y: usize) -> bool {
        let idx = if l < self.masks.len() { l } else { self.pre + (l - self.pre) % self.per };
        self.masks[idx] >> y & 1 == 1
    }
}

fn strongly_connected(
    adj: &[u64],
    retained: u64,
    vertices: usize,
) -> (Vec<Option<usize>>, Vec<u64>) {
    // Kosaraju with an iterative first pass.
    let mut order = Vec::new();
    let mut visited = 0u64;
    for root in 0..vertices {
        if retained >> root & 1 == 0 || visited >> root & 1 == 1 {
            continue;
        }
        let mut stack = vec![(root, 0u64)];
        visited |= 1 << root;
        while let Some((v, done)) = stack.pop() {
            let rest = adj[v] & retained & !visited & !done;
            if rest != 0 {
                let w = rest.trailing_zeros() as usize;
                stack.push((v, done | 1 << w));
                visited |= 1 << w;
                stack.push((w, 0));
            } else {
                let unexplored = adj[v] & retained & !done;
                if unexplored != 0 {
                    // Children already visited through another path; keep
                    // scanning so post-order stays correct.
                    stack.push((v, done | unexplored));
                } else {
                    order.push(v);
                }
            }
        }
    }

    let mut radj = vec![0u64; vertices];
    for u in 0..vertices {
        let mut row = adj[u] & retained;
        while row != 0 {
            let v = row.trailing_zeros() as usize;
            row &= row - 1;
            radj[v] |= 1 << u;
        }
    }

    let mut scc_id = vec![None; vertices];
    let mut comp_masks = Vec::new();
    let mut assigned = 0u64;
    for &root in order.iter().rev() {
        if assigned >> root & 1 == 1 {
            continue;
        }
        let id = comp_masks.len();
        let mut mask = 0u64;
        let mut stack = vec![root];
        assigned |= 1 << root;
        while let Some(v) = stack.pop() {
            mask |= 1 << v;
            scc_id[v] = Some(id);
            let mut row = radj[v] & retained & !assigned;
            while row != 0 {
                let w = row.trailing_zeros() as usize;
                row &= row - 1;
                assigned |= 1 << w;
                stack.push(w);
            }
        }
        comp_masks.push(mask);
    }
    (scc_id, comp_masks)
}

fn component_structure(adj: &[u64], members: u64, class_of: &mut [Option<u64>]) -> SccInfo {
    let root = members.trailing_zeros() as usize;
    let single = members.count_ones() == 1;
    if single && adj[root] >> root & 1 == 0 {
        // Trivial component without a self-loop: no cycle, no classes.
        return SccInfo { members, period: None, class_sizes: vec![] };
    }

    // Breadth-first levels inside the component; the period is the gcd of
    // level defects over component edges.
    let mut level = vec![0i64; adj.len()];
    let mut seen = 1u64 << root;
    let mut frontier = vec![root];
    let mut depth = 0i64;
    let mut edges = Vec::new();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            let mut row = adj[u] & members;
            while row != 0 {
                let v = row.trailing_zeros() as usize;
                row &= row - 1;
                edges.push((u, v));
                if seen >> v & 1 == 0 {
                    seen |= 1 << v;
                    level[v] = depth + 1;
                    next.push(v);
                }
            }
        }
        depth += 1;
        frontier = next;
    }
    let mut g: u64 = 0;
    for &(u, v) in &edges {
        let defect = (level[u] + 1 - level[v]).unsigned_abs();
        g = g.gcd(&defect);
    }
    let p = g.max(1);
    let mut class_sizes = vec![0u64; p as usize];
    let mut m = members;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        m &= m - 1;
        let c = level[v].rem_euclid(p as i64) as u64;
        class_of[v] = Some(c);
        class_sizes[c as usize] += 1;
    }
    SccInfo { members, period: Some(p), class_sizes }
}
