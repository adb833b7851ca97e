use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest grid the edge bitmap can hold.
pub const MAX_FPL_SIZE: usize = 7;

/// A fully packed loop configuration on the `L × L` vertex grid.
///
/// Edges are bits of `edges`. Horizontal edge `h(r, c)` joins `(r, c)` to
/// `(r, c+1)` for `c ∈ −1..L`; vertical edge `v(r, c)` joins `(r, c)` to
/// `(r+1, c)` for `r ∈ −1..L`. Indices `−1` and `L−1` are the external stubs.
/// Row 0 is the top row, column 0 the left column.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FplConfig {
    pub size: usize,
    pub edges: u128,
}

/// An edge of the extended grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Edge {
    H(i64, i64),
    V(i64, i64),
}

impl Edge {
    pub fn index(self, l: usize) -> usize {
        let l = l as i64;
        (match self {
            Edge::H(r, c) => r * (l + 1) + c + 1,
            Edge::V(r, c) => l * (l + 1) + (r + 1) * l + c,
        }) as usize
    }

    /// Image under the half-turn about the grid center.
    pub fn rotated(self, l: usize) -> Edge {
        let l = l as i64;
        match self {
            Edge::H(r, c) => Edge::H(l - 1 - r, l - 2 - c),
            Edge::V(r, c) => Edge::V(l - 2 - r, l - 1 - c),
        }
    }

    /// Both endpoints; off-grid ones are stub ends.
    pub fn ends(self) -> [(i64, i64); 2] {
        match self {
            Edge::H(r, c) => [(r, c), (r, c + 1)],
            Edge::V(r, c) => [(r, c), (r + 1, c)],
        }
    }

    pub fn is_stub(self, l: usize) -> bool {
        let l = l as i64;
        match self {
            Edge::H(_, c) => c < 0 || c == l - 1,
            Edge::V(r, _) => r < 0 || r == l - 1,
        }
    }
}

/// Number of bits used by a grid of size `L`.
pub fn edge_count(l: usize) -> usize {
    2 * l * (l + 1)
}

/// The four edges at vertex `(r, c)`: left, up, right, down.
pub fn incident(r: i64, c: i64) -> [Edge; 4] {
    [Edge::H(r, c - 1), Edge::V(r - 1, c), Edge::H(r, c), Edge::V(r, c)]
}

/// External stubs counterclockwise from the top-left corner: left side top to
/// bottom, bottom left to right, right side bottom to top, top right to left.
pub fn stubs(l: usize) -> Vec<Edge> {
    let li = l as i64;
    let mut v = Vec::with_capacity(4 * l);
    v.extend((0..li).map(|r| Edge::H(r, -1)));
    v.extend((0..li).map(|c| Edge::V(li - 1, c)));
    v.extend((0..li).rev().map(|r| Edge::H(r, li - 1)));
    v.extend((0..li).rev().map(|c| Edge::V(-1, c)));
    v
}

/// Occupied stubs, i.e. the odd-indexed ones; position `k` is boundary point `k+1`.
pub fn occupied_stubs(l: usize) -> Vec<Edge> {
    stubs(l).into_iter().step_by(2).collect()
}

impl FplConfig {
    pub fn has(&self, e: Edge) -> bool {
        self.edges >> e.index(self.size) & 1 == 1
    }

    pub fn degree(&self, r: i64, c: i64) -> usize {
        incident(r, c).iter().filter(|&&e| self.has(e)).count()
    }

    /// The configuration turned by 180°.
    pub fn rotated(&self) -> FplConfig {
        let l = self.size;
        let mut edges = 0u128;
        for e in all_edges(l) {
            if self.has(e) {
                edges |= 1 << e.rotated(l).index(l);
            }
        }
        FplConfig { size: l, edges }
    }

    pub fn is_half_turn_symmetric(&self) -> bool {
        self.rotated() == *self
    }

    /// Checks degrees and the boundary condition.
    pub fn validate(&self) -> Result<()> {
        let l = self.size;
        if l == 0 || l > MAX_FPL_SIZE || self.edges >> edge_count(l) != 0 {
            return Err(Error::ConfigError(format!("bad FPL bitmap for L = {l}")));
        }
        for (k, e) in stubs(l).into_iter().enumerate() {
            if self.has(e) != (k % 2 == 0) {
                return Err(Error::ConfigError(format!("stub {} has the wrong occupation", k + 1)));
            }
        }
        let li = l as i64;
        for r in 0..li {
            for c in 0..li {
                if self.degree(r, c) != 2 {
                    return Err(Error::ConfigError(format!("vertex ({r},{c}) has degree {}", self.degree(r, c))));
                }
            }
        }
        Ok(())
    }
}

pub(crate) fn all_edges(l: usize) -> impl Iterator<Item = Edge> {
    let li = l as i64;
    let h = (0..li).flat_map(move |r| (-1..li).map(move |c| Edge::H(r, c)));
    let v = (-1..li).flat_map(move |r| (0..li).map(move |c| Edge::V(r, c)));
    h.chain(v)
}

impl fmt::Display for FplConfig {
    /// ASCII drawing: `+` vertices, `-` and `|` occupied edges.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.size as i64;
        let vline = |f: &mut fmt::Formatter<'_>, r: i64| -> fmt::Result {
            let s: String = (0..l)
                .map(|c| if self.has(Edge::V(r, c)) { " | " } else { "   " })
                .collect();
            writeln!(f, "{}", s.trim_end())
        };
        vline(f, -1)?;
        for r in 0..l {
            let mut s = String::new();
            for c in -1..l {
                if c >= 0 {
                    s.push('+');
                }
                s.push_str(if self.has(Edge::H(r, c)) {
                    if c < 0 || c == l - 1 {
                        "-"
                    } else {
                        "--"
                    }
                } else if c < 0 || c == l - 1 {
                    " "
                } else {
                    "  "
                });
            }
            writeln!(f, "{}", s.trim_end())?;
            vline(f, r)?;
        }
        Ok(())
    }
}

impl fmt::Debug for FplConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FplConfig(L={}, {:#x})", self.size, self.edges)
    }
}

/// Partial assignment during the search: `set` marks decided edges.
#[derive(Clone, Copy)]
struct Partial {
    set: u128,
    on: u128,
}

struct Search {
    l: usize,
    symmetric: bool,
    order: Vec<(i64, i64)>,
}

impl Search {
    fn new(l: usize, symmetric: bool) -> Self {
        let li = l as i64;
        let order = (0..li).flat_map(|c| (0..li).map(move |r| (r, c))).collect();
        Search { l, symmetric, order }
    }

    fn start(&self) -> Option<Partial> {
        let mut p = Partial { set: 0, on: 0 };
        for (k, e) in stubs(self.l).into_iter().enumerate() {
            p = self.assign(p, e, k % 2 == 0)?;
        }
        Some(p)
    }

    fn inside(&self, (r, c): (i64, i64)) -> bool {
        let l = self.l as i64;
        (0..l).contains(&r) && (0..l).contains(&c)
    }

    /// Degree still reachable at a grid vertex.
    fn feasible(&self, p: Partial, (r, c): (i64, i64)) -> bool {
        let mut on = 0;
        let mut free = 0;
        for e in incident(r, c) {
            let b = 1u128 << e.index(self.l);
            if p.set & b == 0 {
                free += 1;
            } else if p.on & b != 0 {
                on += 1;
            }
        }
        on <= 2 && on + free >= 2
    }

    fn assign_one(&self, mut p: Partial, e: Edge, value: bool) -> Option<Partial> {
        let b = 1u128 << e.index(self.l);
        if p.set & b != 0 {
            return ((p.on & b != 0) == value).then_some(p);
        }
        p.set |= b;
        if value {
            p.on |= b;
        }
        for v in e.ends() {
            if self.inside(v) && !self.feasible(p, v) {
                return None;
            }
        }
        Some(p)
    }

    fn assign(&self, p: Partial, e: Edge, value: bool) -> Option<Partial> {
        let p = self.assign_one(p, e, value)?;
        if self.symmetric {
            self.assign_one(p, e.rotated(self.l), value)
        } else {
            Some(p)
        }
    }

    /// All ways to complete vertex `order[k]`.
    fn children(&self, p: Partial, k: usize) -> Vec<Partial> {
        let (r, c) = self.order[k];
        let mut on = 0;
        let mut free = Vec::new();
        for e in incident(r, c) {
            let b = 1u128 << e.index(self.l);
            if p.set & b == 0 {
                free.push(e);
            } else if p.on & b != 0 {
                on += 1;
            }
        }
        let need = 2usize.saturating_sub(on);
        let mut out = Vec::new();
        for mask in 0u32..1 << free.len() {
            if mask.count_ones() as usize != need || on > 2 {
                continue;
            }
            let mut q = Some(p);
            for (j, &e) in free.iter().enumerate() {
                q = q.and_then(|q| self.assign(q, e, mask >> j & 1 == 1));
            }
            out.extend(q);
        }
        out
    }

    fn run(&self, p: Partial, k: usize, out: &mut Vec<FplConfig>) {
        if k == self.order.len() {
            debug_assert_eq!(p.set.count_ones() as usize, edge_count(self.l));
            out.push(FplConfig {
                size: self.l,
                edges: p.on,
            });
            return;
        }
        for q in self.children(p, k) {
            self.run(q, k + 1, out);
        }
    }

    fn enumerate(&self, exec: Exec) -> Vec<FplConfig> {
        let Some(root) = self.start() else {
            return Vec::new();
        };
        // Expand a frontier sequentially, then finish each subtree on a worker.
        let mut frontier = vec![root];
        let mut depth = 0;
        while depth < self.order.len() && frontier.len() < 64 {
            frontier = frontier.into_iter().flat_map(|p| self.children(p, depth)).collect();
            depth += 1;
        }
        let parts = exec.map(frontier, |p| {
            let mut out = Vec::new();
            self.run(p, depth, &mut out);
            out
        });
        let mut all: Vec<FplConfig> = parts.into_iter().flatten().collect();
        all.sort_unstable();
        all
    }
}

fn check_size(l: usize) -> Result<()> {
    if l == 0 || l > MAX_FPL_SIZE {
        return Err(Error::ConfigError(format!("FPL size must be in 1..={MAX_FPL_SIZE}, got {l}")));
    }
    Ok(())
}

/// Every FPL configuration of size `L`, sorted by bitmap.
pub fn enumerate_fpl(l: usize, exec: Exec) -> Result<Vec<FplConfig>> {
    check_size(l)?;
    Ok(Search::new(l, false).enumerate(exec))
}

/// Every half-turn symmetric FPL configuration of size `L`, sorted by bitmap.
pub fn enumerate_htsfpl(l: usize, exec: Exec) -> Result<Vec<FplConfig>> {
    check_size(l)?;
    Ok(Search::new(l, true).enumerate(exec))
}
