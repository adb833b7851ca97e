use crate::error::{Error, Result};
use crate::linkpat::{Kind, LinkPattern};

use super::config::{incident, occupied_stubs, Edge, FplConfig};

/// Boundary pairing of a configuration together with the winding of each path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryMatching {
    pub size: usize,
    /// `partner[i-1]` is the boundary point joined to point `i` (`1..=2L`).
    pub partner: Vec<usize>,
    /// Signed number of counterclockwise crossings of the path from `i` with
    /// the cut ray.
    pub winding: Vec<i64>,
}

/// Doubled coordinates with the grid center at the origin and `y` pointing up.
fn point(l: usize, (r, c): (i64, i64)) -> (i64, i64) {
    let l = l as i64;
    (2 * c - (l - 1), (l - 1) - 2 * r)
}

/// Direction of the cut ray. It leaves the grid between the top stubs of
/// columns 0 and 1, i.e. between boundary points `2L` and `1`, and meets no
/// lattice point.
fn ray(l: usize) -> (i64, i64) {
    let n = 2 * l as i64 + 1;
    (-n, n + 1)
}

/// Signed crossing of the segment `a → b` with the ray.
fn crossing(d: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    let cross = |p: (i64, i64)| d.0 * p.1 - d.1 * p.0;
    let dot = |p: (i64, i64)| d.0 * p.0 + d.1 * p.1;
    let (ca, cb) = (cross(a), cross(b));
    if ca.signum() == cb.signum() || ca == 0 || cb == 0 {
        return 0;
    }
    // Intersection `a + u (b − a)` with `u = ca / (ca − cb)`; keep it when it
    // lies on the positive half-line.
    let along = dot(a) * (ca - cb) + ca * dot((b.0 - a.0, b.1 - a.1));
    if along * (ca - cb).signum() <= 0 {
        return 0;
    }
    if ca < 0 {
        1
    } else {
        -1
    }
}

fn other_end(e: Edge, v: (i64, i64)) -> (i64, i64) {
    let [a, b] = e.ends();
    if a == v {
        b
    } else {
        a
    }
}

/// Follows every path from an occupied stub to its other end.
pub fn boundary_matching(c: &FplConfig) -> Result<BoundaryMatching> {
    c.validate()?;
    let l = c.size;
    let li = l as i64;
    let stubs = occupied_stubs(l);
    let n = stubs.len();
    let inside = |(r, col): (i64, i64)| (0..li).contains(&r) && (0..li).contains(&col);
    let d = ray(l);
    let mut partner = vec![0; n];
    let mut winding = vec![0; n];
    for (k, &s) in stubs.iter().enumerate() {
        let [a, b] = s.ends();
        let (outer, mut v) = if inside(a) { (b, a) } else { (a, b) };
        let mut w = crossing(d, point(l, outer), point(l, v));
        let mut last = s;
        let mut steps = 0;
        while inside(v) {
            let next = incident(v.0, v.1)
                .into_iter()
                .find(|&e| e != last && c.has(e))
                .ok_or_else(|| Error::TracingInconsistency(format!("dead end at {v:?}")))?;
            let u = other_end(next, v);
            w += crossing(d, point(l, v), point(l, u));
            last = next;
            v = u;
            steps += 1;
            if steps > 4 * l * l {
                return Err(Error::TracingInconsistency("path does not terminate".into()));
            }
        }
        let j = stubs
            .iter()
            .position(|&e| e == last)
            .ok_or_else(|| Error::TracingInconsistency(format!("path from {} leaves through an empty stub", k + 1)))?;
        partner[k] = j + 1;
        winding[k] = w;
    }
    Ok(BoundaryMatching { size: l, partner, winding })
}

impl BoundaryMatching {
    /// Cover position of the partner of `i`, with boundary points `1..=2L`
    /// sitting in the sheet cut between `2L` and `1`.
    pub fn lift(&self, i: usize) -> i64 {
        self.partner[i - 1] as i64 + 2 * self.size as i64 * self.winding[i - 1]
    }

    /// `m(i+L) ≡ m(i)+L (mod 2L)` for every `i`.
    pub fn is_half_turn_symmetric(&self) -> bool {
        let n = 2 * self.size;
        (1..=n).all(|i| {
            let j = (i + self.size - 1) % n + 1;
            (self.partner[i - 1] + self.size - 1) % n + 1 == self.partner[j - 1]
        })
    }
}

/// Link pattern of a configuration.
///
/// Plain configurations give a disk pattern of size `2L`. Half-turn symmetric
/// ones descend to the cylinder of size `L`: odd when `L` is odd, with the
/// diameter path (`m(i) = i ± L`) as defect, punctured when `L` is even.
pub fn extract_link_pattern(c: &FplConfig, symmetric: bool) -> Result<LinkPattern> {
    let m = boundary_matching(c)?;
    let l = c.size;
    if !symmetric {
        let pairs: Vec<(usize, usize)> = (1..=2 * l)
            .filter(|&i| i < m.partner[i - 1])
            .map(|i| (i, m.partner[i - 1]))
            .collect();
        return LinkPattern::even(2 * l, &pairs).map_err(|e| Error::TracingInconsistency(e.to_string()));
    }
    if !c.is_half_turn_symmetric() || !m.is_half_turn_symmetric() {
        return Err(Error::AsymmetricConfig);
    }
    let li = l as i64;
    let mut offsets = Vec::with_capacity(l);
    for i in 1..=l {
        let lift = m.lift(i);
        offsets.push(if (lift - i as i64).abs() == li { 0 } else { lift - i as i64 });
    }
    let kind = if l % 2 == 1 { Kind::Odd } else { Kind::Punctured };
    LinkPattern::from_offsets(kind, offsets.clone())
        .map_err(|e| Error::TracingInconsistency(format!("offsets {offsets:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::fpl::{enumerate_fpl, enumerate_htsfpl};

    #[test]
    fn plain_three() {
        let mut counts: std::collections::BTreeMap<LinkPattern, usize> = Default::default();
        for c in enumerate_fpl(3, Exec::Sequential).unwrap() {
            *counts.entry(extract_link_pattern(&c, false).unwrap()).or_default() += 1;
        }
        assert_eq!(counts.len(), 5);
        let mut v: Vec<usize> = counts.values().copied().collect();
        v.sort_unstable();
        assert_eq!(v, [1, 1, 1, 2, 2]);
    }

    #[test]
    fn symmetric_three() {
        let pats: Vec<LinkPattern> = enumerate_htsfpl(3, Exec::Sequential)
            .unwrap()
            .iter()
            .map(|c| extract_link_pattern(c, true).unwrap())
            .collect();
        assert_eq!(pats.len(), 3);
        let mut defects: Vec<usize> = pats.iter().map(|p| p.defect().unwrap()).collect();
        defects.sort_unstable();
        assert_eq!(defects, [1, 2, 3]);
    }

    #[test]
    fn asymmetric_rejected() {
        let c = enumerate_fpl(3, Exec::Sequential)
            .unwrap()
            .into_iter()
            .find(|c| !c.is_half_turn_symmetric())
            .unwrap();
        assert!(matches!(extract_link_pattern(&c, true), Err(Error::AsymmetricConfig)));
    }

    #[test]
    fn matching_symmetry_and_involution() {
        for l in 1..=6 {
            for c in enumerate_htsfpl(l, Exec::Parallel).unwrap() {
                let m = boundary_matching(&c).unwrap();
                assert!(m.is_half_turn_symmetric());
                for i in 1..=2 * l {
                    let j = m.partner[i - 1];
                    assert_eq!(m.partner[j - 1], i);
                    assert_eq!(m.winding[j - 1], -m.winding[i - 1]);
                }
            }
        }
    }
}
