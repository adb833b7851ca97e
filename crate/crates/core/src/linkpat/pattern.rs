use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The three link-pattern families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    /// Odd size, one defect connected to the center.
    Odd,
    /// Even size in the disk (identified connectivities).
    Even,
    /// Even size around a puncture (distinct connectivities).
    Punctured,
}

impl Kind {
    pub fn check_size(self, size: usize) -> Result<()> {
        let ok = match self {
            Kind::Odd => size % 2 == 1,
            Kind::Even | Kind::Punctured => size.is_multiple_of(2) && size > 0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::SizeParityMismatch {
                size,
                what: self.name(),
            })
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Odd => "odd",
            Kind::Even => "even",
            Kind::Punctured => "punctured",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "odd" => Ok(Kind::Odd),
            "even" | "even-ic" | "ic" => Ok(Kind::Even),
            "punctured" | "even-dc" | "dc" => Ok(Kind::Punctured),
            _ => Err(Error::Parse(format!("unknown pattern kind {s:?}"))),
        }
    }
}

/// A link pattern of size `L`, stored as cover offsets: point `i` is joined to
/// the integer `M(i) = i + d(i)` on the universal cover, with `M(i+L) = M(i)+L`.
/// For odd patterns `d = 0` marks the defect. Even patterns keep every arc
/// inside `[1, L]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkPattern {
    kind: Kind,
    offsets: Vec<i64>,
}

/// Result of acting with a Temperley–Lieb generator on a single pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EAction {
    pub pattern: LinkPattern,
    pub contractible_loops: u32,
    pub wrapping_loops: u32,
}

impl LinkPattern {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn size(&self) -> usize {
        self.offsets.len()
    }

    pub fn offsets(&self) -> &[i64] {
        &self.offsets
    }

    fn l(&self) -> i64 {
        self.offsets.len() as i64
    }

    fn label(&self, x: i64) -> usize {
        ((x - 1).rem_euclid(self.l()) + 1) as usize
    }

    fn d(&self, label: usize) -> i64 {
        self.offsets[label - 1]
    }

    pub fn defect(&self) -> Option<usize> {
        match self.kind {
            Kind::Odd => self.offsets.iter().position(|&d| d == 0).map(|p| p + 1),
            _ => None,
        }
    }

    /// Partner of the cover point `x`, or `None` for a defect.
    pub fn cover_partner(&self, x: i64) -> Option<i64> {
        let d = self.d(self.label(x));
        if self.kind == Kind::Odd && d == 0 {
            None
        } else {
            Some(x + d)
        }
    }

    /// Partner label of `i` in `1..=L`.
    pub fn partner(&self, i: usize) -> Option<usize> {
        self.cover_partner(i as i64).map(|y| self.label(y))
    }

    /// Arcs as label pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = (1..=self.size())
            .filter_map(|i| self.partner(i).map(|j| (i.min(j), i.max(j))))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// Builds a pattern from raw offsets and checks every invariant of its kind.
    pub fn from_offsets(kind: Kind, offsets: Vec<i64>) -> Result<Self> {
        kind.check_size(offsets.len())?;
        let p = LinkPattern { kind, offsets };
        p.validate()?;
        Ok(p)
    }

    pub fn punctured(offsets: Vec<i64>) -> Result<Self> {
        Self::from_offsets(Kind::Punctured, offsets)
    }

    /// Disk pattern from its arcs (labels `1..=L`).
    pub fn even(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut d = vec![i64::MIN; size];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > size || b > size || a == b {
                return Err(Error::Parse(format!("bad arc ({a},{b})")));
            }
            d[a - 1] = b as i64 - a as i64;
            d[b - 1] = a as i64 - b as i64;
        }
        if d.contains(&i64::MIN) {
            return Err(Error::Parse("not a perfect matching".into()));
        }
        Self::from_offsets(Kind::Even, d)
    }

    /// Odd pattern from the defect and arcs; arcs are lifted into the window
    /// `(ℓ, ℓ+L)` of the cover.
    pub fn odd(size: usize, defect: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Kind::Odd.check_size(size)?;
        if defect == 0 || defect > size {
            return Err(Error::Parse(format!("defect {defect} out of range")));
        }
        let lift = |x: usize| if x > defect { x as i64 } else { (x + size) as i64 };
        let mut d = vec![i64::MIN; size];
        d[defect - 1] = 0;
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > size || b > size || a == b || a == defect || b == defect {
                return Err(Error::Parse(format!("bad arc ({a},{b})")));
            }
            d[a - 1] = lift(b) - lift(a);
            d[b - 1] = lift(a) - lift(b);
        }
        if d.contains(&i64::MIN) {
            return Err(Error::Parse("arcs do not cover all points".into()));
        }
        Self::from_offsets(Kind::Odd, d)
    }

    fn validate(&self) -> Result<()> {
        let l = self.l();
        let bad = |why: &str| Err(Error::Parse(format!("invalid {} pattern {:?}: {why}", self.kind.name(), self.offsets)));
        let mut defects = 0;
        for i in 1..=l {
            let d = self.d(i as usize);
            if self.kind == Kind::Odd && d == 0 {
                defects += 1;
                continue;
            }
            if d == 0 || d.abs() > l - 1 || d.rem_euclid(2) != 1 {
                return bad("offset out of range or even");
            }
            if self.kind == Kind::Even && !(1..=l).contains(&(i + d)) {
                return bad("arc leaves [1, L]");
            }
            if self.cover_partner(i + d) != Some(i) {
                return bad("not an involution");
            }
            if d > 0 {
                for y in i + 1..i + d {
                    match self.cover_partner(y) {
                        Some(m) if m > i && m < i + d => {}
                        _ => return bad("crossing arcs or enclosed defect"),
                    }
                }
            }
        }
        if self.kind == Kind::Odd && defects != 1 {
            return bad("needs exactly one defect");
        }
        Ok(())
    }

    /// All patterns of a kind and size in canonical (offset-lexicographic) order.
    pub fn enumerate(kind: Kind, size: usize) -> Result<Vec<LinkPattern>> {
        kind.check_size(size)?;
        let mut out = Vec::new();
        match kind {
            Kind::Even => {
                for w in dyck_words(size) {
                    out.push(LinkPattern {
                        kind,
                        offsets: match_linear(&w),
                    });
                }
            }
            Kind::Odd => {
                for defect in 1..=size {
                    for w in dyck_words(size - 1) {
                        // Window points defect+1, …, defect+L−1 carry the word.
                        let m = match_linear(&w);
                        let mut d = vec![0; size];
                        for (k, dk) in m.into_iter().enumerate() {
                            let label = (defect + k) % size + 1;
                            d[label - 1] = dk;
                        }
                        out.push(LinkPattern { kind, offsets: d });
                    }
                }
            }
            Kind::Punctured => {
                let n = size / 2;
                for mask in 0u64..(1 << size) {
                    if mask.count_ones() as usize != n {
                        continue;
                    }
                    let opens: Vec<bool> = (0..size).map(|k| mask >> k & 1 == 1).collect();
                    out.push(LinkPattern {
                        kind,
                        offsets: match_periodic(&opens),
                    });
                }
            }
        }
        out.sort();
        debug_assert!(out.iter().all(|p| p.validate().is_ok()));
        Ok(out)
    }

    /// Temperley–Lieb generator `e_i` (cyclic: `e_L` joins `L` and `1`).
    pub fn apply_e(&self, i: usize) -> Result<EAction> {
        let l = self.l();
        if i == 0 || i > self.size() {
            return Err(Error::ConfigError(format!("generator index {i} out of range")));
        }
        if l < 2 {
            return Err(Error::ConfigError("no generators at size 1".into()));
        }
        let i = i as i64;
        let j = i + 1;
        let mut d = self.offsets.clone();
        let mut contractible = 0;
        let mut wrapping = 0;
        let set = |d: &mut Vec<i64>, x: i64, y: i64| {
            let lab = ((x - 1).rem_euclid(l)) as usize;
            d[lab] = y - x;
        };
        match (self.cover_partner(i), self.cover_partner(j)) {
            (None, Some(b)) => {
                set(&mut d, i, j);
                set(&mut d, j, i);
                set(&mut d, b, b);
            }
            (Some(a), None) => {
                set(&mut d, i, j);
                set(&mut d, j, i);
                set(&mut d, a, a);
            }
            (None, None) => unreachable!("two defects"),
            (Some(a), Some(b)) => {
                if a == j {
                    contractible = 1;
                } else if a == j - l && self.kind == Kind::Punctured {
                    wrapping = 1;
                    set(&mut d, i, j);
                    set(&mut d, j, i);
                } else if (a - j).rem_euclid(l) == 0 {
                    contractible = 1;
                } else {
                    if (b - a).abs() > l - 1 {
                        return Err(Error::OffsetOverflow {
                            offset: b - a,
                            size: self.size(),
                        });
                    }
                    set(&mut d, i, j);
                    set(&mut d, j, i);
                    set(&mut d, a, b);
                    set(&mut d, b, a);
                }
            }
        }
        let pattern = LinkPattern { kind: self.kind, offsets: d }.canonical();
        debug_assert!(pattern.validate().is_ok(), "e_{i} produced {pattern:?} from {self:?}");
        Ok(EAction {
            pattern,
            contractible_loops: contractible,
            wrapping_loops: wrapping,
        })
    }

    /// Re-encodes disk patterns with all arcs in `[1, L]`.
    fn canonical(self) -> Self {
        if self.kind != Kind::Even {
            return self;
        }
        let l = self.l();
        let mut d = self.offsets.clone();
        for i in 1..=l {
            let m = self.label(i + self.offsets[i as usize - 1]) as i64;
            d[i as usize - 1] = m - i;
        }
        LinkPattern { kind: self.kind, offsets: d }
    }

    /// Cyclic relabeling `i → i+1`.
    pub fn rotate(&self) -> Self {
        let l = self.size();
        let mut d = vec![0; l];
        for i in 0..l {
            d[(i + 1) % l] = self.offsets[i];
        }
        LinkPattern { kind: self.kind, offsets: d }.canonical()
    }

    pub fn rotate_by(&self, k: usize) -> Self {
        (0..k % self.size().max(1)).fold(self.clone(), |p, _| p.rotate())
    }

    /// Whether `i` and `i+1` (cyclically) form a little arch; for punctured
    /// patterns only the short way counts.
    pub fn has_little_arch(&self, i: usize) -> bool {
        self.cover_partner(i as i64) == Some(i as i64 + 1)
            || (self.kind == Kind::Even && i == self.size() && self.partner(i) == Some(1))
    }

    /// Inserts a little arch at positions `(i, i+1)` of the size-`L+2` pattern,
    /// shifting points `≥ i` up by two. Requires `1 ≤ i ≤ L+1`.
    pub fn insert_little_arch(&self, i: usize) -> Result<Self> {
        let l = self.l();
        let nl = l + 2;
        if i == 0 || i as i64 > l + 1 {
            return Err(Error::ConfigError(format!("insertion point {i} out of range")));
        }
        let i = i as i64;
        let map = |x: i64| {
            let k = (x - 1).div_euclid(l);
            let r = (x - 1).rem_euclid(l) + 1;
            let r2 = if r >= i { r + 2 } else { r };
            r2 + k * nl
        };
        let mut d = vec![0; nl as usize];
        for x in 1..=l {
            let nx = map(x);
            d[nx as usize - 1] = match self.cover_partner(x) {
                Some(y) => map(y) - nx,
                None => 0,
            };
        }
        d[i as usize - 1] = 1;
        d[i as usize] = -1;
        Self::from_offsets(self.kind, d)
    }

    /// The base pattern: `i ↔ L+1−i` (even), `i ↔ L+1−i` around the back of the
    /// puncture (punctured), `i ↔ L+1−i` with central defect (odd).
    pub fn base(kind: Kind, size: usize) -> Result<Self> {
        kind.check_size(size)?;
        let n = size / 2;
        let mut d = vec![0i64; size];
        match kind {
            Kind::Even => {
                for i in 1..=n {
                    let j = size + 1 - i;
                    d[i - 1] = (j - i) as i64;
                    d[j - 1] = -((j - i) as i64);
                }
            }
            Kind::Odd | Kind::Punctured => {
                for i in 1..=n {
                    let j = size + 1 - i;
                    d[i - 1] = 1 - 2 * i as i64;
                    d[j - 1] = 2 * i as i64 - 1;
                }
            }
        }
        Self::from_offsets(kind, d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self.kind {
            Kind::Odd => serde_json::json!({
                "defect": self.defect(),
                "match": self.pairs(),
            }),
            Kind::Even => serde_json::json!({ "match": self.pairs() }),
            Kind::Punctured => serde_json::json!({ "offsets": self.offsets }),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let pairs = |v: &serde_json::Value| -> Result<Vec<(usize, usize)>> {
            serde_json::from_value(v.clone()).map_err(Error::from)
        };
        if let Some(off) = v.get("offsets") {
            let offsets: Vec<i64> = serde_json::from_value(off.clone())?;
            return Self::punctured(offsets);
        }
        let m = v.get("match").ok_or_else(|| Error::Parse("missing \"match\"".into()))?;
        let pairs = pairs(m)?;
        match v.get("defect") {
            Some(def) => {
                let defect: usize = serde_json::from_value(def.clone())?;
                Self::odd(2 * pairs.len() + 1, defect, &pairs)
            }
            None => Self::even(2 * pairs.len(), &pairs),
        }
    }

    /// Compact text form: arcs as `a-b`, defect as `*ℓ`, punctured as offsets.
    pub fn key(&self) -> String {
        match self.kind {
            Kind::Punctured => {
                let s: Vec<String> = self.offsets.iter().map(|d| d.to_string()).collect();
                format!("[{}]", s.join(","))
            }
            _ => {
                let mut parts: Vec<String> = self.pairs().iter().map(|(a, b)| format!("{a}-{b}")).collect();
                if let Some(l) = self.defect() {
                    parts.push(format!("*{l}"));
                }
                format!("{{{}}}", parts.join(" "))
            }
        }
    }
}

impl fmt::Debug for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.name(), self.key())
    }
}

impl fmt::Display for LinkPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.key())
    }
}

/// Dyck words of the given even length (`true` = opener).
fn dyck_words(len: usize) -> Vec<Vec<bool>> {
    fn go(len: usize, open: usize, acc: &mut Vec<bool>, out: &mut Vec<Vec<bool>>) {
        let used = acc.len();
        if used == len {
            out.push(acc.clone());
            return;
        }
        let closed = used - open;
        if open < len / 2 {
            acc.push(true);
            go(len, open + 1, acc, out);
            acc.pop();
        }
        if closed < open {
            acc.push(false);
            go(len, open, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

fn match_linear(word: &[bool]) -> Vec<i64> {
    let mut d = vec![0; word.len()];
    let mut stack = Vec::new();
    for (k, &open) in word.iter().enumerate() {
        if open {
            stack.push(k);
        } else {
            let a = stack.pop().expect("balanced word");
            d[a] = (k - a) as i64;
            d[k] = -((k - a) as i64);
        }
    }
    d
}

/// Matches a balanced cyclic word on the cover; returns offsets for one period.
fn match_periodic(opens: &[bool]) -> Vec<i64> {
    let l = opens.len();
    let mut d = vec![0; l];
    let mut stack: Vec<usize> = Vec::new();
    for x in 0..3 * l {
        if opens[x % l] {
            stack.push(x);
        } else if let Some(a) = stack.pop() {
            if (l..2 * l).contains(&a) {
                d[a - l] = (x - a) as i64;
            }
            if (l..2 * l).contains(&x) {
                d[x - l] = a as i64 - x as i64;
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(LinkPattern::enumerate(Kind::Odd, 5).unwrap().len(), 10);
        assert_eq!(LinkPattern::enumerate(Kind::Even, 4).unwrap().len(), 2);
        assert_eq!(LinkPattern::enumerate(Kind::Punctured, 4).unwrap().len(), 6);
        for n in 0..5u64 {
            let l = 2 * n as usize;
            if n > 0 {
                assert_eq!(LinkPattern::enumerate(Kind::Punctured, l).unwrap().len() as u64, binom(2 * n, n));
                assert_eq!(LinkPattern::enumerate(Kind::Even, l).unwrap().len() as u64, binom(2 * n, n) / (n + 1));
            }
            assert_eq!(LinkPattern::enumerate(Kind::Odd, l + 1).unwrap().len() as u64, binom(2 * n + 1, n));
        }
        assert!(matches!(
            LinkPattern::enumerate(Kind::Odd, 4),
            Err(Error::SizeParityMismatch { .. })
        ));
    }

    #[test]
    fn e_examples() {
        let p = LinkPattern::even(4, &[(1, 2), (3, 4)]).unwrap();
        let r = p.apply_e(1).unwrap();
        assert_eq!((r.pattern.clone(), r.contractible_loops), (p, 1));

        let p = LinkPattern::odd(3, 1, &[(2, 3)]).unwrap();
        let r = p.apply_e(1).unwrap();
        assert_eq!(r.pattern, LinkPattern::odd(3, 3, &[(1, 2)]).unwrap());
        assert_eq!((r.contractible_loops, r.wrapping_loops), (0, 0));

        let p = LinkPattern::punctured(vec![-1, 1]).unwrap();
        let r = p.apply_e(1).unwrap();
        assert_eq!(r.pattern, LinkPattern::punctured(vec![1, -1]).unwrap());
        assert_eq!((r.contractible_loops, r.wrapping_loops), (0, 1));
    }

    #[test]
    fn rotation_examples() {
        let p = LinkPattern::odd(3, 1, &[(2, 3)]).unwrap();
        assert_eq!(p.rotate(), LinkPattern::odd(3, 2, &[(1, 3)]).unwrap());
        let q = LinkPattern::punctured(vec![1, -1, 1, -1]).unwrap();
        assert_eq!(q.rotate().offsets(), &[-1, 1, -1, 1]);
        for kind in [Kind::Even, Kind::Punctured] {
            for p in LinkPattern::enumerate(kind, 4).unwrap() {
                assert_eq!(p.rotate_by(4), p);
            }
        }
    }

    #[test]
    fn insertion_examples() {
        let p = LinkPattern::odd(1, 1, &[]).unwrap();
        assert_eq!(p.insert_little_arch(1).unwrap(), LinkPattern::odd(3, 3, &[(1, 2)]).unwrap());
        let e = LinkPattern::even(2, &[(1, 2)]).unwrap();
        assert_eq!(e.insert_little_arch(2).unwrap(), LinkPattern::even(4, &[(1, 4), (2, 3)]).unwrap());
        let mut seen = std::collections::HashSet::new();
        for p in LinkPattern::enumerate(Kind::Odd, 3).unwrap() {
            for i in 1..=4 {
                assert!(seen.insert((i, p.insert_little_arch(i).unwrap())));
            }
        }
    }

    #[test]
    fn insertion_is_injective_at_five() {
        for i in 1..=4 {
            let imgs: Vec<_> = LinkPattern::enumerate(Kind::Odd, 3)
                .unwrap()
                .iter()
                .map(|p| p.insert_little_arch(i).unwrap())
                .collect();
            let set: std::collections::HashSet<_> = imgs.iter().collect();
            assert_eq!(set.len(), imgs.len());
            assert!(imgs.iter().all(|p| p.has_little_arch(i)));
        }
    }

    #[test]
    fn base_patterns() {
        assert_eq!(LinkPattern::base(Kind::Punctured, 2).unwrap().offsets(), &[-1, 1]);
        let b = LinkPattern::base(Kind::Odd, 5).unwrap();
        assert_eq!(b.defect(), Some(3));
        assert_eq!(b.pairs(), vec![(1, 5), (2, 4)]);
        assert_eq!(LinkPattern::base(Kind::Even, 4).unwrap().pairs(), vec![(1, 4), (2, 3)]);
    }

    #[test]
    fn json_round_trip() {
        for kind in [Kind::Odd, Kind::Even, Kind::Punctured] {
            let size = if kind == Kind::Odd { 5 } else { 4 };
            for p in LinkPattern::enumerate(kind, size).unwrap() {
                assert_eq!(LinkPattern::from_json(&p.to_json()).unwrap(), p);
            }
        }
    }
}
