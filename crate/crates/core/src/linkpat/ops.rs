use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{LoopRing, Matrix, Scalar};

use super::basis::{operator_matrix, Basis, PatternVector};
use super::pattern::{Kind, LinkPattern};

/// `e_i π` with loops weighted by `τ` (contractible) and `wrap` (around the puncture).
pub fn e_vector<R: LoopRing>(p: &LinkPattern, i: usize, wrap: &R) -> Result<PatternVector<R>> {
    let act = p.apply_e(i)?;
    let w = R::tau().pow(act.contractible_loops) * wrap.pow(act.wrapping_loops);
    let mut v = PatternVector::zero();
    v.add(act.pattern, w);
    Ok(v)
}

/// Matrix of `e_i` with `E[π', π]` the weight of `e_i π = π'`.
pub fn e_matrix<R: LoopRing>(basis: &Basis, i: usize, wrap: &R) -> Result<Matrix<R>> {
    operator_matrix(basis, basis, |p| e_vector(p, i, wrap))
}

/// Matrix of the rotation `i → i+1`.
pub fn rotation_matrix<R: Scalar>(basis: &Basis) -> Matrix<R> {
    operator_matrix(basis, basis, |p| Ok(PatternVector::basis_vector(p.rotate()))).expect("rotation is total")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Crossing {
    /// `t_i = q^{1/2} I + q^{-1/2} e_i`
    Over,
    /// `t_i^{-1} = q^{-1/2} I + q^{1/2} e_i`
    Under,
}

/// Resolves a crossing at `(i, i+1)` by the skein relation.
pub fn apply_crossing<R: LoopRing>(i: usize, sign: Crossing, xi: &PatternVector<R>) -> Result<PatternVector<R>> {
    let (c_id, c_e) = match sign {
        Crossing::Over => (R::sqrt_q(), R::inv_sqrt_q()),
        Crossing::Under => (R::inv_sqrt_q(), R::sqrt_q()),
    };
    let tau = R::tau();
    xi.map_linear(|p| {
        let mut v = PatternVector::basis_vector(p.clone());
        v = scale(&v, &c_id);
        v.add_vector(&e_vector(p, i, &tau)?, &c_e);
        Ok(v)
    })
}

pub fn crossing_matrix<R: LoopRing>(basis: &Basis, i: usize, sign: Crossing) -> Result<Matrix<R>> {
    operator_matrix(basis, basis, |p| apply_crossing(i, sign, &PatternVector::basis_vector(p.clone())))
}

fn scale<R: Scalar>(v: &PatternVector<R>, c: &R) -> PatternVector<R> {
    let mut out = PatternVector::zero();
    out.add_vector(v, c);
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Projection {
    /// New strand passes under every arc it meets.
    P0,
    /// New strand passes over every arc it meets.
    Pinf,
}

impl Projection {
    pub fn name(self) -> &'static str {
        match self {
            Projection::P0 => "P0",
            Projection::Pinf => "Pinf",
        }
    }
}

/// Size-raising projection. A new point `L+1` is inserted between `L` and `1`
/// and joined through the center to the defect (odd input, even output) or to
/// the puncture (punctured input, odd output, the new defect being whatever
/// ends up attached to the center). Crossings are resolved by the skein
/// relation.
pub fn project_up<R: LoopRing>(p: &LinkPattern, variant: Projection) -> Result<PatternVector<R>> {
    let l = p.size() as i64;
    let (lift, to_center): (Box<dyn Fn(usize) -> i64>, bool) = match p.kind() {
        Kind::Odd => {
            let def = p.defect().expect("odd pattern has a defect");
            (Box::new(move |i| if i > def { i as i64 } else { i as i64 + l }), false)
        }
        Kind::Punctured => (Box::new(|i| i as i64), true),
        Kind::Even => {
            return Err(Error::SizeParityMismatch {
                size: p.size(),
                what: "projection source (odd or punctured)",
            })
        }
    };
    let label = |x: i64| ((x - 1).rem_euclid(l) + 1) as usize;

    // Arcs enclosing the insertion point, innermost first.
    let mut crossed: Vec<(i64, i64)> = Vec::new();
    for i in 1..=p.size() {
        let d = p.offsets()[i - 1];
        let x = lift(i);
        if d > 0 && x <= l && x + d > l {
            crossed.push((x, x + d));
        }
    }
    crossed.sort_by_key(|&(a, b)| b - a);
    let k = crossed.len();

    // Node layout: boundary labels 1..=L+1 at 0..=L, center at L+1, then ports.
    let nl = p.size() + 1;
    let center = nl;
    let port = |m: usize, which: usize| nl + 1 + 4 * m + which;
    const XIN: usize = 0;
    const XOUT: usize = 1;
    const LEFT: usize = 2;
    const RIGHT: usize = 3;
    let end_node = match p.defect() {
        Some(def) if !to_center => def - 1,
        _ => center,
    };

    let mut base_edges: Vec<(usize, usize)> = Vec::new();
    if k == 0 {
        base_edges.push((nl - 1, end_node));
    } else {
        base_edges.push((nl - 1, port(0, XIN)));
        for m in 0..k - 1 {
            base_edges.push((port(m, XOUT), port(m + 1, XIN)));
        }
        base_edges.push((port(k - 1, XOUT), end_node));
        for (m, &(a, b)) in crossed.iter().enumerate() {
            base_edges.push((label(a) - 1, port(m, LEFT)));
            base_edges.push((port(m, RIGHT), label(b) - 1));
        }
    }
    let crossed_labels: Vec<usize> = crossed.iter().flat_map(|&(a, b)| [label(a), label(b)]).collect();
    let kept: Vec<(usize, usize)> = p
        .pairs()
        .into_iter()
        .filter(|(a, _)| !crossed_labels.contains(a))
        .collect();

    // Smoothing S1 joins X_in with the left half; S2 joins X_in with the right half.
    let (w_s1, w_s2) = match variant {
        Projection::P0 => (R::sqrt_q(), R::inv_sqrt_q()),
        Projection::Pinf => (R::inv_sqrt_q(), R::sqrt_q()),
    };
    let tau = R::tau();
    let nodes = nl + 1 + 4 * k;
    let mut out = PatternVector::zero();
    for choice in 0u64..(1 << k) {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
            adj[a].push(b);
            adj[b].push(a);
        };
        for &(a, b) in &base_edges {
            link(a, b, &mut adj);
        }
        let mut w = R::one();
        for m in 0..k {
            if choice >> m & 1 == 0 {
                link(port(m, XIN), port(m, LEFT), &mut adj);
                link(port(m, XOUT), port(m, RIGHT), &mut adj);
                w = w * &w_s1;
            } else {
                link(port(m, XIN), port(m, RIGHT), &mut adj);
                link(port(m, XOUT), port(m, LEFT), &mut adj);
                w = w * &w_s2;
            }
        }
        let mut seen = vec![false; nodes];
        let mut pairs = kept.clone();
        let mut defect = None;
        let terminals: Vec<usize> = (0..nl).chain(std::iter::once(center)).collect();
        for &t in &terminals {
            if seen[t] || adj[t].is_empty() {
                continue;
            }
            let (mut prev, mut cur) = (t, adj[t][0]);
            seen[t] = true;
            while cur > center {
                seen[cur] = true;
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            seen[cur] = true;
            if cur == center || t == center {
                defect = Some(if cur == center { t } else { cur } + 1);
            } else {
                pairs.push((t.min(cur) + 1, t.max(cur) + 1));
            }
        }
        // Closed loops among the ports.
        let mut loops = 0;
        for s in center + 1..nodes {
            if seen[s] {
                continue;
            }
            loops += 1;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                if !seen[x] {
                    seen[x] = true;
                    stack.extend(adj[x].iter().copied());
                }
            }
        }
        let q = if to_center {
            let def = defect.ok_or_else(|| Error::TracingInconsistency("no strand reaches the center".into()))?;
            LinkPattern::odd(nl, def, &pairs)?
        } else {
            LinkPattern::even(nl, &pairs)?
        };
        out.add(q, w * tau.pow(loops));
    }
    Ok(out)
}

/// Matrix of a projection, columns indexed by the source basis.
pub fn projection_matrix<R: LoopRing>(kind: Kind, size: usize, variant: Projection) -> Result<Matrix<R>> {
    let from = Basis::get(kind, size)?;
    let to_kind = match kind {
        Kind::Odd => Kind::Even,
        _ => Kind::Odd,
    };
    let to = Basis::get(to_kind, size + 1)?;
    operator_matrix(&from, &to, |p| project_up(p, variant))
}

/// Number of loops formed by gluing two disk patterns along their boundary.
pub fn paste_loops(a: &LinkPattern, b: &LinkPattern) -> Result<usize> {
    if a.size() != b.size() || a.kind() != Kind::Even || b.kind() != Kind::Even {
        return Err(Error::SizeParityMismatch {
            size: b.size(),
            what: "pasting (equal-size disk patterns)",
        });
    }
    let n = a.size();
    let mut seen = vec![false; n + 1];
    let mut loops = 0;
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        loops += 1;
        let mut x = s;
        loop {
            seen[x] = true;
            let y = a.partner(x).expect("perfect matching");
            seen[y] = true;
            x = b.partner(y).expect("perfect matching");
            if x == s {
                break;
            }
        }
    }
    Ok(loops)
}

/// Gram matrix `⟨π|π'⟩ = τ^{loops}` over the disk patterns of a size.
pub fn gram_matrix<R: LoopRing>(size: usize) -> Result<Matrix<R>> {
    let basis = Basis::get(Kind::Even, size)?;
    let n = basis.dim();
    let tau = R::tau();
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = tau.pow(paste_loops(basis.pattern(i), basis.pattern(j))? as u32);
        }
    }
    Ok(g)
}
