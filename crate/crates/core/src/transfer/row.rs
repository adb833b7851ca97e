use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{CycNum, Matrix};
use crate::exec::Exec;
use crate::linkpat::{Basis, Kind, LinkPattern};

use super::param::{rhat_coeffs, Param};

/// The two plaquette faces. `Turn` joins top with left and bottom with right,
/// `Cross` joins top with right and bottom with left.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tile {
    Turn,
    Cross,
}

/// Face that carries the weight `a(z_i, t)`; the other one carries `b(z_i, t)`.
pub const A_TILE: Tile = Tile::Cross;

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
    Bottom,
}

/// Loop-model transfer matrix at the RS point. `matrix[(π', π)]` is the weight
/// of obtaining `π'` from `π` by adding one row.
#[derive(Clone, Debug)]
pub struct TransferOperator {
    pub kind: Kind,
    pub size: usize,
    pub z: Vec<Param>,
    pub t: Param,
    pub basis: Arc<Basis>,
    pub matrix: Matrix<CycNum>,
}

/// Connectivity of the new boundary after adding a row with the given tiles
/// (bit `k-1` set means plaquette `k` is a `Turn`).
pub fn trace_row(p: &LinkPattern, tiles: u64) -> Result<LinkPattern> {
    let l = p.size() as i64;
    let tile = |x: i64| {
        let lab = (x - 1).rem_euclid(l);
        if tiles >> lab & 1 == 1 {
            Tile::Turn
        } else {
            Tile::Cross
        }
    };
    let limit = 4 * l * l + 16;
    let mut d = vec![0i64; l as usize];
    let mut defect = None;
    for k in 1..=l {
        // Leave the top of plaquette k.
        let (mut pos, mut side) = match tile(k) {
            Tile::Turn => (k - 1, Side::Right),
            Tile::Cross => (k + 1, Side::Left),
        };
        let mut steps = 0;
        let end = loop {
            steps += 1;
            if steps > limit {
                return Err(Error::TracingInconsistency(format!("runaway path from new point {k} in {p:?}")));
            }
            match (side, tile(pos)) {
                (Side::Left, Tile::Turn) | (Side::Right, Tile::Cross) => break Some(pos),
                (Side::Left, Tile::Cross) | (Side::Right, Tile::Turn) => match p.cover_partner(pos) {
                    Some(m) => {
                        pos = m;
                        side = Side::Bottom;
                    }
                    None => break None,
                },
                (Side::Bottom, Tile::Turn) => {
                    pos += 1;
                    side = Side::Left;
                }
                (Side::Bottom, Tile::Cross) => {
                    pos -= 1;
                    side = Side::Right;
                }
            }
        };
        match end {
            Some(m) => d[k as usize - 1] = m - k,
            None => {
                if defect.replace(k).is_some() {
                    return Err(Error::TracingInconsistency("two new defects".into()));
                }
            }
        }
    }
    match p.kind() {
        Kind::Even => {
            let pairs: Vec<(usize, usize)> = (1..=l)
                .filter(|&k| d[k as usize - 1] > 0)
                .map(|k| (k as usize, ((k + d[k as usize - 1] - 1).rem_euclid(l) + 1) as usize))
                .map(|(a, b)| (a.min(b), a.max(b)))
                .collect();
            LinkPattern::even(l as usize, &pairs)
        }
        Kind::Odd => {
            if defect.is_none() {
                return Err(Error::TracingInconsistency("defect lost".into()));
            }
            LinkPattern::from_offsets(Kind::Odd, d)
        }
        Kind::Punctured => LinkPattern::from_offsets(Kind::Punctured, d),
    }
    .map_err(|e| Error::TracingInconsistency(format!("row trace of {p:?} with tiles {tiles:b}: {e}")))
}

/// Builds `T(t | z_1, …, z_L)`; every parameter may be `∞` or `0`.
pub fn build_transfer(kind: Kind, z: &[Param], t: &Param, exec: Exec) -> Result<TransferOperator> {
    let size = z.len();
    let basis = Basis::get(kind, size)?;
    let mut weights = Vec::with_capacity(size);
    for zi in z {
        let (a, b) = rhat_coeffs(zi, t)?;
        weights.push(match A_TILE {
            Tile::Turn => (a, b),
            Tile::Cross => (b, a),
        });
    }
    let configs = 1u64 << size;
    // Weight of each tile configuration.
    let conf_w: Vec<CycNum> = (0..configs)
        .map(|c| {
            (0..size).fold(CycNum::one(), |acc, k| {
                let (turn, cross) = &weights[k];
                acc * if c >> k & 1 == 1 { turn } else { cross }
            })
        })
        .collect();
    let dim = basis.dim();
    let columns = exec.try_map((0..dim).collect(), |col| -> Result<Vec<CycNum>> {
        let p = basis.pattern(col);
        let mut out = vec![CycNum::zero(); dim];
        if size == 1 {
            out[0] = CycNum::one();
            return Ok(out);
        }
        for (c, w) in conf_w.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let img = trace_row(p, c as u64)?;
            let r = basis.position(&img);
            out[r] = out[r].clone() + w;
        }
        Ok(out)
    })?;
    let mut matrix = Matrix::zeros(dim, dim);
    for (col, v) in columns.into_iter().enumerate() {
        for (row, x) in v.into_iter().enumerate() {
            matrix[(row, col)] = x;
        }
    }
    Ok(TransferOperator {
        kind,
        size,
        z: z.to_vec(),
        t: t.clone(),
        basis,
        matrix,
    })
}

/// `Ř_{i,i+1}(z, w) = a·I + b·e_i` on a pattern space (cyclic `i`).
pub fn build_rhat(basis: &Basis, i: usize, z: &Param, w: &Param) -> Result<Matrix<CycNum>> {
    let (a, b) = rhat_coeffs(z, w)?;
    let e = crate::linkpat::e_matrix(basis, i, &CycNum::one())?;
    Ok(Matrix::identity(basis.dim()).scale(&a).add(&e.scale(&b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transfer::param::params;

    #[test]
    fn column_sums_are_one() {
        for (kind, z) in [
            (Kind::Odd, vec![1, 2, 3]),
            (Kind::Odd, vec![1, 2, 3, 4, 5]),
            (Kind::Even, vec![1, 2, 3, 4]),
            (Kind::Punctured, vec![1, 2, 3, 4]),
            (Kind::Punctured, vec![3, 7]),
        ] {
            let t = build_transfer(kind, &params(&z), &Param::int(5), Exec::Sequential).unwrap();
            for c in 0..t.matrix.cols() {
                let s = t.matrix.column(c).into_iter().fold(CycNum::zero(), |a, x| a + x);
                assert_eq!(s, CycNum::one());
            }
        }
    }

    #[test]
    fn rhat_basics() {
        let b = Basis::get(Kind::Odd, 5).unwrap();
        let z = Param::int(3);
        let w = Param::int(7);
        assert_eq!(build_rhat(&b, 2, &z, &z).unwrap(), Matrix::identity(b.dim()));
        let r1 = build_rhat(&b, 2, &z, &w).unwrap();
        let r2 = build_rhat(&b, 2, &w, &z).unwrap();
        assert_eq!(r1.mul(&r2), Matrix::identity(b.dim()));
    }

    #[test]
    fn parallel_matches_sequential() {
        let z = params(&[1, 2, 3, 4, 5]);
        let a = build_transfer(Kind::Odd, &z, &Param::int(9), Exec::Sequential).unwrap();
        let b = build_transfer(Kind::Odd, &z, &Param::int(9), Exec::Parallel).unwrap();
        assert_eq!(a.matrix, b.matrix);
    }
}
