//! Acceptance suite: one line per criterion, every comparison exact.

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::One;

use o1loop::exactnum::{CycNum, LaurentG, LoopRing, MPoly, Matrix};
use o1loop::exec::Exec;
use o1loop::fpl::census_compare;
use o1loop::linkpat::{crossing_matrix, e_matrix, gram_matrix, Basis, Crossing, Kind};
use o1loop::pipeline::{check_rng, run_check_entry, sample_point, CheckSpec, Identity, Status};
use o1loop::schur::{gl_dim, odd_sum_rule, okada_check, schur_bialternant, schur_eval, YoungDiagram};
use o1loop::spin::{s_map_ranks, spin_homogeneous, spin_tl_relations, verify_bilinear};
use o1loop::transfer::{homogeneous, multiplicities, reconstruct_polynomials, verify_polynomials, verify_sum_rule};

const EXEC: Exec = Exec::Parallel;
const SEED: u64 = 20;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn ms(v: &[(i64, usize)]) -> Vec<(BigInt, usize)> {
    let mut v: Vec<(BigInt, usize)> = v.iter().map(|&(x, m)| (BigInt::from(x), m)).collect();
    v.sort_by(|a, b| b.0.cmp(&a.0));
    v
}

fn int(v: i64) -> CycNum {
    CycNum::integer(v)
}

fn criterion_1() -> Outcome {
    let cases = [
        (Kind::Odd, 5, ms(&[(1, 5), (4, 5)])),
        (Kind::Odd, 7, ms(&[(1, 7), (6, 7), (14, 14), (49, 7)])),
        (Kind::Punctured, 4, ms(&[(3, 2), (1, 4)])),
        (Kind::Punctured, 6, ms(&[(25, 2), (9, 6), (5, 6), (1, 6)])),
    ];
    for (kind, l, want) in cases {
        let rec = homogeneous(kind, l, EXEC).map_err(|e| e.to_string())?;
        let ints: Option<Vec<BigInt>> = rec.components.iter().map(|c| c.to_integer()).collect();
        let ints = ints.ok_or_else(|| format!("{kind:?} {l}: components not integral"))?;
        let got = multiplicities(&ints);
        ensure(got == want, || format!("{kind:?} {l}: {got:?}"))?;
    }
    Ok(())
}

fn criterion_2() -> Outcome {
    let cases = [
        (Kind::Odd, 1, 1),
        (Kind::Odd, 3, 3),
        (Kind::Odd, 5, 25),
        (Kind::Odd, 7, 588),
        (Kind::Punctured, 2, 2),
        (Kind::Punctured, 4, 10),
        (Kind::Punctured, 6, 140),
        (Kind::Even, 2, 1),
        (Kind::Even, 4, 2),
        (Kind::Even, 6, 7),
    ];
    for (kind, l, want) in cases {
        let rec = homogeneous(kind, l, EXEC).map_err(|e| e.to_string())?;
        let s = rec.sum();
        ensure(s == int(want), || format!("{kind:?} {l}: sum {s:?}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let z: Vec<CycNum> = (1..=3).map(int).collect();
    ensure(odd_sum_rule(&z) == int(22), || "closed form at (1,2,3)".into())?;
    let r = verify_sum_rule(Kind::Odd, &z, EXEC).map_err(|e| e.to_string())?;
    ensure(r.ok && r.sum == int(22), || format!("sum at (1,2,3) is {:?}", r.sum))?;
    let sizes = [
        (Kind::Odd, 3),
        (Kind::Odd, 5),
        (Kind::Odd, 7),
        (Kind::Punctured, 2),
        (Kind::Punctured, 4),
        (Kind::Punctured, 6),
        (Kind::Even, 2),
        (Kind::Even, 4),
        (Kind::Even, 6),
    ];
    for (kind, l) in sizes {
        let mut rng = check_rng(SEED, &format!("acceptance/sumrule/{kind:?}/{l}"));
        let mut done = 0;
        let mut tries = 0;
        while done < 20 {
            tries += 1;
            ensure(tries <= 40, || format!("{kind:?} {l}: too many degenerate points"))?;
            let z = sample_point(&mut rng, l);
            match verify_sum_rule(kind, &z, EXEC) {
                Ok(r) => {
                    ensure(r.ok, || format!("{kind:?} {l} at {z:?}"))?;
                    done += 1;
                }
                Err(_) => continue,
            }
        }
    }
    Ok(())
}

fn entry_ok(id: Identity, kind: Option<Kind>, l: usize, samples: usize) -> Outcome {
    let spec = CheckSpec::new(id, kind, l, samples, SEED);
    let e = run_check_entry(&spec, None, EXEC);
    ensure(e.status == Status::ProvenChecked && e.samples >= samples, || {
        format!("{}: {} {:?} {:?}", e.id, e.status.label(), e.note, e.witnesses.first())
    })
}

fn criterion_4() -> Outcome {
    let odd = [3, 5, 7];
    let even = [2, 4, 6];
    for l in odd {
        for id in [Identity::Exchange, Identity::Cyclic, Identity::Recursion] {
            entry_ok(id, Some(Kind::Odd), l, 10)?;
        }
    }
    for l in even {
        for kind in [Kind::Punctured, Kind::Even] {
            entry_ok(Identity::Exchange, Some(kind), l, 10)?;
            entry_ok(Identity::Cyclic, Some(kind), l, 10)?;
        }
        if l >= 4 {
            entry_ok(Identity::Recursion, Some(Kind::Punctured), l, 10)?;
        }
        entry_ok(Identity::Projection, Some(Kind::Punctured), l, 10)?;
    }
    for l in [1, 3, 5] {
        entry_ok(Identity::Projection, Some(Kind::Odd), l, 10)?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for (l, want) in [(5, ms(&[(1, 5), (2, 5)])), (7, ms(&[(1, 7), (3, 14), (4, 7), (7, 7)]))] {
        let rec = spin_homogeneous(l, EXEC).map_err(|e| e.to_string())?;
        let ints = rec.integers().ok_or_else(|| format!("spin {l}: not positive integers"))?;
        let got = multiplicities(&ints);
        ensure(got == want, || format!("spin {l}: {got:?}"))?;
    }
    for (l, s, s2) in [(3, 3, 3), (5, 15, 25), (7, 126, 588)] {
        let rec = spin_homogeneous(l, EXEC).map_err(|e| e.to_string())?;
        ensure(rec.sum() == int(s) && rec.sum_squares() == int(s2), || format!("spin sums at {l}"))?;
    }
    let sqrt3 = CycNum::sqrt3();
    for (l, s, s2, a2) in [(4, int(6), int(4), int(10)), (6, sqrt3.clone() * int(21), int(49), int(140))] {
        let rec = spin_homogeneous(l, EXEC).map_err(|e| e.to_string())?;
        ensure(rec.sum() == s, || format!("sum at {l}: {:?}", rec.sum()))?;
        ensure(rec.sum_squares() == s2, || format!("sum of squares at {l}"))?;
        ensure(rec.sum_abs_squares() == a2, || format!("sum of |.|^2 at {l}"))?;
    }
    let zeta = CycNum::zeta();
    let want = [
        sqrt3.clone() * zeta.clone(),
        sqrt3 * zeta.conj(),
        zeta.clone() * zeta.clone(),
        zeta.conj() * zeta.conj(),
        CycNum::one(),
        CycNum::one(),
    ];
    let rec = spin_homogeneous(4, EXEC).map_err(|e| e.to_string())?;
    let mut left = rec.components.clone();
    for w in &want {
        let pos = left.iter().position(|c| c == w).ok_or_else(|| format!("Phi~(4) lacks {w:?}"))?;
        left.remove(pos);
    }
    ensure(left.is_empty(), || "Phi~(4) has extra components".into())?;
    for l in 2..=7 {
        entry_ok(Identity::QPMinus, None, l, 10)?;
        entry_ok(Identity::Intertwine, None, l, 10)?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (l, total) in [(3, 3u64), (4, 10), (5, 25), (6, 140), (7, 588)] {
        let r = census_compare(l, true, EXEC).map_err(|e| e.to_string())?;
        ensure(r.total == total, || format!("HTSFPL({l}) total {}", r.total))?;
        ensure(r.ok(), || format!("HTSFPL({l}): {} mismatched patterns", r.mismatches))?;
    }
    Ok(())
}

fn tl_and_skein() -> Outcome {
    let tau = LaurentG::tau();
    let mut bases = vec![];
    for l in [3, 5] {
        bases.push(Basis::get(Kind::Odd, l).map_err(|e| e.to_string())?);
    }
    for l in [4, 6] {
        bases.push(Basis::get(Kind::Even, l).map_err(|e| e.to_string())?);
        bases.push(Basis::get(Kind::Punctured, l).map_err(|e| e.to_string())?);
    }
    for b in bases {
        let l = b.size();
        let e: Vec<Matrix<LaurentG>> = (1..=l).map(|i| e_matrix(&b, i, &tau)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        for i in 0..l {
            let ip = (i + 1) % l;
            ensure(e[i].mul(&e[i]) == e[i].scale(&tau), || format!("e^2 at {i}, {:?} {l}", b.kind()))?;
            ensure(e[i].mul(&e[ip]).mul(&e[i]) == e[i], || format!("e e' e at {i}, {:?} {l}", b.kind()))?;
            ensure(e[ip].mul(&e[i]).mul(&e[ip]) == e[ip], || format!("e' e e' at {i}, {:?} {l}", b.kind()))?;
            for j in 0..l {
                let d = (i as i64 - j as i64).rem_euclid(l as i64);
                if d >= 2 && d <= l as i64 - 2 {
                    ensure(e[i].mul(&e[j]) == e[j].mul(&e[i]), || format!("far commutation {i},{j}"))?;
                }
            }
            let t: Matrix<LaurentG> = crossing_matrix(&b, i + 1, Crossing::Over).map_err(|e| e.to_string())?;
            let ti = crossing_matrix(&b, i + 1, Crossing::Under).map_err(|e| e.to_string())?;
            ensure(t.mul(&ti) == Matrix::identity(b.dim()), || format!("skein inverse at {i}, {:?} {l}", b.kind()))?;
        }
    }
    ensure(spin_tl_relations::<LaurentG>(), || "spin TL relations".into())
}

fn schur_oracle() -> Outcome {
    let mut rng = check_rng(SEED, "acceptance/schur");
    for n in 0..=4u32 {
        for lam in [YoungDiagram::staircase_full(n), YoungDiagram::staircase_primed(n), YoungDiagram::staircase_plain(n)] {
            for vars in [2 * n as usize + 1, 2 * n as usize + 2] {
                let ones = schur_eval(&lam, &vec![CycNum::one(); vars]);
                ensure(ones.to_integer() == Some(gl_dim(&lam, vars)), || format!("{lam:?}: dimension in {vars}"))?;
                for _ in 0..3 {
                    let z = sample_point(&mut rng, vars);
                    if let Ok(b) = schur_bialternant(&lam, &z) {
                        ensure(b == schur_eval(&lam, &z), || format!("{lam:?}: bialternant at {z:?}"))?;
                    }
                }
            }
        }
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    tl_and_skein()?;
    for l in [2, 4, 6] {
        let g = gram_matrix::<CycNum>(l).map_err(|e| e.to_string())?;
        ensure(g.rank() == 1, || format!("Gram rank at {l} is {}", g.rank()))?;
    }
    for l in [3, 5] {
        let r = s_map_ranks(l).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("S ranks at {l}: {r:?}"))?;
    }
    for l in [2, 4] {
        let r = verify_bilinear(l).map_err(|e| e.to_string())?;
        ensure(r.ok(), || format!("bilinear form at {l}: {r:?}"))?;
    }
    for l in 1..=10 {
        ensure(okada_check(l), || format!("Okada at {l}"))?;
    }
    schur_oracle()
}

fn criterion_8() -> Outcome {
    let rec = reconstruct_polynomials(Kind::Odd, 3, EXEC).map_err(|e| e.to_string())?;
    let rep = verify_polynomials(&rec).map_err(|e| e.to_string())?;
    ensure(rep.ok(), || format!("{rep:?}"))?;
    let x = |i| MPoly::var(3, i);
    let e1 = x(0) + x(1) + x(2);
    let e2 = x(0) * x(1) + x(0) * x(2) + x(1) * x(2);
    let sum = rec.components.iter().fold(MPoly::zero(3), |a, p| a + p.clone());
    ensure(sum == (e2 * e1).scale(&CycNum::rational(1, 3)), || "sum is not e2 e1 / 3".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("homogeneous integer vectors", criterion_1),
        ("homogeneous sum rules", criterion_2),
        ("multi-parameter sum rules", criterion_3),
        ("exchange, cyclicity, recursion, projection", criterion_4),
        ("spin chain", criterion_5),
        ("HTSFPL census", criterion_6),
        ("property suites", criterion_7),
        ("polynomial reconstruction", criterion_8),
    ];
    let filter: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let n = k + 1;
        if !filter.is_empty() && !filter.contains(&n) {
            continue;
        }
        let start = Instant::now();
        let r = f();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(()) => println!("criterion {n}: PASS {name} ({secs:.1} s)"),
            Err(e) => {
                failed += 1;
                println!("criterion {n}: FAIL {name} ({secs:.1} s): {e}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
