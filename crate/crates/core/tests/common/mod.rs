#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use sally_core::{AmbientAlgebra, MonomialIdeal};

pub fn poly(d: usize) -> Arc<AmbientAlgebra> {
    Arc::new(AmbientAlgebra::polynomial(d).unwrap())
}

/// `Q = (X^a, Y^b)` and `I = Q + (extra points on or above the segment
/// from (a, 0) to (0, b))`, so `Q` is a reduction of `I`.
pub fn random_pair<R: Rng>(rng: &mut R) -> (MonomialIdeal, MonomialIdeal) {
    let amb = poly(2);
    let a = rng.gen_range(2..=7i64);
    let b = rng.gen_range(2..=7i64);
    let mut gens = vec![vec![a, 0], vec![0, b]];
    let extras = rng.gen_range(0..=4);
    for _ in 0..extras {
        let u = rng.gen_range(0..a);
        let v_min = ((a - u) * b + a - 1) / a;
        if v_min < b {
            let v = rng.gen_range(v_min..b);
            gens.push(vec![u, v]);
        }
    }
    let q = MonomialIdeal::from_vectors(&amb, &[vec![a, 0], vec![0, b]]).unwrap();
    let i = MonomialIdeal::from_vectors(&amb, &gens).unwrap();
    (i, q)
}

/// An m-primary monomial ideal in `d` variables: pure powers `2..=max_pow`
/// plus a few random mixed generators inside the box.
pub fn random_ideal<R: Rng>(rng: &mut R, d: usize, max_pow: i64, extras: usize) -> MonomialIdeal {
    let amb = poly(d);
    let mut gens = Vec::new();
    let mut pows = Vec::new();
    for j in 0..d {
        let p = rng.gen_range(2..=max_pow);
        pows.push(p);
        let mut g = vec![0; d];
        g[j] = p;
        gens.push(g);
    }
    for _ in 0..rng.gen_range(0..=extras) {
        let g: Vec<i64> = pows.iter().map(|&p| rng.gen_range(0..p)).collect();
        if g.iter().any(|&x| x > 0) {
            gens.push(g);
        }
    }
    MonomialIdeal::from_vectors(&amb, &gens).unwrap()
}

/// Rational feasibility of `{ λ >= 0, Σλ = 1, Σ λ_i g_i <= p }` by
/// Fourier–Motzkin elimination over the integers.
pub fn newton_feasible(gens: &[Vec<i64>], p: &[i64]) -> bool {
    let k = gens.len();
    let d = p.len();
    let last = &gens[k - 1];
    // Substitute λ_k = 1 - Σ_{i<k} λ_i; rows are (coeffs, rhs) meaning coeffs·x <= rhs.
    let mut rows: Vec<(Vec<i128>, i128)> = Vec::new();
    for i in 0..k - 1 {
        let mut c = vec![0; k - 1];
        c[i] = -1;
        rows.push((c, 0));
    }
    rows.push((vec![1; k - 1], 1));
    for j in 0..d {
        let c = (0..k - 1).map(|i| (gens[i][j] - last[j]) as i128).collect();
        rows.push((c, (p[j] - last[j]) as i128));
    }
    for var in 0..k.saturating_sub(1) {
        let (mut pos, mut neg, mut keep) = (Vec::new(), Vec::new(), Vec::new());
        for r in rows {
            match r.0[var].signum() {
                1 => pos.push(r),
                -1 => neg.push(r),
                _ => keep.push(r),
            }
        }
        for (pc, pr) in &pos {
            for (nc, nr) in &neg {
                let (a, b) = (pc[var], -nc[var]);
                let mut c: Vec<i128> = pc.iter().zip(nc).map(|(x, y)| b * x + a * y).collect();
                let mut r = b * pr + a * nr;
                let g = c.iter().fold(r.abs(), |g, &x| gcd(g, x.abs()));
                if g > 1 {
                    c.iter_mut().for_each(|x| *x /= g);
                    r /= g;
                }
                keep.push((c, r));
            }
        }
        keep.sort();
        keep.dedup();
        rows = keep;
    }
    rows.iter().all(|(_, r)| *r >= 0)
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 { a } else { gcd(b, a % b) }
}
