//! Length-level graded filtrations: explicit chains for two small modules and
//! the first-coefficient bound for modules generated in a single degree.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hilbert::{binom_basis, fit_alternating, min_table_len};
use crate::linalg::{self, rational};
use crate::report::{CertificateOutcome, TheoremId, VerifierReport};
use crate::sally::filtration_certificate;

/// One quotient `M^{i-1} -> M^i` whose kernel is `(R/p)(-t)`; both tables run
/// over degrees `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationStep {
    pub index: usize,
    pub t: usize,
    pub multiplier: String,
    pub before: Vec<u64>,
    pub after: Vec<u64>,
}

impl FiltrationStep {
    /// `before[n] - after[n] = binom(n - t + d - 1, d - 1)` for every `n`.
    pub fn strips_one_copy(&self, d: usize) -> bool {
        let k = d as i64 - 1;
        self.before.iter().zip(&self.after).enumerate().all(|(n, (&b, &a))| {
            b >= a && (b - a) as i64 == binom_basis(n as i64, k - self.t as i64, k)
        })
    }
}

// Exponent vectors of total degree `n` in `d` variables.
fn compositions(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for a in 0..=rest {
            cur.push(a);
            go(rest - a, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::with_capacity(d), &mut out);
    out
}

// K-basis of degree `n` of `(K[u]/(u^k))[X_1..X_d]`: pairs `(j, α)` with `j < k`.
fn truncated_basis(k: usize, d: usize, n: usize) -> Vec<(usize, Vec<usize>)> {
    let alphas = compositions(n, d);
    (0..k).flat_map(|j| alphas.iter().map(move |a| (j, a.clone()))).collect()
}

/// `R = A[X_1..X_d]` with `A = K[u]/(u^m)`, filtered by `f_i = u^{m-i}`:
/// `R^i = R/(f_1..f_i) = (A/(u^{m-i}))[X]`. Lengths are counted from an
/// explicit monomial basis, and each kernel is checked to be
/// `f_i · K[X]`, the basis elements `u^{m-i} X^α`.
pub fn chain_filtration_demo(m: usize, d: usize, n_max: usize) -> Result<Vec<FiltrationStep>> {
    if m < 1 || d < 2 {
        return Err(Error::InvalidInput("chain demo needs m >= 1 and d >= 2".into()));
    }
    let lengths = |k: usize| -> Vec<u64> {
        (0..=n_max).map(|n| truncated_basis(k, d, n).len() as u64).collect()
    };
    let mut steps = Vec::with_capacity(m);
    for i in 1..=m {
        let before_k = m - i + 1;
        let after_k = m - i;
        for n in 0..=n_max {
            let before = truncated_basis(before_k, d, n);
            let kernel: Vec<_> = before.iter().filter(|(j, _)| *j >= after_k).collect();
            let image: Vec<_> = compositions(n, d).into_iter().map(|a| (after_k, a)).collect();
            if kernel.len() != image.len() || kernel.iter().zip(&image).any(|(a, b)| *a != b) {
                return Err(Error::inconsistent(format!(
                    "chain demo: kernel of step {i} in degree {n} is not u^{after_k} K[X]_{n}"
                )));
            }
        }
        steps.push(FiltrationStep {
            index: i,
            t: 0,
            multiplier: format!("u^{}", m - i),
            before: lengths(before_k),
            after: lengths(after_k),
        });
    }
    if steps.last().map(|s| s.after.iter().any(|&v| v != 0)).unwrap_or(true) {
        return Err(Error::inconsistent("chain demo: final module is not zero"));
    }
    Ok(steps)
}

/// `dim_K M_n` for `M = R^2 / <(X, Y)^T>` over `R = K[X, Y]`: `2(n+1)` minus
/// the rank of the degree-`n` block of the presentation matrix.
pub fn example26a_length(n: usize) -> u64 {
    if n == 0 {
        return 2;
    }
    // Rows: basis of R_n ⊕ R_n, indexed by the Y-exponent; columns: images of
    // X^a Y^b ∈ R_{n-1}, namely (X^{a+1} Y^b, X^a Y^{b+1}).
    let size = n + 1;
    let cols: Vec<(usize, usize)> = (0..n).map(|b| (b, size + b + 1)).collect();
    let matrix: Vec<Vec<i64>> = (0..2 * size)
        .map(|row| cols.iter().map(|&(p, q)| i64::from(row == p || row == q)).collect())
        .collect();
    (2 * size - linalg::rank(&matrix)) as u64
}

// dim_K (K[X,Y]/(X))_n, counted as monomials of degree n not divisible by X.
fn quotient_by_x_length(n: usize) -> u64 {
    compositions(n, 2).iter().filter(|a| a[0] == 0).count() as u64
}

/// `ℓ(M_n) = ℓ(R_n) + ℓ((R/(X))_n)` for `0 <= n <= N`.
pub fn example26a_check(n_max: usize) -> bool {
    (0..=n_max).all(|n| {
        let free = compositions(n, 2).len() as u64;
        example26a_length(n) == free + quotient_by_x_length(n)
    })
}

/// Inputs to the first-coefficient bound for a module generated in degree `t`
/// with `ℓ(M_p) = i0`, over `R/p` with Hilbert coefficients
/// `(e0_rp, e1_rp)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleTable {
    pub lengths: Vec<u64>,
    pub t: usize,
    pub d: usize,
    pub i0: u64,
    pub e0_rp: i64,
    pub e1_rp: i64,
}

/// `e0(M) = i0 e0(R/p)` and `e1(M) <= t e0(M) + i0 e1(R/p)`, with `lhs` the
/// right-hand bound and `rhs = e1(M)` so that `slack >= 0`.
pub fn thm11a_check(m: &ModuleTable) -> Result<VerifierReport> {
    let theorem = TheoremId::FiltrationCoefficients;
    if m.d < 1 {
        return Err(Error::InvalidInput("module dimension must be positive".into()));
    }
    let degree = m.d - 1;
    let values: Vec<i64> = m.lengths.iter().map(|&v| v as i64).collect();
    let fit = fit_alternating(&values, degree, min_table_len(degree))?;
    let e0 = fit.e[0];
    let e1 = fit.e.get(1).copied().unwrap_or(0);
    let expected = m.i0 as i64 * m.e0_rp;
    if e0 != expected {
        return Err(Error::MultiplicityMismatch { theorem: theorem.as_str().into(), fitted: e0, expected });
    }
    let mut rep = VerifierReport::new(theorem, m.d);
    rep.hypothesis(format!("M generated in degree {}", m.t), true);
    rep.hypothesis(format!("e0(M) = {} · {}", m.i0, m.e0_rp), true);
    let bound = m.t as i64 * e0 + m.i0 as i64 * m.e1_rp;
    rep.sides(rational(bound), rational(e1));
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!(
            "thm11a: e1(M) = {e1} exceeds t e0(M) + i0 e1(R/p) = {bound}"
        )));
    }
    let holds = filtration_certificate(&m.lengths, m.t, m.d, m.i0);
    rep.certificate = Some(CertificateOutcome { t: m.t, i0: m.i0, holds });
    if (m.e0_rp, m.e1_rp) == (1, 0) {
        if holds != rep.equality {
            return Err(Error::inconsistent(format!(
                "thm11a: equality = {} but certificate = {holds}",
                rep.equality
            )));
        }
        rep.note("thm11a: R/p a polynomial ring, equality checked against the certificate");
    } else {
        rep.note("thm11a: R/p not a polynomial ring, one-directional check only");
    }
    rep.note(format!("thm11a: fitted e0(M) = {e0}, e1(M) = {e1}"));
    Ok(rep)
}
