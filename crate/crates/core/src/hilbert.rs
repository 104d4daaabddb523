//! Hilbert–Samuel tables and exact fitting of Hilbert coefficients in the
//! binomial basis.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideals::{MonomialIdeal, PowerSequence};
use crate::linalg;

/// Extra table entries, before the fit window, that must agree with the fit.
pub const VERIFICATION_POINTS: usize = 3;
/// Largest table index tried when the Hilbert function refuses to settle.
pub const MAX_TABLE_N: usize = 64;

/// `binom(m, k)` for `0 <= k <= m`.
pub fn binomial(m: i64, k: i64) -> i64 {
    if k < 0 || m < k {
        return 0;
    }
    let k = k.min(m - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (m - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}

/// `binom(n + shift, k)`, taken to be 0 whenever `n + shift < k` or `k < 0`.
/// Graded pieces below the generating degree vanish, and a basis term whose
/// lower index would be negative (such as `binom(n-1, -1)` in dimension 2)
/// is dropped.
pub fn binom_basis(n: i64, shift: i64, k: i64) -> i64 {
    binomial(n + shift, k)
}

/// Entry `n` holds `ℓ(A/I^{n+1})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub values: Vec<u64>,
}

impl HilbertTable {
    pub fn new(values: Vec<u64>) -> Self {
        HilbertTable { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `ℓ(A/I^{n+1}) - ℓ(A/I^n) = ℓ(G(I)_n)`.
    pub fn first_diffs(&self) -> Vec<u64> {
        let mut prev = 0;
        self.values
            .iter()
            .map(|&v| {
                let d = v - prev;
                prev = v;
                d
            })
            .collect()
    }

    pub fn as_i64(&self) -> Vec<i64> {
        self.values.iter().map(|&v| v as i64).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCoefficients {
    pub d: usize,
    pub e: Vec<i64>,
    pub postulation: usize,
}

impl HilbertCoefficients {
    /// `Σ (-1)^i e_i binom(n + d - i, d - i)`.
    pub fn eval(&self, n: i64) -> i64 {
        eval_alternating(&self.e, self.d, n)
    }

    pub fn e(&self, i: usize) -> i64 {
        self.e.get(i).copied().unwrap_or(0)
    }
}

/// Evaluates `Σ_{i=0}^{degree} (-1)^i e_i binom(n + degree - i, degree - i)`.
pub fn eval_alternating(e: &[i64], degree: usize, n: i64) -> i64 {
    e.iter()
        .enumerate()
        .map(|(i, &c)| {
            let k = degree as i64 - i as i64;
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * c * binom_basis(n, k, k)
        })
        .sum()
}

/// Result of fitting a polynomial of the given degree to a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingFit {
    pub e: Vec<i64>,
    pub postulation: usize,
}

/// Fits `values[n] = Σ_{i=0}^{degree} (-1)^i e_i binom(n+degree-i, degree-i)`
/// on the last `degree + 1` entries and checks the fit against the
/// [`VERIFICATION_POINTS`] entries before them. `min_len` is the shortest
/// acceptable table.
pub fn fit_alternating(values: &[i64], degree: usize, min_len: usize) -> Result<AlternatingFit> {
    let len = values.len();
    let window = degree + 1;
    if len < min_len.max(window + VERIFICATION_POINTS) {
        return Err(Error::WindowTooShort { len });
    }
    let start = len - window;
    let matrix: Vec<Vec<i64>> = (start..len)
        .map(|n| {
            (0..=degree)
                .map(|i| {
                    let k = (degree - i) as i64;
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    sign * binom_basis(n as i64, k, k)
                })
                .collect()
        })
        .collect();
    let solution = linalg::solve_i64(&matrix, &values[start..])
        .ok_or_else(|| Error::inconsistent("binomial basis matrix is singular"))?;
    let mut e = Vec::with_capacity(window);
    for (index, x) in solution.iter().enumerate() {
        e.push(to_integer(x).ok_or_else(|| Error::NonIntegerCoefficient {
            index,
            value: x.to_string(),
        })?);
    }
    for n in start - VERIFICATION_POINTS..start {
        if eval_alternating(&e, degree, n as i64) != values[n] {
            return Err(Error::WindowTooShort { len });
        }
    }
    let mut postulation = start - VERIFICATION_POINTS;
    while postulation > 0
        && eval_alternating(&e, degree, postulation as i64 - 1) == values[postulation - 1]
    {
        postulation -= 1;
    }
    Ok(AlternatingFit { e, postulation })
}

fn to_integer(x: &BigRational) -> Option<i64> {
    if x.denom().is_one() {
        x.numer().to_i64()
    } else {
        None
    }
}

/// Minimal table length for fitting a degree-`degree` polynomial.
pub fn min_table_len(degree: usize) -> usize {
    2 * (degree + 1) + VERIFICATION_POINTS
}

pub fn fit_coefficients(table: &HilbertTable, d: usize) -> Result<HilbertCoefficients> {
    let fit = fit_alternating(&table.as_i64(), d, min_table_len(d))?;
    if fit.e[0] < 1 {
        return Err(Error::inconsistent(format!("fitted e0 = {} < 1", fit.e[0])));
    }
    Ok(HilbertCoefficients { d, e: fit.e, postulation: fit.postulation })
}

/// `[ℓ(A/I), ℓ(A/I^2), ..., ℓ(A/I^{N+1})]`.
pub fn hs_table(ideal: &MonomialIdeal, n_max: usize) -> Result<HilbertTable> {
    let mut powers = PowerSequence::new(ideal.clone());
    hs_table_from_powers(&mut powers, n_max)
}

pub fn hs_table_from_powers(powers: &mut PowerSequence, n_max: usize) -> Result<HilbertTable> {
    if powers.base().is_unit() {
        return Err(Error::InvalidInput("the unit ideal has no Hilbert–Samuel function".into()));
    }
    let mut values = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        values.push(powers.get(n + 1)?.colength().get());
    }
    Ok(HilbertTable { values })
}

/// Default table size: `max(r + d + 3, 8)`, raised to the minimum fitting
/// length.
pub fn default_table_n(reduction_number: Option<usize>, d: usize) -> usize {
    let base = match reduction_number {
        Some(r) => (r + d + 3).max(8),
        None => 8,
    };
    base.max(min_table_len(d) - 1)
}

/// Computes the table from `start_n` and fits it, doubling `N` on
/// [`Error::WindowTooShort`] up to `max_n`.
pub fn stable_coefficients(
    powers: &mut PowerSequence,
    d: usize,
    start_n: usize,
    max_n: usize,
) -> Result<(HilbertTable, HilbertCoefficients)> {
    let mut n = start_n.max(min_table_len(d) - 1);
    loop {
        let table = hs_table_from_powers(powers, n)?;
        match fit_coefficients(&table, d) {
            Ok(coeffs) => return Ok((table, coeffs)),
            Err(Error::WindowTooShort { len }) => {
                if n >= max_n {
                    return Err(Error::WindowTooShort { len });
                }
                n = (2 * n).min(max_n);
            }
            Err(e) => return Err(e),
        }
    }
}

/// Exact rational `p/q` from integers.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::AmbientAlgebra;
    use proptest::prelude::*;
    use std::sync::Arc;

    #[test]
    fn binom_basis_conventions() {
        assert_eq!(binom_basis(0, 1, 1), 1);
        assert_eq!(binom_basis(0, -1, 1), 0);
        assert_eq!(binom_basis(3, 2, 2), 10);
        assert_eq!(binom_basis(5, -1, -1), 0);
        assert_eq!(binom_basis(0, 0, 0), 1);
    }

    #[test]
    fn table_of_maximal_ideal() {
        let amb = Arc::new(AmbientAlgebra::polynomial(2).unwrap());
        let m = MonomialIdeal::maximal_power(&amb, 1).unwrap();
        let t = hs_table(&m, 3).unwrap();
        assert_eq!(t.values, vec![1, 3, 6, 10]);
        assert_eq!(t.first_diffs(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn maximal_ideal_coefficients() {
        let amb = Arc::new(AmbientAlgebra::polynomial(2).unwrap());
        let m = MonomialIdeal::maximal_power(&amb, 1).unwrap();
        let t = hs_table(&m, 8).unwrap();
        let c = fit_coefficients(&t, 2).unwrap();
        assert_eq!(c.e, vec![1, 0, 0]);
        assert_eq!(c.postulation, 0);
    }

    #[test]
    fn short_table_is_rejected() {
        let t = HilbertTable::new(vec![1, 3, 6, 10]);
        assert_eq!(fit_coefficients(&t, 2), Err(Error::WindowTooShort { len: 4 }));
    }

    #[test]
    fn non_polynomial_tail_is_rejected() {
        let values: Vec<u64> = (0..12u64).map(|n| n * n * n + 1).collect();
        let err = fit_coefficients(&HilbertTable::new(values), 2).unwrap_err();
        assert!(matches!(err, Error::WindowTooShort { .. }));
    }

    #[test]
    fn integer_valued_tables_fit_integrally() {
        // n^2 = 2 binom(n+2,2) - 3 binom(n+1,1) + 1
        let values: Vec<i64> = (0..12i64).map(|n| n * n).collect();
        assert_eq!(fit_alternating(&values, 2, 9).unwrap().e, vec![2, 3, 1]);
        let values: Vec<i64> = (0..12i64).map(|n| n * (n + 1) / 2 + n % 2).collect();
        assert!(fit_alternating(&values, 2, 9).is_err());
    }

    #[test]
    fn postulation_is_reported() {
        let mut values: Vec<i64> = (0..12i64).map(|n| binomial(n + 2, 2)).collect();
        values[0] = 5;
        values[1] = 7;
        let fit = fit_alternating(&values, 2, 9).unwrap();
        assert_eq!(fit.e, vec![1, 0, 0]);
        assert_eq!(fit.postulation, 2);
    }

    #[test]
    fn default_n_respects_fit_window() {
        assert_eq!(default_table_n(None, 2), 8);
        assert_eq!(default_table_n(Some(2), 2), 8);
        assert_eq!(default_table_n(Some(5), 2), 10);
        assert_eq!(default_table_n(Some(0), 3), 10);
    }

    proptest! {
        #[test]
        fn fit_round_trip(e0 in 1i64..60, e1 in -40i64..40, e2 in -40i64..40, e3 in -40i64..40, d in 2usize..4) {
            let e: Vec<i64> = [e0, e1, e2, e3][..=d].to_vec();
            let values: Vec<i64> = (0..min_table_len(d) as i64 + 2)
                .map(|n| eval_alternating(&e, d, n))
                .collect();
            let fit = fit_alternating(&values, d, min_table_len(d)).unwrap();
            prop_assert_eq!(fit.e, e);
            prop_assert_eq!(fit.postulation, 0);
        }
    }
}
