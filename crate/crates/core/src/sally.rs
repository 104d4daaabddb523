//! Reduction numbers, Sally-module length tables and the checks built on
//! them: Valabrega–Valla and Itoh intersections, the Hilbert-function
//! identities, the coefficient inequalities for reduction number two and
//! three, and the depth interval they imply for the associated graded ring.

use num_rational::BigRational;
use serde::Serialize;

use crate::ambient::AmbientKind;
use crate::closure;
use crate::error::{Error, Result};
use crate::hilbert::{
    self, binom_basis, binomial, ratio, HilbertCoefficients, HilbertTable, MAX_TABLE_N,
};
use crate::ideals::{quotient_length, MonomialIdeal, PowerSequence};
use crate::linalg::{self, rational};
use crate::report::{CertificateOutcome, TheoremId, VerifierReport};

pub const DEFAULT_REDUCTION_CAP: usize = 20;

/// An ideal together with a parameter-shaped reduction and its reduction
/// number `r = min { n : I^{n+1} = Q I^n }`.
#[derive(Clone, Debug)]
pub struct ReductionData {
    pub ideal: MonomialIdeal,
    pub reduction: MonomialIdeal,
    pub r: usize,
}

/// Pure powers of distinct variables in a polynomial ambient; `d` generators
/// of full lattice rank in a semigroup ambient.
pub fn check_parameter_shaped(q: &MonomialIdeal) -> Result<()> {
    let amb = q.ambient();
    let d = amb.dim();
    let gens = q.generators();
    if gens.len() != d {
        return Err(Error::QNotParameterShaped(format!(
            "expected {d} generators, found {}",
            gens.len()
        )));
    }
    match amb.kind() {
        AmbientKind::Polynomial { .. } => {
            let mut seen = vec![false; d];
            for g in gens {
                let support: Vec<usize> = (0..d).filter(|&i| g[i] != 0).collect();
                if support.len() != 1 || seen[support[0]] {
                    return Err(Error::QNotParameterShaped(format!(
                        "{g} is not a pure power of a fresh variable"
                    )));
                }
                seen[support[0]] = true;
            }
        }
        AmbientKind::Semigroup { .. } => {
            let rows: Vec<Vec<i64>> = gens.iter().map(|g| g.to_vec()).collect();
            if linalg::rank(&rows) != d {
                return Err(Error::QNotParameterShaped("generator matrix is not of full rank".into()));
            }
        }
    }
    Ok(())
}

fn check_reduction_pair(ideal: &MonomialIdeal, reduction: &MonomialIdeal) -> Result<()> {
    check_parameter_shaped(reduction)?;
    if !ideal.contains_ideal(reduction)? {
        return Err(Error::QNotContained);
    }
    Ok(())
}

pub fn reduction_number(
    ideal: &MonomialIdeal,
    reduction: &MonomialIdeal,
    cap: usize,
) -> Result<ReductionData> {
    let mut powers = PowerSequence::new(ideal.clone());
    reduction_number_with(&mut powers, reduction, cap)
}

fn reduction_number_with(
    powers: &mut PowerSequence,
    reduction: &MonomialIdeal,
    cap: usize,
) -> Result<ReductionData> {
    let ideal = powers.base().clone();
    check_reduction_pair(&ideal, reduction)?;
    for n in 0..=cap {
        let qin = reduction.product(powers.get(n)?)?;
        if powers.get(n + 1)?.equals(&qin)? {
            return Ok(ReductionData { ideal, reduction: reduction.clone(), r: n });
        }
    }
    Err(Error::NotAReduction { cap })
}

/// Length tables indexed by `n = 0..=N`:
/// `s[n] = ℓ(I^{n+1}/Q^n I)`, `c[n] = ℓ(I^{n+1}/Q^{n-1} I^2)` (zero for
/// `n <= 1`), `l[n] = s[n] - c[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SallyLengths {
    pub s: Vec<u64>,
    pub c: Vec<u64>,
    pub l: Vec<u64>,
}

impl SallyLengths {
    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }

    /// `ℓ(I^2/QI)`, or 0 when the table is too short.
    pub fn s1(&self) -> u64 {
        self.s.get(1).copied().unwrap_or(0)
    }

    /// The tail of `s` from degree `from`, zero below: the lengths of the
    /// submodule generated in degree `from`.
    pub fn truncated_s(&self, from: usize) -> Vec<u64> {
        self.s.iter().enumerate().map(|(n, &v)| if n >= from { v } else { 0 }).collect()
    }
}

pub fn sally_lengths(rd: &ReductionData, n_max: usize) -> Result<SallyLengths> {
    let mut ip = PowerSequence::new(rd.ideal.clone());
    let mut qp = PowerSequence::new(rd.reduction.clone());
    sally_lengths_with(&mut ip, &mut qp, n_max)
}

fn sally_lengths_with(
    ip: &mut PowerSequence,
    qp: &mut PowerSequence,
    n_max: usize,
) -> Result<SallyLengths> {
    let ideal = ip.base().clone();
    let i2 = ip.get(2)?.clone();
    let mut s = Vec::with_capacity(n_max + 1);
    let mut c = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let top = ip.get(n + 1)?.clone();
        let qni = qp.get(n)?.product(&ideal)?;
        s.push(quotient_length(&top, &qni)?.get());
        if n >= 2 {
            let qi2 = qp.get(n - 1)?.product(&i2)?;
            c.push(quotient_length(&top, &qi2)?.get());
        } else {
            c.push(0);
        }
    }
    let l = s
        .iter()
        .zip(&c)
        .map(|(&a, &b)| {
            a.checked_sub(b)
                .ok_or_else(|| Error::inconsistent("ℓ(C_n) exceeds ℓ(S_n)"))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SallyLengths { s, c, l })
}

/// `I^n ∩ Q = Q I^{n-1}` (`n >= 1`).
pub fn vv_check(rd: &ReductionData, n: usize) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidInput("intersection check needs n >= 1".into()));
    }
    let lhs = rd.ideal.power(n)?.intersect(&rd.reduction)?;
    let rhs = rd.reduction.product(&rd.ideal.power(n - 1)?)?;
    lhs.equals(&rhs)
}

/// The intersection checks for `1 <= n <= r`; beyond `r` they follow from
/// `I^n = Q I^{n-1}`.
pub fn vv_full(rd: &ReductionData) -> Result<bool> {
    for n in 1..=rd.r {
        if !vv_check(rd, n)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Q ∩ I^2 = QI`.
pub fn itoh_check(rd: &ReductionData) -> Result<bool> {
    vv_check(rd, 2)
}

/// `lengths[n] = i0 · binom(n - t + d - 1, d - 1)` for every tabulated `n`,
/// i.e. the lengths of `i0` stacked copies of a polynomial ring in `d`
/// variables shifted to degree `t`.
pub fn filtration_certificate(lengths: &[u64], t: usize, d: usize, i0: u64) -> bool {
    let k = d as i64 - 1;
    lengths.iter().enumerate().all(|(n, &v)| {
        let expect = i0 as i64 * binom_basis(n as i64, k - t as i64, k);
        v as i64 == expect
    })
}

/// Checks `ℓ(A/I^{n+1}) = e0 binom(n+d,d) - (e0 - ℓ(A/I)) binom(n+d-1,d-1) - ℓ(S_n)`
/// for every tabulated `n`, with `e0 = ℓ(A/Q)`.
pub fn prop31_identity_check(rd: &ReductionData, sl: &SallyLengths, table: &HilbertTable) -> bool {
    prop31_mismatches(rd, sl, table).is_empty()
}

fn prop31_mismatches(rd: &ReductionData, sl: &SallyLengths, table: &HilbertTable) -> Vec<(usize, i64, i64)> {
    let d = rd.ideal.ambient().dim() as i64;
    let e0 = rd.reduction.colength().get() as i64;
    let l0 = rd.ideal.colength().get() as i64;
    let n_max = table.len().min(sl.len());
    (0..n_max)
        .filter_map(|n| {
            let lhs = table.values[n] as i64;
            let ni = n as i64;
            let rhs = e0 * binomial(ni + d, d) - (e0 - l0) * binomial(ni + d - 1, d - 1)
                - sl.s[n] as i64;
            (lhs != rhs).then_some((n, lhs, rhs))
        })
        .collect()
}

/// The four-term identity through `ℓ(C_n)`; needs `Q ∩ I^2 = QI`.
pub fn prop39_identity_check(rd: &ReductionData, sl: &SallyLengths, table: &HilbertTable) -> Result<bool> {
    if !itoh_check(rd)? {
        return Err(Error::hypothesis("prop39", "Q ∩ I^2 = QI"));
    }
    Ok(prop39_mismatches(rd, sl, table).is_empty())
}

fn prop39_mismatches(rd: &ReductionData, sl: &SallyLengths, table: &HilbertTable) -> Vec<(usize, i64, i64)> {
    let d = rd.ideal.ambient().dim() as i64;
    let e0 = rd.reduction.colength().get() as i64;
    let l0 = rd.ideal.colength().get() as i64;
    let q2 = sl.s1() as i64;
    let n_max = table.len().min(sl.len());
    (0..n_max)
        .filter_map(|n| {
            let lhs = table.values[n] as i64;
            let ni = n as i64;
            let rhs = e0 * binomial(ni + d, d)
                - (e0 - l0 + q2) * binomial(ni + d - 1, d - 1)
                + q2 * binom_basis(ni, d - 2, d - 2)
                - sl.c[n] as i64;
            (lhs != rhs).then_some((n, lhs, rhs))
        })
        .collect()
}

/// Whether `I` is known to be integrally closed, and how that was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Closedness {
    Computed(bool),
    Assumed(bool),
    Unknown,
}

impl Closedness {
    pub fn is_closed(self) -> bool {
        matches!(self, Closedness::Computed(true) | Closedness::Assumed(true))
    }

    fn label(self) -> &'static str {
        match self {
            Closedness::Computed(_) => "I integrally closed (Newton polyhedron)",
            Closedness::Assumed(_) => "I integrally closed (asserted on input)",
            Closedness::Unknown => "I integrally closed (unknown)",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    /// Hilbert table size; `None` picks the default from `r` and `d`.
    pub n: Option<usize>,
    pub reduction_cap: Option<usize>,
    pub assume_integrally_closed: bool,
    pub assume_rr_closed: bool,
}

/// Everything the checks need about a live `(I, Q)` pair, computed once.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub rd: ReductionData,
    pub table: HilbertTable,
    pub coeffs: HilbertCoefficients,
    pub sally: SallyLengths,
    pub closedness: Closedness,
    pub rr_closed: bool,
    /// `(n, I^n ∩ Q = Q I^{n-1})` for `1 <= n <= max(r, 2)`.
    pub intersections: Vec<(usize, bool)>,
}

impl Analysis {
    pub fn build(ideal: &MonomialIdeal, reduction: &MonomialIdeal, opts: &AnalysisOptions) -> Result<Self> {
        let amb = ideal.ambient().clone();
        let d = amb.dim();
        let mut ip = PowerSequence::new(ideal.clone());
        let mut qp = PowerSequence::new(reduction.clone());
        let rd = reduction_number_with(
            &mut ip,
            reduction,
            opts.reduction_cap.unwrap_or(DEFAULT_REDUCTION_CAP),
        )?;
        let start_n = opts.n.unwrap_or_else(|| hilbert::default_table_n(Some(rd.r), d));
        let (table, coeffs) =
            hilbert::stable_coefficients(&mut ip, d, start_n, MAX_TABLE_N.max(start_n))?;
        let e0_q = reduction.colength().get() as i64;
        if amb.cm_flag() && coeffs.e[0] != e0_q {
            return Err(Error::inconsistent(format!(
                "fitted e0 = {} but ℓ(A/Q) = {e0_q}",
                coeffs.e[0]
            )));
        }
        let sally = sally_lengths_with(&mut ip, &mut qp, table.len() - 1)?;
        let closedness = if amb.is_polynomial() {
            Closedness::Computed(closure::is_integrally_closed(ideal)?)
        } else if opts.assume_integrally_closed {
            Closedness::Assumed(true)
        } else {
            Closedness::Unknown
        };
        let mut intersections = Vec::new();
        for n in 1..=rd.r.max(2) {
            let lhs = ip.get(n)?.intersect(reduction)?;
            let rhs = reduction.product(ip.get(n - 1)?)?;
            intersections.push((n, lhs.equals(&rhs)?));
        }
        Ok(Analysis {
            rd,
            table,
            coeffs,
            sally,
            closedness,
            rr_closed: opts.assume_rr_closed,
            intersections,
        })
    }

    pub fn d(&self) -> usize {
        self.rd.ideal.ambient().dim()
    }

    pub fn r(&self) -> usize {
        self.rd.r
    }

    pub fn intersection_holds(&self, n: usize) -> Option<bool> {
        self.intersections.iter().find(|(k, _)| *k == n).map(|&(_, h)| h)
    }

    /// All intersections up to `r` hold.
    pub fn vv_full(&self) -> bool {
        self.intersections.iter().filter(|(n, _)| *n <= self.rd.r).all(|&(_, h)| h)
    }

    pub fn itoh(&self) -> bool {
        self.intersection_holds(2).unwrap_or(true)
    }

    pub fn coefficient_data(&self) -> CoefficientData {
        CoefficientData {
            source: "live".into(),
            d: self.d(),
            colength: self.rd.ideal.colength().get(),
            e: self.coeffs.e.clone(),
            q2_length: self.sally.s1(),
            r: self.rd.r,
            cm: self.rd.ideal.ambient().cm_flag(),
            closedness: self.closedness,
            rr_closed: self.rr_closed,
            itoh: Some(self.itoh()),
            sally: Some(self.sally.clone()),
            table: Some(self.table.clone()),
        }
    }
}

/// The numeric inputs of the coefficient inequalities. Built from a live
/// [`Analysis`] or supplied as a fixture when the ring is not monomial.
#[derive(Clone, Debug, Serialize)]
pub struct CoefficientData {
    pub source: String,
    pub d: usize,
    /// `ℓ(A/I)`.
    pub colength: u64,
    /// `e_0, ..., e_d`.
    pub e: Vec<i64>,
    /// `ℓ(I^2/QI)`.
    pub q2_length: u64,
    pub r: usize,
    pub cm: bool,
    pub closedness: Closedness,
    pub rr_closed: bool,
    pub itoh: Option<bool>,
    pub sally: Option<SallyLengths>,
    pub table: Option<HilbertTable>,
}

impl CoefficientData {
    /// The maximal ideal of `D/a` with `D = K[[X_1..X_m, Y_1..Y_d, Z_1..Z_d]]`,
    /// `a = (X)(X, Y) + (Y_i Y_j : i != j) + (Y_i^3 - Z_i X_m)` and
    /// `Q = (z_1, ..., z_d)`: `m^4 = Q m^3`, `e0 = m + 2d + 1`,
    /// `e1 = m + 3d + 1`, `e2 = d + 1`, `e_i = 0` for `i >= 3` and
    /// `ℓ(m^2/Qm) = d`. Not monomial, so only its constants are available.
    pub fn final_example(m: usize, d: usize) -> Result<Self> {
        if m < 1 || d < 2 {
            return Err(Error::InvalidInput("final-example needs m >= 1 and d >= 2".into()));
        }
        let (mi, di) = (m as i64, d as i64);
        let mut e = vec![mi + 2 * di + 1, mi + 3 * di + 1, di + 1];
        e.resize(d + 1, 0);
        Ok(CoefficientData {
            source: format!("final-example(m={m}, d={d})"),
            d,
            colength: 1,
            e,
            q2_length: d as u64,
            r: 3,
            cm: true,
            closedness: Closedness::Assumed(true),
            rr_closed: false,
            itoh: None,
            sally: None,
            table: None,
        })
    }

    pub fn e(&self, i: usize) -> i64 {
        self.e.get(i).copied().unwrap_or(0)
    }

    fn require_cm(&self, theorem: &str) -> Result<()> {
        if !self.cm {
            return Err(Error::hypothesis(theorem, "A is Cohen–Macaulay"));
        }
        Ok(())
    }
}

fn int(v: i64) -> BigRational {
    rational(v)
}

/// `ℓ(A/I) >= e0 - e1`, with equality exactly when `r <= 1`.
pub fn verify_northcott(data: &CoefficientData) -> Result<VerifierReport> {
    let theorem = TheoremId::NorthcottBound;
    data.require_cm(theorem.as_str())?;
    let d = data.d;
    let mut rep = VerifierReport::new(theorem, d);
    rep.hypothesis("A is Cohen–Macaulay", true);
    rep.sides(int(data.colength as i64), int(data.e(0) - data.e(1)));
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!("northcott: negative slack {}", rep.slack)));
    }
    let reduction_one = data.r <= 1;
    if rep.equality != reduction_one {
        return Err(Error::inconsistent(format!(
            "northcott: equality = {} but r = {}",
            rep.equality, data.r
        )));
    }
    if rep.equality {
        rep.depth_lower = d;
        rep.note("northcott: equality, I^2 = QI, so G(I) is Cohen–Macaulay");
    } else {
        rep.note(format!("northcott: strict inequality, r = {} >= 2", data.r));
    }
    Ok(rep)
}

/// `ℓ(A/I) >= e0 - e1 + e2/(r-1)` for `r >= 2`; equality forces `r = 2`.
pub fn verify_prop32(data: &CoefficientData) -> Result<VerifierReport> {
    let theorem = TheoremId::ReductionTwoBound;
    data.require_cm(theorem.as_str())?;
    if data.r < 2 {
        return Err(Error::hypothesis(theorem.as_str(), format!("r >= 2 (r = {})", data.r)));
    }
    let mut rep = VerifierReport::new(theorem, data.d);
    rep.hypothesis("r >= 2", true);
    let rhs = int(data.e(0) - data.e(1)) + ratio(data.e(2), data.r as i64 - 1);
    rep.sides(int(data.colength as i64), rhs);
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!("prop32: negative slack {}", rep.slack)));
    }
    if rep.equality && data.r != 2 {
        return Err(Error::inconsistent(format!("prop32: equality with r = {}", data.r)));
    }
    rep.note(format!("prop32: slack {} with r = {}", rep.slack, data.r));
    Ok(rep)
}

// ℓ(A/I^{n+1}) = Σ_{i<=k} (-1)^i e_i binom(n+d-i, d-i) for all tabulated n >= from.
fn truncated_polynomial_holds(data: &CoefficientData, table: &HilbertTable, k: usize, from: usize) -> bool {
    let d = data.d as i64;
    table.values.iter().enumerate().skip(from).all(|(n, &v)| {
        let n = n as i64;
        let p: i64 = (0..=k)
            .map(|i| {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let shift = d - i as i64;
                sign * data.e(i) * binom_basis(n, shift, shift)
            })
            .sum();
        p == v as i64
    })
}

/// Under `I^3 = QI^2`: `ℓ(A/I) >= e0 - e1 + e2`, equality iff the Sally
/// lengths carry the filtration certificate in degree 1.
pub fn verify_thm33(data: &CoefficientData) -> Result<VerifierReport> {
    let theorem = TheoremId::ReductionTwoEquality;
    data.require_cm(theorem.as_str())?;
    if data.r > 2 {
        return Err(Error::hypothesis(theorem.as_str(), format!("I^3 = QI^2 (r = {})", data.r)));
    }
    let d = data.d;
    let mut rep = VerifierReport::new(theorem, d);
    rep.hypothesis("I^3 = QI^2", true);
    rep.sides(int(data.colength as i64), int(data.e(0) - data.e(1) + data.e(2)));
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!("thm33: negative slack {}", rep.slack)));
    }
    if let Some(sl) = &data.sally {
        let i0 = sl.s1();
        let holds = filtration_certificate(&sl.s, 1, d, i0);
        rep.certificate = Some(CertificateOutcome { t: 1, i0, holds });
        if holds != rep.equality {
            return Err(Error::inconsistent(format!(
                "thm33: equality = {} but Sally certificate = {holds}",
                rep.equality
            )));
        }
    } else {
        rep.note("thm33: no Sally lengths available, certificate not checked");
    }
    if rep.equality {
        if let Some(table) = &data.table {
            if !truncated_polynomial_holds(data, table, 2, 0) {
                return Err(Error::inconsistent(
                    "thm33: equality but the three-term Hilbert polynomial fails on the table",
                ));
            }
            rep.note("thm33: ℓ(A/I^{n+1}) = e0 binom(n+d,d) - e1 binom(n+d-1,d-1) + e2 binom(n+d-2,d-2) for all tabulated n >= 0");
        }
        rep.tighten_lower(d - 1);
        rep.note("thm33: equality, depth G(I) >= d-1");
    } else {
        rep.tighten_upper(d - 2);
        rep.note("thm33: strict inequality, depth G(I) <= d-2");
    }
    let closed = data.closedness.is_closed();
    let rr = data.rr_closed && d == 2;
    if closed || rr {
        rep.hypothesis(
            if closed { data.closedness.label() } else { "I Ratliff–Rush closed (asserted), d = 2" },
            true,
        );
        if !rep.equality {
            return Err(Error::inconsistent(
                "thm33: closed ideal with I^3 = QI^2 must attain equality",
            ));
        }
        rep.note("thm33: closedness forces the reverse inequality; slack = 0 confirmed");
    }
    rep.note("thm33: module structure of S (Ass, depth) not independently verified");
    Ok(rep)
}

fn require_closed(data: &CoefficientData, theorem: TheoremId, rep: &mut VerifierReport) -> Result<()> {
    if !data.closedness.is_closed() {
        return Err(Error::hypothesis(theorem.as_str(), data.closedness.label()));
    }
    rep.hypothesis(data.closedness.label(), true);
    if let Some(itoh) = data.itoh {
        rep.hypothesis("Q ∩ I^2 = QI", itoh);
        if !itoh {
            return Err(Error::inconsistent(format!(
                "{theorem}: integrally closed ideal with Q ∩ I^2 != QI"
            )));
        }
    }
    Ok(())
}

/// Integrally closed, `r >= 3`:
/// `ℓ(A/I) >= e0 - e1 + ((r-2)ℓ(I^2/QI) + e2)/(r-1)`; equality forces `r = 3`.
pub fn verify_prop310(data: &CoefficientData) -> Result<VerifierReport> {
    let theorem = TheoremId::ReductionThreeBound;
    data.require_cm(theorem.as_str())?;
    let mut rep = VerifierReport::new(theorem, data.d);
    require_closed(data, theorem, &mut rep)?;
    if data.r < 3 {
        return Err(Error::hypothesis(theorem.as_str(), format!("r >= 3 (r = {})", data.r)));
    }
    rep.hypothesis("r >= 3", true);
    let r = data.r as i64;
    let rhs = int(data.e(0) - data.e(1)) + ratio((r - 2) * data.q2_length as i64 + data.e(2), r - 1);
    rep.sides(int(data.colength as i64), rhs);
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!("prop310: negative slack {}", rep.slack)));
    }
    if rep.equality && data.r != 3 {
        return Err(Error::inconsistent(format!("prop310: equality with r = {}", data.r)));
    }
    rep.note(format!("prop310: slack {} with r = {}", rep.slack, data.r));
    Ok(rep)
}

/// Integrally closed, `I^4 = QI^3`:
/// `ℓ(A/I) >= e0 - e1 + (ℓ(I^2/QI) + e2)/2`, equality iff the `C` lengths
/// carry the filtration certificate in degree 2.
pub fn verify_thm310(data: &CoefficientData) -> Result<VerifierReport> {
    let theorem = TheoremId::ReductionThreeEquality;
    data.require_cm(theorem.as_str())?;
    let d = data.d;
    let mut rep = VerifierReport::new(theorem, d);
    require_closed(data, theorem, &mut rep)?;
    if data.r > 3 {
        return Err(Error::hypothesis(theorem.as_str(), format!("I^4 = QI^3 (r = {})", data.r)));
    }
    rep.hypothesis("I^4 = QI^3", true);
    let rhs = int(data.e(0) - data.e(1)) + ratio(data.q2_length as i64 + data.e(2), 2);
    rep.sides(int(data.colength as i64), rhs);
    if rep.slack_is_negative() {
        return Err(Error::inconsistent(format!("thm310: negative slack {}", rep.slack)));
    }
    if let Some(sl) = &data.sally {
        let i0 = sl.c.get(2).copied().unwrap_or(0);
        let holds = filtration_certificate(&sl.c, 2, d, i0);
        rep.certificate = Some(CertificateOutcome { t: 2, i0, holds });
        if holds != rep.equality {
            return Err(Error::inconsistent(format!(
                "thm310: equality = {} but C certificate = {holds}",
                rep.equality
            )));
        }
    } else {
        rep.note(format!("thm310: fixture {} carries no C lengths, certificate not checked", data.source));
    }
    if rep.equality {
        if let Some(table) = &data.table {
            if !truncated_polynomial_holds(data, table, 3, 1) {
                return Err(Error::inconsistent(
                    "thm310: equality but the four-term Hilbert polynomial fails for n >= 1",
                ));
            }
            rep.note("thm310: Hilbert polynomial through e3 holds for all tabulated n >= 1");
        }
        rep.tighten_lower(d - 1);
        rep.note("thm310: equality, depth G(I) >= d-1");
    } else {
        rep.tighten_upper(d - 2);
        rep.note("thm310: strict inequality, depth G(I) <= d-2");
    }
    if data.r <= 2 {
        rep.note("thm310: r <= 2, C = 0 and the bound coincides with thm33");
    }
    rep.note("thm310: module structure of C (Ass, depth) not independently verified");
    Ok(rep)
}

fn mismatch_report(theorem: TheoremId, d: usize, mismatches: &[(usize, i64, i64)], last: (i64, i64)) -> VerifierReport {
    let mut rep = VerifierReport::new(theorem, d);
    match mismatches.first() {
        Some(&(n, lhs, rhs)) => {
            rep.sides(int(lhs), int(rhs));
            for &(n, lhs, rhs) in mismatches {
                rep.note(format!("{theorem}: n = {n}: ℓ(A/I^(n+1)) = {lhs} but formula gives {rhs}"));
            }
            rep.note(format!("{theorem}: first failure at n = {n}"));
        }
        None => {
            rep.sides(int(last.0), int(last.1));
        }
    }
    rep
}

/// Report form of [`prop31_identity_check`]; sides are taken at the first
/// failing `n`, or at the last tabulated `n` when all hold.
pub fn verify_prop31(an: &Analysis) -> Result<VerifierReport> {
    let theorem = TheoremId::SallyIdentity;
    an.coefficient_data().require_cm(theorem.as_str())?;
    let mismatches = prop31_mismatches(&an.rd, &an.sally, &an.table);
    let last = *an.table.values.last().unwrap() as i64;
    let mut rep = mismatch_report(theorem, an.d(), &mismatches, (last, last));
    rep.hypothesis("A is Cohen–Macaulay", true);
    if mismatches.is_empty() {
        rep.note(format!(
            "prop31: identity holds for 0 <= n <= {} with e0 = ℓ(A/Q) = {}",
            an.table.len().min(an.sally.len()) - 1,
            an.rd.reduction.colength()
        ));
    }
    Ok(rep)
}

pub fn verify_prop39(an: &Analysis) -> Result<VerifierReport> {
    let theorem = TheoremId::QuotientModuleIdentity;
    an.coefficient_data().require_cm(theorem.as_str())?;
    if !an.itoh() {
        return Err(Error::hypothesis(theorem.as_str(), "Q ∩ I^2 = QI"));
    }
    let mismatches = prop39_mismatches(&an.rd, &an.sally, &an.table);
    let last = *an.table.values.last().unwrap() as i64;
    let mut rep = mismatch_report(theorem, an.d(), &mismatches, (last, last));
    rep.hypothesis("Q ∩ I^2 = QI", true);
    if mismatches.is_empty() {
        rep.note(format!(
            "prop39: identity holds for 0 <= n <= {}",
            an.table.len().min(an.sally.len()) - 1
        ));
    }
    Ok(rep)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DepthInterval {
    pub lower: usize,
    pub upper: usize,
    pub justifications: Vec<String>,
}

/// Bounds on `depth G(I)` assembled from the reduction number, the
/// Valabrega–Valla intersections and the applicable equality criteria.
pub fn depth_bounds(an: &Analysis) -> Result<DepthInterval> {
    let d = an.d();
    let data = an.coefficient_data();
    data.require_cm("depth")?;
    let mut lower = 0;
    let mut upper = d;
    let mut notes = Vec::new();
    if an.r() <= 1 {
        lower = d;
        notes.push(format!("northcott: r = {} <= 1, G(I) Cohen–Macaulay: depth = {d}", an.r()));
    }
    if an.vv_full() {
        lower = d;
        notes.push(format!("vv: I^n ∩ Q = Q I^(n-1) for all 1 <= n <= r: depth = {d}"));
    } else {
        let n = an.intersections.iter().find(|(_, h)| !h).map(|&(n, _)| n).unwrap_or(0);
        upper = upper.min(d - 1);
        let rhs = if n == 2 { "QI".to_string() } else { format!("QI^{}", n - 1) };
        notes.push(format!("vv: I^{n} ∩ Q != {rhs}: G(I) not Cohen–Macaulay, depth <= {}", d - 1));
    }
    if an.r() <= 2 {
        let rep = verify_thm33(&data)?;
        lower = lower.max(rep.depth_lower);
        upper = upper.min(rep.depth_upper);
        notes.push(format!(
            "thm33: slack {} => depth in [{}, {}]",
            rep.slack, rep.depth_lower, rep.depth_upper
        ));
    }
    if an.r() <= 3 && an.closedness.is_closed() {
        let rep = verify_thm310(&data)?;
        lower = lower.max(rep.depth_lower);
        upper = upper.min(rep.depth_upper);
        notes.push(format!(
            "thm310: slack {} => depth in [{}, {}]",
            rep.slack, rep.depth_lower, rep.depth_upper
        ));
    }
    if lower > upper {
        return Err(Error::inconsistent(format!("empty depth interval [{lower}, {upper}]")));
    }
    Ok(DepthInterval { lower, upper, justifications: notes })
}

/// `I^2 = Ī^2 = QĪ` implies `I^3 = QI^2`, `ℓ(I^2/QI) = d ℓ(Ī/I)`, and `r = 2`
/// when `I != Ī`. Polynomial ambients only.
pub fn verify_lemma35(ideal: &MonomialIdeal, reduction: &MonomialIdeal) -> Result<VerifierReport> {
    let theorem = TheoremId::ClosureSquareLemma;
    let name = theorem.as_str();
    check_reduction_pair(ideal, reduction)?;
    let d = ideal.ambient().dim();
    let bar = closure::newton_closure(ideal)?;
    let i2 = ideal.power(2)?;
    let bar2 = bar.power(2)?;
    let q_bar = reduction.product(&bar)?;
    let mut rep = VerifierReport::new(theorem, d);
    if !i2.equals(&bar2)? {
        return Err(Error::hypothesis(name, "I^2 = Ī^2"));
    }
    rep.hypothesis("I^2 = Ī^2", true);
    if !bar2.equals(&q_bar)? {
        return Err(Error::hypothesis(name, "Ī^2 = QĪ"));
    }
    rep.hypothesis("Ī^2 = QĪ", true);

    let qi = reduction.product(ideal)?;
    let i3 = ideal.power(3)?;
    let qi2 = reduction.product(&i2)?;
    if !i3.equals(&qi2)? {
        return Err(Error::inconsistent("lemma35: I^3 != QI^2"));
    }
    rep.note("lemma35: I^3 = QI^2");
    let q2 = quotient_length(&i2, &qi)?.get() as i64;
    let gap = quotient_length(&bar, ideal)?.get() as i64;
    rep.sides(int(q2), int(d as i64 * gap));
    if !rep.equality {
        return Err(Error::inconsistent(format!("lemma35: ℓ(I^2/QI) = {q2} but d ℓ(Ī/I) = {}", d as i64 * gap)));
    }
    rep.note(format!("lemma35: ℓ(I^2/QI) = {q2} = {d} · ℓ(Ī/I)"));
    let rd = reduction_number(ideal, reduction, 3)?;
    let closed = gap == 0;
    if !closed && rd.r != 2 {
        return Err(Error::inconsistent(format!("lemma35: I != Ī but red_Q I = {}", rd.r)));
    }
    rep.note(format!("lemma35: red_Q I = {}", rd.r));
    Ok(rep)
}

/// For `I0` generated in degree `t` with `(X^t, Y^t) ⊆ I0` in `K[X,Y]`: the
/// closures of `Q0 = (X^t, Y^t)` and `I0` are `(X,Y)^t`, and `(X,Y)^t` has
/// reduction number 1 over `Q0` (0 when `t = 1`, where `Q0` is the maximal
/// ideal itself). If moreover `Q0 ⊊ I0 ⊊ (X,Y)^t` and `I0^2 = (X,Y)^{2t}`
/// then `red_{Q0} I0 = 2`.
pub fn verify_lemma36(t: usize, i0: &MonomialIdeal) -> Result<VerifierReport> {
    let theorem = TheoremId::DegreeTClosureLemma;
    let name = theorem.as_str();
    let amb = i0.ambient();
    if !matches!(amb.kind(), AmbientKind::Polynomial { d: 2 }) {
        return Err(Error::hypothesis(name, "ambient is K[X, Y]"));
    }
    if t == 0 {
        return Err(Error::hypothesis(name, "t >= 1"));
    }
    let ti = t as i64;
    let mut rep = VerifierReport::new(theorem, 2);
    if !i0.generators().iter().all(|g| g.total_degree() == ti) {
        return Err(Error::hypothesis(name, format!("I0 generated in degree {t}")));
    }
    rep.hypothesis(format!("I0 generated in degree {t}"), true);
    let q0 = MonomialIdeal::new(amb.clone(), vec![[ti, 0].into(), [0, ti].into()])?;
    if !i0.contains_ideal(&q0)? {
        return Err(Error::hypothesis(name, format!("(X^{t}, Y^{t}) ⊆ I0")));
    }
    rep.hypothesis(format!("(X^{t}, Y^{t}) ⊆ I0"), true);

    let mt = MonomialIdeal::maximal_power(amb, t)?;
    let q_bar = closure::newton_closure(&q0)?;
    let i_bar = closure::newton_closure(i0)?;
    if !q_bar.equals(&mt)? {
        return Err(Error::inconsistent(format!("lemma36: closure of (X^{t}, Y^{t}) != (X,Y)^{t}")));
    }
    if !i_bar.equals(&mt)? {
        return Err(Error::inconsistent(format!("lemma36: closure of I0 != (X,Y)^{t}")));
    }
    rep.sides(int(i_bar.colength().get() as i64), int(binomial(ti + 1, 2)));
    rep.note(format!("lemma36: closure(Q0) = closure(I0) = (X,Y)^{t}"));
    let closed_red = reduction_number(&mt, &q0, 2)?.r;
    let expected = if t == 1 { 0 } else { 1 };
    if closed_red != expected {
        return Err(Error::inconsistent(format!(
            "lemma36: red of (X,Y)^{t} over Q0 is {closed_red}, expected {expected}"
        )));
    }
    rep.note(format!("lemma36: red_Q0 (X,Y)^{t} = {closed_red}"));

    let strictly_between = !i0.equals(&q0)? && !i0.equals(&mt)?;
    if strictly_between {
        let square_is_full = i0.power(2)?.equals(&mt.power(2)?)?;
        if square_is_full {
            let r = reduction_number(i0, &q0, 4)?.r;
            if r != 2 {
                return Err(Error::inconsistent(format!(
                    "lemma36: Q0 ⊊ I0 ⊊ m^t and I0^2 = m^(2t) but red = {r}"
                )));
            }
            rep.note("lemma36: Q0 ⊊ I0 ⊊ m^t, I0^2 = m^(2t), red_Q0 I0 = 2");
        } else {
            rep.note("lemma36: I0^2 != m^(2t), reduction-two clause not applicable");
        }
    }
    Ok(rep)
}

/// Exact `lhs - rhs` of the Northcott bound, for callers that only want the
/// number.
pub fn northcott_slack(data: &CoefficientData) -> BigRational {
    int(data.colength as i64) - int(data.e(0) - data.e(1))
}
