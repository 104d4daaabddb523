//! Worked examples rebuilt from scratch and compared against their known
//! constants.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::ambient::{AmbientAlgebra, Monomial};
use crate::closure;
use crate::error::{Error, Result};
use crate::filtration::{chain_filtration_demo, example26a_check, example26a_length};
use crate::hilbert::{binomial, ratio};
use crate::ideals::{quotient_length, MonomialIdeal};
use crate::report::VerifierReport;
use crate::sally::{self, AnalysisOptions, CoefficientData, DepthInterval};
use crate::verify::{VerifierRegistry, VerifyContext};

#[derive(Clone, Copy, Debug, Default)]
pub struct ReproParams {
    pub s: Option<usize>,
    pub t: Option<usize>,
    pub m: Option<usize>,
    pub d: Option<usize>,
    pub n: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GoldenCheck {
    pub quantity: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReproReport {
    pub name: String,
    pub params: BTreeMap<String, usize>,
    pub checks: Vec<GoldenCheck>,
    pub reports: Vec<VerifierReport>,
    pub depth: Option<DepthInterval>,
}

impl ReproReport {
    fn new(name: &str) -> Self {
        ReproReport {
            name: name.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            reports: Vec::new(),
            depth: None,
        }
    }

    fn param(&mut self, key: &str, v: usize) -> &mut Self {
        self.params.insert(key.into(), v);
        self
    }

    pub fn check(&mut self, quantity: impl Into<String>, expected: impl Serialize, actual: impl Serialize) {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        let pass = expected == actual;
        self.checks.push(GoldenCheck { quantity: quantity.into(), expected, actual, pass });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<&GoldenCheck> {
        self.checks.iter().find(|c| !c.pass)
    }

    /// `Err(GoldenMismatch)` naming the first diverging quantity.
    pub fn into_result(self) -> Result<Self> {
        match self.first_failure() {
            Some(c) => Err(Error::GoldenMismatch {
                quantity: c.quantity.clone(),
                expected: c.expected.to_string(),
                actual: c.actual.to_string(),
            }),
            None => Ok(self),
        }
    }
}

pub trait Reproduction: Send + Sync {
    fn name(&self) -> &'static str;
    fn summary(&self) -> &'static str;
    fn run(&self, params: &ReproParams) -> Result<ReproReport>;
}

pub struct ReproductionRegistry {
    entries: BTreeMap<&'static str, Box<dyn Reproduction>>,
}

impl ReproductionRegistry {
    pub fn builtin() -> Self {
        let mut reg = ReproductionRegistry { entries: BTreeMap::new() };
        reg.register(Box::new(ChainFiltrations));
        reg.register(Box::new(DepthZeroExample));
        reg.register(Box::new(SemigroupFamily));
        reg.register(Box::new(DegreeTSweep));
        reg.register(Box::new(FinalExample));
        reg
    }

    pub fn register(&mut self, r: Box<dyn Reproduction>) {
        self.entries.insert(r.name(), r);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Reproduction> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn run(&self, name: &str, params: &ReproParams) -> Result<ReproReport> {
        self.get(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown example `{name}`")))?
            .run(params)
    }
}

fn vectors(v: &[[i64; 2]]) -> Vec<Vec<i64>> {
    v.iter().map(|g| g.to_vec()).collect()
}

/// `Q = (X^7, Y^7)`, `I = Q + (X^6 Y, X^5 Y^2, X^2 Y^5, X Y^6)` in `K[X, Y]`.
pub fn example37() -> Result<(MonomialIdeal, MonomialIdeal)> {
    let amb = Arc::new(AmbientAlgebra::polynomial(2)?);
    let i = MonomialIdeal::from_vectors(
        &amb,
        &vectors(&[[7, 0], [0, 7], [6, 1], [5, 2], [2, 5], [1, 6]]),
    )?;
    let q = MonomialIdeal::from_vectors(&amb, &vectors(&[[7, 0], [0, 7]]))?;
    Ok((i, q))
}

/// `A = K[X Y^i : 0 <= i <= 2s+1]`, `I = (X Y^i : i <= s) + (X Y^{2s+1})`,
/// `Q = (X, X Y^{2s+1})`.
pub fn example38(s: usize) -> Result<(MonomialIdeal, MonomialIdeal)> {
    if s == 0 {
        return Err(Error::InvalidInput("s must be positive".into()));
    }
    let s = s as i64;
    let atoms: Vec<Monomial> = (0..=2 * s + 1).map(|k| Monomial::from([1, k])).collect();
    let amb = Arc::new(AmbientAlgebra::semigroup(atoms, true)?);
    let mut gens: Vec<Vec<i64>> = (0..=s).map(|k| vec![1, k]).collect();
    gens.push(vec![1, 2 * s + 1]);
    let i = MonomialIdeal::from_vectors(&amb, &gens)?;
    let q = MonomialIdeal::from_vectors(&amb, &[vec![1, 0], vec![1, 2 * s + 1]])?;
    Ok((i, q))
}

fn slack_string(r: &VerifierReport) -> String {
    r.slack.to_string()
}

struct ChainFiltrations;

impl Reproduction for ChainFiltrations {
    fn name(&self) -> &'static str {
        "ex2.7"
    }

    fn summary(&self) -> &'static str {
        "R^2/<(X,Y)^T> lengths and the u-adic chain of A[X_1..X_d], A = K[u]/(u^m)"
    }

    fn run(&self, p: &ReproParams) -> Result<ReproReport> {
        let m = p.m.unwrap_or(3);
        let d = p.d.unwrap_or(2);
        let n = p.n.unwrap_or(6);
        let mut rep = ReproReport::new(self.name());
        rep.param("m", m).param("d", d).param("N", n);
        rep.check("l(M_0)", 2, example26a_length(0));
        rep.check("l(M_3)", 5, example26a_length(3));
        rep.check(format!("l(M_n) = (n+1) + 1 for n <= {n}"), true, example26a_check(n));
        let steps = chain_filtration_demo(m, d, n)?;
        rep.check("i0 = l(A)", m, steps.len());
        for step in &steps {
            let expect: Vec<i64> = (0..=n as i64)
                .map(|k| (m - step.index) as i64 * binomial(k + d as i64 - 1, d as i64 - 1))
                .collect();
            rep.check(format!("l(R^{}_n)", step.index), expect, &step.after);
            rep.check(format!("step {} strips one copy of R/p", step.index), true, step.strips_one_copy(d));
        }
        Ok(rep)
    }
}

struct DepthZeroExample;

impl Reproduction for DepthZeroExample {
    fn name(&self) -> &'static str {
        "ex3.7"
    }

    fn summary(&self) -> &'static str {
        "Q = (X^7, Y^7) with four mixed generators: r = 2, strict e2 bound, depth 0"
    }

    fn run(&self, _: &ReproParams) -> Result<ReproReport> {
        let (i, q) = example37()?;
        let amb = i.ambient().clone();
        let mut rep = ReproReport::new(self.name());
        rep.check("l(A/I)", 31, i.colength().get());
        let m14 = MonomialIdeal::maximal_power(&amb, 14)?;
        rep.check("I^2 = (X,Y)^14", true, i.power(2)?.equals(&m14)?);
        let m7 = MonomialIdeal::maximal_power(&amb, 7)?;
        rep.check("closure(I) = (X,Y)^7", true, closure::newton_closure(&i)?.equals(&m7)?);

        let ctx = VerifyContext::live(i.clone(), q.clone(), AnalysisOptions::default());
        let an = ctx.analysis()?;
        rep.check("r", 2, an.r());
        rep.check("e", [49, 21, 0], &an.coeffs.e);
        rep.check("postulation", 1, an.coeffs.postulation);
        rep.check("l(I^2/QI)", 6, an.sally.s1());
        let s_expect: Vec<u64> = (1..=6).map(|n| 3 * n + 3).collect();
        rep.check("l(S_n), 1 <= n <= 6", s_expect, &an.sally.s[1..=6]);
        rep.check("I^2 ∩ Q = QI", false, an.itoh());

        let reg = VerifierRegistry::builtin();
        for id in ["northcott", "prop31", "prop32", "thm33", "lemma35", "thm11a"] {
            let r = reg.run(id, &ctx)?;
            match id {
                "northcott" | "prop32" | "thm33" => rep.check(format!("{id} slack"), "3", slack_string(&r)),
                "thm11a" => rep.check("thm11a slack", "3", slack_string(&r)),
                "prop31" => rep.check("prop31 identity", true, r.equality),
                "lemma35" => rep.check("l(I^2/QI) = 2 l(closure(I)/I)", "6", r.rhs.to_string()),
                _ => {}
            }
            if id == "thm33" {
                rep.check("thm33 certificate", false, r.certificate.as_ref().map(|c| c.holds));
            }
            rep.reports.push(r);
        }
        let depth = sally::depth_bounds(an)?;
        rep.check("depth interval", [0, 0], [depth.lower, depth.upper]);
        rep.depth = Some(depth);
        Ok(rep)
    }
}

struct SemigroupFamily;

impl Reproduction for SemigroupFamily {
    fn name(&self) -> &'static str {
        "ex3.8"
    }

    fn summary(&self) -> &'static str {
        "K[XY^i : i <= 2s+1]: I^3 = QI^2, e = (2s+1, 2s, s), depth 1"
    }

    fn run(&self, p: &ReproParams) -> Result<ReproReport> {
        let s = p.s.unwrap_or(1);
        let (i, q) = example38(s)?;
        let s64 = s as u64;
        let mut rep = ReproReport::new(self.name());
        rep.param("s", s);
        rep.check("l(A/I)", s64 + 1, i.colength().get());
        rep.check("l(A/Q)", 2 * s64 + 1, q.colength().get());
        rep.check("I^2 ⊆ Q", true, q.contains_ideal(&i.power(2)?)?);
        let ctx = VerifyContext::live(i, q, AnalysisOptions::default());
        let an = ctx.analysis()?;
        rep.check("l(I^2/QI)", s64, an.sally.s1());
        rep.check("r", 2, an.r());
        let si = s as i64;
        rep.check("e", [2 * si + 1, 2 * si, si], &an.coeffs.e);
        rep.check("postulation", 0, an.coeffs.postulation);
        let s_expect: Vec<u64> = (1..=6).map(|n| s64 * n).collect();
        rep.check("l(S_n), 1 <= n <= 6", s_expect, &an.sally.s[1..=6]);
        rep.check("I^2 ∩ Q = QI", false, an.intersection_holds(2));

        let reg = VerifierRegistry::builtin();
        let thm33 = reg.run("thm33", &ctx)?;
        rep.check("thm33 equality", true, thm33.equality);
        let cert = thm33.certificate.as_ref().map(|c| (c.holds, c.i0));
        rep.check("thm33 certificate (holds, i0)", (true, s64), cert);
        rep.reports.push(thm33);
        for id in ["northcott", "prop31", "prop32", "thm11a"] {
            let r = reg.run(id, &ctx)?;
            match id {
                "northcott" => rep.check("northcott slack", s.to_string(), slack_string(&r)),
                "prop31" => rep.check("prop31 identity", true, r.equality),
                "prop32" => rep.check("prop32 slack", "0", slack_string(&r)),
                _ => rep.check("thm11a equality", true, r.equality),
            }
            rep.reports.push(r);
        }
        let prop39 = reg.run("prop39", &ctx);
        rep.check(
            "prop39 hypothesis fails",
            true,
            matches!(prop39, Err(Error::HypothesisFailed { .. })),
        );
        let table_ok = an.table.values.iter().enumerate().all(|(n, &v)| {
            let n = n as i64;
            v as i64 == (2 * si + 1) * binomial(n + 2, 2) - 2 * si * (n + 1) + si
        });
        rep.check("l(A/I^(n+1)) = (2s+1) binom(n+2,2) - 2s(n+1) + s", true, table_ok);
        let depth = sally::depth_bounds(an)?;
        rep.check("depth interval", [1, 1], [depth.lower, depth.upper]);
        rep.depth = Some(depth);
        Ok(rep)
    }
}

/// Monomial ideals generated in degree `t` and containing `X^t, Y^t`: one per
/// subset of the mixed monomials `X^a Y^{t-a}`, `0 < a < t`.
pub fn degree_t_ideals(t: usize) -> Result<Vec<MonomialIdeal>> {
    let amb = Arc::new(AmbientAlgebra::polynomial(2)?);
    let ti = t as i64;
    let mixed: Vec<i64> = (1..ti).collect();
    let mut out = Vec::with_capacity(1 << mixed.len());
    for mask in 0u64..(1u64 << mixed.len()) {
        let mut gens = vec![vec![ti, 0], vec![0, ti]];
        for (bit, &a) in mixed.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                gens.push(vec![a, ti - a]);
            }
        }
        out.push(MonomialIdeal::from_vectors(&amb, &gens)?);
    }
    Ok(out)
}

struct DegreeTSweep;

impl Reproduction for DegreeTSweep {
    fn name(&self) -> &'static str {
        "lemma3.6"
    }

    fn summary(&self) -> &'static str {
        "every degree-t monomial I0 ⊇ (X^t, Y^t): closures equal (X,Y)^t"
    }

    fn run(&self, p: &ReproParams) -> Result<ReproReport> {
        let ts: Vec<usize> = match p.t {
            Some(t) => vec![t],
            None => (1..=6).collect(),
        };
        let mut rep = ReproReport::new(self.name());
        if let Some(t) = p.t {
            rep.param("t", t);
        }
        for t in ts {
            let ideals = degree_t_ideals(t)?;
            let mut failures = 0usize;
            let mut reduction_two = 0usize;
            for i0 in &ideals {
                match sally::verify_lemma36(t, i0) {
                    Ok(r) => {
                        if r.justifications.iter().any(|j| j.contains("red_Q0 I0 = 2")) {
                            reduction_two += 1;
                        }
                    }
                    Err(_) => failures += 1,
                }
            }
            rep.check(format!("t = {t}: ideals checked"), 1usize << (t - 1).min(63), ideals.len());
            rep.check(format!("t = {t}: failures"), 0, failures);
            let amb = ideals[0].ambient().clone();
            let mt = MonomialIdeal::maximal_power(&amb, t)?;
            let q0 = &ideals[0];
            let expected_red = if t == 1 { 0 } else { 1 };
            rep.check(
                format!("t = {t}: red of (X,Y)^t over (X^t, Y^t)"),
                expected_red,
                sally::reduction_number(&mt, q0, 2)?.r,
            );
            rep.params.insert(format!("t{t}_reduction_two_cases"), reduction_two);
        }
        Ok(rep)
    }
}

struct FinalExample;

impl Reproduction for FinalExample {
    fn name(&self) -> &'static str {
        "final"
    }

    fn summary(&self) -> &'static str {
        "fixture constants with m^4 = Qm^3: reduction-three bound is strict by 1/2"
    }

    fn run(&self, p: &ReproParams) -> Result<ReproReport> {
        let m = p.m.unwrap_or(1);
        let d = p.d.unwrap_or(2);
        let fixture = CoefficientData::final_example(m, d)?;
        let mut rep = ReproReport::new(self.name());
        rep.param("m", m).param("d", d);
        let (mi, di) = (m as i64, d as i64);
        let mut e = vec![mi + 2 * di + 1, mi + 3 * di + 1, di + 1];
        e.resize(d + 1, 0);
        rep.check("e", e, &fixture.e);
        rep.check("l(m^2/Qm)", d, fixture.q2_length);
        let ctx = VerifyContext::with_fixture(fixture);
        let reg = VerifierRegistry::builtin();
        let thm310 = reg.run("thm310", &ctx)?;
        rep.check("thm310 rhs", "1/2", thm310.rhs.to_string());
        rep.check("thm310 slack", "1/2", slack_string(&thm310));
        rep.check("thm310 depth_upper", d - 2, thm310.depth_upper);
        rep.reports.push(thm310);
        let prop310 = reg.run("prop310", &ctx)?;
        rep.check("prop310 slack", "1/2", slack_string(&prop310));
        rep.reports.push(prop310);
        let prop32 = reg.run("prop32", &ctx)?;
        rep.check("prop32 slack", ratio(di + 1, 2).to_string(), slack_string(&prop32));
        rep.reports.push(prop32);
        Ok(rep)
    }
}

/// `ℓ(Ī/I)`, used by the reduction-two examples.
pub fn closure_gap(ideal: &MonomialIdeal) -> Result<u64> {
    let bar = closure::newton_closure(ideal)?;
    Ok(quotient_length(&bar, ideal)?.get())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_t_family_sizes() {
        assert_eq!(degree_t_ideals(1).unwrap().len(), 1);
        assert_eq!(degree_t_ideals(4).unwrap().len(), 8);
    }

    #[test]
    fn example37_gap_is_three() {
        let (i, _) = example37().unwrap();
        assert_eq!(closure_gap(&i).unwrap(), 3);
    }

    #[test]
    fn registry_names() {
        let reg = ReproductionRegistry::builtin();
        let names: Vec<_> = reg.names().collect();
        assert_eq!(names, vec!["ex2.7", "ex3.7", "ex3.8", "final", "lemma3.6"]);
    }
}
