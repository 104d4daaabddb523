//! Name-addressed registry of theorem checks.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::filtration::{thm11a_check, ModuleTable};
use crate::hilbert::{fit_alternating, min_table_len};
use crate::ideals::MonomialIdeal;
use crate::report::{TheoremId, VerifierReport};
use crate::sally::{self, Analysis, AnalysisOptions, CoefficientData};

/// What a check may draw on: live ideals (analysed lazily, once), a fixture
/// of precomputed constants, or an explicit module length table.
#[derive(Debug, Default)]
pub struct VerifyContext {
    pub ideal: Option<MonomialIdeal>,
    pub reduction: Option<MonomialIdeal>,
    pub options: AnalysisOptions,
    pub fixture: Option<CoefficientData>,
    pub module: Option<ModuleTable>,
    /// Generating degree for `lemma36`; inferred from `ideal` when absent.
    pub t: Option<usize>,
    analysis: OnceLock<Result<Analysis>>,
}

impl VerifyContext {
    pub fn live(ideal: MonomialIdeal, reduction: MonomialIdeal, options: AnalysisOptions) -> Self {
        VerifyContext { ideal: Some(ideal), reduction: Some(reduction), options, ..Default::default() }
    }

    pub fn with_fixture(fixture: CoefficientData) -> Self {
        VerifyContext { fixture: Some(fixture), ..Default::default() }
    }

    pub fn with_module(module: ModuleTable) -> Self {
        VerifyContext { module: Some(module), ..Default::default() }
    }

    fn pair(&self) -> Result<(&MonomialIdeal, &MonomialIdeal)> {
        match (&self.ideal, &self.reduction) {
            (Some(i), Some(q)) => Ok((i, q)),
            (Some(_), None) => Err(Error::InvalidInput("a reduction Q is required".into())),
            _ => Err(Error::InvalidInput("an ideal I is required".into())),
        }
    }

    pub fn analysis(&self) -> Result<&Analysis> {
        let (i, q) = self.pair()?;
        self.analysis
            .get_or_init(|| Analysis::build(i, q, &self.options))
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The fixture if one was supplied, otherwise the live analysis.
    pub fn coefficient_data(&self) -> Result<CoefficientData> {
        match &self.fixture {
            Some(f) => Ok(f.clone()),
            None => Ok(self.analysis()?.coefficient_data()),
        }
    }
}

pub trait Verifier: Send + Sync {
    fn id(&self) -> TheoremId;
    fn summary(&self) -> &'static str;
    fn verify(&self, ctx: &VerifyContext) -> Result<VerifierReport>;
}

struct FnVerifier {
    id: TheoremId,
    summary: &'static str,
    run: fn(&VerifyContext) -> Result<VerifierReport>,
}

impl Verifier for FnVerifier {
    fn id(&self) -> TheoremId {
        self.id
    }

    fn summary(&self) -> &'static str {
        self.summary
    }

    fn verify(&self, ctx: &VerifyContext) -> Result<VerifierReport> {
        (self.run)(ctx)
    }
}

pub struct VerifierRegistry {
    entries: BTreeMap<&'static str, Box<dyn Verifier>>,
}

impl VerifierRegistry {
    pub fn empty() -> Self {
        VerifierRegistry { entries: BTreeMap::new() }
    }

    pub fn builtin() -> Self {
        let mut reg = Self::empty();
        let table: [(TheoremId, &'static str, fn(&VerifyContext) -> Result<VerifierReport>); 10] = [
            (TheoremId::NorthcottBound, "l(A/I) >= e0 - e1, equality iff r <= 1", |c| {
                sally::verify_northcott(&c.coefficient_data()?)
            }),
            (TheoremId::SallyIdentity, "Hilbert function from l(A/I), e0 and l(S_n)", |c| {
                sally::verify_prop31(c.analysis()?)
            }),
            (TheoremId::ReductionTwoBound, "l(A/I) >= e0 - e1 + e2/(r-1) for r >= 2", |c| {
                sally::verify_prop32(&c.coefficient_data()?)
            }),
            (TheoremId::ReductionTwoEquality, "I^3 = QI^2: e2 bound and Sally certificate", |c| {
                sally::verify_thm33(&c.coefficient_data()?)
            }),
            (TheoremId::QuotientModuleIdentity, "Hilbert function through l(C_n)", |c| {
                sally::verify_prop39(c.analysis()?)
            }),
            (TheoremId::ReductionThreeBound, "integrally closed, r >= 3 bound", |c| {
                sally::verify_prop310(&c.coefficient_data()?)
            }),
            (TheoremId::ReductionThreeEquality, "integrally closed, I^4 = QI^3: C certificate", |c| {
                sally::verify_thm310(&c.coefficient_data()?)
            }),
            (TheoremId::ClosureSquareLemma, "I^2 = closure(I)^2 = Q closure(I)", |c| {
                let (i, q) = c.pair()?;
                sally::verify_lemma35(i, q)
            }),
            (TheoremId::DegreeTClosureLemma, "degree-t ideals containing (X^t, Y^t)", verify_lemma36_ctx),
            (TheoremId::FiltrationCoefficients, "e1(M) <= t e0(M) + i0 e1(R/p)", verify_thm11a_ctx),
        ];
        for (id, summary, run) in table {
            reg.register(Box::new(FnVerifier { id, summary, run }));
        }
        reg
    }

    pub fn register(&mut self, verifier: Box<dyn Verifier>) {
        self.entries.insert(verifier.id().as_str(), verifier);
    }

    pub fn get(&self, name: &str) -> Option<&dyn Verifier> {
        self.entries.get(name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    pub fn run(&self, name: &str, ctx: &VerifyContext) -> Result<VerifierReport> {
        let v = self
            .get(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown theorem id `{name}`")))?;
        v.verify(ctx)
    }
}

fn verify_lemma36_ctx(ctx: &VerifyContext) -> Result<VerifierReport> {
    let i0 = ctx
        .ideal
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("lemma36 needs an ideal I0".into()))?;
    let t = match ctx.t {
        Some(t) => t,
        None => i0.max_generator_grade() as usize,
    };
    sally::verify_lemma36(t, i0)
}

/// Default module for a live pair: the Sally submodule generated in degree
/// `max(r - 1, 1)`, whose lengths agree with `ℓ(S_n)` from that degree on,
/// with `i0` its fitted multiplicity.
pub fn sally_module_table(an: &Analysis) -> Result<ModuleTable> {
    let d = an.d();
    let t = an.r().saturating_sub(1).max(1);
    let lengths = an.sally.truncated_s(t);
    let values: Vec<i64> = lengths.iter().map(|&v| v as i64).collect();
    let fit = fit_alternating(&values, d - 1, min_table_len(d - 1))?;
    let i0 = u64::try_from(fit.e[0])
        .map_err(|_| Error::inconsistent(format!("negative Sally multiplicity {}", fit.e[0])))?;
    Ok(ModuleTable { lengths, t, d, i0, e0_rp: 1, e1_rp: 0 })
}

fn verify_thm11a_ctx(ctx: &VerifyContext) -> Result<VerifierReport> {
    let table = match &ctx.module {
        Some(m) => m.clone(),
        None => sally_module_table(ctx.analysis()?)?,
    };
    thm11a_check(&table)
}
