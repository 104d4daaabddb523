//! Structured outcome of a single inequality or identity check.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::Error;

/// The checks exposed by `verify`. The string form is the CLI identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    /// `ℓ(A/I) >= e0 - e1`, equality iff `I^2 = QI`.
    NorthcottBound,
    /// Hilbert function in terms of `e0`, `ℓ(A/I)` and the Sally lengths.
    SallyIdentity,
    /// `ℓ(A/I) >= e0 - e1 + e2/(r-1)` for `r >= 2`.
    ReductionTwoBound,
    /// Under `I^3 = QI^2`: `ℓ(A/I) >= e0 - e1 + e2`, with the equality case
    /// characterized by the Sally filtration certificate.
    ReductionTwoEquality,
    /// Hilbert function through the `C`-module lengths when `Q ∩ I^2 = QI`.
    QuotientModuleIdentity,
    /// Integrally closed, `r >= 3`: the `(r-2)ℓ(I^2/QI)` bound.
    ReductionThreeBound,
    /// Integrally closed, `I^4 = QI^3`: the `C`-module equality case.
    ReductionThreeEquality,
    /// `I^2 = Ī^2 = QĪ` forces `I^3 = QI^2` and `ℓ(I^2/QI) = d ℓ(Ī/I)`.
    ClosureSquareLemma,
    /// Degree-`t` monomial ideals containing `(X^t, Y^t)` close to `(X,Y)^t`.
    DegreeTClosureLemma,
    /// `e1(M) <= t e0(M) + i0 e1(R/p)` for modules generated in degree `t`.
    FiltrationCoefficients,
}

impl TheoremId {
    pub const ALL: [TheoremId; 10] = [
        TheoremId::NorthcottBound,
        TheoremId::SallyIdentity,
        TheoremId::ReductionTwoBound,
        TheoremId::ReductionTwoEquality,
        TheoremId::QuotientModuleIdentity,
        TheoremId::ReductionThreeBound,
        TheoremId::ReductionThreeEquality,
        TheoremId::ClosureSquareLemma,
        TheoremId::DegreeTClosureLemma,
        TheoremId::FiltrationCoefficients,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::NorthcottBound => "northcott",
            TheoremId::SallyIdentity => "prop31",
            TheoremId::ReductionTwoBound => "prop32",
            TheoremId::ReductionTwoEquality => "thm33",
            TheoremId::QuotientModuleIdentity => "prop39",
            TheoremId::ReductionThreeBound => "prop310",
            TheoremId::ReductionThreeEquality => "thm310",
            TheoremId::ClosureSquareLemma => "lemma35",
            TheoremId::DegreeTClosureLemma => "lemma36",
            TheoremId::FiltrationCoefficients => "thm11a",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown theorem id `{s}`")))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

pub fn serialize_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub holds: bool,
}

/// Outcome of testing `ℓ(M_n) = i0 · ℓ((R/p)_{n-t})` on a length table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateOutcome {
    pub t: usize,
    pub i0: u64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifierReport {
    pub theorem: TheoremId,
    pub hypotheses: Vec<Hypothesis>,
    #[serde(serialize_with = "serialize_ratio")]
    pub lhs: BigRational,
    #[serde(serialize_with = "serialize_ratio")]
    pub rhs: BigRational,
    /// `lhs - rhs`.
    #[serde(serialize_with = "serialize_ratio")]
    pub slack: BigRational,
    pub equality: bool,
    pub certificate: Option<CertificateOutcome>,
    pub depth_lower: usize,
    pub depth_upper: usize,
    pub justifications: Vec<String>,
}

impl VerifierReport {
    pub fn new(theorem: TheoremId, d: usize) -> Self {
        VerifierReport {
            theorem,
            hypotheses: Vec::new(),
            lhs: BigRational::zero(),
            rhs: BigRational::zero(),
            slack: BigRational::zero(),
            equality: true,
            certificate: None,
            depth_lower: 0,
            depth_upper: d,
            justifications: Vec::new(),
        }
    }

    pub fn hypothesis(&mut self, name: impl Into<String>, holds: bool) -> &mut Self {
        self.hypotheses.push(Hypothesis { name: name.into(), holds });
        self
    }

    pub fn note(&mut self, text: impl Into<String>) -> &mut Self {
        self.justifications.push(text.into());
        self
    }

    /// Sets both sides; `slack` and `equality` follow.
    pub fn sides(&mut self, lhs: BigRational, rhs: BigRational) -> &mut Self {
        self.slack = &lhs - &rhs;
        self.equality = self.slack.is_zero();
        self.lhs = lhs;
        self.rhs = rhs;
        self
    }

    pub fn slack_is_negative(&self) -> bool {
        self.slack.is_negative()
    }

    pub fn tighten_lower(&mut self, lower: usize) {
        self.depth_lower = self.depth_lower.max(lower);
    }

    pub fn tighten_upper(&mut self, upper: usize) {
        self.depth_upper = self.depth_upper.min(upper);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::ratio;

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.as_str().parse::<TheoremId>().unwrap(), id);
        }
        assert!("thm99".parse::<TheoremId>().is_err());
    }

    #[test]
    fn rationals_serialize_as_fraction_strings() {
        let mut r = VerifierReport::new(TheoremId::ReductionThreeEquality, 2);
        r.sides(ratio(1, 1), ratio(1, 2));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["slack"], "1/2");
        assert_eq!(v["lhs"], "1");
        assert_eq!(v["theorem"], "thm310");
        assert!(!r.equality);
    }
}
