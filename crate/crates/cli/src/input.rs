use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use sally_core::filtration::ModuleTable;
use sally_core::sally::AnalysisOptions;
use sally_core::{AmbientAlgebra, Monomial, MonomialIdeal};

/// Malformed or semantically invalid input; maps to exit code 2.
#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error: {}", self.0)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub ambient: Option<AmbientSpec>,
    #[serde(default)]
    pub ideal: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub reduction: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    pub flags: Flags,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub module: Option<ModuleSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum AmbientSpec {
    Polynomial {
        d: usize,
        #[serde(default)]
        cm_flag: Option<bool>,
    },
    Semigroup {
        generators: Vec<Vec<i64>>,
        #[serde(default)]
        cm_flag: Option<bool>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub assume_integrally_closed: bool,
    #[serde(default)]
    pub assume_rr_closed: bool,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(rename = "N")]
    pub n: Option<usize>,
    pub cap: Option<usize>,
    pub json: Option<bool>,
    /// Exponent for the `power` command.
    pub exponent: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub lengths: Vec<u64>,
    pub t: usize,
    pub d: usize,
    pub i0: u64,
    #[serde(default = "one")]
    pub e0_rp: i64,
    #[serde(default)]
    pub e1_rp: i64,
}

fn one() -> i64 {
    1
}

impl ModuleSpec {
    pub fn table(&self) -> ModuleTable {
        ModuleTable {
            lengths: self.lengths.clone(),
            t: self.t,
            d: self.d,
            i0: self.i0,
            e0_rp: self.e0_rp,
            e1_rp: self.e1_rp,
        }
    }
}

pub fn parse(text: &str) -> Result<InputDocument, ParseError> {
    serde_json::from_str(text).map_err(|e| ParseError(e.to_string()))
}

fn monomials(field: &str, raw: &[Vec<i64>]) -> Result<Vec<Monomial>, ParseError> {
    if raw.is_empty() {
        return Err(ParseError(format!("{field}: at least one exponent vector is required")));
    }
    raw.iter()
        .enumerate()
        .map(|(i, v)| {
            if v.iter().any(|&x| x < 0) {
                Err(ParseError(format!("{field}[{i}]: exponents must be non-negative")))
            } else {
                Ok(Monomial::new(v.clone()))
            }
        })
        .collect()
}

/// The parsed ambient together with the ideals it carries.
pub struct Resolved {
    pub ambient: Arc<AmbientAlgebra>,
    pub ideal: Option<MonomialIdeal>,
    pub reduction: Option<MonomialIdeal>,
}

impl InputDocument {
    pub fn resolve(&self) -> anyhow::Result<Resolved> {
        let spec = self
            .ambient
            .as_ref()
            .ok_or_else(|| ParseError("ambient: missing".into()))?;
        let ambient = match spec {
            AmbientSpec::Polynomial { d, cm_flag } => {
                if *cm_flag == Some(false) {
                    return Err(ParseError("ambient.cm_flag: polynomial rings are Cohen–Macaulay".into()).into());
                }
                AmbientAlgebra::polynomial(*d).map_err(|e| ParseError(format!("ambient: {e}")))?
            }
            AmbientSpec::Semigroup { generators, cm_flag } => {
                let gens = monomials("ambient.generators", generators)?;
                AmbientAlgebra::semigroup(gens, cm_flag.unwrap_or(false))
                    .map_err(|e| ParseError(format!("ambient: {e}")))?
            }
        };
        let ambient = Arc::new(ambient);
        let build = |field: &str, raw: &Option<Vec<Vec<i64>>>| -> anyhow::Result<Option<MonomialIdeal>> {
            match raw {
                None => Ok(None),
                Some(raw) => {
                    let gens = monomials(field, raw)?;
                    MonomialIdeal::new(ambient.clone(), gens)
                        .map(Some)
                        .map_err(|e| ParseError(format!("{field}: {e}")).into())
                }
            }
        };
        let ideal = build("ideal", &self.ideal)?;
        let reduction = build("reduction", &self.reduction)?;
        Ok(Resolved { ambient, ideal, reduction })
    }

    /// Like [`resolve`](Self::resolve), but a document without an ambient
    /// (e.g. a bare module table) yields no ideals instead of an error.
    pub fn resolve_optional(&self) -> anyhow::Result<(Option<MonomialIdeal>, Option<MonomialIdeal>)> {
        if self.ambient.is_none() {
            if self.ideal.is_some() || self.reduction.is_some() {
                return Err(ParseError("ambient: missing".into()).into());
            }
            return Ok((None, None));
        }
        let r = self.resolve()?;
        Ok((r.ideal, r.reduction))
    }

    pub fn analysis_options(&self, n: Option<usize>, cap: Option<usize>) -> AnalysisOptions {
        AnalysisOptions {
            n: n.or(self.options.n),
            reduction_cap: cap.or(self.options.cap),
            assume_integrally_closed: self.flags.assume_integrally_closed,
            assume_rr_closed: self.flags.assume_rr_closed,
        }
    }
}

impl Resolved {
    pub fn ideal(&self) -> anyhow::Result<&MonomialIdeal> {
        self.ideal.as_ref().ok_or_else(|| ParseError("ideal: missing".into()).into())
    }

    pub fn reduction(&self) -> anyhow::Result<&MonomialIdeal> {
        self.reduction.as_ref().ok_or_else(|| ParseError("reduction: missing".into()).into())
    }
}
