//! m-primary monomial ideals, represented by minimal generators together with
//! the finite co-staircase of standard monomials outside the ideal.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::ambient::{AmbientAlgebra, MembershipOracle, Monomial};
use crate::error::{Error, Result};

pub const DEFAULT_GRADE_CAP: i64 = 512;

/// A length `ℓ_A(·)`: a count of standard monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct LengthValue(pub u64);

impl LengthValue {
    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for LengthValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone)]
pub struct MonomialIdeal {
    ambient: Arc<AmbientAlgebra>,
    generators: Vec<Monomial>,
    costaircase: BTreeSet<Monomial>,
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MonomialIdeal")
            .field("generators", &self.generators)
            .field("colength", &self.costaircase.len())
            .finish()
    }
}

impl PartialEq for MonomialIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.costaircase == other.costaircase
    }
}

impl Eq for MonomialIdeal {}

impl MonomialIdeal {
    /// Builds the ideal generated by `raw`, extracting a minimal generating
    /// set and computing the co-staircase.
    pub fn new(ambient: Arc<AmbientAlgebra>, raw: Vec<Monomial>) -> Result<Self> {
        Self::with_cap(ambient, raw, DEFAULT_GRADE_CAP)
    }

    pub fn with_cap(ambient: Arc<AmbientAlgebra>, raw: Vec<Monomial>, cap: i64) -> Result<Self> {
        {
            let mut oracle = ambient.oracle();
            for g in &raw {
                ambient.check_arity(g)?;
                if !oracle.contains(g) {
                    return Err(Error::NotInSemigroup(g.to_string()));
                }
            }
        }
        Self::from_semigroup_elements(ambient, raw, cap)
    }

    pub fn from_vectors(ambient: &Arc<AmbientAlgebra>, raw: &[Vec<i64>]) -> Result<Self> {
        Self::new(ambient.clone(), raw.iter().cloned().map(Monomial::new).collect())
    }

    /// The unit ideal `A` (colength 0).
    pub fn unit(ambient: Arc<AmbientAlgebra>) -> Self {
        let zero = ambient.zero();
        MonomialIdeal { ambient, generators: vec![zero], costaircase: BTreeSet::new() }
    }

    /// The maximal ideal raised to the `t`-th power. Polynomial ambients
    /// only (for semigroups the atoms play the role of the variables).
    pub fn maximal_power(ambient: &Arc<AmbientAlgebra>, t: usize) -> Result<Self> {
        let m = MonomialIdeal::new(ambient.clone(), ambient.atoms().to_vec())?;
        m.power(t)
    }

    // Caller guarantees every element of `raw` lies in the semigroup.
    fn from_semigroup_elements(
        ambient: Arc<AmbientAlgebra>,
        raw: Vec<Monomial>,
        cap: i64,
    ) -> Result<Self> {
        let mut oracle = ambient.oracle();
        let generators = minimal_antichain(raw, &mut oracle);
        if generators.iter().any(Monomial::is_zero) {
            drop(oracle);
            return Ok(Self::unit(ambient));
        }
        if let crate::ambient::AmbientKind::Polynomial { d } = ambient.kind() {
            // Pure powers of every variable are necessary for finite colength.
            for i in 0..*d {
                let has_pure_power = generators
                    .iter()
                    .any(|g| g.iter().enumerate().all(|(j, &x)| j == i || x == 0));
                if !has_pure_power {
                    return Err(Error::NotMPrimary { cap });
                }
            }
        }
        let costaircase = costaircase_bfs(&ambient, &generators, &mut oracle, cap)?;
        drop(oracle);
        Ok(MonomialIdeal { ambient, generators, costaircase })
    }

    pub fn ambient(&self) -> &Arc<AmbientAlgebra> {
        &self.ambient
    }

    /// Minimal generators in lexicographic order.
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn costaircase(&self) -> &BTreeSet<Monomial> {
        &self.costaircase
    }

    pub fn colength(&self) -> LengthValue {
        LengthValue(self.costaircase.len() as u64)
    }

    pub fn is_unit(&self) -> bool {
        self.costaircase.is_empty()
    }

    /// Largest grade of a standard monomial (-1 for the unit ideal).
    pub fn max_costaircase_grade(&self) -> i64 {
        self.costaircase.iter().map(|v| self.ambient.grade(v)).max().unwrap_or(-1)
    }

    pub fn max_generator_grade(&self) -> i64 {
        self.generators.iter().map(|g| self.ambient.grade(g)).max().unwrap_or(0)
    }

    /// Membership of a monomial, read off the co-staircase.
    pub fn contains_monomial(&self, v: &[i64]) -> Result<bool> {
        if !self.ambient.contains(v)? {
            return Ok(false);
        }
        Ok(!self.costaircase.contains(&Monomial::new(v.to_vec())))
    }

    /// Membership via generators: some `v - g` is a semigroup element.
    pub fn contains_by_generators(&self, v: &[i64]) -> Result<bool> {
        self.ambient.check_arity(v)?;
        let mut oracle = self.ambient.oracle();
        if !oracle.contains(v) {
            return Ok(false);
        }
        Ok(in_ideal(&self.ambient, &self.generators, v, &mut oracle))
    }

    fn check_same_ambient(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ambient(other)?;
        let mut sums = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                sums.push(a + b);
            }
        }
        Self::from_semigroup_elements(self.ambient.clone(), sums, DEFAULT_GRADE_CAP)
    }

    /// `J^n`; `J^0` is the unit ideal.
    pub fn power(&self, n: usize) -> Result<MonomialIdeal> {
        let mut acc = MonomialIdeal::unit(self.ambient.clone());
        for _ in 0..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ambient(other)?;
        let gens = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::from_semigroup_elements(self.ambient.clone(), gens, DEFAULT_GRADE_CAP)
    }

    /// Intersection through the union of co-staircases. The minimal
    /// generators are found among `v + a` for standard monomials `v` of
    /// either ideal and atoms `a`.
    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_same_ambient(other)?;
        let union: BTreeSet<Monomial> =
            self.costaircase.union(&other.costaircase).cloned().collect();
        if union.is_empty() {
            return Ok(MonomialIdeal::unit(self.ambient.clone()));
        }
        let mut candidates = BTreeSet::new();
        for v in &union {
            for a in self.ambient.atoms() {
                let w = v + a;
                if !union.contains(&w) {
                    candidates.insert(w);
                }
            }
        }
        let result = Self::from_semigroup_elements(
            self.ambient.clone(),
            candidates.into_iter().collect(),
            DEFAULT_GRADE_CAP,
        )?;
        if result.costaircase != union {
            return Err(Error::inconsistent("intersection co-staircase differs from union"));
        }
        Ok(result)
    }

    /// `other ⊆ self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.costaircase.is_subset(&other.costaircase))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.costaircase == other.costaircase)
    }
}

/// `ℓ(big / small)` for `small ⊆ big`.
pub fn quotient_length(big: &MonomialIdeal, small: &MonomialIdeal) -> Result<LengthValue> {
    if !big.contains_ideal(small)? {
        return Err(Error::NotContained);
    }
    Ok(LengthValue(small.colength().0 - big.colength().0))
}

fn in_ideal(
    ambient: &AmbientAlgebra,
    generators: &[Monomial],
    v: &[i64],
    oracle: &mut MembershipOracle<'_>,
) -> bool {
    if ambient.is_polynomial() {
        return generators.iter().any(|g| g.iter().zip(v).all(|(a, b)| a <= b));
    }
    generators.iter().any(|g| {
        let diff: Vec<i64> = v.iter().zip(g.iter()).map(|(a, b)| a - b).collect();
        oracle.contains(&diff)
    })
}

// Drops duplicates and every element lying above another in the semigroup
// order (u <= v iff v - u ∈ S).
fn minimal_antichain(raw: Vec<Monomial>, oracle: &mut MembershipOracle<'_>) -> Vec<Monomial> {
    let unique: Vec<Monomial> = raw.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    let mut keep = Vec::with_capacity(unique.len());
    for (i, g) in unique.iter().enumerate() {
        let redundant = unique.iter().enumerate().any(|(j, h)| {
            if i == j {
                return false;
            }
            let diff = g - h;
            oracle.contains(&diff)
        });
        if !redundant {
            keep.push(g.clone());
        }
    }
    keep
}

// The co-staircase is a down-set in the semigroup order, so every standard
// monomial is reached from 0 through standard monomials by adding atoms.
fn costaircase_bfs(
    ambient: &AmbientAlgebra,
    generators: &[Monomial],
    oracle: &mut MembershipOracle<'_>,
    cap: i64,
) -> Result<BTreeSet<Monomial>> {
    let zero = ambient.zero();
    let mut seen: HashSet<Monomial> = HashSet::new();
    let mut outside = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(zero.clone());
    outside.insert(zero.clone());
    queue.push_back(zero);
    while let Some(v) = queue.pop_front() {
        for a in ambient.atoms() {
            let w = &v + a;
            if seen.contains(&w) {
                continue;
            }
            seen.insert(w.clone());
            if in_ideal(ambient, generators, &w, oracle) {
                continue;
            }
            if ambient.grade(&w) > cap {
                return Err(Error::NotMPrimary { cap });
            }
            outside.insert(w.clone());
            queue.push_back(w);
        }
    }
    Ok(outside)
}

/// Lazily extended sequence `J^0, J^1, J^2, ...`.
pub struct PowerSequence {
    powers: Vec<MonomialIdeal>,
}

impl PowerSequence {
    pub fn new(base: MonomialIdeal) -> Self {
        let unit = MonomialIdeal::unit(base.ambient().clone());
        PowerSequence { powers: vec![unit, base] }
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.powers[1]
    }

    pub fn get(&mut self, n: usize) -> Result<&MonomialIdeal> {
        while self.powers.len() <= n {
            let next = self.powers.last().unwrap().product(&self.powers[1])?;
            self.powers.push(next);
        }
        Ok(&self.powers[n])
    }
}
