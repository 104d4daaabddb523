//! The ambient monomial algebra: a polynomial ring (monomials are `N^d`) or
//! an affine semigroup ring `K[S]` with `S ⊂ N^k` positively graded by the
//! first coordinate.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Deref, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;

/// An exponent vector. Ordered lexicographically, which is also the
/// canonical generator order for serialization.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<i64>);

impl Monomial {
    pub fn new(exponents: Vec<i64>) -> Self {
        Monomial(exponents)
    }

    pub fn zero(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn unit(arity: usize, index: usize) -> Self {
        let mut v = vec![0; arity];
        v[index] = 1;
        Monomial(v)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl Deref for Monomial {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Monomial {
    fn from(v: Vec<i64>) -> Self {
        Monomial(v)
    }
}

impl<const N: usize> From<[i64; N]> for Monomial {
    fn from(v: [i64; N]) -> Self {
        Monomial(v.to_vec())
    }
}

impl Add for &Monomial {
    type Output = Monomial;
    fn add(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Monomial {
    type Output = Monomial;
    fn sub(self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AmbientKind {
    Polynomial { d: usize },
    Semigroup { generators: Vec<Monomial>, k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AmbientAlgebra {
    kind: AmbientKind,
    dim: usize,
    cm_flag: bool,
    // Polynomial: unit vectors. Semigroup: the user generators, deduplicated.
    atoms: Vec<Monomial>,
}

impl AmbientAlgebra {
    pub fn polynomial(d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidAmbient(format!(
                "polynomial ambient needs d >= 2, got {d}"
            )));
        }
        Ok(AmbientAlgebra {
            kind: AmbientKind::Polynomial { d },
            dim: d,
            cm_flag: true,
            atoms: (0..d).map(|i| Monomial::unit(d, i)).collect(),
        })
    }

    /// An affine semigroup ring. `cm_flag` is the caller's assertion that the
    /// local ring is Cohen–Macaulay; it is recorded, never checked.
    pub fn semigroup(generators: Vec<Monomial>, cm_flag: bool) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::InvalidAmbient("semigroup needs generators".into()));
        };
        let k = first.len();
        if k == 0 {
            return Err(Error::InvalidAmbient("generators must be non-empty vectors".into()));
        }
        for g in &generators {
            if g.len() != k {
                return Err(Error::Arity { expected: k, got: g.len() });
            }
            if !g.is_nonnegative() {
                return Err(Error::InvalidAmbient(format!("generator {g} has a negative entry")));
            }
            if g[0] <= 0 {
                return Err(Error::InvalidAmbient(format!(
                    "generator {g} must have positive first coordinate"
                )));
            }
        }
        let atoms: Vec<Monomial> = generators
            .iter()
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows: Vec<Vec<i64>> = atoms.iter().map(|g| g.to_vec()).collect();
        let dim = linalg::rank(&rows);
        Ok(AmbientAlgebra {
            kind: AmbientKind::Semigroup { generators: atoms.clone(), k },
            dim,
            cm_flag,
            atoms,
        })
    }

    pub fn kind(&self) -> &AmbientKind {
        &self.kind
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.kind, AmbientKind::Polynomial { .. })
    }

    /// Krull dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cm_flag(&self) -> bool {
        self.cm_flag
    }

    /// Length of the exponent vectors.
    pub fn arity(&self) -> usize {
        match &self.kind {
            AmbientKind::Polynomial { d } => *d,
            AmbientKind::Semigroup { k, .. } => *k,
        }
    }

    /// Minimal additive generators of the monomial semigroup.
    pub fn atoms(&self) -> &[Monomial] {
        &self.atoms
    }

    pub fn zero(&self) -> Monomial {
        Monomial::zero(self.arity())
    }

    /// The positive grading: total degree for polynomial rings, first
    /// coordinate for semigroups.
    pub fn grade(&self, v: &[i64]) -> i64 {
        match self.kind {
            AmbientKind::Polynomial { .. } => v.iter().sum(),
            AmbientKind::Semigroup { .. } => v[0],
        }
    }

    pub fn max_atom_grade(&self) -> i64 {
        self.atoms.iter().map(|a| self.grade(a)).max().unwrap_or(1)
    }

    pub fn check_arity(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: v.len() });
        }
        Ok(())
    }

    /// Exact membership in the monomial semigroup.
    pub fn contains(&self, v: &[i64]) -> Result<bool> {
        self.check_arity(v)?;
        Ok(self.oracle().contains(v))
    }

    /// A membership decider that memoizes semigroup decompositions across
    /// calls. Use one per computation.
    pub fn oracle(&self) -> MembershipOracle<'_> {
        MembershipOracle { ambient: self, memo: HashMap::new() }
    }

    /// All semigroup elements of grade `<= grade_bound`.
    pub fn enumerate_up_to(&self, grade_bound: i64) -> BTreeSet<Monomial> {
        let mut seen = BTreeSet::new();
        if grade_bound < 0 {
            return seen;
        }
        let mut stack = vec![self.zero()];
        seen.insert(self.zero());
        while let Some(v) = stack.pop() {
            for a in &self.atoms {
                let w = &v + a;
                if self.grade(&w) <= grade_bound && seen.insert(w.clone()) {
                    stack.push(w);
                }
            }
        }
        seen
    }
}

pub struct MembershipOracle<'a> {
    ambient: &'a AmbientAlgebra,
    memo: HashMap<Vec<i64>, bool>,
}

impl MembershipOracle<'_> {
    /// Arity is assumed correct.
    pub fn contains(&mut self, v: &[i64]) -> bool {
        match &self.ambient.kind {
            AmbientKind::Polynomial { .. } => v.iter().all(|&x| x >= 0),
            AmbientKind::Semigroup { .. } => self.semigroup_contains(v),
        }
    }

    // Dynamic programming over the first-coordinate grading: v ∈ S iff v = 0
    // or v - a ∈ S for some atom a. The grade strictly drops, so the
    // recursion depth is bounded by v[0].
    fn semigroup_contains(&mut self, v: &[i64]) -> bool {
        if v.iter().any(|&x| x < 0) {
            return false;
        }
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if let Some(&known) = self.memo.get(v) {
            return known;
        }
        let ambient = self.ambient;
        let mut found = false;
        for a in &ambient.atoms {
            let rest: Vec<i64> = v.iter().zip(a.iter()).map(|(x, y)| x - y).collect();
            if self.semigroup_contains(&rest) {
                found = true;
                break;
            }
        }
        self.memo.insert(v.to_vec(), found);
        found
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(s: i64) -> AmbientAlgebra {
        let gens = (0..=2 * s + 1).map(|i| Monomial::from([1, i])).collect();
        AmbientAlgebra::semigroup(gens, true).unwrap()
    }

    #[test]
    fn polynomial_membership() {
        let p = AmbientAlgebra::polynomial(2).unwrap();
        assert!(p.contains(&[3, 0]).unwrap());
        assert!(!p.contains(&[3, -1]).unwrap());
        assert_eq!(p.contains(&[1, 2, 3]), Err(Error::Arity { expected: 2, got: 3 }));
    }

    #[test]
    fn polynomial_needs_dimension_two() {
        assert!(AmbientAlgebra::polynomial(1).is_err());
    }

    #[test]
    fn semigroup_membership() {
        let a = family(1);
        assert!(a.contains(&[2, 5]).unwrap());
        assert!(!a.contains(&[1, 4]).unwrap());
        assert!(a.contains(&[0, 0]).unwrap());
        assert!(!a.contains(&[0, 1]).unwrap());
    }

    #[test]
    fn semigroup_dimension_is_lattice_rank() {
        assert_eq!(family(2).dim(), 2);
        let line = AmbientAlgebra::semigroup(vec![[1, 1].into(), [2, 2].into()], true).unwrap();
        assert_eq!(line.dim(), 1);
    }

    #[test]
    fn semigroup_rejects_bad_generators() {
        assert!(AmbientAlgebra::semigroup(vec![[0, 1].into()], true).is_err());
        assert!(AmbientAlgebra::semigroup(vec![[1, -1].into()], true).is_err());
        assert!(AmbientAlgebra::semigroup(vec![], true).is_err());
    }

    #[test]
    fn enumeration_small_bounds() {
        let p = AmbientAlgebra::polynomial(2).unwrap();
        let got: Vec<_> = p.enumerate_up_to(1).into_iter().collect();
        assert_eq!(got, vec![[0, 0].into(), [0, 1].into(), [1, 0].into()]);

        let s = family(1);
        let got: BTreeSet<_> = s.enumerate_up_to(1);
        let want: BTreeSet<Monomial> =
            [[0, 0], [1, 0], [1, 1], [1, 2], [1, 3]].into_iter().map(Monomial::from).collect();
        assert_eq!(got, want);

        for amb in [p, s] {
            let zero: BTreeSet<_> = [amb.zero()].into_iter().collect();
            assert_eq!(amb.enumerate_up_to(0), zero);
        }
    }

    #[test]
    fn closed_form_membership_for_the_family() {
        for s in 1..=3i64 {
            let amb = family(s);
            let mut oracle = amb.oracle();
            for a in 0..=12i64 {
                for b in -2..=(2 * s + 1) * a + 3 {
                    let expect = (0..=(2 * s + 1) * a).contains(&b);
                    assert_eq!(oracle.contains(&[a, b]), expect, "s={s} ({a},{b})");
                }
            }
        }
    }
}
