//! Integral closure of monomial ideals in polynomial rings through the Newton
//! polyhedron `conv(exponents) + R^d_{>=0}`.

use num_traits::Signed;

use crate::ambient::Monomial;
use crate::error::{Error, Result};
use crate::ideals::MonomialIdeal;
use crate::linalg;

#[derive(Clone, Debug)]
pub struct NewtonPolyhedron {
    generators: Vec<Monomial>,
    d: usize,
}

impl NewtonPolyhedron {
    pub fn of(ideal: &MonomialIdeal) -> Result<Self> {
        if !ideal.ambient().is_polynomial() {
            return Err(Error::SemigroupAmbientUnsupported);
        }
        Ok(NewtonPolyhedron {
            generators: ideal.generators().to_vec(),
            d: ideal.ambient().dim(),
        })
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Whether `p = Σ λ_i g_i + μ` with `λ >= 0`, `Σ λ_i = 1`, `μ >= 0`.
    ///
    /// The system has `d + 1` equality rows, so a feasible point exists iff a
    /// basic one does: some `d + 1` columns among the generator columns
    /// `(g_i, 1)` and the slack columns `(e_j, 0)` solve it with
    /// non-negative weights.
    pub fn contains(&self, p: &[i64]) -> bool {
        if self.generators.iter().any(|g| g.divides(&Monomial::new(p.to_vec()))) {
            return true;
        }
        let d = self.d;
        let mut columns: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|g| {
                let mut c = g.to_vec();
                c.push(1);
                c
            })
            .collect();
        let n_gens = columns.len();
        for j in 0..d {
            let mut c = vec![0; d + 1];
            c[j] = 1;
            columns.push(c);
        }
        let mut rhs = p.to_vec();
        rhs.push(1);

        let mut chosen = Vec::with_capacity(d + 1);
        any_subset(columns.len(), d + 1, 0, &mut chosen, &mut |subset| {
            if subset[0] >= n_gens {
                return false;
            }
            let matrix: Vec<Vec<i64>> = (0..=d)
                .map(|row| subset.iter().map(|&c| columns[c][row]).collect())
                .collect();
            match linalg::solve_i64(&matrix, &rhs) {
                Some(weights) => weights.iter().all(|w| !w.is_negative()),
                None => false,
            }
        })
    }
}

// Calls `f` on each increasing `k`-subset of `0..n` until it returns true.
fn any_subset(
    n: usize,
    k: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if chosen.len() == k {
        return f(chosen);
    }
    for i in from..n {
        if n - i < k - chosen.len() {
            break;
        }
        chosen.push(i);
        let hit = any_subset(n, k, i + 1, chosen, f);
        chosen.pop();
        if hit {
            return true;
        }
    }
    false
}

/// The integral closure `Ī`: all lattice points of the Newton polyhedron.
/// Only standard monomials of `I` need testing since `I ⊆ Ī`.
pub fn newton_closure(ideal: &MonomialIdeal) -> Result<MonomialIdeal> {
    let poly = NewtonPolyhedron::of(ideal)?;
    let mut gens = ideal.generators().to_vec();
    gens.extend(ideal.costaircase().iter().filter(|p| poly.contains(p)).cloned());
    MonomialIdeal::new(ideal.ambient().clone(), gens)
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<bool> {
    let closure = newton_closure(ideal)?;
    ideal.equals(&closure)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambient::AmbientAlgebra;
    use std::sync::Arc;

    fn poly2() -> Arc<AmbientAlgebra> {
        Arc::new(AmbientAlgebra::polynomial(2).unwrap())
    }

    fn ideal(amb: &Arc<AmbientAlgebra>, gens: &[[i64; 2]]) -> MonomialIdeal {
        MonomialIdeal::new(amb.clone(), gens.iter().map(|&g| Monomial::from(g)).collect()).unwrap()
    }

    #[test]
    fn pure_powers_close_to_maximal_power() {
        let amb = poly2();
        let q = ideal(&amb, &[[7, 0], [0, 7]]);
        let m7 = MonomialIdeal::maximal_power(&amb, 7).unwrap();
        assert_eq!(newton_closure(&q).unwrap(), m7);
        assert!(is_integrally_closed(&m7).unwrap());
    }

    #[test]
    fn maximal_powers_are_closed() {
        let amb = poly2();
        for t in 1..=5 {
            let mt = MonomialIdeal::maximal_power(&amb, t).unwrap();
            assert_eq!(newton_closure(&mt).unwrap(), mt);
        }
        assert!(is_integrally_closed(&ideal(&amb, &[[2, 0], [1, 1], [0, 2]])).unwrap());
    }

    #[test]
    fn mixed_degree_seven_ideal_is_not_closed() {
        let amb = poly2();
        let i = ideal(&amb, &[[7, 0], [0, 7], [6, 1], [5, 2], [2, 5], [1, 6]]);
        assert!(!is_integrally_closed(&i).unwrap());
        assert_eq!(newton_closure(&i).unwrap(), MonomialIdeal::maximal_power(&amb, 7).unwrap());
    }

    #[test]
    fn staircase_with_corner() {
        // Edges x + 3y = 4 and 2x + y = 3 cut off no extra lattice points.
        let amb = poly2();
        let i = ideal(&amb, &[[4, 0], [1, 1], [0, 3]]);
        assert!(is_integrally_closed(&i).unwrap());
        // x + 2y >= 4 picks up X^2 Y.
        let j = ideal(&amb, &[[4, 0], [0, 2]]);
        let closure = newton_closure(&j).unwrap();
        assert_eq!(closure, ideal(&amb, &[[4, 0], [2, 1], [0, 2]]));
    }

    #[test]
    fn semigroup_ambient_is_unsupported() {
        let amb = Arc::new(
            AmbientAlgebra::semigroup(vec![[1, 0].into(), [1, 1].into()], true).unwrap(),
        );
        let m = MonomialIdeal::new(amb, vec![[1, 0].into(), [1, 1].into()]).unwrap();
        assert_eq!(newton_closure(&m).unwrap_err(), Error::SemigroupAmbientUnsupported);
    }
}
