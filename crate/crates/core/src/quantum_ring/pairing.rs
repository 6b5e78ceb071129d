use serde::Serialize;

use super::structure::StructureConstants;
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::error::Error;
use crate::orbifold::Weights;

/// How classes are integrated: the normal monomial representing the class
/// of the stacky point `0` on the untwisted sector, and its integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntegrationNormalization {
    /// `zeta^{-n mod d} x^A`, the point class supported on `OneDim{0}`.
    pub point_monomial: Monomial,
    /// Integral of `point_monomial`; equals `1/a`.
    pub scalar: Rational,
}

/// Computes the integration scalar from the point `0` and cross-checks it
/// against the point at infinity.
///
/// `zeta^{-n} x^A` is the class of the residual gerbe `B mu_a` at `0`, whose
/// integral is `1/a`. Independently, `zeta^{-m} y^B` is the class of the
/// gerbe at infinity with integral `1/b`; its normal form is a multiple of
/// the same monomial, which pins the scalar a second time.
pub fn integration_normalization(sc: &StructureConstants) -> Result<IntegrationNormalization, Error> {
    let w = sc.weights();
    let d = w.d() as i64;
    let point_monomial = Monomial::new((-w.n()).rem_euclid(d) as u32, w.big_a() as u32, 0, 0);
    let scalar = Rational::new(1, w.a() as i64);

    let at_infinity = Monomial::new((-w.m()).rem_euclid(d) as u32, 0, w.big_b() as u32, 0);
    let reduced = sc.normal_form(&Polynomial::monomial(at_infinity, Rational::one()));
    let multiple = reduced.coefficient(&point_monomial);
    if reduced.len() != 1 || &multiple * &scalar != Rational::new(1, w.b() as i64) {
        return Err(Error::Invalid(format!(
            "integration scalars disagree: y-side class reduces to `{reduced}`"
        )));
    }
    Ok(IntegrationNormalization { point_monomial, scalar })
}

/// Integral of the classical (`q^0`) part of `p`.
pub fn integrate(norm: &IntegrationNormalization, p: &Polynomial) -> Rational {
    &norm.scalar * p.coefficient(&norm.point_monomial)
}

/// The modified pairing `g~` on the stringy basis, with its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairingMatrix {
    pub entries: Vec<Vec<Rational>>,
    pub inverse: Vec<Vec<Rational>>,
    pub normalization: IntegrationNormalization,
}

impl PairingMatrix {
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `g~(p, basis[k])` for a normal-form `p`, one value per power of `q`.
    pub fn pair_series(&self, sc: &StructureConstants, p: &Polynomial, k: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); sc.truncation as usize + 1];
        for (m, c) in p.terms() {
            if let Some(i) = sc.index_of(&m.without_q()) {
                out[m.e_q as usize] += c * &self.entries[i][k];
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.rank();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }
}

/// `g~[i][j] = integral of basis[i] *_0 basis[j]` (classical product).
pub fn pairing_matrix(sc: &StructureConstants) -> Result<PairingMatrix, Error> {
    let normalization = integration_normalization(sc)?;
    let n = sc.rank();
    let entries: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| integrate(&normalization, &sc.product(i, j).q_coefficient(0)))
                .collect()
        })
        .collect();
    let inverse = invert(&entries).ok_or(Error::DegeneratePairing)?;
    Ok(PairingMatrix { entries, inverse, normalization })
}

/// Exact Gauss-Jordan inverse; `None` if singular.
pub fn invert(m: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut aug: Vec<Vec<Rational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v *= &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let factor = aug[r][col].clone();
                let pivot_row = aug[col].clone();
                for (v, p) in aug[r].iter_mut().zip(&pivot_row) {
                    *v -= &(&factor * p);
                }
            }
        }
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Scalar needed to turn the point class of `OneDim{0}` into the coarse
/// hyperplane class `h` with `integral over beta_gen of h = 1`: `h = A * [0]`.
pub fn hyperplane_multiple(w: &Weights) -> Rational {
    Rational::from_integer(w.big_a() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum_ring::{monomial_sector, structure_constants};
    use crate::orbifold::involution_sector;

    #[test]
    fn p11_pairing_is_classical_poincare() {
        let sc = structure_constants(&Weights::new(1, 1).unwrap(), 4).unwrap();
        let g = pairing_matrix(&sc).unwrap();
        let (one, pt) = (sc.identity_index(), sc.index_of(&Monomial::x(1)).unwrap());
        assert_eq!(g.get(one, pt), &Rational::one());
        assert_eq!(g.get(pt, pt), &Rational::zero());
        assert_eq!(g.get(one, one), &Rational::zero());
    }

    #[test]
    fn p46_x_pairs_only_with_opposite_sector() {
        let w = Weights::new(4, 6).unwrap();
        let sc = structure_constants(&w, 6).unwrap();
        let g = pairing_matrix(&sc).unwrap();
        assert_eq!(g.normalization.scalar, Rational::new(1, 4));
        let x = sc.index_of(&Monomial::x(1)).unwrap();
        let partners: Vec<usize> = (0..sc.rank()).filter(|&j| !g.get(x, j).is_zero()).collect();
        assert_eq!(partners.len(), 1);
        let (sector, _) = monomial_sector(&w, &sc.basis[partners[0]]).unwrap();
        let (x_sector, _) = monomial_sector(&w, &Monomial::x(1)).unwrap();
        assert_eq!(sector, involution_sector(&w, &x_sector));
        assert_eq!(sc.basis[partners[0]], Monomial::new(1, 1, 0, 0));
        assert_eq!(g.get(x, partners[0]), &Rational::new(1, 4));
    }

    #[test]
    fn inverse_of_singular_matrix() {
        let m = vec![vec![Rational::one(), Rational::one()], vec![Rational::one(), Rational::one()]];
        assert!(invert(&m).is_none());
    }
}
