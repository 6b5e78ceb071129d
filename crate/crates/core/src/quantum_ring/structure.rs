use serde::Serialize;

use super::presentation::RingPresentation;
use crate::algebra::{confluence_smoke_check, enumerate_normal_monomials, Monomial, Polynomial, Rational, RewriteSystem};
use crate::error::Error;
use crate::orbifold::{ClassKind, Sector, Weights};

/// Seed for the randomized confluence guard run at construction.
pub const CONFLUENCE_SEED: u64 = 0x5eed;
const CONFLUENCE_SAMPLES: u32 = 24;

/// Products of normal basis monomials, reduced to normal form and truncated
/// at `q^truncation`.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    pub presentation: RingPresentation,
    pub basis: Vec<Monomial>,
    pub truncation: u32,
    rewrite: RewriteSystem,
    products: Vec<Vec<Polynomial>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesTerm {
    pub qpow: u32,
    pub coeff: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseConstant {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub series: Vec<SeriesTerm>,
}

impl StructureConstants {
    /// Builds the table from `presentation`, after checking the confluence guard.
    pub fn from_presentation(presentation: RingPresentation, truncation: u32) -> Result<Self, Error> {
        let rewrite = presentation.rewrite_system(truncation)?;
        if let Some(cp) = rewrite.critical_pairs().into_iter().find(|cp| !cp.is_joinable()) {
            return Err(Error::NotConfluent(format!(
                "overlap {} reduces to `{}` and `{}`",
                cp.overlap, cp.via_first, cp.via_second
            )));
        }
        if !confluence_smoke_check(&rewrite, CONFLUENCE_SAMPLES, CONFLUENCE_SEED) {
            return Err(Error::NotConfluent("random reduction orders disagree".into()));
        }
        let basis = enumerate_normal_monomials(&rewrite, presentation.weights.d() as u32)?;
        let products = compute_products(&rewrite, &basis);
        Ok(StructureConstants { presentation, basis, truncation, rewrite, products })
    }

    pub fn weights(&self) -> &Weights {
        &self.presentation.weights
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn rewrite_system(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.basis.iter().position(|b| b == m)
    }

    /// Index of the identity `zeta^0`.
    pub fn identity_index(&self) -> usize {
        self.index_of(&Monomial::ONE).expect("1 is always a normal monomial")
    }

    /// Normal form of `basis[i] * basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> &Polynomial {
        &self.products[i][j]
    }

    /// Coefficients of `q^0 .. q^N` in front of `basis[k]` in `basis[i] * basis[j]`.
    pub fn c(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let target = self.basis[k];
        (0..=self.truncation)
            .map(|l| self.products[i][j].coefficient(&Monomial { e_q: l, ..target }))
            .collect()
    }

    /// Product of arbitrary polynomials in the quotient.
    pub fn multiply(&self, p: &Polynomial, r: &Polynomial) -> Polynomial {
        self.rewrite.normal_form(&p.mul(r))
    }

    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        self.rewrite.normal_form(p)
    }

    /// Writes a normal-form polynomial as `(basis index, q power, coefficient)` triples.
    pub fn coordinates(&self, p: &Polynomial) -> Result<Vec<(usize, u32, Rational)>, Error> {
        p.terms()
            .map(|(m, c)| {
                self.index_of(&m.without_q())
                    .map(|k| (k, m.e_q, c.clone()))
                    .ok_or_else(|| Error::NotNormal(m.to_string()))
            })
            .collect()
    }

    /// Nonzero structure constants as a sparse list.
    pub fn sparse(&self) -> Vec<SparseConstant> {
        let mut out = Vec::new();
        for i in 0..self.rank() {
            for j in 0..self.rank() {
                for k in 0..self.rank() {
                    let series: Vec<SeriesTerm> = self
                        .c(i, j, k)
                        .into_iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(l, coeff)| SeriesTerm { qpow: l as u32, coeff })
                        .collect();
                    if !series.is_empty() {
                        out.push(SparseConstant { i, j, k, series });
                    }
                }
            }
        }
        out
    }

    #[cfg(test)]
    pub(crate) fn corrupt_for_tests(&mut self, i: usize, j: usize, value: Polynomial) {
        self.products[i][j] = value;
    }
}

#[cfg(not(feature = "parallel"))]
fn compute_products(rs: &RewriteSystem, basis: &[Monomial]) -> Vec<Vec<Polynomial>> {
    basis
        .iter()
        .map(|bi| {
            basis
                .iter()
                .map(|bj| rs.normal_form(&Polynomial::monomial(bi.mul(bj), Rational::one())))
                .collect()
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn compute_products(rs: &RewriteSystem, basis: &[Monomial]) -> Vec<Vec<Polynomial>> {
    use rayon::prelude::*;
    basis
        .par_iter()
        .map(|bi| {
            basis
                .iter()
                .map(|bj| rs.normal_form(&Polynomial::monomial(bi.mul(bj), Rational::one())))
                .collect()
        })
        .collect()
}

/// Structure constants of the small quantum ring of `P(a,b)` up to `q^truncation`.
pub fn structure_constants(w: &Weights, truncation: u32) -> Result<StructureConstants, Error> {
    if truncation == 0 {
        return Err(Error::Invalid("q-truncation must be at least 1".into()));
    }
    StructureConstants::from_presentation(RingPresentation::quantum(w), truncation)
}

/// Sector and class kind carried by a normal monomial.
///
/// `zeta^i` is the fundamental class of `OneDim{i}`; `zeta^i x^j` with
/// `0 < j < A` is the fundamental class of `Point0{(jn + iA) mod a}`;
/// `zeta^i y^k` with `0 < k < B` that of `PointInf{(km + iB) mod b}`;
/// `zeta^i x^A` is the point class of `OneDim{(n + i) mod d}`.
pub fn monomial_sector(w: &Weights, mono: &Monomial) -> Result<(Sector, ClassKind), Error> {
    let (a, b, d) = (w.a() as i64, w.b() as i64, w.d() as i64);
    let (big_a, big_b) = (w.big_a(), w.big_b());
    let not_normal = || Error::NotNormal(mono.to_string());
    if mono.e_q != 0 || mono.e_zeta as i64 >= d || (mono.e_x > 0 && mono.e_y > 0) {
        return Err(not_normal());
    }
    let i = mono.e_zeta as i64;
    let (j, k) = (mono.e_x as u64, mono.e_y as u64);
    if j == 0 && k == 0 {
        return Ok((Sector::OneDim { label: i as u64 }, ClassKind::Fundamental));
    }
    if j == big_a {
        let label = (w.n() + i).rem_euclid(d) as u64;
        return Ok((Sector::OneDim { label }, ClassKind::Point));
    }
    if j > 0 && j < big_a {
        let label = (j as i64 * w.n() + i * big_a as i64).rem_euclid(a) as u64;
        return Ok((Sector::Point0 { label }, ClassKind::Fundamental));
    }
    if k > 0 && k < big_b {
        let label = (k as i64 * w.m() + i * big_b as i64).rem_euclid(b) as u64;
        return Ok((Sector::PointInf { label }, ClassKind::Fundamental));
    }
    Err(not_normal())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn p46_products() {
        let w = Weights::new(4, 6).unwrap();
        let sc = structure_constants(&w, 6).unwrap();
        assert_eq!(sc.rank(), 10);
        assert_eq!(sc.multiply(&p("x"), &p("y")), p("q"));
        assert_eq!(sc.multiply(&p("x"), &p("x")), p("x^2"));
        assert_eq!(sc.multiply(&p("x^2"), &p("x")), p("3/2 * y^2 q"));
        let x = sc.index_of(&Monomial::x(1)).unwrap();
        let y = sc.index_of(&Monomial::y(1)).unwrap();
        let one = sc.identity_index();
        assert_eq!(sc.c(x, y, one)[1], Rational::one());
    }

    #[test]
    fn p11_basis() {
        let sc = structure_constants(&Weights::new(1, 1).unwrap(), 6).unwrap();
        assert_eq!(sc.basis, vec![Monomial::ONE, Monomial::x(1)]);
        assert_eq!(sc.multiply(&p("x"), &p("x")), p("q"));
    }

    #[test]
    fn monomial_sector_examples() {
        let w = Weights::new(4, 6).unwrap();
        assert_eq!(monomial_sector(&w, &Monomial::x(1)).unwrap(), (Sector::Point0 { label: 1 }, ClassKind::Fundamental));
        assert_eq!(monomial_sector(&w, &Monomial::y(1)).unwrap(), (Sector::PointInf { label: 5 }, ClassKind::Fundamental));
        assert_eq!(monomial_sector(&w, &Monomial::x(2)).unwrap(), (Sector::OneDim { label: 1 }, ClassKind::Point));
        assert!(monomial_sector(&w, &Monomial::new(0, 1, 1, 0)).is_err());
        assert!(monomial_sector(&w, &Monomial::y(3)).is_err());
    }

    #[test]
    fn zero_truncation_rejected() {
        assert!(structure_constants(&Weights::new(2, 3).unwrap(), 0).is_err());
    }
}
