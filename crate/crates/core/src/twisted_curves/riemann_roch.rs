use std::ops::Add;

use serde::Serialize;

use super::{PicClass, PicardGroup};
use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::{age, Sector, Weights};

/// A balanced twisted curve of coarse genus `genus` with stacky markings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Football {
    pub genus: u32,
    pub marking_orders: Vec<u64>,
}

impl Football {
    pub fn new(genus: u32, marking_orders: Vec<u64>) -> Result<Self, Error> {
        if marking_orders.contains(&0) {
            return Err(Error::Invalid("marking orders must be positive".into()));
        }
        Ok(Football { genus, marking_orders })
    }

    /// `chi(O) = 1 - g` of the coarse curve.
    pub fn chi_structure_sheaf(&self) -> Rational {
        Rational::from_integer(1 - self.genus as i64)
    }
}

/// A K-theory class recorded by rank, degree and one age per marking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SheafClass {
    pub rank: i64,
    pub degree: Rational,
    pub ages: Vec<Rational>,
}

impl SheafClass {
    pub fn structure_sheaf(markings: usize) -> Self {
        SheafClass { rank: 1, degree: Rational::zero(), ages: vec![Rational::zero(); markings] }
    }

    /// The line bundle `p` on `group`'s football, with ages `frac(z/r)`.
    pub fn line_bundle(p: &PicClass, group: &PicardGroup) -> Result<Self, Error> {
        Ok(SheafClass { rank: 1, degree: group.degree(p)?, ages: group.ages(p)? })
    }
}

impl Add for &SheafClass {
    type Output = Result<SheafClass, Error>;

    fn add(self, rhs: &SheafClass) -> Result<SheafClass, Error> {
        if self.ages.len() != rhs.ages.len() {
            return Err(Error::LengthMismatch { expected: self.ages.len(), got: rhs.ages.len() });
        }
        Ok(SheafClass {
            rank: self.rank + rhs.rank,
            degree: &self.degree + &rhs.degree,
            ages: self.ages.iter().zip(&rhs.ages).map(|(x, y)| x + y).collect(),
        })
    }
}

/// Riemann-Roch on a twisted curve: `rank * chi(O) + deg - sum of ages`.
pub fn euler_char(s: &SheafClass, c: &Football) -> Result<Rational, Error> {
    if s.ages.len() != c.marking_orders.len() {
        return Err(Error::LengthMismatch { expected: c.marking_orders.len(), got: s.ages.len() });
    }
    let ages: Rational = s.ages.iter().sum();
    Ok(Rational::from_integer(s.rank) * c.chi_structure_sheaf() + &s.degree - ages)
}

/// `iota_* L_k` for the residual gerbe of a marking of order `r`: rank 0,
/// degree `1/r`, age `-(r-1)/r` when `k = 0` and `1/r` otherwise.
pub fn torsion_class(r: u64, k: u64) -> Result<SheafClass, Error> {
    if r == 0 || k >= r {
        return Err(Error::Invalid(format!("torsion class needs 0 <= k < r, got k = {k}, r = {r}")));
    }
    let r = r as i64;
    let age = if k == 0 { Rational::new(-(r - 1), r) } else { Rational::new(1, r) };
    Ok(SheafClass { rank: 0, degree: Rational::new(1, r), ages: vec![age] })
}

/// A genus-zero twisted stable map to `P(a,b)` of class `k * d * [P(a,b)]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSpec {
    pub target: Weights,
    pub curve: Football,
    pub beta_multiple: u64,
    pub marking_sectors: Vec<Sector>,
}

impl MapSpec {
    /// Builds the curve from the sectors' band orders.
    pub fn new(target: Weights, beta_multiple: u64, marking_sectors: Vec<Sector>) -> Result<Self, Error> {
        for s in &marking_sectors {
            s.validate(&target)?;
        }
        let orders = marking_sectors.iter().map(|s| s.band_order(&target)).collect();
        Ok(MapSpec { target, curve: Football::new(0, orders)?, beta_multiple, marking_sectors })
    }

    fn validate(&self) -> Result<(), Error> {
        if self.curve.genus != 0 {
            return Err(Error::Invalid("virtual dimension is implemented in genus 0".into()));
        }
        if self.curve.marking_orders.len() != self.marking_sectors.len() {
            return Err(Error::LengthMismatch {
                expected: self.curve.marking_orders.len(),
                got: self.marking_sectors.len(),
            });
        }
        for (index, (s, &order)) in self.marking_sectors.iter().zip(&self.curve.marking_orders).enumerate() {
            s.validate(&self.target)?;
            let band = s.band_order(&self.target);
            if band != order {
                return Err(Error::MarkingOrder { index, order, band });
            }
        }
        Ok(())
    }

    /// `f^* T P(a,b)`: rank 1, degree `k d (a+b)/(ab)`, ages of the marking sectors.
    pub fn pulled_back_tangent(&self) -> SheafClass {
        let w = &self.target;
        let degree = Rational::new((self.beta_multiple * w.d() * (w.a() + w.b())) as i64, (w.a() * w.b()) as i64);
        let ages = self.marking_sectors.iter().map(|s| age(w, s)).collect();
        SheafClass { rank: 1, degree, ages }
    }
}

/// `chi(f^* T) + n - 3`.
pub fn virtual_dim(m: &MapSpec) -> Result<Rational, Error> {
    m.validate()?;
    let chi = euler_char(&m.pulled_back_tangent(), &m.curve)?;
    Ok(chi + Rational::from_integer(m.marking_sectors.len() as i64 - 3))
}

/// Canonical line bundles `L` on `C_{a,b,D}` of degree `k d/(ab)` with
/// `z0 = n (mod a)`, `zinf = m (mod b)` and, when `D > 1`, nontrivial
/// restriction to the third marking.
pub fn solve_map_picard(w: &Weights, k: u64, third_order: u64) -> Result<Vec<PicClass>, Error> {
    if third_order == 0 || !w.d().is_multiple_of(third_order) {
        return Err(Error::BadThirdOrder(third_order, w.d()));
    }
    let (a, b) = (w.a() as i64, w.b() as i64);
    let target = Rational::new((k * w.d()) as i64, a * b);
    let z0 = w.x_label() as i64;
    let torsion_choices: Vec<Option<i64>> = if third_order == 1 {
        vec![None]
    } else {
        (1..third_order as i64).map(Some).collect()
    };
    let group = if third_order == 1 {
        PicardGroup::two_marked(w.a(), w.b())
    } else {
        PicardGroup::three_marked(w.a(), w.b(), third_order)
    };
    let mut out = Vec::new();
    for t in torsion_choices {
        let torsion_deg = t.map_or_else(Rational::zero, |t| Rational::new(t, third_order as i64));
        let zinf = (&target - Rational::new(z0, a) - torsion_deg) * Rational::from_integer(b);
        let Some(zinf) = zinf.to_i64() else { continue };
        if (zinf - w.m()).rem_euclid(b) != 0 {
            continue;
        }
        let class = PicClass { z0, zinf, torsion: t.into_iter().collect() };
        debug_assert_eq!(group.canonical(&class).as_ref(), Ok(&class));
        out.push(class);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_sheaf_chi() {
        for g in 0..=5 {
            let c = Football::new(g, vec![3, 5]).unwrap();
            assert_eq!(euler_char(&SheafClass::structure_sheaf(2), &c).unwrap(), Rational::from_integer(1 - g as i64));
        }
    }

    #[test]
    fn torsion_class_examples() {
        assert_eq!(torsion_class(4, 0).unwrap().ages[0], Rational::new(-3, 4));
        assert_eq!(torsion_class(4, 1).unwrap().ages[0], Rational::new(1, 4));
        let c1 = Football::new(0, vec![1]).unwrap();
        let t = torsion_class(1, 0).unwrap();
        assert!(t.ages[0].is_zero());
        assert_eq!(euler_char(&t, &c1).unwrap(), Rational::one());
        let c4 = Football::new(0, vec![4]).unwrap();
        assert_eq!(euler_char(&torsion_class(4, 0).unwrap(), &c4).unwrap(), Rational::one());
        assert_eq!(euler_char(&torsion_class(4, 3).unwrap(), &c4).unwrap(), Rational::zero());
        assert!(torsion_class(4, 4).is_err());
    }

    #[test]
    fn euler_char_length_mismatch() {
        let c = Football::new(0, vec![2, 3]).unwrap();
        assert!(matches!(
            euler_char(&SheafClass::structure_sheaf(1), &c),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn virtual_dim_examples() {
        let p1 = Weights::new(1, 1).unwrap();
        let untwisted = Sector::OneDim { label: 0 };
        let m = MapSpec::new(p1, 1, vec![untwisted; 3]).unwrap();
        assert_eq!(virtual_dim(&m).unwrap(), Rational::from_integer(3));

        let w = Weights::new(4, 6).unwrap();
        let m = MapSpec::new(w, 1, vec![Sector::Point0 { label: 1 }, Sector::PointInf { label: 5 }, untwisted]).unwrap();
        assert_eq!(m.pulled_back_tangent().degree, Rational::new(5, 6));
        assert_eq!(virtual_dim(&m).unwrap(), Rational::one());

        let m = MapSpec::new(w, 0, vec![untwisted; 3]).unwrap();
        assert_eq!(virtual_dim(&m).unwrap(), Rational::one());
    }

    #[test]
    fn virtual_dim_rejects_wrong_marking_order() {
        let w = Weights::new(4, 6).unwrap();
        let mut m = MapSpec::new(w, 1, vec![Sector::Point0 { label: 1 }]).unwrap();
        m.curve.marking_orders[0] = 2;
        assert!(matches!(virtual_dim(&m), Err(Error::MarkingOrder { index: 0, .. })));
    }

    #[test]
    fn solve_map_picard_examples() {
        let w = Weights::new(4, 6).unwrap();
        let sols = solve_map_picard(&w, 1, 1).unwrap();
        assert_eq!(sols, vec![PicClass::new(1, -1)]);
        assert_eq!(PicardGroup::two_marked(4, 6).degree(&sols[0]).unwrap(), Rational::new(1, 12));
        assert!(solve_map_picard(&w, 1, 2).unwrap().is_empty());
        assert!(matches!(solve_map_picard(&w, 1, 4), Err(Error::BadThirdOrder(4, 2))));

        let p1 = Weights::new(1, 1).unwrap();
        let sols = solve_map_picard(&p1, 1, 1).unwrap();
        assert_eq!(sols.len(), 1);
        assert_eq!(PicardGroup::two_marked(1, 1).degree(&sols[0]).unwrap(), Rational::one());
    }
}
