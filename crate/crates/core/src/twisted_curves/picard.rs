use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::algebra::Rational;
use crate::error::Error;

/// `L_0^z0 (x) L_inf^zinf (x) prod_i L_i^torsion[i]` on a genus-zero football.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PicClass {
    pub z0: i64,
    pub zinf: i64,
    #[serde(default)]
    pub torsion: Vec<i64>,
}

impl PicClass {
    pub fn new(z0: i64, zinf: i64) -> Self {
        PicClass { z0, zinf, torsion: Vec::new() }
    }

    pub fn with_torsion(z0: i64, zinf: i64, torsion: Vec<i64>) -> Self {
        PicClass { z0, zinf, torsion }
    }

    /// Tensor power `L^k`.
    pub fn pow(&self, k: i64) -> PicClass {
        PicClass {
            z0: self.z0 * k,
            zinf: self.zinf * k,
            torsion: self.torsion.iter().map(|t| t * k).collect(),
        }
    }
}

/// Picard group of `C_{a,b,D_1,...}`: generated by `L_0`, `L_inf` and one
/// `L_i` per extra marking, with `L_0^a = L_inf^b = L_i^{D_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PicardGroup {
    pub a: u64,
    pub b: u64,
    pub extra_orders: Vec<u64>,
}

impl PicardGroup {
    pub fn two_marked(a: u64, b: u64) -> Self {
        PicardGroup { a, b, extra_orders: Vec::new() }
    }

    pub fn three_marked(a: u64, b: u64, order: u64) -> Self {
        PicardGroup { a, b, extra_orders: vec![order] }
    }

    fn check(&self, p: &PicClass) -> Result<(), Error> {
        if p.torsion.len() != self.extra_orders.len() {
            return Err(Error::LengthMismatch { expected: self.extra_orders.len(), got: p.torsion.len() });
        }
        Ok(())
    }

    /// Representative with `0 <= z0 < a` and `0 <= torsion[i] < D_i`.
    pub fn canonical(&self, p: &PicClass) -> Result<PicClass, Error> {
        self.check(p)?;
        let (a, b) = (self.a as i64, self.b as i64);
        let mut zinf = p.zinf;
        let mut torsion = Vec::with_capacity(p.torsion.len());
        for (&t, &order) in p.torsion.iter().zip(&self.extra_orders) {
            let (q, r) = t.div_mod_floor(&(order as i64));
            torsion.push(r);
            zinf += q * b;
        }
        let (q, z0) = p.z0.div_mod_floor(&a);
        zinf += q * b;
        Ok(PicClass { z0, zinf, torsion })
    }

    pub fn degree(&self, p: &PicClass) -> Result<Rational, Error> {
        self.check(p)?;
        let mut deg = Rational::new(p.z0, self.a as i64) + Rational::new(p.zinf, self.b as i64);
        for (&t, &order) in p.torsion.iter().zip(&self.extra_orders) {
            deg += Rational::new(t, order as i64);
        }
        Ok(deg)
    }

    /// Ages at the markings (0, infinity, extras): `frac(z/r)`.
    pub fn ages(&self, p: &PicClass) -> Result<Vec<Rational>, Error> {
        self.check(p)?;
        let mut out = vec![Rational::new(p.z0, self.a as i64).fract_part(), Rational::new(p.zinf, self.b as i64).fract_part()];
        for (&t, &order) in p.torsion.iter().zip(&self.extra_orders) {
            out.push(Rational::new(t, order as i64).fract_part());
        }
        Ok(out)
    }

    /// `h^0`: sections of the pushforward to the coarse `P^1`, which is
    /// `O(floor(z0/a) + floor(zinf/b) + sum floor(t_i/D_i))`.
    pub fn h0(&self, p: &PicClass) -> Result<u64, Error> {
        self.check(p)?;
        let mut coarse = Integer::div_floor(&p.z0, &(self.a as i64)) + Integer::div_floor(&p.zinf, &(self.b as i64));
        for (&t, &order) in p.torsion.iter().zip(&self.extra_orders) {
            coarse += Integer::div_floor(&t, &(order as i64));
        }
        Ok((coarse + 1).max(0) as u64)
    }
}

/// Representative of `p` in `Pic(C_{a,b})` with `0 <= z0 < a`.
pub fn pic_canonical(p: &PicClass, a: u64, b: u64) -> Result<PicClass, Error> {
    PicardGroup::two_marked(a, b).canonical(p)
}

pub fn pic_degree(p: &PicClass, a: u64, b: u64) -> Result<Rational, Error> {
    PicardGroup::two_marked(a, b).degree(p)
}

pub fn h0_genus0(p: &PicClass, a: u64, b: u64) -> Result<u64, Error> {
    PicardGroup::two_marked(a, b).h0(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_examples() {
        assert_eq!(pic_canonical(&PicClass::new(4, -4), 4, 6).unwrap(), PicClass::new(0, 2));
        assert_eq!(pic_canonical(&PicClass::new(1, 0), 4, 6).unwrap(), PicClass::new(1, 0));
        assert_eq!(pic_canonical(&PicClass::new(6, -6), 4, 6).unwrap(), PicClass::new(2, 0));
        assert_eq!(pic_canonical(&PicClass::new(-1, 0), 4, 6).unwrap(), PicClass::new(3, -6));
    }

    #[test]
    fn degree_examples() {
        assert_eq!(pic_degree(&PicClass::new(1, -1), 4, 6).unwrap(), Rational::new(1, 12));
        assert_eq!(pic_degree(&PicClass::new(0, 0), 4, 6).unwrap(), Rational::zero());
        assert_eq!(pic_degree(&PicClass::new(4, -4), 4, 6).unwrap(), Rational::new(1, 3));
    }

    #[test]
    fn h0_examples() {
        assert_eq!(h0_genus0(&PicClass::new(4, -4), 4, 6).unwrap(), 1);
        assert_eq!(h0_genus0(&PicClass::new(6, -6), 4, 6).unwrap(), 1);
        assert_eq!(h0_genus0(&PicClass::new(1, -1), 4, 6).unwrap(), 0);
        assert_eq!(h0_genus0(&PicClass::new(-30, 0), 4, 6).unwrap(), 0);
    }

    #[test]
    fn torsion_canonical_form() {
        let g = PicardGroup::three_marked(4, 6, 2);
        let p = PicClass::with_torsion(5, 0, vec![3]);
        let c = g.canonical(&p).unwrap();
        assert_eq!(c, PicClass::with_torsion(1, 12, vec![1]));
        assert_eq!(g.degree(&c).unwrap(), g.degree(&p).unwrap());
        assert!(g.canonical(&PicClass::new(0, 0)).is_err());
    }

    #[test]
    fn json_shape() {
        let json = serde_json::to_string(&PicClass::new(1, -1)).unwrap();
        assert_eq!(json, r#"{"z0":1,"zinf":-1,"torsion":[]}"#);
    }
}
