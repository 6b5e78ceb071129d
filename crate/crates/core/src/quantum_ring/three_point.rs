use serde::Serialize;

use super::structure::StructureConstants;
use crate::algebra::{Monomial, Polynomial, Rational};
use crate::error::Error;
use crate::orbifold::Weights;
use crate::twisted_curves::{solve_map_picard, PicardGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThreePointMethod {
    /// Counted from minimal-degree maps out of `C_{a,b,D}`.
    Maps,
    /// `d = a` or `d = b`: read off the presentation.
    Presentation,
}

/// `x * y = sum_i c_i zeta^i q`, computed two ways.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThreePointXY {
    pub coefficients: Vec<Rational>,
    pub from_presentation: Vec<Rational>,
    pub method: ThreePointMethod,
}

impl ThreePointXY {
    pub fn agrees(&self) -> bool {
        self.coefficients == self.from_presentation
    }
}

/// `c_0 = 1` iff there is exactly one line bundle `L` of the right degree and
/// both `L^a`, `L^b` have a single section; `c_i = 0` for `i != 0` iff no map
/// factors through a third stacky point of any order `D | d`, `D > 1`.
fn from_maps(w: &Weights) -> Result<Vec<Rational>, Error> {
    let d = w.d();
    let group = PicardGroup::two_marked(w.a(), w.b());
    let sols = solve_map_picard(w, 1, 1)?;
    let c0 = match sols.as_slice() {
        [l] if group.h0(&l.pow(w.a() as i64))? == 1 && group.h0(&l.pow(w.b() as i64))? == 1 => Rational::one(),
        _ => Rational::zero(),
    };
    let mut no_twisted_maps = true;
    for big_d in (2..=d).filter(|k| d.is_multiple_of(*k)) {
        no_twisted_maps &= solve_map_picard(w, 1, big_d)?.is_empty();
    }
    if !no_twisted_maps {
        return Err(Error::Invalid(format!(
            "maps through a twisted third point exist for ({},{}); no count available",
            w.a(),
            w.b()
        )));
    }
    let mut out = vec![Rational::zero(); d as usize];
    out[0] = c0;
    Ok(out)
}

fn from_presentation(sc: &StructureConstants) -> Vec<Rational> {
    let d = sc.weights().d() as u32;
    let xy = sc.multiply(
        &Polynomial::monomial(Monomial::x(1), Rational::one()),
        &Polynomial::monomial(Monomial::y(1), Rational::one()),
    );
    (0..d).map(|i| xy.coefficient(&Monomial::new(i, 0, 0, 1))).collect()
}

/// Coefficients `c_0 .. c_{d-1}` of `q zeta^i` in `x * y`.
pub fn three_point_xy(w: &Weights) -> Result<ThreePointXY, Error> {
    let sc = super::structure_constants(w, 1)?;
    let from_presentation = from_presentation(&sc);
    let (coefficients, method) = if w.d() < w.a() && w.d() < w.b() {
        (from_maps(w)?, ThreePointMethod::Maps)
    } else {
        (from_presentation.clone(), ThreePointMethod::Presentation)
    };
    Ok(ThreePointXY { coefficients, from_presentation, method })
}
