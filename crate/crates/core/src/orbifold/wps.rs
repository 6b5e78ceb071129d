use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Rational;
use crate::error::Error;

/// A twisted sector of a weighted projective space `P(w_0, ..., w_N)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WpsSector {
    /// `lambda` in `[0,1)`; the sector is fixed by `exp(2 pi i lambda)`.
    pub twist: Rational,
    /// Indices `i` with `lambda * w_i` integral.
    pub fixed: Vec<usize>,
    pub age: Rational,
    #[serde(rename = "dim")]
    pub dimension: u32,
    /// Denominator of `lambda`.
    #[serde(rename = "r")]
    pub band_order: u64,
}

/// Twisted sectors of `P(weights)`, one per `lambda = k/w_i`, with
/// `age(lambda) = sum_i frac(lambda * w_i)`. Sorted by `lambda`.
pub fn wps_census(weights: &[u64]) -> Result<Vec<WpsSector>, Error> {
    if weights.is_empty() {
        return Err(Error::EmptyWeights);
    }
    if weights.contains(&0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    let twists: BTreeSet<Rational> = weights
        .iter()
        .flat_map(|&w| (0..w).map(move |k| Rational::new(k as i64, w as i64)))
        .collect();
    Ok(twists
        .into_iter()
        .map(|twist| {
            let scaled: Vec<Rational> = weights
                .iter()
                .map(|&w| &twist * Rational::from_integer(w as i64))
                .collect();
            let fixed: Vec<usize> = (0..weights.len()).filter(|&i| scaled[i].is_integer()).collect();
            let age = scaled.iter().map(Rational::fract_part).sum();
            let band_order = twist.denom().try_into().expect("denominator fits in u64");
            WpsSector { dimension: fixed.len() as u32 - 1, fixed, age, band_order, twist }
        })
        .collect())
}
