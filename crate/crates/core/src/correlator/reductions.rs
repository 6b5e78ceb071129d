use super::key::{is_stable, CorrelatorKey, FormalSum, Insertion};
use super::theory::Theory;
use crate::algebra::Rational;
use crate::error::Error;
use crate::orbifold::BasisClass;

fn find(key: &CorrelatorKey, pred: impl Fn(&Insertion) -> bool, what: &str) -> Result<usize, Error> {
    key.insertions()
        .iter()
        .position(pred)
        .ok_or_else(|| Error::MissingInsertion(format!("{what} in {key}")))
}

fn stable_target(key: &CorrelatorKey) -> Result<(), Error> {
    let n = key.len() - 1;
    if is_stable(key.beta(), n) {
        Ok(())
    } else {
        Err(Error::Unstable(n))
    }
}

/// String equation: removes one `tau_0(1)` and lowers each other descendant
/// power by one in turn; `tau_{-1}` terms are zero.
pub fn string_reduce(key: &CorrelatorKey) -> Result<FormalSum, Error> {
    let pos = find(key, |i| i.is_unit() && i.descendant_power == 0, "tau0(1)")?;
    stable_target(key)?;
    let rest = key.without(pos);
    let mut out = FormalSum::zero();
    for (i, ins) in rest.iter().enumerate() {
        if ins.descendant_power == 0 {
            continue;
        }
        let mut lowered = rest.clone();
        lowered[i].descendant_power -= 1;
        out.push(Rational::one(), CorrelatorKey::new(key.beta(), lowered)?);
    }
    Ok(out)
}

/// Dilaton equation: `<tau_1(1), rest> = (n - 2) <rest>` with `n = |rest|`.
pub fn dilaton_reduce(key: &CorrelatorKey) -> Result<(i64, CorrelatorKey), Error> {
    let pos = find(key, |i| i.is_unit() && i.descendant_power == 1, "tau1(1)")?;
    stable_target(key)?;
    let rest = key.without(pos);
    let factor = rest.len() as i64 - 2;
    Ok((factor, CorrelatorKey::new(key.beta(), rest)?))
}

/// Divisor equation for the untwisted point class `pt = h/A`:
/// `<pt, rest> = (beta/A) <rest> + sum_i <..., tau_{k_i - 1}(g_i * pt), ...>`.
///
/// Only the coarse divisor is allowed; other classes of degree one are refused.
pub fn divisor_reduce(theory: &Theory, key: &CorrelatorKey, divisor: &BasisClass) -> Result<FormalSum, Error> {
    if divisor != theory.point() {
        return Err(Error::TwistedDivisor(divisor.to_string()));
    }
    let pos = find(key, |i| &i.class == divisor && i.descendant_power == 0, "tau0(pt)")?;
    stable_target(key)?;
    let rest = key.without(pos);
    let mut out = FormalSum::zero();
    let integral = theory.point_integral(key.beta());
    if !integral.is_zero() {
        out.push(integral, CorrelatorKey::new(key.beta(), rest.clone())?);
    }
    for (i, ins) in rest.iter().enumerate() {
        if ins.descendant_power == 0 {
            continue;
        }
        for (class, coeff) in theory.classical_product(&ins.class, divisor)? {
            let mut lowered = rest.clone();
            lowered[i] = Insertion::descendant(class, ins.descendant_power - 1);
            out.push(coeff, CorrelatorKey::new(key.beta(), lowered)?);
        }
    }
    Ok(out)
}
