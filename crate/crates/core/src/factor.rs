//! Distance factor functions.

use crate::error::{Result, TdgError};
use crate::graph::Distance;
use crate::rational::Rational;

/// Strictly decreasing positive weight applied to a utility at a given
/// distance. Agents in different components never influence each other, so
/// the factor at [`Distance::Infinite`] is always zero and is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistanceFactor {
    /// `f(k) = 1/k`.
    Reciprocal,
    /// `values[k - 1] = f(k)` for `k = 1..=values.len()`.
    Table(Vec<Rational>),
}

impl DistanceFactor {
    pub fn table(values: Vec<Rational>) -> Result<Self> {
        if values.is_empty() {
            return Err(TdgError::InvalidFactor("table must not be empty".into()));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_positive()) {
            return Err(TdgError::InvalidFactor(format!(
                "value at distance {} is not positive",
                bad + 1
            )));
        }
        if let Some(w) = values.windows(2).position(|w| w[0] <= w[1]) {
            return Err(TdgError::InvalidFactor(format!(
                "not strictly decreasing between distances {} and {}",
                w + 1,
                w + 2
            )));
        }
        Ok(DistanceFactor::Table(values))
    }

    /// Largest distance the factor is defined for, if bounded.
    pub fn max_distance(&self) -> Option<u32> {
        match self {
            DistanceFactor::Reciprocal => None,
            DistanceFactor::Table(values) => Some(values.len() as u32),
        }
    }
}

/// `f(d)` for finite `d >= 1`, and zero across components.
pub fn factor_at(factor: &DistanceFactor, d: Distance) -> Result<Rational> {
    let d = match d {
        Distance::Infinite => return Ok(Rational::zero()),
        Distance::Finite(0) => {
            return Err(TdgError::InvalidFactor("factor is undefined at distance 0".into()))
        }
        Distance::Finite(d) => d,
    };
    match factor {
        DistanceFactor::Reciprocal => Ok(Rational::ratio(1, d as i64)),
        DistanceFactor::Table(values) => values
            .get(d as usize - 1)
            .cloned()
            .ok_or(TdgError::FactorTableTooShort {
                distance: d,
                len: values.len(),
            }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reciprocal_values() {
        let f = DistanceFactor::Reciprocal;
        assert_eq!(factor_at(&f, Distance::Finite(2)).unwrap(), Rational::ratio(1, 2));
        assert_eq!(factor_at(&f, Distance::Infinite).unwrap(), Rational::zero());
    }

    #[test]
    fn table_lookup_and_bounds() {
        let f = DistanceFactor::table(vec![
            Rational::one(),
            Rational::ratio(2, 3),
            Rational::ratio(1, 3),
        ])
        .unwrap();
        assert_eq!(factor_at(&f, Distance::Finite(3)).unwrap(), Rational::ratio(1, 3));
        assert_eq!(factor_at(&f, Distance::Infinite).unwrap(), Rational::zero());
        assert!(matches!(
            factor_at(&f, Distance::Finite(4)),
            Err(TdgError::FactorTableTooShort { distance: 4, len: 3 })
        ));
    }

    #[test]
    fn table_validation() {
        assert!(DistanceFactor::table(vec![]).is_err());
        assert!(DistanceFactor::table(vec![Rational::one(), Rational::one()]).is_err());
        assert!(DistanceFactor::table(vec![Rational::one(), Rational::zero()]).is_err());
        assert!(DistanceFactor::table(vec![Rational::ratio(1, 2), Rational::one()]).is_err());
    }
}
