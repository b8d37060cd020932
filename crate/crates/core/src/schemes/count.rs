//! Closed-form op counts.

use super::{SchemeError, SchemeId};
use crate::targets::GridSpec;

/// Op-count formula of a scheme and the grid family it is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountModel {
    pub scheme: SchemeId,
    /// Human-readable formula in `n` (rows) and `m` (columns).
    pub formula: &'static str,
    /// Human-readable divisibility predicate.
    pub divisibility: &'static str,
}

impl CountModel {
    pub fn of(scheme: SchemeId) -> Self {
        let (formula, divisibility) = match scheme {
            SchemeId::Naive => ("8nm - 4n - 4m", "any grid"),
            SchemeId::Chains => ("4nm", "any grid"),
            SchemeId::Stitch41 => ("2nm + 4nm/3 - 4n/3", "m >= 4 and m = 1 mod 3"),
            SchemeId::Alt24 => ("3nm - 2n - 5m/4 + 5/2", "m = 2 mod 8"),
            SchemeId::Pure33 => ("3nm - n", "m odd"),
            SchemeId::Hanging33 => ("3nm - 2n - 3m/2 + 3", "m = 2 mod 4"),
            SchemeId::LayeredMin => ("3nm - 2n - m + 2", "m even"),
            SchemeId::NegativeLayered => ("3nm - 2n - 2m + 4", "m even"),
            SchemeId::NegativeWide => ("(8nm - 4n - 4m + 8)/3", "m = 2 mod 3"),
        };
        CountModel {
            scheme,
            formula,
            divisibility,
        }
    }

    /// Whether the scheme is defined on an `n x m` grid.
    pub fn applies(&self, n: usize, m: usize) -> bool {
        let family = match self.scheme {
            SchemeId::Naive | SchemeId::Chains => true,
            SchemeId::Stitch41 => m >= 4 && m % 3 == 1,
            SchemeId::Alt24 => m % 8 == 2,
            SchemeId::Pure33 => m % 2 == 1,
            SchemeId::Hanging33 => m % 4 == 2,
            SchemeId::LayeredMin | SchemeId::NegativeLayered => m.is_multiple_of(2),
            SchemeId::NegativeWide => m % 3 == 2,
        };
        family && n >= 2 && m >= 2
    }

    /// Numerator and denominator of the formula.
    fn fraction(&self, n: i64, m: i64) -> (i64, i64) {
        match self.scheme {
            SchemeId::Naive => (8 * n * m - 4 * n - 4 * m, 1),
            SchemeId::Chains => (4 * n * m, 1),
            SchemeId::Stitch41 => (10 * n * m - 4 * n, 3),
            SchemeId::Alt24 => (12 * n * m - 8 * n - 5 * m + 10, 4),
            SchemeId::Pure33 => (3 * n * m - n, 1),
            SchemeId::Hanging33 => (6 * n * m - 4 * n - 3 * m + 6, 2),
            SchemeId::LayeredMin => (3 * n * m - 2 * n - m + 2, 1),
            SchemeId::NegativeLayered => (3 * n * m - 2 * n - 2 * m + 4, 1),
            SchemeId::NegativeWide => (8 * n * m - 4 * n - 4 * m + 8, 3),
        }
    }

    /// Exact op count, or a divisibility error naming the predicate.
    pub fn evaluate(&self, n: usize, m: usize) -> Result<u64, SchemeError> {
        let err = || SchemeError::Divisibility {
            scheme: self.scheme,
            n,
            m,
            predicate: self.divisibility,
        };
        if !self.applies(n, m) {
            return Err(err());
        }
        let (num, den) = self.fraction(n as i64, m as i64);
        if num < 0 || num % den != 0 {
            return Err(err());
        }
        Ok((num / den) as u64)
    }
}

/// Op count of `scheme` on `spec`.
pub fn count(scheme: SchemeId, spec: GridSpec) -> Result<u64, SchemeError> {
    CountModel::of(scheme).evaluate(spec.n, spec.m)
}
