//! Conversion of rational rows to integers over a common denominator.
//!
//! Search and enumeration loops run on `BigInt` weights; converting once up
//! front avoids a gcd on every addition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::rational::Rational;

/// Least common multiple of all denominators in `values`; at least 1.
pub(crate) fn common_denominator<'a>(values: impl Iterator<Item = &'a Rational>) -> BigInt {
    values.fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// `value * denom`, exact whenever `denom` is a multiple of the value's
/// denominator.
pub(crate) fn scaled_int(value: &Rational, denom: &BigInt) -> BigInt {
    value.numer() * (denom / value.denom())
}

/// Scales a matrix of rationals to integers over one shared denominator.
pub(crate) fn integerize_matrix(rows: &[Vec<Rational>]) -> (Vec<Vec<BigInt>>, BigInt) {
    let denom = common_denominator(rows.iter().flatten());
    let scaled = rows
        .iter()
        .map(|row| row.iter().map(|v| scaled_int(v, &denom)).collect())
        .collect();
    (scaled, denom)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_rows_exactly() {
        let rows = vec![
            vec![Rational::ratio(1, 3), Rational::ratio(1, 2)],
            vec![Rational::int(2), Rational::ratio(-5, 6)],
        ];
        let (scaled, denom) = integerize_matrix(&rows);
        assert_eq!(denom, BigInt::from(6));
        assert_eq!(scaled[0], vec![BigInt::from(2), BigInt::from(3)]);
        assert_eq!(scaled[1], vec![BigInt::from(12), BigInt::from(-5)]);
    }

    #[test]
    fn empty_matrix_has_unit_denominator() {
        let (scaled, denom) = integerize_matrix(&[]);
        assert!(scaled.is_empty());
        assert_eq!(denom, BigInt::one());
    }
}
