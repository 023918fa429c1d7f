use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use num_integer::Integer;

/// An exact, non-negative span of time measured in work units.
///
/// Task durations are `W / P` with integer workload and processor count, so
/// every value is kept as an unreduced fraction and compared by
/// cross-multiplication. Equality is therefore exact, which the moldable
/// scheduler relies on for its `C_max != h` test.
#[derive(Clone, Copy)]
pub struct Span {
    num: u128,
    den: u128,
}

impl Span {
    pub const ZERO: Span = Span { num: 0, den: 1 };

    pub fn from_int(value: u128) -> Self {
        Span { num: value, den: 1 }
    }

    /// `num / den`. Panics when `den == 0`.
    pub fn ratio(num: u128, den: u128) -> Self {
        assert!(den > 0, "span denominator must be positive");
        Span { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num == 0
    }

    /// Numerator and denominator in lowest terms.
    pub fn reduced(&self) -> (u128, u128) {
        if self.num == 0 {
            return (0, 1);
        }
        let g = self.num.gcd(&self.den);
        (self.num / g, self.den / g)
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = self.reduced();
        n as f64 / d as f64
    }

    /// Exact quotient `self / rhs` as a plain ratio of two spans.
    pub fn ratio_to(&self, rhs: &Span) -> f64 {
        assert!(!rhs.is_zero(), "division by a zero span");
        (self.num as f64 * rhs.den as f64) / (self.den as f64 * rhs.num as f64)
    }

    /// `self * factor` for a rational factor `fnum / fden`.
    pub fn scaled(&self, fnum: u128, fden: u128) -> Span {
        assert!(fden > 0, "scale denominator must be positive");
        let (n, d) = self.reduced();
        let g1 = n.gcd(&fden).max(1);
        let g2 = fnum.gcd(&d).max(1);
        Span {
            num: (n / g1) * (fnum / g2),
            den: (d / g2) * (fden / g1),
        }
        .normalize_zero()
    }

    fn normalize_zero(self) -> Span {
        if self.num == 0 {
            Span::ZERO
        } else {
            self
        }
    }
}

impl Default for Span {
    fn default() -> Self {
        Span::ZERO
    }
}

impl PartialEq for Span {
    fn eq(&self, other: &Self) -> bool {
        self.num * other.den == other.num * self.den
    }
}

impl Eq for Span {}

impl PartialOrd for Span {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Span {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

impl Add for Span {
    type Output = Span;

    fn add(self, rhs: Span) -> Span {
        if self.den == rhs.den {
            Span { num: self.num + rhs.num, den: self.den }
        } else if rhs.den == 1 {
            Span { num: self.num + rhs.num * self.den, den: self.den }
        } else if self.den == 1 {
            Span { num: self.num * rhs.den + rhs.num, den: rhs.den }
        } else {
            let l = self.den.lcm(&rhs.den);
            let num = self.num * (l / self.den) + rhs.num * (l / rhs.den);
            let (n, d) = Span { num, den: l }.reduced();
            Span { num: n, den: d }
        }
    }
}

impl AddAssign for Span {
    fn add_assign(&mut self, rhs: Span) {
        *self = *self + rhs;
    }
}

impl Sum for Span {
    fn sum<I: Iterator<Item = Span>>(iter: I) -> Span {
        iter.fold(Span::ZERO, |acc, s| acc + s)
    }
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.reduced();
        if d == 1 {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{d}")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equality_is_exact_across_denominators() {
        assert_eq!(Span::ratio(6, 4), Span::ratio(3, 2));
        assert_ne!(Span::ratio(100, 30), Span::ratio(10, 3) + Span::ratio(1, 1_000_000));
        assert!(Span::ratio(7, 2) > Span::from_int(3));
    }

    #[test]
    fn addition_mixes_fractions_and_integers() {
        let s = Span::ratio(8, 3) + Span::from_int(2);
        assert_eq!(s, Span::ratio(14, 3));
        let t = Span::ratio(1, 2) + Span::ratio(1, 3);
        assert_eq!(t, Span::ratio(5, 6));
        assert_eq!(t.reduced(), (5, 6));
    }

    #[test]
    fn display_reduces() {
        assert_eq!(Span::ratio(100, 30).to_string(), "10/3");
        assert_eq!(Span::ratio(12, 4).to_string(), "3");
        assert_eq!(Span::ZERO.to_string(), "0");
    }

    #[test]
    fn scaling() {
        assert_eq!(Span::ratio(9, 2).scaled(7, 6), Span::ratio(21, 4));
        assert_eq!(Span::ZERO.scaled(4, 3), Span::ZERO);
    }
}
