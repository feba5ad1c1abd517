//! Matrix entry arithmetic. The fast path works in `i128` with checked
//! operations; on overflow the caller restarts the computation over `BigInt`.

use num::bigint::BigInt;
use num::{Integer, Signed, Zero};

/// Signals that a primitive-integer computation left the representable range.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

pub trait Ent:
    Clone + Eq + Ord + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn to_i64(&self) -> Option<i64>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn neg(&self) -> Self;
    fn abs(&self) -> Self;
    fn add(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow>;
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow>;
    /// Exact division; panics when the division leaves a remainder.
    fn div_exact(&self, rhs: &Self) -> Self;
    /// Euclidean quotient and remainder with `0 <= r < |rhs|`.
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self);
    /// `(g, x, y)` with `x*self + y*rhs = g = gcd >= 0`.
    fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self), Overflow>;
    fn gcd(&self, rhs: &Self) -> Self;
    /// Residue in `[0, m)` for `m > 0` given as u64.
    fn mod_u64(&self, m: u64) -> u64;
}

impl Ent for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(*self).ok()
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn neg(&self) -> Self {
        -*self
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_add(*rhs).ok_or(Overflow)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_sub(*rhs).ok_or(Overflow)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*rhs).ok_or(Overflow)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(*rhs != 0 && self % rhs == 0);
        self / rhs
    }
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self) {
        (self.div_euclid(*rhs), self.rem_euclid(*rhs))
    }
    fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self), Overflow> {
        let (mut r0, mut r1) = (*self, *rhs);
        let (mut x0, mut x1) = (1i128, 0i128);
        let (mut y0, mut y1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0.div_euclid(r1);
            let r = r0 - q.checked_mul(r1).ok_or(Overflow)?;
            r0 = r1;
            r1 = r;
            let x = x0 - q.checked_mul(x1).ok_or(Overflow)?;
            x0 = x1;
            x1 = x;
            let y = y0 - q.checked_mul(y1).ok_or(Overflow)?;
            y0 = y1;
            y1 = y;
        }
        if r0 < 0 {
            r0 = -r0;
            x0 = -x0;
            y0 = -y0;
        }
        Ok((r0, x0, y0))
    }
    fn gcd(&self, rhs: &Self) -> Self {
        num::integer::gcd(*self, *rhs)
    }
    fn mod_u64(&self, m: u64) -> u64 {
        self.rem_euclid(m as i128) as u64
    }
}

impl Ent for BigInt {
    fn zero() -> Self {
        <BigInt as Zero>::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_i64(&self) -> Option<i64> {
        i64::try_from(self.clone()).ok()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn add(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Result<Self, Overflow> {
        Ok(self * rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        debug_assert!(!Ent::is_zero(rhs) && Ent::is_zero(&(self % rhs)));
        self / rhs
    }
    fn div_rem_euclid(&self, rhs: &Self) -> (Self, Self) {
        let (mut q, mut r) = self.div_rem(rhs);
        if Signed::is_negative(&r) {
            if Signed::is_negative(rhs) {
                r -= rhs;
                q += 1;
            } else {
                r += rhs;
                q -= 1;
            }
        }
        (q, r)
    }
    fn ext_gcd(&self, rhs: &Self) -> Result<(Self, Self, Self), Overflow> {
        let e = self.extended_gcd(rhs);
        Ok((e.gcd, e.x, e.y))
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn mod_u64(&self, m: u64) -> u64 {
        use num::ToPrimitive;
        let r = self.mod_floor(&BigInt::from(m));
        r.to_u64().expect("residue fits u64")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ext_gcd_bezout() {
        for (a, b) in [(12i128, 18), (-5, 7), (0, 4), (9, 0), (-6, -9)] {
            let (g, x, y) = a.ext_gcd(&b).unwrap();
            assert_eq!(g, num::integer::gcd(a, b));
            assert_eq!(x * a + y * b, g);
        }
        let a = BigInt::from(-48);
        let b = BigInt::from(36);
        let (g, x, y) = Ent::ext_gcd(&a, &b).unwrap();
        assert_eq!(g, BigInt::from(12));
        assert_eq!(x * a + y * b, BigInt::from(12));
    }

    #[test]
    fn euclid_division_has_nonnegative_remainder() {
        for (a, b) in [(7i128, 3), (-7, 3), (7, -3), (-7, -3)] {
            let (q, r) = a.div_rem_euclid(&b);
            assert_eq!(q * b + r, a);
            assert!(r >= 0 && r < b.abs());
            let (qb, rb) = Ent::div_rem_euclid(&BigInt::from(a), &BigInt::from(b));
            assert_eq!(qb, BigInt::from(q));
            assert_eq!(rb, BigInt::from(r));
        }
    }

    #[test]
    fn overflow_is_reported() {
        let big = i128::MAX;
        assert_eq!(big.mul(&2), Err(Overflow));
        assert_eq!(big.add(&1), Err(Overflow));
    }
}
