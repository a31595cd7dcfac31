use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, Integer, One, ToPrimitive, Zero};

use super::parse::{parse_scalar, ParseError};
use super::{rat, rat_is_integer, rat_sign, Rat};

/// The real number `a + b·√3` with rational `a` and `b`.
///
/// Since √3 is irrational the pair `(a, b)` is unique, so the derived
/// equality and hash are the numeric ones.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Qs3 {
    a: Rat,
    b: Rat,
}

/// Rational bracket around √3: 1.732050807 < √3 < 1.732050808.
fn sqrt3_bracket() -> (Rat, Rat) {
    (
        rat(1_732_050_807, 1_000_000_000),
        rat(1_732_050_808, 1_000_000_000),
    )
}

/// Exact sign of `a + b·√3`.
fn sign_parts(a: &Rat, b: &Rat) -> i8 {
    let sa = rat_sign(a);
    let sb = rat_sign(b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // Opposite signs: |a| vs |b|√3 decides, i.e. a² vs 3b².
    let three = Rat::from_integer(BigInt::from(3));
    let d = a * a - three * b * b;
    sa * rat_sign(&d)
}

impl Qs3 {
    pub fn new(a: Rat, b: Rat) -> Self {
        Qs3 { a, b }
    }

    pub fn zero() -> Self {
        Qs3::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        Qs3::from_int(1)
    }

    /// `√3` itself.
    pub fn sqrt3() -> Self {
        Qs3::new(Rat::zero(), Rat::one())
    }

    pub fn from_int(n: i64) -> Self {
        Qs3::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Qs3::new(Rat::from_integer(n), Rat::zero())
    }

    pub fn from_rat(a: Rat) -> Self {
        Qs3::new(a, Rat::zero())
    }

    /// `(n1/d1) + (n2/d2)·√3` from machine integers.
    pub fn from_ratios(n1: i64, d1: i64, n2: i64, d2: i64) -> Self {
        Qs3::new(rat(n1, d1), rat(n2, d2))
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    /// Coefficient `b` of √3.
    pub fn sqrt3_part(&self) -> &Rat {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && rat_is_integer(&self.a)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn sign(&self) -> i8 {
        sign_parts(&self.a, &self.b)
    }

    pub fn abs(&self) -> Qs3 {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b·√3`.
    pub fn conj(&self) -> Qs3 {
        Qs3::new(self.a.clone(), -&self.b)
    }

    /// Field norm `a² - 3b²`.
    pub fn norm(&self) -> Rat {
        let three = Rat::from_integer(BigInt::from(3));
        &self.a * &self.a - three * &self.b * &self.b
    }

    pub fn recip(&self) -> Option<Qs3> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(Qs3::new(&self.a / &n, -&self.b / &n))
    }

    pub fn checked_div(&self, rhs: &Qs3) -> Option<Qs3> {
        rhs.recip().map(|r| self * &r)
    }

    pub fn scale(&self, r: &Rat) -> Qs3 {
        Qs3::new(&self.a * r, &self.b * r)
    }

    /// Multiplies by `√3 / 2`: `(a + b√3)·√3/2 = 3b/2 + (a/2)·√3`.
    ///
    /// This is the hot path of every trihexagonal rotation, so it avoids the
    /// general product.
    pub fn mul_half_sqrt3(&self) -> Qs3 {
        let half = rat(1, 2);
        Qs3::new(&self.b * rat(3, 2), &self.a * half)
    }

    pub fn half(&self) -> Qs3 {
        let half = rat(1, 2);
        self.scale(&half)
    }

    /// Exact comparison against an integer.
    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        let shifted = &self.a - Rat::from_integer(n.clone());
        match sign_parts(&shifted, &self.b) {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Greatest integer `n` with `n <= self`.
    ///
    /// The rational bracket on √3 gives an integer interval containing the
    /// floor; exact comparisons then bisect it.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let (lo, hi) = sqrt3_bracket();
        let (low, high) = if rat_sign(&self.b) > 0 {
            (&self.a + &self.b * &lo, &self.a + &self.b * &hi)
        } else {
            (&self.a + &self.b * &hi, &self.a + &self.b * &lo)
        };
        // low < self < high strictly, because b != 0.
        let mut lo_n = low.floor().to_integer();
        let mut hi_n = high.floor().to_integer() + BigInt::one();
        while &hi_n - &lo_n > BigInt::one() {
            let mid: BigInt = (&lo_n + &hi_n).div_floor(&BigInt::from(2));
            if self.cmp_int(&mid) == Ordering::Less {
                hi_n = mid;
            } else {
                lo_n = mid;
            }
        }
        lo_n
    }

    /// Floating point approximation, for rendering and diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }
}

impl Ord for Qs3 {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        d.sign().cmp(&0)
    }
}

impl PartialOrd for Qs3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Zero for Qs3 {
    fn zero() -> Self {
        Qs3::zero()
    }
    fn is_zero(&self) -> bool {
        Qs3::is_zero(self)
    }
}

impl One for Qs3 {
    fn one() -> Self {
        Qs3::one()
    }
}

impl From<i64> for Qs3 {
    fn from(n: i64) -> Self {
        Qs3::from_int(n)
    }
}

impl From<Rat> for Qs3 {
    fn from(a: Rat) -> Self {
        Qs3::from_rat(a)
    }
}

impl<'a> Add<&'a Qs3> for &'a Qs3 {
    type Output = Qs3;
    fn add(self, rhs: &'a Qs3) -> Qs3 {
        Qs3::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a Qs3> for &'a Qs3 {
    type Output = Qs3;
    fn sub(self, rhs: &'a Qs3) -> Qs3 {
        Qs3::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a Qs3> for &'a Qs3 {
    type Output = Qs3;
    fn mul(self, rhs: &'a Qs3) -> Qs3 {
        let three = Rat::from_integer(BigInt::from(3));
        let a = &self.a * &rhs.a + three * &self.b * &rhs.b;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        Qs3::new(a, b)
    }
}

impl<'a> Div<&'a Qs3> for &'a Qs3 {
    type Output = Qs3;
    /// Panics on division by zero, like the integer types.
    fn div(self, rhs: &'a Qs3) -> Qs3 {
        self.checked_div(rhs).expect("division by zero in Q(√3)")
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Qs3> for Qs3 {
            type Output = Qs3;
            fn $m(self, rhs: Qs3) -> Qs3 {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Qs3> for Qs3 {
            type Output = Qs3;
            fn $m(self, rhs: &'a Qs3) -> Qs3 {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tr<Qs3> for &'a Qs3 {
            type Output = Qs3;
            fn $m(self, rhs: Qs3) -> Qs3 {
                self.$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Qs3> for Qs3 {
    fn add_assign(&mut self, rhs: &Qs3) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Qs3> for Qs3 {
    fn sub_assign(&mut self, rhs: &Qs3) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl Neg for Qs3 {
    type Output = Qs3;
    fn neg(self) -> Qs3 {
        Qs3::new(-self.a, -self.b)
    }
}

impl Neg for &Qs3 {
    type Output = Qs3;
    fn neg(self) -> Qs3 {
        Qs3::new(-&self.a, -&self.b)
    }
}

/// Canonical text form, the same grammar [`FromStr`] accepts:
/// `1/2`, `-5/6s3`, `3+1/2s3`, `1-s3` is written `1-1s3`.
impl fmt::Display for Qs3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if self.a.is_zero() {
            return write!(f, "{}s3", self.b);
        }
        if rat_sign(&self.b) > 0 {
            write!(f, "{}+{}s3", self.a, self.b)
        } else {
            write!(f, "{}-{}s3", self.a, -&self.b)
        }
    }
}

impl fmt::Debug for Qs3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Qs3({self})")
    }
}

impl FromStr for Qs3 {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}
