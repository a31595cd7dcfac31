//! The normal-form family `F(x, y) = R_α · (x - sign(y), y)`, its inverse,
//! the original second-order family `G`, addresses and itineraries.
//!
//! `R_α` is the clockwise rotation `[[cos α, sin α], [-sin α, cos α]]` and
//! `sign(0) = +1`, so the closed upper half plane `y >= 0` is one branch and
//! the open lower half plane the other. Only the three angles with
//! coordinates in Q(√3) are handled exactly here; arbitrary angles are a
//! float-only concern of the renderer.

mod affine;
mod family_g;

pub use affine::{AffineMap, Mat2};
pub use family_g::{from_normal, g_step, to_normal};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{Qs3, Rat};

/// One of the three rotation angles with exact dynamics.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    /// α = π/2, ρ = 0: square grid.
    #[serde(rename = "pi2")]
    PiOver2,
    /// α = 2π/3, ρ = 1: trihexagonal grid.
    #[serde(rename = "2pi3")]
    TwoPiOver3,
    /// α = π/3, ρ = -1: trihexagonal grid shifted by one unit.
    #[serde(rename = "pi3")]
    PiOver3,
}

impl Case {
    pub const ALL: [Case; 3] = [Case::PiOver2, Case::TwoPiOver3, Case::PiOver3];

    pub fn cos(self) -> Qs3 {
        match self {
            Case::PiOver2 => Qs3::zero(),
            Case::TwoPiOver3 => Qs3::from_ratios(-1, 2, 0, 1),
            Case::PiOver3 => Qs3::from_ratios(1, 2, 0, 1),
        }
    }

    pub fn sin(self) -> Qs3 {
        match self {
            Case::PiOver2 => Qs3::one(),
            Case::TwoPiOver3 | Case::PiOver3 => Qs3::from_ratios(0, 1, 1, 2),
        }
    }

    /// The rotation matrix `R_α` applied after the branch shift.
    pub fn rotation(self) -> Mat2 {
        let (c, s) = (self.cos(), self.sin());
        Mat2::new([[c.clone(), s.clone()], [-s, c]])
    }

    /// Order of `R_α` in the rotation group.
    pub fn rotation_period(self) -> u32 {
        match self {
            Case::PiOver2 => 4,
            Case::TwoPiOver3 => 3,
            Case::PiOver3 => 6,
        }
    }

    /// The parameter of `G`, `ρ = -2 cos α`.
    pub fn rho(self) -> i64 {
        match self {
            Case::PiOver2 => 0,
            Case::TwoPiOver3 => 1,
            Case::PiOver3 => -1,
        }
    }

    pub fn from_rho(rho: i64) -> Result<Case> {
        match rho {
            0 => Ok(Case::PiOver2),
            1 => Ok(Case::TwoPiOver3),
            -1 => Ok(Case::PiOver3),
            other => Err(Error::UnsupportedRho(other)),
        }
    }

    pub fn alpha(self) -> f64 {
        use std::f64::consts::PI;
        match self {
            Case::PiOver2 => PI / 2.0,
            Case::TwoPiOver3 => 2.0 * PI / 3.0,
            Case::PiOver3 => PI / 3.0,
        }
    }

    /// Short name used on the command line.
    pub fn slug(self) -> &'static str {
        match self {
            Case::PiOver2 => "pi2",
            Case::TwoPiOver3 => "2pi3",
            Case::PiOver3 => "pi3",
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.slug())
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "pi2" => Ok(Case::PiOver2),
            "2pi3" => Ok(Case::TwoPiOver3),
            "pi3" => Ok(Case::PiOver3),
            other => Err(format!(
                "unknown case '{other}' (expected pi2, 2pi3 or pi3)"
            )),
        }
    }
}

/// Any member of the family: an exact case or a float-only angle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapCase {
    Named(Case),
    General(f64),
}

impl MapCase {
    pub fn alpha(self) -> f64 {
        match self {
            MapCase::Named(c) => c.alpha(),
            MapCase::General(a) => a,
        }
    }

    pub fn exact(self) -> Option<Case> {
        match self {
            MapCase::Named(c) => Some(c),
            MapCase::General(_) => None,
        }
    }
}

impl From<Case> for MapCase {
    fn from(c: Case) -> Self {
        MapCase::Named(c)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExactPoint {
    pub x: Qs3,
    pub y: Qs3,
}

impl ExactPoint {
    pub fn new(x: Qs3, y: Qs3) -> Self {
        ExactPoint { x, y }
    }

    pub fn rational(x: Rat, y: Rat) -> Self {
        ExactPoint::new(Qs3::from_rat(x), Qs3::from_rat(y))
    }

    pub fn origin() -> Self {
        ExactPoint::new(Qs3::zero(), Qs3::zero())
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }

    pub fn dist2(&self, other: &ExactPoint) -> Qs3 {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn midpoint(&self, other: &ExactPoint) -> ExactPoint {
        ExactPoint::new((&self.x + &other.x).half(), (&self.y + &other.y).half())
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.x, self.y)
    }
}

/// `point := scalar "," scalar`, surrounding whitespace allowed.
impl FromStr for ExactPoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let malformed = |reason: String| Error::MalformedPoint {
            text: s.to_string(),
            reason,
        };
        let (xs, ys) = s
            .split_once(',')
            .ok_or_else(|| malformed("expected 'X,Y'".to_string()))?;
        let lead_x = xs.len() - xs.trim_start().len();
        let lead_y = ys.len() - ys.trim_start().len();
        let x: Qs3 = xs
            .trim()
            .parse()
            .map_err(|e: crate::exactnum::ParseError| malformed(e.offset(lead_x).to_string()))?;
        let y: Qs3 = ys
            .trim()
            .parse()
            .map_err(|e: crate::exactnum::ParseError| {
                malformed(e.offset(xs.len() + 1 + lead_y).to_string())
            })?;
        Ok(ExactPoint::new(x, y))
    }
}

impl Serialize for ExactPoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ExactPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Which branch of `F` acts on a point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Address {
    /// `y >= 0`
    Plus,
    /// `y < 0`
    Minus,
}

impl Address {
    pub fn sign(self) -> i64 {
        match self {
            Address::Plus => 1,
            Address::Minus => -1,
        }
    }

    fn from_sign(s: i8) -> Address {
        if s >= 0 {
            Address::Plus
        } else {
            Address::Minus
        }
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Address::Plus => "+",
            Address::Minus => "-",
        })
    }
}

pub fn address(p: &ExactPoint) -> Address {
    Address::from_sign(p.y.sign())
}

/// Symbol sequence `(A(p), A(F p), ..., A(F^{n-1} p))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Itinerary(pub Vec<Address>);

impl Itinerary {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.0 {
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// `R_α (u, v)`.
fn rotate(case: Case, u: &Qs3, v: &Qs3) -> (Qs3, Qs3) {
    match case {
        Case::PiOver2 => (v.clone(), -u),
        Case::TwoPiOver3 => {
            // [[-1/2, √3/2], [-√3/2, -1/2]]
            let x = v.mul_half_sqrt3() - u.half();
            let y = -(u.mul_half_sqrt3() + v.half());
            (x, y)
        }
        Case::PiOver3 => {
            // [[1/2, √3/2], [-√3/2, 1/2]]
            let x = u.half() + v.mul_half_sqrt3();
            let y = v.half() - u.mul_half_sqrt3();
            (x, y)
        }
    }
}

/// `R_α^{-1} (u, v)`.
fn rotate_back(case: Case, u: &Qs3, v: &Qs3) -> (Qs3, Qs3) {
    match case {
        Case::PiOver2 => (-v, u.clone()),
        Case::TwoPiOver3 => {
            // [[-1/2, -√3/2], [√3/2, -1/2]]
            let x = -(u.half() + v.mul_half_sqrt3());
            let y = u.mul_half_sqrt3() - v.half();
            (x, y)
        }
        Case::PiOver3 => {
            // [[1/2, -√3/2], [√3/2, 1/2]]
            let x = u.half() - v.mul_half_sqrt3();
            let y = u.mul_half_sqrt3() + v.half();
            (x, y)
        }
    }
}

/// One step of `F`.
pub fn f_step(case: Case, p: &ExactPoint) -> ExactPoint {
    let shift = Qs3::from_int(address(p).sign());
    let u = &p.x - &shift;
    let (x, y) = rotate(case, &u, &p.y);
    ExactPoint::new(x, y)
}

/// One step of `F^{-1}`.
///
/// The branch is read off the preimage's second coordinate, which is the
/// second component of `R_α^{-1} p`, i.e. `sin α · x + cos α · y`; the unit
/// shift is applied after un-rotating.
pub fn f_inv_step(case: Case, p: &ExactPoint) -> ExactPoint {
    let (x, y) = rotate_back(case, &p.x, &p.y);
    let shift = Qs3::from_int(Address::from_sign(y.sign()).sign());
    ExactPoint::new(x + shift, y)
}

pub fn itinerary(case: Case, p: &ExactPoint, n: usize) -> Itinerary {
    let mut cur = p.clone();
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(address(&cur));
        cur = f_step(case, &cur);
    }
    Itinerary(out)
}

/// `F_{i_n} ∘ ... ∘ F_{i_1}` for the length-`n` itinerary of `p`.
pub fn itinerary_affine(case: Case, p: &ExactPoint, n: usize) -> AffineMap {
    affine_of_itinerary(case, &itinerary(case, p, n))
}

pub fn affine_of_itinerary(case: Case, it: &Itinerary) -> AffineMap {
    it.0.iter().fold(AffineMap::identity(), |acc, &a| {
        acc.then(&AffineMap::branch(case, a))
    })
}

/// A closed orbit `p, F p, ..., F^{period-1} p`.
#[derive(Clone, Debug)]
pub struct Orbit {
    pub points: Vec<ExactPoint>,
}

impl Orbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }
}

/// Iterates until the orbit returns to `p` exactly.
///
/// `F` is a bijection, so an orbit that repeats anything repeats its first
/// point; comparing against `p` alone is enough.
pub fn orbit(case: Case, p: &ExactPoint, max_iter: usize) -> Result<Orbit> {
    let mut points = vec![p.clone()];
    let mut cur = f_step(case, p);
    for _ in 0..max_iter {
        if &cur == p {
            return Ok(Orbit { points });
        }
        let next = f_step(case, &cur);
        points.push(cur);
        cur = next;
    }
    Err(Error::PeriodNotFound { max_iter })
}

/// `F^n(p)`.
pub fn iterate(case: Case, p: &ExactPoint, n: usize) -> ExactPoint {
    (0..n).fold(p.clone(), |q, _| f_step(case, &q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(s: &str) -> ExactPoint {
        s.parse().unwrap()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(f_step(Case::PiOver2, &pt("1/2,1/2")), pt("1/2,1/2"));
        assert_eq!(f_step(Case::PiOver2, &pt("3/10,2/5")), pt("2/5,7/10"));
        assert_eq!(f_step(Case::TwoPiOver3, &pt("1/2,1/6s3")), pt("1/2,1/6s3"));
        assert_eq!(f_step(Case::PiOver3, &pt("1/2,1/2s3")), pt("1/2,1/2s3"));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(f_inv_step(Case::PiOver2, &pt("1/2,1/2")), pt("1/2,1/2"));
        assert_eq!(f_inv_step(Case::PiOver2, &pt("2/5,7/10")), pt("3/10,2/5"));
        // Preimage on y = 0 uses the Plus branch.
        let p = pt("5,0");
        for case in Case::ALL {
            assert_eq!(f_inv_step(case, &f_step(case, &p)), p);
        }
    }

    #[test]
    fn addresses() {
        assert_eq!(address(&pt("5,0")), Address::Plus);
        assert_eq!(address(&pt("5,-1/1000")), Address::Minus);
        assert_eq!(
            itinerary(Case::PiOver2, &pt("1/2,1/2"), 3).to_string(),
            "+++"
        );
        // X1 at level 2.
        assert_eq!(
            itinerary(Case::PiOver2, &pt("-3/2,1/2"), 5).to_string(),
            "+++--"
        );
    }

    #[test]
    fn itinerary_maps() {
        let one = itinerary_affine(Case::PiOver2, &pt("1/2,1/2"), 1);
        assert_eq!(one.linear, Case::PiOver2.rotation());
        assert_eq!(one.translation, [Qs3::zero(), Qs3::one()]);

        let x1 = pt("-3/2,1/2");
        let i1 = itinerary_affine(Case::PiOver2, &x1, 5);
        assert_eq!(i1.linear, Case::PiOver2.rotation());
        assert_eq!(i1.fixed_point(), Some(x1));

        let c1 = pt("-1/2,1/2");
        let i = itinerary_affine(Case::PiOver2, &c1, 6);
        assert_eq!(i.linear, Mat2::identity().scale(&Qs3::from_int(-1)));
    }

    #[test]
    fn orbits() {
        let o = orbit(Case::PiOver2, &pt("3/10,2/5"), 100).unwrap();
        assert_eq!(o.period(), 4);
        let expected: Vec<ExactPoint> = ["3/10,2/5", "2/5,7/10", "7/10,3/5", "3/5,3/10"]
            .iter()
            .map(|s| pt(s))
            .collect();
        assert_eq!(o.points, expected);
        assert_eq!(
            orbit(Case::PiOver2, &pt("-1/2,1/2"), 100).unwrap().period(),
            6
        );
        assert_eq!(
            orbit(Case::PiOver3, &pt("-1/2,-1/2s3"), 10)
                .unwrap()
                .period(),
            1
        );
        assert!(matches!(
            orbit(Case::PiOver2, &pt("-1/2,1/2"), 3),
            Err(Error::PeriodNotFound { max_iter: 3 })
        ));
    }

    #[test]
    fn point_parse_errors() {
        assert!("1/2".parse::<ExactPoint>().is_err());
        let e = "1/2, 0.5".parse::<ExactPoint>().unwrap_err().to_string();
        assert!(e.contains("column 6"), "{e}");
        assert_eq!(pt(" 1/2 , -1s3 "), pt("1/2,-1s3"));
    }

    #[test]
    fn case_metadata() {
        for case in Case::ALL {
            assert_eq!(Case::from_rho(case.rho()).unwrap(), case);
            assert_eq!(case.slug().parse::<Case>().unwrap(), case);
            let r = case.rotation();
            assert_eq!(r.pow(case.rotation_period()), Mat2::identity());
            assert_eq!(r.order(12), Some(case.rotation_period()));
        }
        assert!(Case::from_rho(2).is_err());
    }
}
