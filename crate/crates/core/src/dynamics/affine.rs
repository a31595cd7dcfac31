use std::fmt;

use super::{Address, Case, ExactPoint};
use crate::exactnum::Qs3;

/// 2×2 matrix over Q(√3), row major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub m: [[Qs3; 2]; 2],
}

impl Mat2 {
    pub fn new(m: [[Qs3; 2]; 2]) -> Self {
        Mat2 { m }
    }

    pub fn identity() -> Self {
        Mat2::new([[Qs3::one(), Qs3::zero()], [Qs3::zero(), Qs3::one()]])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let a = &self.m;
        let b = &rhs.m;
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        Mat2::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }

    pub fn apply(&self, x: &Qs3, y: &Qs3) -> (Qs3, Qs3) {
        let m = &self.m;
        (&m[0][0] * x + &m[0][1] * y, &m[1][0] * x + &m[1][1] * y)
    }

    pub fn scale(&self, s: &Qs3) -> Mat2 {
        let m = &self.m;
        Mat2::new([[&m[0][0] * s, &m[0][1] * s], [&m[1][0] * s, &m[1][1] * s]])
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::identity(), |acc, _| acc.mul(self))
    }

    pub fn det(&self) -> Qs3 {
        let m = &self.m;
        &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0]
    }

    /// Smallest `k` in `1..=max` with `self^k = I`.
    pub fn order(&self, max: u32) -> Option<u32> {
        let id = Mat2::identity();
        let mut acc = self.clone();
        for k in 1..=max {
            if acc == id {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            m[0][0], m[0][1], m[1][0], m[1][1]
        )
    }
}

/// `p ↦ linear · p + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    pub linear: Mat2,
    pub translation: [Qs3; 2],
}

impl AffineMap {
    pub fn identity() -> Self {
        AffineMap {
            linear: Mat2::identity(),
            translation: [Qs3::zero(), Qs3::zero()],
        }
    }

    /// The branch `F_±(p) = R_α (p - (±1, 0))` as an affine map.
    pub fn branch(case: Case, addr: Address) -> Self {
        let s = Qs3::from_int(addr.sign());
        let r = case.rotation();
        let (tx, ty) = r.apply(&-s, &Qs3::zero());
        AffineMap {
            linear: r,
            translation: [tx, ty],
        }
    }

    pub fn apply(&self, p: &ExactPoint) -> ExactPoint {
        let (x, y) = self.linear.apply(&p.x, &p.y);
        ExactPoint::new(x + &self.translation[0], y + &self.translation[1])
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AffineMap) -> AffineMap {
        let linear = next.linear.mul(&self.linear);
        let (tx, ty) = next
            .linear
            .apply(&self.translation[0], &self.translation[1]);
        AffineMap {
            linear,
            translation: [tx + &next.translation[0], ty + &next.translation[1]],
        }
    }

    pub fn pow(&self, n: u32) -> AffineMap {
        (0..n).fold(AffineMap::identity(), |acc, _| acc.then(self))
    }

    /// The unique fixed point, when `I - linear` is invertible.
    pub fn fixed_point(&self) -> Option<ExactPoint> {
        let m = &self.linear.m;
        // (I - L) p = t
        let a = Qs3::one() - &m[0][0];
        let b = -&m[0][1];
        let c = -&m[1][0];
        let d = Qs3::one() - &m[1][1];
        let det = &a * &d - &b * &c;
        let inv = det.recip()?;
        let [tx, ty] = &self.translation;
        let x = (&d * tx - &b * ty) * &inv;
        let y = (&a * ty - &c * tx) * &inv;
        Some(ExactPoint::new(x, y))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branch_maps_match_f_step() {
        let p: ExactPoint = "3/7-1/5s3,2/9+1/4s3".parse().unwrap();
        for case in Case::ALL {
            let f = AffineMap::branch(case, super::super::address(&p));
            assert_eq!(f.apply(&p), super::super::f_step(case, &p));
        }
    }

    #[test]
    fn composition_is_associative() {
        let case = Case::PiOver3;
        let a = AffineMap::branch(case, Address::Plus);
        let b = AffineMap::branch(case, Address::Minus);
        let c = a.then(&a);
        assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        assert_eq!(AffineMap::identity().then(&b), b);
        assert_eq!(b.then(&AffineMap::identity()), b);
    }

    #[test]
    fn fixed_point_of_rotation() {
        let f = AffineMap::branch(Case::PiOver2, Address::Plus);
        let p = f.fixed_point().unwrap();
        assert_eq!(f.apply(&p), p);
        assert!(AffineMap::identity().fixed_point().is_none());
    }
}
