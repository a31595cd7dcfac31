//! The second order family `G(x, y) = (y, -x - ρ y + sign(y))` and its
//! linear conjugacy `G = Q⁻¹ ∘ F ∘ Q` with `Q = [[1, -cos α], [0, sin α]]`.

use super::{address, Case, ExactPoint};
use crate::error::Result;
use crate::exactnum::Qs3;

pub fn g_step(rho: i64, p: &ExactPoint) -> Result<ExactPoint> {
    Case::from_rho(rho)?;
    let s = Qs3::from_int(address(p).sign());
    let r = Qs3::from_int(rho);
    let y = -&p.x - &r * &p.y + s;
    Ok(ExactPoint::new(p.y.clone(), y))
}

/// `Q p`: coordinates of `G` to coordinates of `F`.
pub fn to_normal(rho: i64, p: &ExactPoint) -> Result<ExactPoint> {
    let case = Case::from_rho(rho)?;
    let x = &p.x - &case.cos() * &p.y;
    let y = &case.sin() * &p.y;
    Ok(ExactPoint::new(x, y))
}

/// `Q⁻¹ p`: coordinates of `F` to coordinates of `G`.
pub fn from_normal(rho: i64, p: &ExactPoint) -> Result<ExactPoint> {
    let case = Case::from_rho(rho)?;
    let inv_sin = case.sin().recip().expect("sin α > 0");
    let x = &p.x + &case.cos() * &inv_sin * &p.y;
    let y = &p.y * &inv_sin;
    Ok(ExactPoint::new(x, y))
}
