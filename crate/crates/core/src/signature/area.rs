use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use super::NecSignature;
use crate::error::{Error, Result};

/// Integer type backing exact signature arithmetic.
pub trait Scalar: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display {}

impl<T> Scalar for T where
    T: Integer + Signed + Clone + FromPrimitive + ToPrimitive + Debug + Display
{
}

fn int<I: Scalar>(v: u64) -> I {
    I::from_u64(v).expect("signature data fits the scalar type")
}

/// `εh − 2 + k + Σ(1 − 1/m_i) + ½ΣΣ(1 − 1/n_ij)`, i.e. μ/2π.
pub fn area_in<I: Scalar>(sig: &NecSignature) -> Ratio<I> {
    let one = Ratio::from_integer(I::one());
    let eps: u64 = if sig.orientable { 2 } else { 1 };
    let mut acc = Ratio::from_integer(int::<I>(eps * sig.genus as u64))
        - Ratio::from_integer(int::<I>(2))
        + Ratio::from_integer(int::<I>(sig.period_cycles.len() as u64));
    for &m in &sig.proper_periods {
        acc = acc + (one.clone() - Ratio::new(I::one(), int::<I>(m.max(1) as u64)));
    }
    let half = Ratio::new(I::one(), int::<I>(2));
    for cycle in &sig.period_cycles {
        for &n in cycle {
            acc = acc
                + half.clone() * (one.clone() - Ratio::new(I::one(), int::<I>(n.max(1) as u64)));
        }
    }
    acc
}

/// `sub / sup`, the index of a subgroup with area `sub` in a group with area `sup`.
pub fn rh_index_in<I: Scalar>(sub: Ratio<I>, sup: Ratio<I>) -> Result<Ratio<I>> {
    if !sup.is_positive() {
        return Err(Error::NonPositiveArea(sup.to_string()));
    }
    Ok(sub / sup)
}

/// Genus `g` with `2g − 2 = n · area(sig)`.
pub fn kernel_surface_genus_in<I: Scalar>(sig: &NecSignature, group_order: u64) -> Result<I> {
    let area = area_in::<I>(sig);
    if !area.is_positive() {
        return Err(Error::NonPositiveArea(area.to_string()));
    }
    let two = Ratio::from_integer(int::<I>(2));
    let total = Ratio::from_integer(int::<I>(group_order)) * area + two.clone();
    let g = total / two;
    if !g.is_integer() || g.is_negative() {
        return Err(Error::NotASurfaceKernel(format!(
            "{group_order} * area({sig}) gives genus {g}, not a non-negative integer"
        )));
    }
    Ok(g.to_integer())
}
