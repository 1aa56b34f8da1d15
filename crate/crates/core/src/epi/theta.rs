//! The explicit epimorphisms onto `D_p` and `C_2p` realizing each species.

use std::sync::Arc;

use super::SurfaceKernelEpi;
use crate::error::{Error, Result};
use crate::group::{SignedGroup, Target};
use crate::signature::{require_odd_prime, NecSignature};

/// Image of the connector `e` in `θ3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConnectorImage {
    Identity,
    /// `r^m`
    RotationPower(u32),
}

impl ConnectorImage {
    /// Parses `1`, `r` or `r^m`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t == "1" || t == "identity" {
            return Ok(ConnectorImage::Identity);
        }
        let m = match t.strip_prefix('r') {
            Some("") => 1,
            Some(rest) => rest
                .trim()
                .strip_prefix('^')
                .and_then(|e| e.trim().parse::<u32>().ok())
                .ok_or_else(|| {
                    Error::Construction(format!("connector `{text}` is not a power of r"))
                })?,
            None => {
                return Err(Error::Construction(format!(
                    "connector `{text}` is not a power of r"
                )))
            }
        };
        Ok(if m == 0 {
            ConnectorImage::Identity
        } else {
            ConnectorImage::RotationPower(m)
        })
    }

    fn exponent(self) -> u32 {
        match self {
            ConnectorImage::Identity => 0,
            ConnectorImage::RotationPower(m) => m,
        }
    }
}

fn rs(t: &SignedGroup) -> (usize, usize) {
    let g = t.group();
    (g.generator("r").expect("r"), g.generator("s").expect("s"))
}

fn ratio(num: i64, den: i64, what: &str) -> Result<u32> {
    if den == 0 || num % den != 0 || num / den < 0 {
        return Err(Error::Construction(format!(
            "{what}: {num} is not a non-negative multiple of {den}"
        )));
    }
    Ok((num / den) as u32)
}

/// Onto `D_p` on `(0,+,[p,p],{(p^v)})`, `v = 2(g−p+1)/(p−1)`.
pub fn theta1(p: u32, g: u32) -> Result<SurfaceKernelEpi> {
    require_odd_prime(p)?;
    let (pi, gi) = (p as i64, g as i64);
    let v = ratio(2 * (gi - pi + 1), pi - 1, "theta1 link count")?;
    if v == 0 {
        return Err(Error::Construction(format!(
            "theta1 needs at least one link period at (p, g) = ({p}, {g})"
        )));
    }
    let t = Arc::new(SignedGroup::dihedral_target(p)?);
    let grp = t.group();
    let (r, s) = rs(&t);
    let sr = grp.mul(s, r);
    // the wrap c_0 e^{-1} c_v e = 1 forces r^{2ε} = 1 or r^{2ε+1} = 1
    let eps = if v % 2 == 0 { 0 } else { (pi - 1) / 2 };
    let mu = (-1 - eps).rem_euclid(pi);
    let sig = NecSignature::new(true, 0, vec![p, p], vec![vec![p; v as usize]]);
    let mut images = vec![r, grp.pow(r, mu), grp.pow(r, eps)];
    images.extend((0..=v).map(|j| if j % 2 == 0 { s } else { sr }));
    SurfaceKernelEpi::new(sig, t, images)
}

/// Onto `D_p` on `(0,+,[-],{(p^v)})`, `v = 2(g+p−1)/(p−1)`, for even `g` and `v`.
pub fn theta2(p: u32, g: u32) -> Result<SurfaceKernelEpi> {
    require_odd_prime(p)?;
    if !g.is_multiple_of(2) {
        return Err(Error::Construction(format!(
            "theta2 needs even genus, got {g}"
        )));
    }
    let (pi, gi) = (p as i64, g as i64);
    let v = ratio(2 * (gi + pi - 1), pi - 1, "theta2 link count")?;
    if v % 2 != 0 {
        return Err(Error::Construction(format!(
            "theta2 needs an even number of link periods, got {v}"
        )));
    }
    let t = Arc::new(SignedGroup::dihedral_target(p)?);
    let (r, s) = rs(&t);
    let sr = t.group().mul(s, r);
    let sig = NecSignature::new(true, 0, vec![], vec![vec![p; v as usize]]);
    let mut images = vec![0];
    images.extend((0..=v).map(|j| if j % 2 == 0 { s } else { sr }));
    SurfaceKernelEpi::new(sig, t, images)
}

/// Onto `D_p` or `C_2p` on `(0,+,[p^u],{(-)})`, `u = g/(p−1)+1`.
pub fn theta3(
    p: u32,
    g: u32,
    target: Target,
    connector: ConnectorImage,
) -> Result<SurfaceKernelEpi> {
    require_odd_prime(p)?;
    let u = ratio(g as i64, p as i64 - 1, "theta3 period count")? + 1;
    if u < 2 {
        return Err(Error::Construction(format!("theta3 needs g > 0, got {g}")));
    }
    let t = Arc::new(SignedGroup::target(p, target)?);
    let grp = t.group();
    let (r, s) = rs(&t);
    let pi = p as i64;
    let m = connector.exponent() as i64 % pi;
    let mut exps = vec![1i64; u as usize];
    let mut last = (-(u as i64 - 1) - m).rem_euclid(pi);
    if last == 0 {
        exps[u as usize - 2] = 2;
        last = (-(u as i64) - m).rem_euclid(pi);
    }
    exps[u as usize - 1] = last;
    let sig = NecSignature::new(true, 0, vec![p; u as usize], vec![vec![]]);
    let mut images: Vec<usize> = exps.iter().map(|&k| grp.pow(r, k)).collect();
    images.push(grp.pow(r, m));
    images.push(s);
    SurfaceKernelEpi::new(sig, t, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta1_examples() {
        let e = theta1(3, 5).unwrap();
        assert_eq!(e.signature().to_string(), "(0,+,[3,3],{(3,3,3)})");
        assert_eq!(e.kernel_genus().unwrap(), 5);
        let grp = e.target().group();
        let r = grp.generator("r").unwrap();
        // ε = 1 and μ = 1 at (3, 5)
        assert_eq!(e.images()[1], r);
        assert_eq!(e.images()[2], r);
        assert_eq!(
            theta1(3, 6).unwrap().signature().period_cycles()[0].len(),
            4
        );
        assert_eq!(theta1(3, 6).unwrap().kernel_genus().unwrap(), 6);
        assert!(theta1(5, 7).is_err());
        assert!(theta1(3, 2).is_err());
    }

    #[test]
    fn theta2_examples() {
        let e = theta2(3, 4).unwrap();
        assert_eq!(e.signature().period_cycles()[0].len(), 6);
        assert_eq!(e.kernel_genus().unwrap(), 4);
        assert_eq!(
            theta2(3, 6).unwrap().signature().period_cycles()[0].len(),
            8
        );
        assert!(theta2(3, 5).is_err());
        assert!(theta2(5, 6).is_err());
    }

    #[test]
    fn theta3_examples() {
        let d = theta3(3, 4, Target::Dihedral, ConnectorImage::Identity).unwrap();
        assert_eq!(d.signature().proper_periods().len(), 3);
        assert_eq!(d.kernel_genus().unwrap(), 4);
        let c = theta3(3, 4, Target::Cyclic, ConnectorImage::Identity).unwrap();
        assert_eq!(c.kernel_genus().unwrap(), 4);
        let cr = theta3(3, 4, Target::Cyclic, ConnectorImage::RotationPower(1)).unwrap();
        let r = cr.target().group().generator("r").unwrap();
        assert_eq!(*cr.images().iter().rev().nth(1).unwrap(), r);
        // the connector must commute with the reflection image in D_p
        assert!(theta3(3, 4, Target::Dihedral, ConnectorImage::RotationPower(1)).is_err());
        assert!(theta3(5, 6, Target::Cyclic, ConnectorImage::Identity).is_err());
        assert!(theta3(5, 8, Target::Cyclic, ConnectorImage::RotationPower(2)).is_ok());
    }

    #[test]
    fn connector_words() {
        assert_eq!(
            ConnectorImage::parse("1").unwrap(),
            ConnectorImage::Identity
        );
        assert_eq!(
            ConnectorImage::parse("r").unwrap(),
            ConnectorImage::RotationPower(1)
        );
        assert_eq!(
            ConnectorImage::parse("r^2").unwrap(),
            ConnectorImage::RotationPower(2)
        );
        assert!(ConnectorImage::parse("s").is_err());
    }
}
