//! The α-scaling `f^α(x) = f(αx)` of functions and sets.

use crate::error::{Error, Result};
use crate::oracle::FnOracle;
use crate::point::{IntBox, IntPoint};
use crate::Value;

fn check_alpha(alpha: i64) -> Result<()> {
    if alpha < 1 {
        return Err(Error::BadScale(alpha));
    }
    Ok(())
}

/// Returns `f^α`.
///
/// The bounding box is the tight box `{x : αx ∈ box(f)}`. When that is empty
/// the result has a one-point box and no finite values.
pub fn scale_fn(f: &FnOracle, alpha: i64) -> Result<FnOracle> {
    check_alpha(alpha)?;
    if alpha == 1 {
        return Ok(f.clone());
    }
    let lo: Vec<i64> = f
        .bbox()
        .lower()
        .coords()
        .iter()
        .map(|&l| l.div_euclid(alpha) + i64::from(l.rem_euclid(alpha) != 0))
        .collect();
    let hi: Vec<i64> = f
        .bbox()
        .upper()
        .coords()
        .iter()
        .map(|&u| u.div_euclid(alpha))
        .collect();
    let empty = lo.iter().zip(&hi).any(|(l, h)| l > h);
    let upper = if empty { lo.clone() } else { hi };
    let bbox = IntBox::new(IntPoint(lo), IntPoint(upper))?;
    let base = f.clone();
    let scaled = FnOracle::from_fn(bbox, move |x| {
        if empty {
            Value::PosInfinity
        } else {
            base.value(&x.scaled(alpha))
        }
    });
    Ok(match f.name() {
        Some(name) => scaled.with_name(format!("{name}^{alpha}")),
        None => scaled,
    })
}

/// `{x : αx ∈ S}`, sorted.
pub fn scale_set(s: &[IntPoint], alpha: i64) -> Result<Vec<IntPoint>> {
    check_alpha(alpha)?;
    let mut out: Vec<IntPoint> = s
        .iter()
        .filter(|p| p.coords().iter().all(|v| v % alpha == 0))
        .map(|p| IntPoint(p.coords().iter().map(|v| v / alpha).collect()))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}
