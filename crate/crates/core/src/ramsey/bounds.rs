use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::closeknit::Rational;
use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::sierpinski;

/// A positive quantity carried as its base-2 logarithm, so tower-sized
/// bounds stay representable. `value` is `None` once it overflows `f64`.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct BoundValue {
    pub log2: f64,
    pub value: Option<f64>,
}

impl BoundValue {
    fn from_log2(log2: f64) -> Self {
        let v = log2.exp2();
        Self {
            log2,
            value: v.is_finite().then_some(v),
        }
    }
}

#[derive(Clone, PartialEq, Debug, Serialize)]
pub struct BoundsReport {
    pub k: usize,
    pub max_degree: usize,
    pub c: f64,
    pub c_d: f64,
    /// `k 2^(c Δ log2 Δ)`: Ramsey number bound for bounded degree.
    pub chvatal: BoundValue,
    /// `k^c_d`: induced Ramsey number bound for bounded degree.
    pub luczak_rodl: BoundValue,
    /// `2^((k-1)/2)`.
    pub incompressible_lower: BoundValue,
    /// `2^((k-1)/2) + k^c_d`.
    pub incompressible_upper: BoundValue,
}

pub fn bounds_report(h: &LabeledGraph, c: f64, c_d: f64) -> Result<BoundsReport> {
    if !(c > 0.0 && c_d > 0.0 && c.is_finite() && c_d.is_finite()) {
        return Err(Error::InvalidArgument(format!("constants must be positive and finite, got c = {c}, c_d = {c_d}")));
    }
    let k = h.n();
    if k < 2 {
        return Err(Error::InvalidArgument(format!("pattern needs at least 2 vertices, got {k}")));
    }
    let delta = h.max_degree();
    let lk = (k as f64).log2();
    let ld = if delta > 1 { (delta as f64).log2() } else { 0.0 };
    let lower = (k as f64 - 1.0) / 2.0;
    let ramsey = c_d * lk;
    // log2(2^a + 2^b) = max + log2(1 + 2^(min - max))
    let (hi, lo) = if lower > ramsey { (lower, ramsey) } else { (ramsey, lower) };
    Ok(BoundsReport {
        k,
        max_degree: delta,
        c,
        c_d,
        chvatal: BoundValue::from_log2(lk + c * delta as f64 * ld),
        luczak_rodl: BoundValue::from_log2(ramsey),
        incompressible_lower: BoundValue::from_log2(lower),
        incompressible_upper: BoundValue::from_log2(hi + (lo - hi).exp2().ln_1p() / std::f64::consts::LN_2),
    })
}

/// Largest level `l` with `n_l^c_d >= 2^((n_l - 1)/2)`, or `None` if no
/// level qualifies. For `c_d = p/q` the comparison is the exact integer
/// test `n^(2p) >= 2^(q(n-1))`. Past `n = 2 c_d / ln 2` the right side
/// grows faster than the left, so the scan stops at the first failure
/// beyond that point.
pub fn max_ramsey_level(c_d: Rational) -> Result<Option<u32>> {
    if *c_d.numer() == 0 {
        return Err(Error::InvalidArgument("c_d must be positive".into()));
    }
    let (p, q) = (*c_d.numer(), *c_d.denom());
    let turning = 2.0 * p as f64 / (q as f64 * std::f64::consts::LN_2);
    let mut best = None;
    for l in 1u32.. {
        if l > 38 {
            return Err(Error::LimitExceeded {
                what: "Sierpinski level while scanning for the last qualifying level",
                value: l as u128,
                limit: 38,
            });
        }
        let n = sierpinski::vertex_count(l);
        let lhs = BigUint::from(n).pow((2 * p) as u32);
        let rhs = BigUint::one() << (q * (n - 1));
        if lhs >= rhs {
            best = Some(l);
        } else if n as f64 > turning {
            break;
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_scan() {
        assert_eq!(max_ramsey_level(Rational::from_integer(3)).unwrap(), Some(3));
        let mut prev = 0;
        for c in 1..=10 {
            let l = max_ramsey_level(Rational::from_integer(c)).unwrap().unwrap();
            assert!(l >= prev);
            prev = l;
        }
        assert_eq!(max_ramsey_level(Rational::new(1, 2)).unwrap(), None);
        assert!(max_ramsey_level(Rational::from_integer(0)).is_err());
    }

    #[test]
    fn report_for_s2() {
        let s2 = sierpinski::build(2).unwrap().into_graph();
        let r = bounds_report(&s2, 1.0, 3.0).unwrap();
        assert_eq!(r.max_degree, 4);
        assert!((r.luczak_rodl.value.unwrap() - 216.0).abs() < 1e-9);
        assert!((r.incompressible_lower.value.unwrap() - 32f64.sqrt()).abs() < 1e-12);
        assert!((r.incompressible_upper.value.unwrap() - (216.0 + 32f64.sqrt())).abs() < 1e-9);
        // 6 * 2^(4 * 2)
        assert!((r.chvatal.value.unwrap() - 1536.0).abs() < 1e-9);
        assert!(r.incompressible_lower.log2 < r.incompressible_upper.log2);
    }

    #[test]
    fn huge_constants_stay_finite_in_log_space() {
        let r = bounds_report(&LabeledGraph::complete(5), 1e6, 1e6).unwrap();
        assert!(r.chvatal.value.is_none());
        assert!(r.chvatal.log2.is_finite());
        assert!(bounds_report(&LabeledGraph::complete(5), 0.0, 1.0).is_err());
    }
}
