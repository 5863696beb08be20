//! Exact rational scalars and small vector helpers.
//!
//! `Rat` is an arbitrary-precision rational kept in lowest terms with a
//! positive denominator; every arithmetic operation preserves that canonical
//! form. Serialization uses the compact string form `"p/q"`, abbreviated to
//! `"p"` when the denominator is one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

pub type Rat = BigRational;

/// Rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`, with optional leading sign.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), Some(q.trim())),
        None => (s, None),
    };
    let p: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    let q: BigInt = match den {
        Some(q) => q
            .parse()
            .map_err(|_| Error::Parse(format!("bad rational {s:?}")))?,
        None => BigInt::one(),
    };
    if q.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(p, q))
}

/// Formats in canonical `"p/q"` (or `"p"` when integral) form.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

/// Canonical-form check: lowest terms, positive denominator.
pub fn is_canonical(r: &Rat) -> bool {
    let reduced = Rat::new(r.numer().clone(), r.denom().clone());
    r.denom().is_positive() && reduced.numer() == r.numer() && reduced.denom() == r.denom()
}

pub fn parse_rat_vec(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rat).collect()
}

pub fn format_rat_vec(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

pub fn sum_rats<'a, I: IntoIterator<Item = &'a Rat>>(iter: I) -> Rat {
    iter.into_iter().fold(Rat::zero(), |acc, r| acc + r)
}

pub fn vec_add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Rat], s: &Rat) -> Vec<Rat> {
    a.iter().map(|x| x * s).collect()
}

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn zero_vec(len: usize) -> Vec<Rat> {
    vec![Rat::zero(); len]
}
