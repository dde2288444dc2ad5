//! Exact rational scalars.
//!
//! Every "real" in the kernel is a [`Q`]: comparisons are decidable and all
//! set/modulus checks are exact. Rationals cross the serialization boundary
//! as `"p/q"` strings with a positive denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::Error;

pub type Q = BigRational;

/// Shorthand for a rational from machine integers.
pub fn q(numer: i64, denom: i64) -> Q {
    assert!(denom != 0, "zero denominator");
    Q::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn qi(n: i64) -> Q {
    q(n, 1)
}

/// Parses `"p/q"` (or a bare integer `"p"`). The denominator must be nonzero.
pub fn parse_q(s: &str) -> Result<Q, Error> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::BadRational(s.to_string()))?;
    let denom: BigInt = den
        .parse()
        .map_err(|_| Error::BadRational(s.to_string()))?;
    if denom.is_zero() {
        return Err(Error::BadRational(s.to_string()));
    }
    Ok(Q::new(numer, denom))
}

/// Canonical `"p/q"` form: reduced, denominator positive, always with a slash.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn min_q(a: Q, b: Q) -> Q {
    if a <= b {
        a
    } else {
        b
    }
}

pub fn max_q(a: Q, b: Q) -> Q {
    if a >= b {
        a
    } else {
        b
    }
}

/// The fixed ε-grid used by the continuity suites, optionally extended with
/// seeded random positive rationals.
pub fn eps_grid(extra: usize, seed: u64) -> Vec<Q> {
    let mut grid = vec![q(1, 8), q(1, 4), q(1, 2), qi(1), qi(2), qi(4)];
    let mut rng = QRng::new(seed);
    for _ in 0..extra {
        grid.push(rng.positive(100));
    }
    grid
}

/// Deterministic rational generator (ChaCha8 behind a fixed seed).
pub struct QRng {
    rng: ChaCha8Rng,
}

impl QRng {
    pub fn new(seed: u64) -> Self {
        QRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A rational of height at most `height` (numerator in `[-height, height]`,
    /// denominator in `[1, height]`).
    pub fn rational(&mut self, height: i64) -> Q {
        let n = self.rng.gen_range(-height..=height);
        let d = self.rng.gen_range(1..=height);
        q(n, d)
    }

    /// A strictly positive rational of height at most `height`.
    pub fn positive(&mut self, height: i64) -> Q {
        let n = self.rng.gen_range(1..=height);
        let d = self.rng.gen_range(1..=height);
        q(n, d)
    }

    pub fn usize(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}

/// `|x|` for rationals.
pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

pub fn half(x: &Q) -> Q {
    x / Q::from_integer(BigInt::from(2))
}

pub fn is_positive(x: &Q) -> bool {
    x > &Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

pub fn zero() -> Q {
    Q::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_roundtrip() {
        let x = parse_q("3/6").unwrap();
        assert_eq!(x, q(1, 2));
        assert_eq!(fmt_q(&x), "1/2");
        assert_eq!(parse_q("-4").unwrap(), qi(-4));
        assert_eq!(fmt_q(&qi(-4)), "-4/1");
        // denominator sign is normalized
        assert_eq!(fmt_q(&parse_q("1/-2").unwrap()), "-1/2");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(parse_q("1/0").is_err());
        assert!(parse_q("x/2").is_err());
    }

    #[test]
    fn seeded_generator_is_deterministic() {
        let a: Vec<Q> = {
            let mut r = QRng::new(7);
            (0..10).map(|_| r.rational(100)).collect()
        };
        let b: Vec<Q> = {
            let mut r = QRng::new(7);
            (0..10).map(|_| r.rational(100)).collect()
        };
        assert_eq!(a, b);
    }
}
