//! Prime sets and arithmetic helpers on orders and degrees.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as ascending `(prime, exponent)` pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// A finite set of primes. The complement is implicit and is only ever
/// materialized relative to some integer via [`PrimeSet::complement_in`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: BTreeSet<u64>,
}

impl PrimeSet {
    pub fn new<I: IntoIterator<Item = u64>>(primes: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for p in primes {
            if !is_prime(p) {
                return Err(Error::Input(format!("{p} is not prime")));
            }
            if !set.insert(p) {
                return Err(Error::Input(format!("prime {p} listed twice")));
            }
        }
        Ok(PrimeSet { primes: set })
    }

    pub fn empty() -> Self {
        PrimeSet::default()
    }

    pub fn single(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        PrimeSet { primes: BTreeSet::from([p]) }
    }

    /// Parses `"2,3"` style lists. An empty string is the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let mut v = Vec::new();
        for part in s.split(',') {
            let p: u64 = part
                .trim()
                .parse()
                .map_err(|_| Error::Input(format!("cannot parse prime '{part}'")))?;
            v.push(p);
        }
        PrimeSet::new(v)
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.contains(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    /// Primes dividing `n` that are not in the set.
    pub fn complement_in(&self, n: u64) -> PrimeSet {
        PrimeSet {
            primes: prime_divisors(n).into_iter().filter(|p| !self.contains(*p)).collect(),
        }
    }

    /// The set restricted to primes dividing `n`.
    pub fn restrict_to(&self, n: u64) -> PrimeSet {
        PrimeSet {
            primes: prime_divisors(n).into_iter().filter(|p| self.contains(*p)).collect(),
        }
    }

    /// True iff every prime divisor of `n` lies in the set (1 always qualifies).
    pub fn is_pi_number(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| self.contains(p))
    }

    /// True iff no prime in the set divides `n`.
    pub fn is_pi_prime_number(&self, n: u64) -> bool {
        prime_divisors(n).into_iter().all(|p| !self.contains(p))
    }

    /// Largest divisor of `n` composed of primes in the set.
    pub fn part(&self, n: u64) -> u64 {
        pi_part(n, self)
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.primes.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Largest divisor of `n` supported on the primes of `pi`.
pub fn pi_part(n: u64, pi: &PrimeSet) -> u64 {
    assert!(n >= 1, "pi_part of zero");
    factorize(n)
        .into_iter()
        .filter(|(p, _)| pi.contains(*p))
        .map(|(p, e)| p.pow(e))
        .product()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: u64, b: u64) -> u64 {
    num_integer::lcm(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_parts() {
        assert_eq!(pi_part(48, &PrimeSet::single(2)), 16);
        assert_eq!(pi_part(48, &PrimeSet::empty()), 1);
        assert_eq!(pi_part(216, &PrimeSet::single(3)), 27);
        assert_eq!(pi_part(1, &PrimeSet::single(3)), 1);
    }

    #[test]
    fn parse_and_complement() {
        let pi = PrimeSet::parse("3, 2").unwrap();
        assert_eq!(pi.to_string(), "{2,3}");
        assert!(PrimeSet::parse("4").is_err());
        assert!(PrimeSet::parse("2,2").is_err());
        assert_eq!(PrimeSet::single(2).complement_in(168).to_string(), "{3,7}");
        assert!(PrimeSet::single(2).is_pi_number(1));
        assert!(!PrimeSet::single(2).is_pi_number(6));
        assert!(PrimeSet::single(2).is_pi_prime_number(21));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(93312), vec![(2, 7), (3, 6)]);
        assert_eq!(prime_divisors(1), Vec::<u64>::new());
    }
}
