//! Arithmetic over the residue ring `Z_n`.
//!
//! Everything here works on plain `u64` residues in `[1, n-1]`. Zero and the
//! units never appear in the returned sets.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("modulus must be at least 2, got {0}")]
    ModulusTooSmall(u64),
}

/// Prime factorization of a modulus, primes strictly ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn modulus(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs with ascending primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// Product of the distinct primes.
    pub fn radical(&self) -> u64 {
        self.primes().product()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn largest_prime(&self) -> u64 {
        self.factors.last().map(|&(p, _)| p).unwrap_or(1)
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Trial-division factorization.
pub fn factorize(n: u64) -> Result<Factorization, RingError> {
    if n < 2 {
        return Err(RingError::ModulusTooSmall(n));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut e = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n).map(|f| f.factors == [(n, 1)]).unwrap_or(false)
}

/// `a * b mod n` without overflow.
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Nonzero residues sharing a factor with `n`, ascending.
pub fn zero_divisors(n: u64) -> Result<Vec<u64>, RingError> {
    if n < 2 {
        return Err(RingError::ModulusTooSmall(n));
    }
    Ok((1..n).filter(|&k| gcd(k, n) > 1).collect())
}

/// Nonzero nilpotent residues: exactly the nonzero multiples of `rad(n)`.
pub fn nilpotents(n: u64) -> Result<Vec<u64>, RingError> {
    let rad = factorize(n)?.radical();
    Ok((1..n / rad).map(|k| k * rad).collect())
}

/// Shape of the modulus, keyed by the exponent multiset of its factorization.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ModulusShape {
    Prime { p: u64 },
    /// At least two distinct primes, all exponents one.
    SquarefreeComposite { primes: Vec<u64> },
    PSquared { p: u64 },
    PCubed { p: u64 },
    /// `n = p^2 q`; `p` is the squared prime whatever its size.
    PSquaredQ { p: u64, q: u64 },
    /// `n = p^2 q^2` with `p < q`.
    PSquaredQSquared { p: u64, q: u64 },
    Other,
}

impl ModulusShape {
    /// Short machine-friendly tag, used in survey tables.
    pub fn tag(&self) -> String {
        match self {
            ModulusShape::Prime { p } => format!("prime(p={p})"),
            ModulusShape::SquarefreeComposite { primes } => {
                format!("squarefree(m={})", primes.len())
            }
            ModulusShape::PSquared { p } => format!("p^2(p={p})"),
            ModulusShape::PCubed { p } => format!("p^3(p={p})"),
            ModulusShape::PSquaredQ { p, q } => format!("p^2q(p={p};q={q})"),
            ModulusShape::PSquaredQSquared { p, q } => format!("p^2q^2(p={p};q={q})"),
            ModulusShape::Other => "other".to_string(),
        }
    }
}

impl fmt::Display for ModulusShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

pub fn classify(f: &Factorization) -> ModulusShape {
    let fs = f.factors();
    match fs {
        [(p, 1)] => ModulusShape::Prime { p: *p },
        [(p, 2)] => ModulusShape::PSquared { p: *p },
        [(p, 3)] => ModulusShape::PCubed { p: *p },
        [(a, 2), (b, 1)] => ModulusShape::PSquaredQ { p: *a, q: *b },
        [(a, 1), (b, 2)] => ModulusShape::PSquaredQ { p: *b, q: *a },
        [(p, 2), (q, 2)] => ModulusShape::PSquaredQSquared { p: *p, q: *q },
        _ if fs.len() >= 2 && f.is_squarefree() => ModulusShape::SquarefreeComposite {
            primes: f.primes().collect(),
        },
        _ => ModulusShape::Other,
    }
}
