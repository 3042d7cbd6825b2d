use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    /// Exact rationals.
    Rational,
    /// Integers modulo a prime below 2^31. Results computed here hold
    /// only modulo unlucky primes.
    Prime(u32),
}

impl Field {
    pub fn prime(p: u32) -> Result<Self> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(self) -> Coefficient {
        self.from_i64(0)
    }

    pub fn one(self) -> Coefficient {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coefficient::Modular {
                value: n.rem_euclid(p as i64) as u32,
                prime: p,
            },
        }
    }

    pub fn from_bigint(self, n: &BigInt) -> Coefficient {
        match self {
            Field::Rational => Coefficient::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(p));
                let value = u32::try_from(r).expect("residue below modulus");
                Coefficient::Modular { value, prime: p }
            }
        }
    }

    /// `num / den`; fails when the denominator vanishes in the field.
    pub fn from_fraction(self, num: &BigInt, den: &BigInt) -> Result<Coefficient> {
        let d = self.from_bigint(den);
        if d.is_zero() {
            return Err(Error::Precondition("denominator vanishes in the coefficient field".into()));
        }
        Ok(&self.from_bigint(num) * &d.inv())
    }

    pub fn describe(self) -> String {
        match self {
            Field::Rational => "QQ".to_string(),
            Field::Prime(p) => format!("Fp {p}"),
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the coefficient field. Rational values are kept in lowest
/// terms with positive denominator; residues live in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(BigRational),
    Modular { value: u32, prime: u32 },
}

impl Coefficient {
    pub fn field(&self) -> Field {
        match self {
            Coefficient::Rational(_) => Field::Rational,
            Coefficient::Modular { prime, .. } => Field::Prime(*prime),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_zero(),
            Coefficient::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_one(),
            Coefficient::Modular { value, .. } => *value == 1,
        }
    }

    /// True when the printed form carries a leading minus sign.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(q) => q.is_negative(),
            Coefficient::Modular { .. } => false,
        }
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Coefficient {
        match self {
            Coefficient::Rational(q) => {
                assert!(!q.is_zero(), "inverse of zero");
                Coefficient::Rational(q.recip())
            }
            Coefficient::Modular { value, prime } => {
                assert!(*value != 0, "inverse of zero");
                Coefficient::Modular {
                    value: pow_mod(*value as u64, *prime as u64 - 2, *prime as u64) as u32,
                    prime: *prime,
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Coefficient {
        let mut acc = self.field().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn abs_string(&self) -> String {
        match self {
            Coefficient::Rational(q) => q.abs().to_string(),
            Coefficient::Modular { value, .. } => value.to_string(),
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

fn field_mismatch() -> ! {
    panic!("coefficients from different fields")
}

impl<'a> std::ops::Add<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn add(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Modular { value: a, prime }, Coefficient::Modular { value: b, prime: q }) if prime == q => {
                Coefficient::Modular {
                    value: ((*a as u64 + *b as u64) % *prime as u64) as u32,
                    prime: *prime,
                }
            }
            _ => field_mismatch(),
        }
    }
}

impl<'a> std::ops::Sub<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn sub(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a - b),
            (Coefficient::Modular { value: a, prime }, Coefficient::Modular { value: b, prime: q }) if prime == q => {
                Coefficient::Modular {
                    value: ((*a as u64 + *prime as u64 - *b as u64) % *prime as u64) as u32,
                    prime: *prime,
                }
            }
            _ => field_mismatch(),
        }
    }
}

impl<'a> std::ops::Mul<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Modular { value: a, prime }, Coefficient::Modular { value: b, prime: q }) if prime == q => {
                Coefficient::Modular {
                    value: ((*a as u64 * *b as u64) % *prime as u64) as u32,
                    prime: *prime,
                }
            }
            _ => field_mismatch(),
        }
    }
}

impl<'a> std::ops::Div<&'a Coefficient> for &'a Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        self * &rhs.inv()
    }
}

impl std::ops::Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Modular { value, prime } => Coefficient::Modular {
                value: (*prime - *value) % *prime,
                prime: *prime,
            },
        }
    }
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(q) => write!(f, "{q}"),
            Coefficient::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}
