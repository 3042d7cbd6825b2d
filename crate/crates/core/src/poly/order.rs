use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense exponent vector, one entry per ring variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent(Vec<u32>);

impl Exponent {
    pub fn new(entries: Vec<u32>) -> Self {
        Exponent(entries)
    }

    pub fn zeros(n: usize) -> Self {
        Exponent(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Exponent(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, if `other` divides `self`.
    pub fn div(&self, other: &Exponent) -> Option<Exponent> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Exponent)
    }

    pub fn lcm(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Exponent) -> Exponent {
        Exponent(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Exponent) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn weighted_degree(&self, weights: &[i64]) -> i64 {
        self.0.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum()
    }

    pub fn into_vec(self) -> Vec<u32> {
        self.0
    }
}

impl std::ops::Index<usize> for Exponent {
    type Output = u32;
    fn index(&self, i: usize) -> &u32 {
        &self.0[i]
    }
}

/// A monomial order on exponent vectors of a fixed length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    /// Variables `0..k` form the first block, the rest the second; each block
    /// is compared by graded reverse lex, the first block deciding.
    Block(usize),
    /// Weight vector refined by a tiebreak order. A single negative weight is
    /// admitted only with `graded = true`, for recording Z-gradings; such
    /// orders are not usable for Gröbner computations.
    Weighted {
        weights: Vec<i64>,
        tiebreak: Box<MonomialOrder>,
        graded: bool,
    },
}

impl MonomialOrder {
    pub fn weighted(weights: Vec<i64>, tiebreak: MonomialOrder, graded: bool) -> Result<Self> {
        let negatives = weights.iter().filter(|&&w| w < 0).count();
        if negatives > 1 || (negatives == 1 && !graded) {
            return Err(Error::InvalidOrder(
                "negative weights need the graded flag and at most one negative entry".into(),
            ));
        }
        Ok(MonomialOrder::Weighted {
            weights,
            tiebreak: Box::new(tiebreak),
            graded,
        })
    }

    /// Whether the order can drive Buchberger's algorithm (every weight positive).
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrder::Weighted { weights, tiebreak, .. } => {
                weights.iter().all(|&w| w > 0) && tiebreak.is_global()
            }
            _ => true,
        }
    }

    /// Whether comparisons start with total degree.
    pub fn is_degree_compatible(&self) -> bool {
        match self {
            MonomialOrder::GrevLex => true,
            MonomialOrder::Weighted { weights, .. } => {
                weights.windows(2).all(|w| w[0] == w[1]) && weights.first().is_some_and(|&w| w > 0)
            }
            _ => false,
        }
    }

    pub fn compare(&self, a: &Exponent, b: &Exponent) -> Result<Ordering> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch(a.len(), b.len()));
        }
        Ok(self.cmp_unchecked(a.as_slice(), b.as_slice()))
    }

    pub(crate) fn cmp_unchecked(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self {
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::GrevLex => grevlex(a, b),
            MonomialOrder::Block(k) => {
                let k = (*k).min(a.len());
                grevlex(&a[..k], &b[..k]).then_with(|| grevlex(&a[k..], &b[k..]))
            }
            MonomialOrder::Weighted { weights, tiebreak, .. } => {
                let wa: i64 = a.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
                let wb: i64 = b.iter().zip(weights).map(|(&e, &w)| e as i64 * w).sum();
                wa.cmp(&wb).then_with(|| tiebreak.cmp_unchecked(a, b))
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::GrevLex => "grevlex".into(),
            MonomialOrder::Block(k) => format!("block {k}"),
            MonomialOrder::Weighted { weights, tiebreak, .. } => {
                format!("weighted {:?} then {}", weights, tiebreak.describe())
            }
        }
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        // smaller trailing exponent wins
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    })
}
