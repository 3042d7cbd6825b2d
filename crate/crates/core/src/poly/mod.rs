//! Exact multivariate polynomials in canonical (descending) term order.

mod coeff;
mod order;
mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

pub use coeff::{Coefficient, Field};
pub use order::{Exponent, MonomialOrder};
pub use parse::parse_polynomial;

use crate::error::{Error, Result};

/// Variables, coefficient field and active monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

pub type Ring = Arc<PolyRing>;

impl PolyRing {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = S>, field: Field, order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        for (i, v) in vars.iter().enumerate() {
            if v.is_empty() || vars[..i].contains(v) {
                return Err(Error::Precondition(format!("bad or duplicate variable name {v:?}")));
            }
        }
        if let MonomialOrder::Weighted { weights, .. } = &order {
            if weights.len() != vars.len() {
                return Err(Error::LengthMismatch(weights.len(), vars.len()));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        PolyRing::new(self.vars.clone(), self.field, order)
    }

    /// A variable name not present in the ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.vars.contains(&name) {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coefficient,
    pub exp: Exponent,
}

/// A polynomial; terms are sorted strictly descending in the ring's order
/// and carry no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state)
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coefficient) -> Self {
        Self::monomial(ring, c, Exponent::zeros(ring.nvars()))
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, ring.field.from_i64(c))
    }

    pub fn one(ring: &Ring) -> Self {
        Self::from_i64(ring, 1)
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, ring.field.one(), Exponent::unit(ring.nvars(), i))
    }

    pub fn monomial(ring: &Ring, c: Coefficient, exp: Exponent) -> Self {
        assert_eq!(exp.len(), ring.nvars());
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![Term { coeff: c, exp }],
        }
    }

    /// Canonicalizes: combines duplicates, drops zeros, sorts.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Coefficient, Exponent)>) -> Result<Self> {
        let mut acc: HashMap<Exponent, Coefficient> = HashMap::new();
        for (c, e) in terms {
            if e.len() != ring.nvars() {
                return Err(Error::LengthMismatch(e.len(), ring.nvars()));
            }
            if c.field() != ring.field {
                return Err(Error::RingMismatch);
            }
            match acc.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Ok(Self::from_map(ring, acc))
    }

    fn from_map(ring: &Ring, acc: HashMap<Exponent, Coefficient>) -> Self {
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(exp, coeff)| Term { coeff, exp })
            .collect();
        let order = ring.order.clone();
        terms.sort_by(|a, b| order.cmp_unchecked(b.exp.as_slice(), a.exp.as_slice()));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds from terms already sorted descending with distinct exponents
    /// and nonzero coefficients.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring
            .order
            .cmp_unchecked(w[0].exp.as_slice(), w[1].exp.as_slice())
            == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exp.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_exp(&self) -> Option<&Exponent> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn leading_coeff(&self) -> Option<&Coefficient> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn constant_term(&self) -> Coefficient {
        self.terms
            .iter()
            .find(|t| t.exp.is_one())
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.ring.field.zero())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.exp.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.iter().map(|t| t.exp.degree());
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        self.terms.iter().map(|t| t.exp.weighted_degree(weights)).collect()
    }

    pub fn is_weighted_homogeneous(&self, weights: &[i64]) -> bool {
        self.weighted_degrees(weights).windows(2).all(|w| w[0] == w[1])
    }

    /// Indices of variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|t| t.exp[i] > 0))
            .collect()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|t| t.exp[var]).max().unwrap_or(0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&self.ring.field.one(), &Exponent::zeros(self.ring.nvars()), other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_scaled(&self.ring.field.from_i64(-1), &Exponent::zeros(self.ring.nvars()), other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &small.terms {
            acc = acc.add_scaled(&t.coeff, &t.exp, big);
        }
        Ok(acc)
    }

    /// `self + c * x^m * g` by a single merge pass.
    pub fn add_scaled(&self, c: &Coefficient, m: &Exponent, g: &Polynomial) -> Polynomial {
        if c.is_zero() || g.is_zero() {
            return self.clone();
        }
        let order = &self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        let mut shifted: Option<Term> = None;
        let shift = |t: &Term| Term {
            coeff: c * &t.coeff,
            exp: t.exp.mul(m),
        };
        loop {
            if shifted.is_none() && j < g.terms.len() {
                shifted = Some(shift(&g.terms[j]));
                j += 1;
            }
            match (self.terms.get(i), shifted.as_ref()) {
                (None, None) => break,
                (Some(a), None) => {
                    out.push(a.clone());
                    i += 1;
                }
                (None, Some(_)) => out.push(shifted.take().unwrap()),
                (Some(a), Some(b)) => match order.cmp_unchecked(a.exp.as_slice(), b.exp.as_slice()) {
                    Ordering::Greater => {
                        out.push(a.clone());
                        i += 1;
                    }
                    Ordering::Less => out.push(shifted.take().unwrap()),
                    Ordering::Equal => {
                        let b = shifted.take().unwrap();
                        let s = &a.coeff + &b.coeff;
                        if !s.is_zero() {
                            out.push(Term { coeff: s, exp: b.exp });
                        }
                        i += 1;
                    }
                },
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    exp: t.exp.clone(),
                })
                .collect(),
        }
    }

    pub fn mul_term(&self, c: &Coefficient, m: &Exponent) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    exp: t.exp.mul(m),
                })
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Removes and returns the leading term.
    pub(crate) fn pop_leading(&mut self) -> Option<Term> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Scales so the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Divides by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Exponent) -> Option<Polynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.exp.div(m).map(|exp| Term {
                    coeff: t.coeff.clone(),
                    exp,
                })
            })
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Exact division by a nonzero polynomial, if the quotient is a polynomial.
    pub fn exact_div(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(d)?;
        let dl = d.leading_term().ok_or(Error::ZeroInput("divisor"))?;
        let mut rem = self.clone();
        let mut quotient = Polynomial::zero(&self.ring);
        while let Some(t) = rem.leading_term() {
            let Some(m) = t.exp.div(&dl.exp) else {
                return Ok(None);
            };
            let c = &t.coeff / &dl.coeff;
            quotient = quotient.add_scaled(&c, &m, &Polynomial::one(&self.ring));
            rem = rem.add_scaled(&-&c, &m, d);
        }
        Ok(Some(quotient))
    }

    /// Sum of the terms of minimal total degree.
    pub fn lowest_degree_form(&self) -> Result<Polynomial> {
        let t = self
            .terms
            .iter()
            .map(|t| t.exp.degree())
            .min()
            .ok_or(Error::ZeroInput("lowest_degree_form"))?;
        Ok(Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|x| x.exp.degree() == t).cloned().collect(),
        })
    }

    /// Sum of the terms of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|x| x.exp.degree() == d).cloned().collect(),
        }
    }

    /// Re-expresses in `target`, sending variable `i` to variable `map[i]`.
    /// Both rings must share the coefficient field.
    pub fn remap(&self, target: &Ring, map: &[usize]) -> Polynomial {
        assert_eq!(map.len(), self.ring.nvars());
        assert_eq!(target.field, self.ring.field);
        let n = target.nvars();
        let mut acc = HashMap::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0u32; n];
            for (i, &k) in t.exp.as_slice().iter().enumerate() {
                e[map[i]] += k;
            }
            acc.insert(Exponent::new(e), t.coeff.clone());
        }
        Polynomial::from_map(target, acc)
    }

    /// Moves into a ring whose variable list extends or reorders this one,
    /// matching variables by name.
    pub fn embed_by_name(&self, target: &Ring) -> Result<Polynomial> {
        let map = self
            .ring
            .vars
            .iter()
            .map(|v| {
                target
                    .var_index(v)
                    .ok_or_else(|| Error::Precondition(format!("variable {v} missing from target ring")))
            })
            .collect::<Result<Vec<_>>>()?;
        if target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        Ok(self.remap(target, &map))
    }

    /// Ring homomorphism: variable `i` goes to `images[i]`.
    pub fn substitute(&self, target: &Ring, images: &[Polynomial]) -> Result<Polynomial> {
        if images.len() != self.ring.nvars() {
            return Err(Error::LengthMismatch(images.len(), self.ring.nvars()));
        }
        if images.iter().any(|p| !same_ring(&p.ring, target)) || target.field != self.ring.field {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(target), p.clone()]).collect();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut m = Polynomial::constant(target, t.coeff.clone());
            for (i, &k) in t.exp.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                m = &m * &powers[i][k as usize];
            }
            acc = &acc + &m;
        }
        Ok(acc)
    }

    /// Substitutes a constant for one variable, staying in the same ring.
    pub fn eval_var(&self, var: usize, value: &Coefficient) -> Polynomial {
        let mut acc = HashMap::new();
        for t in &self.terms {
            let mut e = t.exp.clone().into_vec();
            let k = std::mem::take(&mut e[var]);
            let c = &t.coeff * &value.pow(k);
            let e = Exponent::new(e);
            match acc.get_mut(&e) {
                Some(x) => *x = &*x + &c,
                None => {
                    acc.insert(e, c);
                }
            }
        }
        Polynomial::from_map(&self.ring, acc)
    }

    /// Groups terms by the power of `var`: returns `(k, coefficient of var^k)`
    /// with the coefficient free of `var`, ascending in `k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<(u32, Polynomial)> {
        let mut groups: std::collections::BTreeMap<u32, Vec<Term>> = Default::default();
        for t in &self.terms {
            let mut e = t.exp.clone().into_vec();
            let k = std::mem::take(&mut e[var]);
            groups.entry(k).or_default().push(Term {
                coeff: t.coeff.clone(),
                exp: Exponent::new(e),
            });
        }
        groups
            .into_iter()
            .map(|(k, terms)| (k, Polynomial::from_sorted_unchecked(&self.ring, terms)))
            .collect()
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mag = t.coeff.abs_string();
            let mut parts = Vec::new();
            if mag != "1" || t.exp.is_one() {
                parts.push(mag);
            }
            for (i, &e) in t.exp.as_slice().iter().enumerate() {
                match e {
                    0 => {}
                    1 => parts.push(self.ring.vars[i].clone()),
                    _ => parts.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> std::ops::Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    /// Panics on ring mismatch; use `try_add` for a checked variant.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl<'a> std::ops::Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl<'a> std::ops::Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&self.ring.field.from_i64(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(vars: &[&str], order: MonomialOrder) -> Ring {
        PolyRing::new(vars.iter().copied(), Field::Rational, order).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(r, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        assert!((&p(&r, "x+y") * &Polynomial::zero(&r)).is_zero());
        assert_eq!(&p(&r, "x+y") * &p(&r, "x-y"), p(&r, "x^2-y^2"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let s = ring(&["x", "y"], MonomialOrder::Lex);
        assert_eq!(p(&r, "x").try_add(&p(&s, "x")), Err(Error::RingMismatch));
        assert_eq!(p(&r, "x").try_mul(&p(&s, "x")), Err(Error::RingMismatch));
    }

    #[test]
    fn lowest_degree_forms() {
        let r = ring(&["x1", "x2", "x3"], MonomialOrder::GrevLex);
        assert_eq!(p(&r, "x1*x2 + x3^3").lowest_degree_form().unwrap(), p(&r, "x1*x2"));
        let h = p(&r, "x1^2 - 3*x2*x3");
        assert_eq!(h.lowest_degree_form().unwrap(), h);
        assert_eq!(p(&r, "x1 + x1^2 + x2^2").lowest_degree_form().unwrap(), p(&r, "x1"));
        assert_eq!(Polynomial::zero(&r).lowest_degree_form(), Err(Error::ZeroInput("lowest_degree_form")));
    }

    #[test]
    fn display_is_canonical() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(p(&r, "y^2 - 1/2 + 3 x y - x").to_string(), "3*x*y + y^2 - x - 1/2");
        assert_eq!(p(&r, "-x").to_string(), "-x");
        assert_eq!(Polynomial::zero(&r).to_string(), "0");
    }

    #[test]
    fn substitution_and_exact_division() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let t = ring(&["t"], MonomialOrder::GrevLex);
        let f = p(&r, "x^2 - y^3");
        let img = f.substitute(&t, &[p(&t, "t^3"), p(&t, "t^2")]).unwrap();
        assert!(img.is_zero());
        let q = p(&r, "x^2 - y^2").exact_div(&p(&r, "x - y")).unwrap().unwrap();
        assert_eq!(q, p(&r, "x + y"));
        assert_eq!(p(&r, "x^2 + 1").exact_div(&p(&r, "x")).unwrap(), None);
    }
}
