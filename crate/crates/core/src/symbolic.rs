//! Symbolic powers `𝔭⁽ⁿ⁾` by saturation against a separator, the order
//! function `ord_𝔭`, and a randomized primariness screen.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::poly::{Polynomial, Ring};

/// Element outside `𝔭` used to strip embedded components of `𝔭ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub enum Separator {
    Auto,
    Given(Polynomial),
}

/// The separator actually used.
#[derive(Debug, Clone, PartialEq)]
pub enum Resolved {
    /// `𝔭` is maximal, so `𝔭ⁿ` is already primary.
    Maximal,
    /// `𝔭` is generated by variables of a polynomial ring; its powers are
    /// primary as well.
    Variables,
    Element(Polynomial),
}

#[derive(Debug, Clone)]
pub struct SymbolicPowerRequest {
    pub prime: IdealHandle,
    pub n: u32,
    pub separator: Separator,
    pub screen_level: u32,
    pub seed: u64,
}

impl SymbolicPowerRequest {
    pub fn new(prime: IdealHandle, n: u32, separator: Separator) -> Self {
        SymbolicPowerRequest {
            prime,
            n,
            separator,
            screen_level: 0,
            seed: 0,
        }
    }

    pub fn with_screen(mut self, level: u32, seed: u64) -> Self {
        self.screen_level = level;
        self.seed = seed;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SymbolicCertificate {
    pub separator: String,
    pub saturation_steps: u32,
    pub generators_in_prime: bool,
    pub screen_probes: Vec<String>,
    pub screen_failures: Vec<String>,
    /// `"symbolic power"` or `"upper bound candidate"`.
    pub status: String,
}

impl SymbolicCertificate {
    pub fn is_clean(&self) -> bool {
        self.generators_in_prime && self.screen_failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct SymbolicPower {
    pub ideal: IdealHandle,
    pub certificate: SymbolicCertificate,
}

fn is_homogeneous_ideal(p: &IdealHandle) -> bool {
    p.generators().iter().all(|g| g.is_homogeneous()) && p.algebra().modulus().iter().all(|g| g.is_homogeneous())
}

/// Resolves `Auto`: no separator for a maximal ideal or a prime generated by
/// variables of a polynomial ring, otherwise the first variable outside a
/// homogeneous prime with one-dimensional quotient.
pub fn resolve_separator(prime: &IdealHandle, sep: &Separator) -> Result<Resolved> {
    match sep {
        Separator::Given(s) => {
            if prime.contains_poly(s)? {
                return Err(Error::Precondition(format!("separator {s} lies in the prime")));
            }
            Ok(Resolved::Element(s.clone()))
        }
        Separator::Auto => {
            let dim = prime
                .quotient_dimension()?
                .ok_or_else(|| Error::Precondition("the prime is the unit ideal".into()))?;
            if dim == 0 {
                return Ok(Resolved::Maximal);
            }
            if prime.algebra().is_polynomial_ring() && prime.reduced_generators()?.iter().all(is_variable) {
                return Ok(Resolved::Variables);
            }
            if dim == 1 && is_homogeneous_ideal(prime) {
                let ring = prime.ring();
                for i in 0..ring.nvars() {
                    let x = Polynomial::var(ring, i);
                    if !prime.contains_poly(&x)? {
                        return Ok(Resolved::Element(x));
                    }
                }
            }
            Err(Error::Precondition(
                "no automatic separator: supply an element outside the prime".into(),
            ))
        }
    }
}

fn is_variable(g: &Polynomial) -> bool {
    g.is_monomial() && g.total_degree() == Some(1)
}

fn describe(r: &Resolved) -> String {
    match r {
        Resolved::Maximal => "none (maximal ideal)".into(),
        Resolved::Variables => "none (prime generated by variables)".into(),
        Resolved::Element(s) => s.to_string(),
    }
}

fn raw_power(prime: &IdealHandle, n: u32, sep: &Resolved) -> Result<(IdealHandle, u32)> {
    let pw = prime.power(n);
    match sep {
        Resolved::Maximal | Resolved::Variables => Ok((pw, 0)),
        Resolved::Element(s) => pw.saturate(s),
    }
}

fn random_probe(ring: &Ring, rng: &mut ChaCha8Rng) -> Polynomial {
    let n = ring.nvars();
    let mut f = Polynomial::from_i64(ring, rng.gen_range(-3..=3));
    for i in 0..n {
        let c = rng.gen_range(-3i64..=3);
        f = &f + &(&Polynomial::from_i64(ring, c) * &Polynomial::var(ring, i));
    }
    for i in 0..n {
        for j in i..n {
            if rng.gen_bool(0.3) {
                let c = rng.gen_range(-2i64..=2);
                let m = &Polynomial::var(ring, i) * &Polynomial::var(ring, j);
                f = &f + &(&Polynomial::from_i64(ring, c) * &m);
            }
        }
    }
    f
}

fn certify(prime: &IdealHandle, ideal: &IdealHandle, sep: &Resolved, steps: u32, level: u32, seed: u64) -> Result<SymbolicCertificate> {
    let mut in_prime = true;
    for g in ideal.generators() {
        if !prime.radical_membership(g)? {
            in_prime = false;
            break;
        }
    }
    let mut probes = Vec::new();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ring = prime.ring();
    let mut attempts = 0;
    while (probes.len() as u32) < level && attempts < 20 * level.max(1) {
        attempts += 1;
        let g = random_probe(ring, &mut rng);
        if g.is_zero() || prime.contains_poly(&g)? {
            continue;
        }
        let q = ideal.quotient(&g)?;
        if !ideal.contains(&q)? {
            failures.push(g.to_string());
        }
        probes.push(g.to_string());
    }
    let clean = in_prime && failures.is_empty();
    Ok(SymbolicCertificate {
        separator: describe(sep),
        saturation_steps: steps,
        generators_in_prime: in_prime,
        screen_probes: probes,
        screen_failures: failures,
        status: if clean { "symbolic power" } else { "upper bound candidate" }.into(),
    })
}

/// `saturate(𝔭ⁿ, s)` with its certificate.
pub fn symbolic_power(req: &SymbolicPowerRequest) -> Result<SymbolicPower> {
    if req.n == 0 {
        return Err(Error::Precondition("symbolic power exponent must be positive".into()));
    }
    let sep = resolve_separator(&req.prime, &req.separator)?;
    let (ideal, steps) = raw_power(&req.prime, req.n, &sep)?;
    let certificate = certify(&req.prime, &ideal, &sep, steps, req.screen_level, req.seed)?;
    Ok(SymbolicPower { ideal, certificate })
}

/// Memoized symbolic powers of one prime.
pub struct SymbolicPowers {
    prime: IdealHandle,
    sep: Resolved,
    cache: HashMap<u32, IdealHandle>,
}

impl SymbolicPowers {
    pub fn new(prime: &IdealHandle, sep: &Separator) -> Result<Self> {
        Ok(SymbolicPowers {
            sep: resolve_separator(prime, sep)?,
            prime: prime.clone(),
            cache: HashMap::new(),
        })
    }

    pub fn prime(&self) -> &IdealHandle {
        &self.prime
    }

    pub fn separator(&self) -> &Resolved {
        &self.sep
    }

    /// `𝔭⁽ⁿ⁾`, with `𝔭⁽⁰⁾` the unit ideal.
    pub fn get(&mut self, n: u32) -> Result<IdealHandle> {
        if n == 0 {
            return Ok(IdealHandle::unit(self.prime.algebra()));
        }
        if let Some(i) = self.cache.get(&n) {
            return Ok(i.clone());
        }
        let (i, _) = raw_power(&self.prime, n, &self.sep)?;
        let i = IdealHandle::new(self.prime.algebra(), i.reduced_generators()?)?;
        self.cache.insert(n, i.clone());
        Ok(i)
    }

    /// `ord_𝔭(f)` capped at `nmax`; the flag is false when the cap was hit.
    pub fn order(&mut self, f: &Polynomial, nmax: u32) -> Result<(u32, bool)> {
        if self.prime.algebra().modulus_gb()?.normal_form(f)?.is_zero() {
            return Err(Error::ZeroInput("order of an element that is zero in the algebra"));
        }
        for n in 1..=nmax {
            if !self.get(n)?.contains_poly(f)? {
                return Ok((n - 1, true));
            }
        }
        Ok((nmax, false))
    }
}

/// Largest `n ≤ nmax` with `f ∈ 𝔭⁽ⁿ⁾`, and whether `f ∉ 𝔭⁽ⁿ⁺¹⁾` was confirmed.
pub fn ord_at(prime: &IdealHandle, f: &Polynomial, nmax: u32, sep: &Separator) -> Result<(u32, bool)> {
    SymbolicPowers::new(prime, sep)?.order(f, nmax)
}

/// The order of `g` along a height-one prime `Q` of a Rees presentation.
pub fn symbolic_order_along(q: &IdealHandle, g: &Polynomial, nmax: u32, sep: &Separator) -> Result<(u32, bool)> {
    let ambient = q.algebra().dimension()?;
    let quotient = q
        .quotient_dimension()?
        .ok_or_else(|| Error::Precondition("the prime is the unit ideal".into()))?;
    if ambient != quotient + 1 {
        return Err(Error::Precondition(format!(
            "expected a height-one prime, quotient dimension {quotient} in dimension {ambient}"
        )));
    }
    ord_at(q, g, nmax, sep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{double_point, poly, polynomial_ring};
    use crate::rings::{extended_rees_presentation, Assertions};

    #[test]
    fn variable_primes_have_ordinary_powers() {
        let r = polynomial_ring(&["x", "y", "z"]);
        let p = r.ideal(vec![poly(&r, "x"), poly(&r, "y")]).unwrap();
        for n in 1..=4 {
            let req = SymbolicPowerRequest::new(p.clone(), n, Separator::Auto).with_screen(2, 7);
            let sp = symbolic_power(&req).unwrap();
            assert!(sp.ideal.equals(&p.power(n)).unwrap());
            assert!(sp.certificate.is_clean(), "{:?}", sp.certificate);
        }
    }

    #[test]
    fn monomial_curve_square_is_not_symbolic() {
        let r = polynomial_ring(&["x", "y", "z"]);
        let p = r
            .ideal(vec![poly(&r, "x^3 - y*z"), poly(&r, "y^2 - x*z"), poly(&r, "z^2 - x^2*y")])
            .unwrap();
        // not homogeneous in the standard grading: auto must refuse
        assert!(resolve_separator(&p, &Separator::Auto).is_err());
        assert!(resolve_separator(&p, &Separator::Given(poly(&r, "y^2 - x*z"))).is_err());
        let req = SymbolicPowerRequest::new(p.clone(), 2, Separator::Given(poly(&r, "x"))).with_screen(1, 1);
        let sp = symbolic_power(&req).unwrap();
        let sq = p.power(2);
        assert!(sp.ideal.contains(&sq).unwrap());
        assert!(!sq.contains(&sp.ideal).unwrap());
        let one = symbolic_power(&SymbolicPowerRequest::new(p.clone(), 1, Separator::Given(poly(&r, "x")))).unwrap();
        assert!(one.ideal.equals(&p).unwrap());
    }

    #[test]
    fn orders_at_the_maximal_ideal() {
        let r = double_point();
        let m = IdealHandle::variables(&r);
        for (f, n) in [("x1", 1), ("x1*x2", 3), ("x3^2", 2)] {
            assert_eq!(ord_at(&m, &poly(&r, f), 8, &Separator::Auto).unwrap(), (n, true), "{f}");
        }
        assert!(ord_at(&m, &poly(&r, "x1*x2 + x3^3"), 3, &Separator::Auto).is_err());
    }

    #[test]
    fn orders_along_exceptional_primes() {
        let r = double_point();
        let pres = extended_rees_presentation(&r, &IdealHandle::variables(&r)).unwrap();
        let a = pres
            .algebra()
            .with_assertions(Assertions {
                domain: true,
                normal: true,
                standard_graded: false,
            })
            .unwrap();
        let (u, y1, y2) = (pres.u(), pres.y(0), pres.y(1));
        let q1 = a.ideal(vec![u.clone(), y1.clone()]).unwrap();
        let q2 = a.ideal(vec![u.clone(), y2.clone()]).unwrap();
        let g = pres.lift(&poly(&r, "x1")).unwrap();
        let s1 = Separator::Given(y2.clone());
        let s2 = Separator::Given(y1.clone());
        assert_eq!(symbolic_order_along(&q1, &g, 6, &s1).unwrap(), (2, true));
        assert_eq!(symbolic_order_along(&q2, &g, 6, &s2).unwrap(), (1, true));
        assert_eq!(symbolic_order_along(&q1, &u, 6, &s1).unwrap(), (1, true));
        assert_eq!(symbolic_order_along(&q2, &u, 6, &s2).unwrap(), (1, true));
        let m = a.ideal(vec![u, y1, y2]).unwrap();
        assert!(symbolic_order_along(&m, &g, 3, &s1).is_err());
    }

    #[test]
    fn symbolic_chain_in_the_double_point() {
        let r = double_point();
        let p = r.ideal(vec![poly(&r, "x1"), poly(&r, "x3")]).unwrap();
        let mut sp = SymbolicPowers::new(&p, &Separator::Given(poly(&r, "x2"))).unwrap();
        assert_eq!(sp.order(&poly(&r, "x3"), 6).unwrap(), (1, true));
        assert_eq!(sp.order(&poly(&r, "x1"), 6).unwrap(), (3, true));
        for n in 1..=4 {
            let a = sp.get(n).unwrap();
            assert!(a.contains(&p.power(n)).unwrap());
            assert!(sp.get(n - 1).unwrap().contains(&a).unwrap());
        }
        let prod = sp.get(1).unwrap().product(&sp.get(2).unwrap()).unwrap();
        assert!(sp.get(3).unwrap().contains(&prod).unwrap());
    }
}
