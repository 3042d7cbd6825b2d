//! Affine algebras, homogenization, extended Rees algebra presentations and
//! associated graded rings.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_in_ring, Budget, GroebnerBasis};
use crate::ideal::{eliminate_polys, IdealHandle};
use crate::poly::{same_ring, Exponent, MonomialOrder, PolyRing, Polynomial, Ring};
use crate::symbolic::{symbolic_power, Separator, SymbolicPowerRequest};

/// Hypotheses supplied by the user; nothing here is decided by the library.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Assertions {
    pub domain: bool,
    pub normal: bool,
    pub standard_graded: bool,
}

impl Assertions {
    pub fn describe(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        if self.normal {
            v.push("normal");
        }
        if self.domain {
            v.push("domain");
        }
        if self.standard_graded {
            v.push("graded");
        }
        v
    }
}

/// `k[x]/P`.
pub struct AffineAlgebra {
    ring: Ring,
    modulus: Vec<Polynomial>,
    assertions: Assertions,
    budget: Budget,
    modulus_gb: OnceLock<GroebnerBasis>,
}

pub type Algebra = Arc<AffineAlgebra>;

impl fmt::Debug for AffineAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AffineAlgebra({self})")
    }
}

impl fmt::Display for AffineAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.modulus.iter().map(|g| g.to_string()).collect();
        write!(f, "{}[{}]/({})", self.ring.field().describe(), self.ring.vars().join(","), m.join(", "))
    }
}

impl AffineAlgebra {
    /// Checks that the modulus is proper and, when graded is asserted, homogeneous.
    pub fn new(ring: &Ring, modulus: Vec<Polynomial>, assertions: Assertions, budget: Budget) -> Result<Algebra> {
        if modulus.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        let modulus: Vec<Polynomial> = modulus.into_iter().filter(|g| !g.is_zero()).collect();
        if assertions.standard_graded {
            if let Some(g) = modulus.iter().find(|g| !g.is_homogeneous()) {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        let alg = AffineAlgebra {
            ring: ring.clone(),
            modulus,
            assertions,
            budget,
            modulus_gb: OnceLock::new(),
        };
        if alg.modulus_gb()?.is_unit() {
            return Err(Error::Precondition("modulus generates the unit ideal".into()));
        }
        Ok(Arc::new(alg))
    }

    pub fn polynomial(ring: &Ring) -> Algebra {
        Arc::new(AffineAlgebra {
            ring: ring.clone(),
            modulus: Vec::new(),
            assertions: Assertions {
                domain: true,
                normal: true,
                standard_graded: true,
            },
            budget: Budget::default(),
            modulus_gb: OnceLock::new(),
        })
    }

    pub fn with_budget(&self, budget: Budget) -> Algebra {
        Arc::new(AffineAlgebra {
            ring: self.ring.clone(),
            modulus: self.modulus.clone(),
            assertions: self.assertions,
            budget,
            modulus_gb: self.modulus_gb.clone(),
        })
    }

    pub fn with_assertions(&self, assertions: Assertions) -> Result<Algebra> {
        AffineAlgebra::new(&self.ring, self.modulus.clone(), assertions, self.budget)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn modulus(&self) -> &[Polynomial] {
        &self.modulus
    }

    pub fn assertions(&self) -> Assertions {
        self.assertions
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.modulus.is_empty()
    }

    pub fn modulus_gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.modulus_gb.get() {
            return Ok(g);
        }
        let g = buchberger_in_ring(&self.ring, &self.modulus, &self.budget)?;
        Ok(self.modulus_gb.get_or_init(|| g))
    }

    /// Same ring and same modulus generators.
    pub fn same_as(&self, other: &AffineAlgebra) -> bool {
        std::ptr::eq(self, other) || (same_ring(&self.ring, &other.ring) && self.modulus == other.modulus)
    }

    pub fn ideal(self: &Arc<Self>, gens: Vec<Polynomial>) -> Result<IdealHandle> {
        IdealHandle::new(self, gens)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        crate::poly::parse_polynomial(&self.ring, text)
    }

    /// Krull dimension, from the Hilbert series of the leading-term ideal.
    pub fn dimension(&self) -> Result<usize> {
        let hs = crate::multiplicity::hilbert_series_of_exponents(
            self.ring.nvars(),
            &self.modulus_gb()?.leading_exponents(),
        );
        Ok(hs.dimension())
    }

    /// `R/(extra)`; assertions are dropped except gradedness when the
    /// new generators are homogeneous.
    pub fn quotient_by(&self, extra: &[Polynomial]) -> Result<Algebra> {
        let mut m = self.modulus.clone();
        m.extend(extra.iter().cloned());
        let graded = self.assertions.standard_graded && extra.iter().all(|f| f.is_homogeneous());
        AffineAlgebra::new(
            &self.ring,
            m,
            Assertions {
                standard_graded: graded,
                ..Default::default()
            },
            self.budget,
        )
    }

    /// True when every modulus generator has zero constant term.
    pub fn contains_origin(&self) -> bool {
        self.modulus.iter().all(|g| g.constant_term().is_zero())
    }
}

fn homogenize_poly(f: &Polynomial, target: &Ring, map: &[usize], x0: usize) -> Polynomial {
    let d = f.total_degree().unwrap_or(0);
    let terms = f.terms().iter().map(|t| {
        let mut e = vec![0u32; target.nvars()];
        for (i, &k) in t.exp.as_slice().iter().enumerate() {
            e[map[i]] += k;
        }
        e[x0] += d - t.exp.degree();
        (t.coeff.clone(), Exponent::new(e))
    });
    Polynomial::from_terms(target, terms).expect("consistent ring")
}

/// `ʰP`: homogenized generators saturated by the new variable `x0`, which
/// becomes variable 0 of a graded-reverse-lex ring.
pub fn homogenize_ideal(p: &IdealHandle, x0: &str) -> Result<IdealHandle> {
    if !p.algebra().is_polynomial_ring() {
        return Err(Error::Precondition("homogenize_ideal needs an ideal of a polynomial ring".into()));
    }
    let ring = p.ring();
    if ring.var_index(x0).is_some() {
        return Err(Error::Precondition(format!("variable {x0} already present")));
    }
    let mut names = vec![x0.to_string()];
    names.extend(ring.vars().iter().cloned());
    let target = PolyRing::new(names, ring.field(), MonomialOrder::GrevLex)?;
    let map: Vec<usize> = (1..=ring.nvars()).collect();
    let gens: Vec<Polynomial> = p.generators().iter().map(|g| homogenize_poly(g, &target, &map, 0)).collect();
    let alg = AffineAlgebra::polynomial(&target).with_budget(*p.algebra().budget());
    let h = IdealHandle::new(&alg, gens)?;
    let (sat, _) = h.saturate(&Polynomial::var(&target, 0))?;
    // minimal homogeneous generators: the reduced GB of a homogeneous ideal
    // under grevlex is homogeneous
    IdealHandle::new(&alg, sat.gb()?.generators().to_vec())
}

/// The projective closure `S = k[X0, x]/ʰP` of `R = k[x]/P`.
pub fn homogenization(r: &Algebra, x0: &str) -> Result<Algebra> {
    let base = AffineAlgebra::polynomial(r.ring()).with_budget(*r.budget());
    let p = IdealHandle::new(&base, r.modulus().to_vec())?;
    let h = homogenize_ideal(&p, x0)?;
    AffineAlgebra::new(
        h.ring(),
        h.generators().to_vec(),
        Assertions {
            standard_graded: true,
            ..r.assertions()
        },
        *r.budget(),
    )
}

/// `ᵃF`: sets variable `x0` to one and drops it, landing in `affine`, whose
/// variables must be the remaining ones in order.
pub fn dehomogenize(f: &Polynomial, x0: usize, affine: &Ring) -> Result<Polynomial> {
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous(f.to_string()));
    }
    let ring = f.ring();
    if affine.nvars() + 1 != ring.nvars() {
        return Err(Error::LengthMismatch(affine.nvars() + 1, ring.nvars()));
    }
    let mut map: Vec<usize> = (0..ring.nvars()).map(|i| if i > x0 { i - 1 } else { i }).collect();
    map[x0] = 0;
    let g = f.eval_var(x0, &ring.field().one());
    Ok(g.remap(affine, &map))
}

/// Presentation of `R[IT, T⁻¹]` on degree-one variables `y_i ↦ f_i·T` and
/// `u ↦ T⁻¹` (degree −1). When `I` is generated by the ring variables, the
/// base variables are eliminated (`x_i = u·y_i`); otherwise they are kept
/// in degree zero.
#[derive(Debug, Clone)]
pub struct ReesPresentation {
    base: Algebra,
    ideal_gens: Vec<Polynomial>,
    algebra: Algebra,
    y_vars: Vec<usize>,
    u_var: usize,
    x_vars: Vec<usize>,
    weights: Vec<i64>,
}

impl ReesPresentation {
    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn ideal_generators(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn y_vars(&self) -> &[usize] {
        &self.y_vars
    }

    pub fn u_var(&self) -> usize {
        self.u_var
    }

    pub fn u(&self) -> Polynomial {
        Polynomial::var(self.algebra.ring(), self.u_var)
    }

    pub fn y(&self, i: usize) -> Polynomial {
        Polynomial::var(self.algebra.ring(), self.y_vars[i])
    }

    /// Base variables retained in the presentation (empty when eliminated).
    pub fn x_vars(&self) -> &[usize] {
        &self.x_vars
    }

    pub fn base_variables_eliminated(&self) -> bool {
        self.x_vars.is_empty()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    /// Replaces the assertions on the presented algebra, e.g. to record that
    /// the extended Rees algebra is known to be normal.
    pub fn with_assertions(&self, assertions: Assertions) -> Result<ReesPresentation> {
        let mut out = self.clone();
        out.algebra = self.algebra.with_assertions(assertions)?;
        Ok(out)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.algebra.modulus().iter().all(|g| g.is_weighted_homogeneous(&self.weights))
    }

    /// Substitutes `y_i ↦ f_i·T`, `u ↦ T⁻¹` into every modulus generator,
    /// clears the power of `T`, and checks the result vanishes modulo `P`.
    pub fn check_substitution(&self) -> Result<bool> {
        let br = self.base.ring();
        let mut names: Vec<String> = br.vars().to_vec();
        let tname = br.fresh_name("T");
        names.push(tname);
        let ext = PolyRing::new(names, br.field(), MonomialOrder::GrevLex)?;
        let ident: Vec<usize> = (0..br.nvars()).collect();
        let t_idx = br.nvars();
        let p: Vec<Polynomial> = self.base.modulus().iter().map(|g| g.remap(&ext, &ident)).collect();
        let pgb = buchberger_in_ring(&ext, &p, self.base.budget())?;
        let fs: Vec<Polynomial> = self.ideal_gens.iter().map(|f| f.remap(&ext, &ident)).collect();
        for g in self.algebra.modulus() {
            let degs = g.weighted_degrees(&self.weights);
            let shift = degs.iter().copied().min().unwrap_or(0);
            let mut acc = Polynomial::zero(&ext);
            for (term, d) in g.terms().iter().zip(&degs) {
                let mut m = Polynomial::constant(&ext, term.coeff.clone());
                for (k, &yk) in self.y_vars.iter().enumerate() {
                    m = &m * &fs[k].pow(term.exp[yk]);
                }
                for (j, &xj) in self.x_vars.iter().enumerate() {
                    m = &m * &Polynomial::var(&ext, j).pow(term.exp[xj]);
                }
                let mut tpow = Exponent::zeros(ext.nvars()).into_vec();
                tpow[t_idx] = (d - shift) as u32;
                m = m.mul_term(&ext.field().one(), &Exponent::new(tpow));
                acc = &acc + &m;
            }
            if !pgb.normal_form(&acc)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x_i ↦ u·y_i`; only when `I` is generated by the ring variables.
    pub fn lift(&self, f: &Polynomial) -> Result<Polynomial> {
        if !self.base_variables_eliminated() {
            return Err(Error::Unsupported(
                "lifting needs the ideal generated by the ring variables; translate to the origin first".into(),
            ));
        }
        if !same_ring(f.ring(), self.base.ring()) {
            return Err(Error::RingMismatch);
        }
        let pr = self.algebra.ring();
        let u = self.u();
        let images: Vec<Polynomial> = (0..self.base.ring().nvars()).map(|i| &u * &self.y(i)).collect();
        f.substitute(pr, &images)
    }
}

/// Variables-only ideals in variable order: `(x_1, …, x_n)`.
fn is_variable_ideal(r: &Ring, gens: &[Polynomial]) -> bool {
    gens.len() == r.nvars()
        && gens.iter().enumerate().all(|(i, g)| {
            g.is_monomial() && g.leading_coeff().is_some_and(|c| c.is_one()) && *g.leading_exp().unwrap() == Exponent::unit(r.nvars(), i)
        })
}

pub fn extended_rees_presentation(r: &Algebra, i: &IdealHandle) -> Result<ReesPresentation> {
    if !i.algebra().same_as(r) {
        return Err(Error::RingMismatch);
    }
    if i.is_zero()? {
        return Err(Error::ZeroInput("extended_rees_presentation needs a nonzero ideal"));
    }
    if i.is_unit()? {
        return Err(Error::Precondition("ideal must be proper".into()));
    }
    let br = r.ring();
    let n = br.nvars();
    let fs: Vec<Polynomial> = i.generators().to_vec();
    let t = fs.len();
    let eliminate_x = is_variable_ideal(br, &fs);

    // big ring: T, x_1..x_n, y_1..y_t, u
    let mut names = vec![String::new()];
    names.extend(br.vars().iter().cloned());
    let mut taken: Vec<String> = names.clone();
    let mut fresh = |base: String| {
        let mut name = base.clone();
        let mut k = 0;
        while taken.contains(&name) {
            k += 1;
            name = format!("{base}_{k}");
        }
        taken.push(name.clone());
        name
    };
    let tname = fresh("T".into());
    names[0] = tname;
    let ynames: Vec<String> = (1..=t).map(|k| fresh(format!("y{k}"))).collect();
    let uname = fresh("u".into());
    names.extend(ynames.iter().cloned());
    names.push(uname.clone());
    let big = PolyRing::new(names.clone(), br.field(), MonomialOrder::GrevLex)?;
    let to_big: Vec<usize> = (1..=n).collect();
    let tv = Polynomial::var(&big, 0);
    let uv = Polynomial::var(&big, 1 + n + t);
    let mut gens: Vec<Polynomial> = r.modulus().iter().map(|g| g.remap(&big, &to_big)).collect();
    for (k, f) in fs.iter().enumerate() {
        let yk = Polynomial::var(&big, 1 + n + k);
        gens.push(&yk - &(&f.remap(&big, &to_big) * &tv));
    }
    gens.push(&(&uv * &tv) - &Polynomial::one(&big));

    let drop: Vec<usize> = if eliminate_x { (0..=n).collect() } else { vec![0] };
    let kernel = eliminate_polys(&big, &gens, &drop, r.budget())?;

    let keep: Vec<usize> = (0..big.nvars()).filter(|v| !drop.contains(v)).collect();
    let pres_ring = PolyRing::new(keep.iter().map(|&v| names[v].clone()), br.field(), MonomialOrder::GrevLex)?;
    let mut map = vec![0usize; big.nvars()];
    for (j, &v) in keep.iter().enumerate() {
        map[v] = j;
    }
    let modulus: Vec<Polynomial> = kernel.iter().map(|g| g.remap(&pres_ring, &map)).collect();
    let x_vars: Vec<usize> = if eliminate_x { vec![] } else { (0..n).collect() };
    let offset = if eliminate_x { 0 } else { n };
    let y_vars: Vec<usize> = (offset..offset + t).collect();
    let u_var = offset + t;
    let mut weights = vec![0i64; pres_ring.nvars()];
    for &y in &y_vars {
        weights[y] = 1;
    }
    weights[u_var] = -1;
    let algebra = AffineAlgebra::new(
        &pres_ring,
        modulus,
        Assertions {
            domain: r.assertions().domain,
            ..Default::default()
        },
        *r.budget(),
    )?;
    Ok(ReesPresentation {
        base: r.clone(),
        ideal_gens: fs,
        algebra,
        y_vars,
        u_var,
        x_vars,
        weights,
    })
}

/// `Gr_I(R)`: the presentation modulo `u`.
pub fn associated_graded(pres: &ReesPresentation) -> Result<Algebra> {
    let pr = pres.algebra.ring();
    let u = pres.u_var;
    let keep: Vec<usize> = (0..pr.nvars()).filter(|&v| v != u).collect();
    let ring = PolyRing::new(keep.iter().map(|&v| pr.vars()[v].clone()), pr.field(), MonomialOrder::GrevLex)?;
    let mut map = vec![0usize; pr.nvars()];
    for (j, &v) in keep.iter().enumerate() {
        map[v] = j;
    }
    let zero = pr.field().zero();
    let modulus: Vec<Polynomial> = pres
        .algebra
        .modulus()
        .iter()
        .map(|g| g.eval_var(u, &zero).remap(&ring, &map))
        .collect();
    AffineAlgebra::new(
        &ring,
        modulus,
        Assertions {
            standard_graded: pres.base_variables_eliminated(),
            ..Default::default()
        },
        *pres.algebra.budget(),
    )
}

/// Candidate exceptional primes `Q_i` of a normal extended Rees algebra with
/// their values `ν_i(I)`. Each prime may carry a separator for its symbolic
/// powers.
#[derive(Debug, Clone)]
pub struct ExceptionalPrimeCertificate {
    pub primes: Vec<IdealHandle>,
    pub multiplicities: Vec<u32>,
    pub separators: Vec<Separator>,
}

impl ExceptionalPrimeCertificate {
    pub fn new(primes: Vec<IdealHandle>, multiplicities: Vec<u32>, separators: Vec<Separator>) -> Result<Self> {
        if primes.len() != multiplicities.len() || primes.len() != separators.len() {
            return Err(Error::LengthMismatch(primes.len(), multiplicities.len()));
        }
        Ok(ExceptionalPrimeCertificate {
            primes,
            multiplicities,
            separators,
        })
    }
}

/// True iff `∩ Q_i^(ν_i) = (u)` and `u ∈ Q_i` for every `i`. Failures of the
/// symbolic-power computations surface as [`Error::SymbolicPower`].
pub fn verify_exceptional_certificate(pres: &ReesPresentation, cert: &ExceptionalPrimeCertificate) -> Result<bool> {
    let alg = pres.algebra();
    if !alg.assertions().normal {
        return Err(Error::Precondition("the presentation must carry a normality assertion".into()));
    }
    if cert.primes.is_empty() {
        return Ok(false);
    }
    let u = pres.u();
    for q in &cert.primes {
        if !q.algebra().same_as(alg) {
            return Err(Error::RingMismatch);
        }
        if !q.contains_poly(&u)? {
            return Ok(false);
        }
    }
    let mut meet: Option<IdealHandle> = None;
    for ((q, &nu), sep) in cert.primes.iter().zip(&cert.multiplicities).zip(&cert.separators) {
        let req = SymbolicPowerRequest::new(q.clone(), nu, sep.clone());
        let sp = symbolic_power(&req).map_err(|e| Error::SymbolicPower(e.to_string()))?;
        meet = Some(match meet {
            None => sp.ideal,
            Some(m) => m.intersect(&sp.ideal)?,
        });
    }
    let principal = IdealHandle::new(alg, vec![u])?;
    meet.expect("nonempty").equals(&principal)
}

/// Checks that the kernel of `k[X0, z] → S[X1/X0, …, Xn/X0]`, `z_i ↦ X_i/X0`,
/// equals the extension of `P`, i.e. the chart is `R[X0]`.
pub fn check_projective_closure_iso(r: &Algebra, s: &Algebra) -> Result<bool> {
    let rr = r.ring();
    let sr = s.ring();
    let extra: Vec<usize> = (0..sr.nvars()).filter(|&i| rr.var_index(&sr.vars()[i]).is_none()).collect();
    if extra.len() != 1 || sr.nvars() != rr.nvars() + 1 {
        return Err(Error::Precondition("S must have the variables of R plus one homogenizing variable".into()));
    }
    let x0 = extra[0];
    // big ring: X_1..X_n, w | X0, z_1..z_n
    let n = rr.nvars();
    let mut names: Vec<String> = rr.vars().to_vec();
    let all: Vec<String> = sr.vars().to_vec();
    let fresh = |base: &str, taken: &mut Vec<String>| {
        let mut name = base.to_string();
        let mut k = 0;
        while taken.contains(&name) {
            k += 1;
            name = format!("{base}_{k}");
        }
        taken.push(name.clone());
        name
    };
    let mut taken = all.clone();
    let w = fresh("w", &mut taken);
    names.push(w);
    names.push(sr.vars()[x0].clone());
    let znames: Vec<String> = rr.vars().iter().map(|v| fresh(&format!("z{v}"), &mut taken)).collect();
    names.extend(znames.iter().cloned());
    let big = PolyRing::new(names.clone(), rr.field(), MonomialOrder::Block(n + 1))?;
    // S variables into big
    let s_map: Vec<usize> = (0..sr.nvars())
        .map(|i| if i == x0 { n + 1 } else { rr.var_index(&sr.vars()[i]).unwrap() })
        .collect();
    let mut gens: Vec<Polynomial> = s.modulus().iter().map(|g| g.remap(&big, &s_map)).collect();
    let x0v = Polynomial::var(&big, n + 1);
    for i in 0..n {
        let z = Polynomial::var(&big, n + 2 + i);
        gens.push(&(&x0v * &z) - &Polynomial::var(&big, i));
    }
    gens.push(&(&Polynomial::var(&big, n) * &x0v) - &Polynomial::one(&big));
    let gb = buchberger_in_ring(&big, &gens, s.budget())?;

    let chart = PolyRing::new(names[n + 1..].to_vec(), rr.field(), MonomialOrder::GrevLex)?;
    let mut back = vec![0usize; big.nvars()];
    for (j, slot) in back.iter_mut().enumerate().skip(n + 1) {
        *slot = j - (n + 1);
    }
    let kernel: Vec<Polynomial> = gb
        .generators()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v > n))
        .map(|g| g.remap(&chart, &back))
        .collect();
    let z_map: Vec<usize> = (1..=n).collect();
    let extended: Vec<Polynomial> = r.modulus().iter().map(|g| g.remap(&chart, &z_map)).collect();
    let chart_alg = AffineAlgebra::polynomial(&chart).with_budget(*s.budget());
    let k = IdealHandle::new(&chart_alg, kernel)?;
    let e = IdealHandle::new(&chart_alg, extended)?;
    k.equals(&e)
}

/// Affine change of coordinates `x_i ↦ x_i + a_i`, moving `point` to the
/// origin. Returns the translated algebra.
pub fn translate_to_origin(r: &Algebra, point: &[crate::poly::Coefficient]) -> Result<Algebra> {
    let ring = r.ring();
    let images = translation_images(ring, point)?;
    let modulus = r
        .modulus()
        .iter()
        .map(|g| g.substitute(ring, &images))
        .collect::<Result<Vec<_>>>()?;
    let graded = r.assertions().standard_graded && modulus.iter().all(|g| g.is_homogeneous());
    AffineAlgebra::new(
        ring,
        modulus,
        Assertions {
            standard_graded: graded,
            ..r.assertions()
        },
        *r.budget(),
    )
}

/// Images `x_i + a_i` of the variables under translation by `point`.
pub fn translation_images(ring: &Ring, point: &[crate::poly::Coefficient]) -> Result<Vec<Polynomial>> {
    if point.len() != ring.nvars() {
        return Err(Error::LengthMismatch(point.len(), ring.nvars()));
    }
    Ok((0..ring.nvars())
        .map(|i| &Polynomial::var(ring, i) + &Polynomial::constant(ring, point[i].clone()))
        .collect())
}
