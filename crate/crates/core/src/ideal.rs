//! Ideal arithmetic on top of the Gröbner engine.
//!
//! Every operation here runs in the ambient polynomial ring of an
//! [`AffineAlgebra`]: a handle with generators `g` over an algebra with
//! modulus `P` denotes `(g + P)/P`, and all Gröbner bases include `P`.
//! Intersections, kernels and eliminations share a single mechanism, the
//! block elimination order with the dropped variables greatest.

use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{buchberger_in_ring, Budget, GroebnerBasis};
use crate::poly::{same_ring, MonomialOrder, PolyRing, Polynomial, Ring};
use crate::rings::{AffineAlgebra, Algebra};

#[derive(Clone)]
pub struct IdealHandle {
    algebra: Algebra,
    gens: Vec<Polynomial>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealHandle({self})")
    }
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl IdealHandle {
    pub fn new(algebra: &Algebra, gens: Vec<Polynomial>) -> Result<Self> {
        if gens.iter().any(|g| !same_ring(g.ring(), algebra.ring())) {
            return Err(Error::RingMismatch);
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(IdealHandle {
            algebra: algebra.clone(),
            gens,
            gb: OnceLock::new(),
        })
    }

    pub fn unit(algebra: &Algebra) -> Self {
        IdealHandle::new(algebra, vec![Polynomial::one(algebra.ring())]).expect("same ring")
    }

    pub fn zero(algebra: &Algebra) -> Self {
        IdealHandle::new(algebra, vec![]).expect("same ring")
    }

    /// The ideal generated by all ring variables.
    pub fn variables(algebra: &Algebra) -> Self {
        let r = algebra.ring();
        IdealHandle::new(algebra, (0..r.nvars()).map(|i| Polynomial::var(r, i)).collect()).expect("same ring")
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn ring(&self) -> &Ring {
        self.algebra.ring()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    fn budget(&self) -> &Budget {
        self.algebra.budget()
    }

    /// Generators together with the modulus, as a list in the ambient ring.
    pub fn ambient_generators(&self) -> Vec<Polynomial> {
        let mut v = self.gens.clone();
        v.extend(self.algebra.modulus().iter().cloned());
        v
    }

    fn check_same(&self, other: &IdealHandle) -> Result<()> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_poly(&self, f: &Polynomial) -> Result<()> {
        if same_ring(f.ring(), self.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis of generators plus modulus (computed once).
    pub fn gb(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let g = buchberger_in_ring(self.ring(), &self.ambient_generators(), self.budget())?;
        Ok(self.gb.get_or_init(|| g))
    }

    /// Reduced GB elements that are nonzero in the algebra.
    pub fn reduced_generators(&self) -> Result<Vec<Polynomial>> {
        let p = self.algebra.modulus_gb()?;
        let mut out = Vec::new();
        for g in self.gb()?.generators() {
            if !p.normal_form(g)?.is_zero() {
                out.push(g.clone());
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_poly(f)?;
        self.gb()?.normal_form(f)
    }

    pub fn contains_poly(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &IdealHandle) -> Result<bool> {
        self.check_same(other)?;
        for g in &other.gens {
            if !self.contains_poly(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// First generator of `other` outside `self`, if any.
    pub fn first_outside(&self, other: &IdealHandle) -> Result<Option<Polynomial>> {
        self.check_same(other)?;
        for g in &other.gens {
            if !self.contains_poly(g)? {
                return Ok(Some(g.clone()));
            }
        }
        Ok(None)
    }

    /// Ideal equality by double containment.
    pub fn equals(&self, other: &IdealHandle) -> Result<bool> {
        Ok(self.contains(other)? && other.contains(self)?)
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.gb()?.is_unit())
    }

    /// True when every generator vanishes in the algebra.
    pub fn is_zero(&self) -> Result<bool> {
        let p = self.algebra.modulus_gb()?;
        for g in &self.gens {
            if !p.normal_form(g)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Krull dimension of the quotient algebra by this ideal.
    pub fn quotient_dimension(&self) -> Result<Option<usize>> {
        let gb = self.gb()?;
        if gb.is_unit() {
            return Ok(None);
        }
        let hs = crate::multiplicity::hilbert_series_of_exponents(self.ring().nvars(), &gb.leading_exponents());
        Ok(Some(hs.dimension()))
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        IdealHandle::new(&self.algebra, g)
    }

    pub fn add_generators(&self, extra: &[Polynomial]) -> Result<IdealHandle> {
        let mut g = self.gens.clone();
        g.extend(extra.iter().cloned());
        IdealHandle::new(&self.algebra, g)
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                let p = (a * b).monic();
                if !p.is_zero() && seen.insert(p.clone()) {
                    out.push(p);
                }
            }
        }
        IdealHandle::new(&self.algebra, out)
    }

    /// `I^n`; generated by the n-fold products of generators. `I^0` is the unit ideal.
    pub fn power(&self, n: u32) -> IdealHandle {
        let mut acc = IdealHandle::unit(&self.algebra);
        for _ in 0..n {
            acc = acc.product(self).expect("same algebra");
        }
        acc
    }

    /// `I ∩ J` through `t·I + (1−t)·J` with `t` eliminated.
    pub fn intersect(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let gens = intersect_polys(self.ring(), &self.ambient_generators(), &other.ambient_generators(), self.budget())?;
        IdealHandle::new(&self.algebra, gens)
    }

    /// `(I : f) = { g : g·f ∈ I }`.
    pub fn quotient(&self, f: &Polynomial) -> Result<IdealHandle> {
        self.check_poly(f)?;
        if self.algebra.modulus_gb()?.normal_form(f)?.is_zero() {
            return Err(Error::ZeroInput("quotient by an element that is zero in the algebra"));
        }
        let meet = intersect_polys(self.ring(), &self.ambient_generators(), std::slice::from_ref(f), self.budget())?;
        let mut gens = Vec::with_capacity(meet.len());
        for g in meet {
            let q = g
                .exact_div(f)?
                .ok_or_else(|| Error::Precondition("intersection with (f) not divisible by f".into()))?;
            gens.push(q);
        }
        IdealHandle::new(&self.algebra, gens)
    }

    /// `(I : J)`, the intersection of `(I : g)` over generators of `J`.
    pub fn quotient_ideal(&self, other: &IdealHandle) -> Result<IdealHandle> {
        self.check_same(other)?;
        let p = self.algebra.modulus_gb()?;
        let mut acc = IdealHandle::unit(&self.algebra);
        for g in &other.gens {
            if p.normal_form(g)?.is_zero() {
                continue;
            }
            acc = acc.intersect(&self.quotient(g)?)?;
        }
        Ok(acc)
    }

    /// `(I : f^∞)` by repeated quotients; also returns the number of
    /// quotient steps after which the chain stabilized.
    pub fn saturate(&self, f: &Polynomial) -> Result<(IdealHandle, u32)> {
        let mut cur = self.clone();
        let mut k = 0u32;
        loop {
            let next = cur.quotient(f)?;
            // cur ⊆ next always holds
            if cur.contains(&next)? {
                return Ok((cur, k));
            }
            cur = next;
            k += 1;
        }
    }

    /// `(I + P) ∩ k[remaining variables]`, returned over the polynomial
    /// algebra on the remaining variables.
    pub fn eliminate(&self, drop: &[usize]) -> Result<IdealHandle> {
        let ring = self.ring();
        if drop.iter().any(|&i| i >= ring.nvars()) {
            return Err(Error::Precondition("variable index out of range".into()));
        }
        let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !drop.contains(i)).collect();
        let elim = eliminate_polys(ring, &self.ambient_generators(), drop, self.budget())?;
        let sub = PolyRing::new(keep.iter().map(|&i| ring.vars()[i].clone()), ring.field(), restrict_order(ring.order()))?;
        let mut map = vec![0usize; ring.nvars()];
        for (j, &i) in keep.iter().enumerate() {
            map[i] = j;
        }
        let gens = elim.iter().map(|g| g.remap(&sub, &map)).collect();
        let alg = AffineAlgebra::polynomial(&sub).with_budget(*self.budget());
        IdealHandle::new(&alg, gens)
    }

    /// Membership of `f` in the radical, via `1 ∈ (I, 1 − t·f)`.
    pub fn radical_membership(&self, f: &Polynomial) -> Result<bool> {
        self.check_poly(f)?;
        if f.is_zero() {
            return Err(Error::ZeroInput("radical_membership"));
        }
        let ring = self.ring();
        let (ext, map) = prepend_var(ring, "t", MonomialOrder::GrevLex)?;
        let t = Polynomial::var(&ext, 0);
        let mut gens: Vec<Polynomial> = self.ambient_generators().iter().map(|g| g.remap(&ext, &map)).collect();
        let tf = &t * &f.remap(&ext, &map);
        gens.push(&Polynomial::one(&ext) - &tf);
        Ok(buchberger_in_ring(&ext, &gens, self.budget())?.is_unit())
    }

    /// Image under a ring map of the ambient ring into another algebra.
    pub fn map_to(&self, target: &Algebra, images: &[Polynomial]) -> Result<IdealHandle> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(target.ring(), images))
            .collect::<Result<Vec<_>>>()?;
        IdealHandle::new(target, gens)
    }

    /// Same generators over a different algebra on the same ring.
    pub fn rebase(&self, target: &Algebra) -> Result<IdealHandle> {
        IdealHandle::new(target, self.gens.clone())
    }
}

/// Kernel of `k[source] → target`, `x_i ↦ images[i]`, via the graph ideal
/// `(x_i − images[i]) + modulus` with the target variables eliminated.
pub fn kernel_of_map(source: &Ring, target: &Algebra, images: &[Polynomial]) -> Result<IdealHandle> {
    if images.len() != source.nvars() {
        return Err(Error::LengthMismatch(images.len(), source.nvars()));
    }
    if images.iter().any(|p| !same_ring(p.ring(), target.ring())) || source.field() != target.ring().field() {
        return Err(Error::RingMismatch);
    }
    let tr = target.ring();
    // target variables first so they can be dropped as a block
    let mut names: Vec<String> = tr.vars().to_vec();
    let mut src_map = Vec::with_capacity(source.nvars());
    for v in source.vars() {
        let name = if names.contains(v) {
            let fresh = fresh_among(&names, v);
            names.push(fresh);
            names.len() - 1
        } else {
            names.push(v.clone());
            names.len() - 1
        };
        src_map.push(name);
    }
    let big = PolyRing::new(names, tr.field(), MonomialOrder::Block(tr.nvars()))?;
    let tmap: Vec<usize> = (0..tr.nvars()).collect();
    let mut gens: Vec<Polynomial> = target.modulus().iter().map(|g| g.remap(&big, &tmap)).collect();
    for (i, img) in images.iter().enumerate() {
        let xi = Polynomial::var(&big, src_map[i]);
        gens.push(&xi - &img.remap(&big, &tmap));
    }
    let gb = buchberger_in_ring(&big, &gens, target.budget())?;
    let n = tr.nvars();
    let mut back = vec![0usize; big.nvars()];
    for (i, &k) in src_map.iter().enumerate() {
        back[k] = i;
    }
    let kernel: Vec<Polynomial> = gb
        .generators()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= n))
        .map(|g| g.remap(source, &back))
        .collect();
    let alg = AffineAlgebra::polynomial(source).with_budget(*target.budget());
    IdealHandle::new(&alg, kernel)
}

fn fresh_among(names: &[String], base: &str) -> String {
    let mut k = 1;
    loop {
        let cand = format!("{base}_{k}");
        if !names.contains(&cand) {
            return cand;
        }
        k += 1;
    }
}

fn restrict_order(order: &MonomialOrder) -> MonomialOrder {
    match order {
        MonomialOrder::Lex => MonomialOrder::Lex,
        _ => MonomialOrder::GrevLex,
    }
}

/// New ring with one extra variable (named from `base`) in front.
pub(crate) fn prepend_var(ring: &Ring, base: &str, order: MonomialOrder) -> Result<(Ring, Vec<usize>)> {
    let name = ring.fresh_name(base);
    let mut names = vec![name];
    names.extend(ring.vars().iter().cloned());
    let ext = PolyRing::new(names, ring.field(), order)?;
    let map = (1..=ring.nvars()).collect();
    Ok((ext, map))
}

/// Generators of `(gens) ∩ k[variables not in drop]`, expressed in `ring`.
pub fn eliminate_polys(ring: &Ring, gens: &[Polynomial], drop: &[usize], budget: &Budget) -> Result<Vec<Polynomial>> {
    if drop.is_empty() {
        return Ok(buchberger_in_ring(ring, gens, budget)?.into_generators());
    }
    let keep: Vec<usize> = (0..ring.nvars()).filter(|i| !drop.contains(i)).collect();
    let perm: Vec<usize> = drop.iter().chain(keep.iter()).copied().collect();
    let names: Vec<String> = perm.iter().map(|&i| ring.vars()[i].clone()).collect();
    let big = PolyRing::new(names, ring.field(), MonomialOrder::Block(drop.len()))?;
    let mut to_big = vec![0usize; ring.nvars()];
    for (j, &i) in perm.iter().enumerate() {
        to_big[i] = j;
    }
    let moved: Vec<Polynomial> = gens.iter().map(|g| g.remap(&big, &to_big)).collect();
    let gb = buchberger_in_ring(&big, &moved, budget)?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.support_vars().iter().all(|&v| v >= drop.len()))
        .map(|g| g.remap(ring, &perm))
        .collect())
}

/// Generators of `(a) ∩ (b)` in the polynomial ring `ring`.
pub fn intersect_polys(ring: &Ring, a: &[Polynomial], b: &[Polynomial], budget: &Budget) -> Result<Vec<Polynomial>> {
    let (ext, map) = prepend_var(ring, "t", MonomialOrder::Block(1))?;
    let t = Polynomial::var(&ext, 0);
    let one_minus_t = &Polynomial::one(&ext) - &t;
    let mut gens = Vec::with_capacity(a.len() + b.len());
    gens.extend(a.iter().map(|g| &t * &g.remap(&ext, &map)));
    gens.extend(b.iter().map(|g| &one_minus_t * &g.remap(&ext, &map)));
    let gb = buchberger_in_ring(&ext, &gens, budget)?;
    let back: Vec<usize> = std::iter::once(0).chain(0..ring.nvars()).collect();
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.degree_in(0) == 0)
        .map(|g| g.remap(ring, &back))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, Field};

    fn alg(vars: &[&str]) -> Algebra {
        let r = PolyRing::new(vars.iter().copied(), Field::Rational, MonomialOrder::GrevLex).unwrap();
        AffineAlgebra::polynomial(&r)
    }

    fn ideal(a: &Algebra, gens: &[&str]) -> IdealHandle {
        IdealHandle::new(a, gens.iter().map(|s| parse_polynomial(a.ring(), s).unwrap()).collect()).unwrap()
    }

    fn p(a: &Algebra, s: &str) -> Polynomial {
        parse_polynomial(a.ring(), s).unwrap()
    }

    #[test]
    fn powers() {
        let a = alg(&["x", "y"]);
        let m = ideal(&a, &["x", "y"]);
        assert!(m.power(2).equals(&ideal(&a, &["x^2", "x*y", "y^2"])).unwrap());
        assert!(m.power(1).equals(&m).unwrap());
        assert!(m.power(0).is_unit().unwrap());
        assert!(ideal(&a, &["x"]).power(3).equals(&ideal(&a, &["x^3"])).unwrap());
    }

    #[test]
    fn intersections() {
        let a = alg(&["x", "y"]);
        let i = ideal(&a, &["x"]).intersect(&ideal(&a, &["y"])).unwrap();
        assert!(i.equals(&ideal(&a, &["x*y"])).unwrap());
        let j = ideal(&a, &["x^2", "y"]);
        assert!(j.intersect(&IdealHandle::unit(&a)).unwrap().equals(&j).unwrap());
        let k = j.intersect(&ideal(&a, &["x"])).unwrap();
        assert!(k.equals(&ideal(&a, &["x^2", "x*y"])).unwrap());
    }

    #[test]
    fn quotients() {
        let a = alg(&["x", "y"]);
        assert!(ideal(&a, &["x*y"]).quotient(&p(&a, "x")).unwrap().equals(&ideal(&a, &["y"])).unwrap());
        let i = ideal(&a, &["x^2", "x*y"]);
        assert!(i.quotient(&p(&a, "1")).unwrap().equals(&i).unwrap());
        assert!(i.quotient(&p(&a, "x")).unwrap().equals(&ideal(&a, &["x", "y"])).unwrap());
        assert_eq!(i.quotient(&Polynomial::zero(a.ring())).unwrap_err(), Error::ZeroInput("quotient by an element that is zero in the algebra"));
    }

    #[test]
    fn saturations() {
        let a = alg(&["x", "y", "z"]);
        let (s, k) = ideal(&a, &["x^2*y", "x*z"]).saturate(&p(&a, "x")).unwrap();
        assert!(s.equals(&ideal(&a, &["y", "z"])).unwrap());
        assert_eq!(k, 2);
        let i = ideal(&a, &["x^2*y + z", "y*z"]);
        let (s, k) = i.saturate(&p(&a, "1")).unwrap();
        assert!(s.equals(&i).unwrap());
        assert_eq!(k, 0);
        let (s, k) = ideal(&a, &["x^2"]).saturate(&p(&a, "y")).unwrap();
        assert!(s.equals(&ideal(&a, &["x^2"])).unwrap());
        assert_eq!(k, 0);
    }

    #[test]
    fn eliminations() {
        let a = alg(&["x", "y", "z"]);
        let e = ideal(&a, &["y - x^2", "z - x^3"]).eliminate(&[0]).unwrap();
        let expect = ideal(e.algebra(), &["y^3 - z^2"]);
        assert!(e.equals(&expect).unwrap());
        for g in e.generators() {
            assert!(g.ring().var_index("x").is_none());
        }
        let i = ideal(&a, &["x*y - z"]);
        let same = i.eliminate(&[]).unwrap();
        assert_eq!(same.generators().len(), 1);

        let b = alg(&["t", "x", "y", "z"]);
        let e = ideal(&b, &["x - t^3", "y - t^4", "z - t^5"]).eliminate(&[0]).unwrap();
        let expect = ideal(e.algebra(), &["y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"]);
        assert!(e.equals(&expect).unwrap());
    }

    #[test]
    fn kernels() {
        let src = PolyRing::new(["x", "y", "z"], Field::Rational, MonomialOrder::GrevLex).unwrap();
        let t = alg(&["t"]);
        let k = kernel_of_map(&src, &t, &[p(&t, "t^3"), p(&t, "t^4"), p(&t, "t^5")]).unwrap();
        let expect = ideal(k.algebra(), &["y^2 - x*z", "z^2 - x^2*y", "y*z - x^3"]);
        assert!(k.equals(&expect).unwrap());
        for g in k.generators() {
            let img = g.substitute(t.ring(), &[p(&t, "t^3"), p(&t, "t^4"), p(&t, "t^5")]).unwrap();
            assert!(img.is_zero());
        }

        let xy = alg(&["x", "y"]);
        let id = kernel_of_map(xy.ring(), &xy, &[p(&xy, "x"), p(&xy, "y")]).unwrap();
        assert!(id.is_zero().unwrap());
        let src2 = PolyRing::new(["x", "y"], Field::Rational, MonomialOrder::GrevLex).unwrap();
        let k = kernel_of_map(&src2, &t, &[p(&t, "t^2"), p(&t, "t^2")]).unwrap();
        assert!(k.equals(&ideal(k.algebra(), &["x - y"])).unwrap());
    }

    #[test]
    fn radicals() {
        let a = alg(&["x", "y"]);
        assert!(ideal(&a, &["x^2"]).radical_membership(&p(&a, "x")).unwrap());
        assert!(!ideal(&a, &["x^2"]).radical_membership(&p(&a, "y")).unwrap());
        assert!(ideal(&a, &["x^3 + 3*x^2*y + 3*x*y^2 + y^3", "x^2"])
            .radical_membership(&p(&a, "x + y"))
            .unwrap());
    }
}
