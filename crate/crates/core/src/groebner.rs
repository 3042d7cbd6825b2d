//! Buchberger's algorithm, multivariate division and reduced Gröbner bases.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{same_ring, Exponent, MonomialOrder, Polynomial, Ring};

/// Caps on reduction work. Exceeding either produces [`Error::Budget`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_steps: u64,
    pub max_pairs: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_steps: 1_000_000,
            max_pairs: 200_000,
        }
    }
}

struct Meter<'a> {
    budget: &'a Budget,
    steps: u64,
    pairs: u64,
}

impl<'a> Meter<'a> {
    fn new(budget: &'a Budget) -> Self {
        Meter {
            budget,
            steps: 0,
            pairs: 0,
        }
    }

    fn step(&mut self) -> Result<()> {
        self.steps += 1;
        self.check()
    }

    fn pair(&mut self) -> Result<()> {
        self.pairs += 1;
        self.check()
    }

    fn check(&self) -> Result<()> {
        if self.steps > self.budget.max_steps || self.pairs > self.budget.max_pairs {
            Err(Error::Budget {
                steps: self.steps,
                pairs: self.pairs,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    generators: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn into_generators(self) -> Vec<Polynomial> {
        self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn leading_exponents(&self) -> Vec<Exponent> {
        self.generators.iter().filter_map(|g| g.leading_exp().cloned()).collect()
    }

    /// True when the basis generates the unit ideal.
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| !g.is_zero() && g.is_constant())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, self)
    }

    pub fn contains(&self, polys: &[Polynomial]) -> Result<bool> {
        contains(self, polys)
    }
}

fn check_order(ring: &Ring) -> Result<()> {
    if ring.order().is_global() {
        Ok(())
    } else {
        Err(Error::NonPositiveWeight)
    }
}

/// Remainder of `f` on division by `g`; the result has no term divisible by
/// a leading term of `g`.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    normal_form_with(f, g, &mut |c: &[usize]| c[0])
}

/// Division with a caller-chosen reducer among the admissible candidates.
/// `select` receives the indices (into `g.generators()`) whose leading term
/// divides the current term and returns one of them.
pub fn normal_form_with(
    f: &Polynomial,
    g: &GroebnerBasis,
    select: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Polynomial> {
    if !same_ring(f.ring(), &g.ring) {
        return Err(Error::RingMismatch);
    }
    check_order(&g.ring)?;
    let budget = Budget {
        max_steps: u64::MAX,
        max_pairs: u64::MAX,
    };
    let mut meter = Meter::new(&budget);
    reduce_with(f, &g.generators, &mut meter, select)
}

fn reduce(f: &Polynomial, basis: &[Polynomial], meter: &mut Meter) -> Result<Polynomial> {
    reduce_with(f, basis, meter, &mut |c: &[usize]| c[0])
}

fn reduce_with(
    f: &Polynomial,
    basis: &[Polynomial],
    meter: &mut Meter,
    select: &mut dyn FnMut(&[usize]) -> usize,
) -> Result<Polynomial> {
    let ring = f.ring();
    let leads: Vec<Option<&Exponent>> = basis.iter().map(|b| b.leading_exp()).collect();
    let mut p = f.clone();
    let mut rest = Vec::new();
    let mut candidates = Vec::new();
    while let Some(t) = p.leading_term() {
        candidates.clear();
        candidates.extend(
            leads
                .iter()
                .enumerate()
                .filter(|(_, l)| l.is_some_and(|l| l.divides(&t.exp)))
                .map(|(i, _)| i),
        );
        if candidates.is_empty() {
            rest.push(p.pop_leading().expect("nonzero"));
            continue;
        }
        let k = select(&candidates);
        debug_assert!(candidates.contains(&k));
        let b = &basis[k];
        let lb = b.leading_term().expect("nonzero reducer");
        let m = t.exp.div(&lb.exp).expect("divisible");
        let c = -&(&t.coeff / &lb.coeff);
        p = p.add_scaled(&c, &m, b);
        meter.step()?;
    }
    Ok(Polynomial::from_sorted_unchecked(ring, rest))
}

pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (tf, tg) = (f.leading_term().expect("nonzero"), g.leading_term().expect("nonzero"));
    let l = tf.exp.lcm(&tg.exp);
    let a = f.mul_term(&tf.coeff.inv(), &l.div(&tf.exp).expect("lcm"));
    let b = g.mul_term(&tg.coeff.inv(), &l.div(&tg.exp).expect("lcm"));
    &a - &b
}

/// Reduced Gröbner basis of the ideal generated by `gens`, in the order of
/// their common ring. Pairs are processed by smallest lcm degree, ties broken
/// lexicographically on pair indices; the coprime and chain criteria prune.
pub fn buchberger(gens: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis> {
    let ring = gens
        .first()
        .map(|g| g.ring().clone())
        .ok_or_else(|| Error::Precondition("buchberger needs a ring; pass at least one generator".into()))?;
    buchberger_in_ring(&ring, gens, budget)
}

/// As [`buchberger`], with the ring given explicitly (allows an empty list).
pub fn buchberger_in_ring(ring: &Ring, gens: &[Polynomial], budget: &Budget) -> Result<GroebnerBasis> {
    if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
        return Err(Error::RingMismatch);
    }
    check_order(ring)?;
    let mut meter = Meter::new(budget);
    let mut basis: Vec<Polynomial> = Vec::new();
    for g in gens {
        let h = reduce(g, &basis, &mut meter)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        basis.push(h.monic());
    }

    let lcm_deg = |basis: &[Polynomial], i: usize, j: usize| {
        basis[i]
            .leading_exp()
            .unwrap()
            .lcm(basis[j].leading_exp().unwrap())
            .degree()
    };
    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    let mut pending: HashSet<(usize, usize)> = HashSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            queue.insert((lcm_deg(&basis, i, j), i, j));
            pending.insert((i, j));
        }
    }

    while let Some((_, i, j)) = queue.pop_first() {
        pending.remove(&(i, j));
        meter.pair()?;
        let (li, lj) = (basis[i].leading_exp().unwrap(), basis[j].leading_exp().unwrap());
        if li.is_coprime(lj) {
            continue;
        }
        let l = li.lcm(lj);
        let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].leading_exp().unwrap().divides(&l)
                && !pending.contains(&key(i, k))
                && !pending.contains(&key(j, k))
        });
        if chain {
            continue;
        }
        let h = reduce(&s_polynomial(&basis[i], &basis[j]), &basis, &mut meter)?;
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(ring));
        }
        basis.push(h.monic());
        let k = basis.len() - 1;
        for i in 0..k {
            queue.insert((lcm_deg(&basis, i, k), i, k));
            pending.insert((i, k));
        }
    }
    Ok(reduce_basis(ring, basis, &mut meter)?)
}

fn unit_basis(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        generators: vec![Polynomial::one(ring)],
        reduced: true,
    }
}

/// Minimalizes, interreduces and normalizes a Gröbner basis.
fn reduce_basis(ring: &Ring, basis: Vec<Polynomial>, meter: &mut Meter) -> Result<GroebnerBasis> {
    let mut minimal: Vec<Polynomial> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading_exp().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading_exp().unwrap();
            j != i && lh.divides(lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, h)| h.clone())
            .collect();
        let g = &minimal[i];
        let head = Polynomial::monomial(ring, g.leading_coeff().unwrap().clone(), g.leading_exp().unwrap().clone());
        let tail = reduce(&(g - &head), &others, meter)?;
        out.push((&head + &tail).monic());
    }
    let order = ring.order().clone();
    out.sort_by(|a, b| order.cmp_unchecked(b.leading_exp().unwrap().as_slice(), a.leading_exp().unwrap().as_slice()));
    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: out,
        reduced: true,
    })
}

/// Reduced Gröbner basis under another monomial order on the same variables.
/// The returned basis lives in the re-ordered ring.
pub fn buchberger_with_order(gens: &[Polynomial], ring: &Ring, order: MonomialOrder, budget: &Budget) -> Result<GroebnerBasis> {
    let target = ring.with_order(order)?;
    let ident: Vec<usize> = (0..ring.nvars()).collect();
    let moved: Vec<Polynomial> = gens
        .iter()
        .map(|g| {
            if same_ring(g.ring(), ring) {
                Ok(g.remap(&target, &ident))
            } else {
                Err(Error::RingMismatch)
            }
        })
        .collect::<Result<_>>()?;
    buchberger_in_ring(&target, &moved, budget)
}

/// True iff every polynomial of `polys` reduces to zero.
pub fn contains(g: &GroebnerBasis, polys: &[Polynomial]) -> Result<bool> {
    for p in polys {
        if !normal_form(p, g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Direct check of Buchberger's criterion: every S-polynomial reduces to zero.
pub fn is_groebner(g: &GroebnerBasis) -> Result<bool> {
    let gens = g.generators();
    for j in 0..gens.len() {
        for i in 0..j {
            if !normal_form(&s_polynomial(&gens[i], &gens[j]), g)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
