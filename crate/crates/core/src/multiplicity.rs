//! Hilbert series of monomial quotients, multiplicities of graded and local
//! rings, and exact length tables `n ↦ ℓ(R/(Iⁿ + (f)))`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::buchberger_with_order;
use crate::ideal::IdealHandle;
use crate::poly::{Exponent, MonomialOrder, Polynomial};
use crate::rings::{associated_graded, extended_rees_presentation, Algebra};

/// `numerator(t) / (1 − t)^nvars`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertSeries {
    numerator: Vec<i64>,
    nvars: usize,
}

impl HilbertSeries {
    pub fn new(numerator: Vec<i64>, nvars: usize) -> Self {
        let mut numerator = numerator;
        while numerator.last() == Some(&0) {
            numerator.pop();
        }
        HilbertSeries { numerator, nvars }
    }

    pub fn numerator(&self) -> &[i64] {
        &self.numerator
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    /// Numerator and denominator exponent with all `(1 − t)` factors cancelled.
    /// The zero series reduces to itself.
    pub fn reduced(&self) -> (Vec<i64>, usize) {
        let mut num = self.numerator.clone();
        let mut d = self.nvars;
        while d > 0 && !num.is_empty() && num.iter().sum::<i64>() == 0 {
            // synthetic division by (1 − t): q_k = Σ_{j≤k} a_j
            let mut q = Vec::with_capacity(num.len() - 1);
            let mut acc = 0i64;
            for &a in &num[..num.len() - 1] {
                acc += a;
                q.push(acc);
            }
            num = q;
            d -= 1;
        }
        (num, d)
    }

    /// Krull dimension of the quotient; 0 for the zero series.
    pub fn dimension(&self) -> usize {
        if self.is_zero() {
            return 0;
        }
        self.reduced().1
    }

    /// Reduced numerator at `t = 1`.
    pub fn multiplicity(&self) -> i64 {
        self.reduced().0.iter().sum()
    }

    /// Coefficient of `t^k`.
    pub fn hilbert_function(&self, k: u32) -> i64 {
        let n = self.nvars as i64;
        let mut total = 0i64;
        for (j, &a) in self.numerator.iter().enumerate() {
            let j = j as i64;
            if j > k as i64 {
                break;
            }
            if n == 0 {
                if j == k as i64 {
                    total += a;
                }
                continue;
            }
            total += a * binomial(k as i64 - j + n - 1, n - 1);
        }
        total
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r as i64
}

/// Hilbert series of `k[x]/M` for a monomial ideal `M`.
pub fn hilbert_series_monomial(m: &IdealHandle) -> Result<HilbertSeries> {
    let mut exps = Vec::new();
    for g in m.ambient_generators() {
        if !g.is_monomial() {
            return Err(Error::Precondition(format!("{g} is not a monomial")));
        }
        exps.push(g.leading_exp().expect("nonzero").clone());
    }
    Ok(hilbert_series_of_exponents(m.ring().nvars(), &exps))
}

/// Hilbert series of `k[x_1..x_n]/(x^a : a ∈ gens)`.
pub fn hilbert_series_of_exponents(nvars: usize, gens: &[Exponent]) -> HilbertSeries {
    let gens: Vec<Vec<u32>> = gens.iter().map(|e| e.as_slice().to_vec()).collect();
    HilbertSeries::new(numerator(gens, nvars), nvars)
}

fn minimize(mut gens: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    gens.sort_by_key(|g| g.iter().sum::<u32>());
    gens.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for g in gens {
        if !out.iter().any(|h| h.iter().zip(&g).all(|(a, b)| a <= b)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    r
}

fn numerator(gens: Vec<Vec<u32>>, nvars: usize) -> Vec<i64> {
    let mut gens = minimize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.iter().all(|&k| k == 0)) {
        return Vec::new();
    }
    let coprime = |a: &[u32], b: &[u32]| a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0);
    // largest degree first, ties broken lexicographically
    gens.sort_by(|a, b| b.iter().sum::<u32>().cmp(&a.iter().sum::<u32>()).then_with(|| b.cmp(a)));
    let pivot_gen = gens
        .iter()
        .enumerate()
        .find(|(i, g)| gens.iter().enumerate().any(|(j, h)| *i != j && !coprime(g, h)))
        .map(|(_, g)| g.clone());
    let Some(pg) = pivot_gen else {
        let mut acc = vec![1i64];
        for g in &gens {
            let d = g.iter().sum::<u32>() as usize;
            let mut f = vec![0i64; d + 1];
            f[0] = 1;
            f[d] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    };
    let var = pg
        .iter()
        .enumerate()
        .find(|&(i, &k)| k > 0 && gens.iter().any(|h| h != &pg && h[i] > 0))
        .map(|(i, _)| i)
        .unwrap_or_else(|| pg.iter().position(|&k| k > 0).expect("nonconstant"));
    // HS(M) = HS(M + (x)) + t·HS(M : x)
    let mut plus = gens.clone();
    let mut xv = vec![0u32; nvars];
    xv[var] = 1;
    plus.push(xv);
    let colon: Vec<Vec<u32>> = gens
        .iter()
        .map(|g| {
            let mut h = g.clone();
            h[var] = h[var].saturating_sub(1);
            h
        })
        .collect();
    let a = numerator(plus, nvars);
    let b = numerator(colon, nvars);
    let mut r = vec![0i64; a.len().max(b.len() + 1)];
    for (i, &x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, &x) in b.iter().enumerate() {
        r[i + 1] += x;
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// `e(S)` for a standard graded algebra, from the leading-term ideal of a
/// graded-reverse-lex basis of the modulus.
pub fn multiplicity_graded(s: &Algebra) -> Result<u64> {
    if let Some(g) = s.modulus().iter().find(|g| !g.is_homogeneous()) {
        return Err(Error::NotHomogeneous(g.to_string()));
    }
    let ring = s.ring();
    let gb = if ring.order().is_degree_compatible() {
        s.modulus_gb()?.clone()
    } else {
        buchberger_with_order(s.modulus(), ring, MonomialOrder::GrevLex, s.budget())?
    };
    let hs = hilbert_series_of_exponents(ring.nvars(), &gb.leading_exponents());
    Ok(hs.multiplicity().max(0) as u64)
}

/// `e` of the local ring at the origin of `R/(f)`, through the associated
/// graded ring of the maximal ideal.
pub fn local_multiplicity_via_gr(r: &Algebra, f: Option<&Polynomial>) -> Result<u64> {
    let alg = match f {
        Some(f) => r.quotient_by(std::slice::from_ref(f))?,
        None => r.clone(),
    };
    if !alg.contains_origin() {
        return Err(Error::Precondition("the origin does not lie on the variety".into()));
    }
    let m = IdealHandle::variables(&alg);
    if m.is_zero()? {
        // R/(f) is the residue field
        return Ok(1);
    }
    let pres = extended_rees_presentation(&alg, &m)?;
    let gr = associated_graded(&pres)?;
    multiplicity_graded(&gr)
}

/// Entries `(n, ℓ(R/(Iⁿ + (f))))`. `section` records whether an element
/// `f` was adjoined, which lowers the growth degree by one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LengthTable {
    pub entries: Vec<(u32, u64)>,
    #[serde(skip)]
    pub section: bool,
}

impl LengthTable {
    pub fn lengths(&self) -> Vec<u64> {
        self.entries.iter().map(|&(_, l)| l).collect()
    }
}

/// Number of standard monomials of a zero-dimensional leading-term ideal,
/// or `None` when some variable has no pure power.
pub fn count_standard_monomials(nvars: usize, lts: &[Exponent]) -> Option<u64> {
    let mut bounds = vec![u32::MAX; nvars];
    for e in lts {
        let s = e.as_slice();
        let support: Vec<usize> = (0..nvars).filter(|&i| s[i] > 0).collect();
        if support.len() == 1 {
            let i = support[0];
            bounds[i] = bounds[i].min(s[i]);
        } else if support.is_empty() {
            return Some(0);
        }
    }
    if bounds.contains(&u32::MAX) {
        return None;
    }
    let mut count = 0u64;
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, cur: &mut Vec<u32>, bounds: &[u32], lts: &[Exponent], count: &mut u64) {
        if i == cur.len() {
            *count += 1;
            return;
        }
        for k in 0..bounds[i] {
            cur[i] = k;
            // prune: any generator supported on the first i+1 variables
            let dead = lts.iter().any(|e| {
                let s = e.as_slice();
                s[i + 1..].iter().all(|&v| v == 0) && s[..=i].iter().zip(cur.iter()).all(|(a, b)| a <= b)
            });
            if dead {
                break;
            }
            rec(i + 1, cur, bounds, lts, count);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, &bounds, lts, &mut count);
    Some(count)
}

/// Exact lengths for `n = 1..=nmax`.
pub fn length_sampler(r: &Algebra, i: &IdealHandle, f: Option<&Polynomial>, nmax: u32) -> Result<LengthTable> {
    if !i.algebra().same_as(r) {
        return Err(Error::RingMismatch);
    }
    let extra: Vec<Polynomial> = f.into_iter().cloned().collect();
    let nvars = r.ring().nvars();
    let mut entries = Vec::new();
    let mut power = IdealHandle::unit(r);
    for n in 1..=nmax {
        let next = power.product(i)?;
        let gens = next.reduced_generators()?;
        power = IdealHandle::new(r, gens)?;
        let j = power.add_generators(&extra)?;
        let lts = j.gb()?.leading_exponents();
        let len = count_standard_monomials(nvars, &lts).ok_or(Error::PositiveDimensional)?;
        entries.push((n, len));
    }
    Ok(LengthTable {
        entries,
        section: f.is_some(),
    })
}

/// Multiplicity from a length table of a ring of dimension `dim`: the
/// `k`-th finite difference at the last sample, where `k = dim`, or
/// `dim − 1` for a table of `R/(Iⁿ, f)`. `stabilized` when those
/// differences agree over the last three samples.
pub fn multiplicity_from_table(tab: &LengthTable, dim: usize) -> Result<(u64, bool)> {
    let needed = dim + 2;
    if tab.entries.len() < needed {
        return Err(Error::InsufficientSamples {
            needed,
            have: tab.entries.len(),
        });
    }
    let mut seq: Vec<i128> = tab.entries.iter().map(|&(_, l)| l as i128).collect();
    let order = if tab.section { dim.saturating_sub(1) } else { dim };
    for _ in 0..order {
        seq = seq.windows(2).map(|w| w[1] - w[0]).collect();
    }
    let last = *seq.last().expect("nonempty");
    let stabilized = seq.len() >= 3 && seq[seq.len() - 3..].iter().all(|&v| v == last);
    let e = last.max(0) as u64;
    Ok((e, stabilized))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{algebra, double_point, poly, polynomial_ring};
    use crate::rings::Assertions;

    fn graded() -> Assertions {
        Assertions {
            standard_graded: true,
            ..Default::default()
        }
    }

    #[test]
    fn monomial_series() {
        let r = polynomial_ring(&["x", "y"]);
        let m = r.ideal(vec![poly(&r, "x^2"), poly(&r, "x*y")]).unwrap();
        let hs = hilbert_series_monomial(&m).unwrap();
        let dims: Vec<i64> = (0..6).map(|k| hs.hilbert_function(k)).collect();
        assert_eq!(dims, [1, 2, 1, 1, 1, 1]);
        assert_eq!(hs.dimension(), 1);

        let k = polynomial_ring(&["x"]);
        let zero = hilbert_series_monomial(&IdealHandle::zero(&k)).unwrap();
        assert_eq!((zero.numerator(), zero.nvars()), (&[1i64][..], 1));
        assert!(hilbert_series_monomial(&IdealHandle::unit(&k)).unwrap().is_zero());
        let bad = k.ideal(vec![poly(&k, "x + 1")]).unwrap();
        assert!(hilbert_series_monomial(&bad).is_err());
    }

    #[test]
    fn graded_multiplicities() {
        let s = algebra(&["X0", "x1", "x2", "x3"], &["X0*x1*x2 + x3^3"], graded());
        assert_eq!(multiplicity_graded(&s).unwrap(), 3);
        assert_eq!(multiplicity_graded(&polynomial_ring(&["a", "b"])).unwrap(), 1);
        let gr = algebra(&["y1", "y2", "y3"], &["y1*y2"], graded());
        assert_eq!(multiplicity_graded(&gr).unwrap(), 2);
    }

    #[test]
    fn local_multiplicities() {
        let r = double_point();
        assert_eq!(local_multiplicity_via_gr(&r, None).unwrap(), 2);
        assert_eq!(local_multiplicity_via_gr(&r, Some(&poly(&r, "x1"))).unwrap(), 3);
        let p = polynomial_ring(&["x", "y"]);
        assert_eq!(local_multiplicity_via_gr(&p, Some(&poly(&p, "x^2 + y^3"))).unwrap(), 2);
        assert!(local_multiplicity_via_gr(&p, Some(&poly(&p, "x + 1"))).is_err());
    }

    #[test]
    fn length_tables() {
        let p = polynomial_ring(&["x", "y"]);
        let m = IdealHandle::variables(&p);
        let t = length_sampler(&p, &m, None, 5).unwrap();
        let expect: Vec<u64> = (1..=5u64).map(|n| n * (n + 1) / 2).collect();
        assert_eq!(t.lengths(), expect);
        assert_eq!(multiplicity_from_table(&t, 2).unwrap(), (1, true));
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"entries":[[1,1],[2,3],[3,6],[4,10],[5,15]]}"#);

        let i = p.ideal(vec![poly(&p, "x^2"), poly(&p, "y^3")]).unwrap();
        let t = length_sampler(&p, &i, None, 5).unwrap();
        // staircase of (x², y³)ⁿ: x^a y^b with ⌊a/2⌋ + ⌊b/3⌋ < n
        let direct: Vec<u64> = (1..=5u64)
            .map(|n| {
                let mut c = 0;
                for a in 0..2 * n {
                    for b in 0..3 * n {
                        if a / 2 + b / 3 < n {
                            c += 1;
                        }
                    }
                }
                c
            })
            .collect();
        assert_eq!(t.lengths(), direct);
        assert_eq!(multiplicity_from_table(&t, 2).unwrap(), (6, true));

        let r = double_point();
        let t = length_sampler(&r, &IdealHandle::variables(&r), Some(&poly(&r, "x1")), 5).unwrap();
        assert_eq!(multiplicity_from_table(&t, 2).unwrap(), (3, true));

        let line = p.ideal(vec![poly(&p, "x")]).unwrap();
        assert!(matches!(length_sampler(&p, &line, None, 2), Err(Error::PositiveDimensional)));
        assert!(matches!(
            multiplicity_from_table(&LengthTable { entries: vec![(1, 1)], section: false }, 2),
            Err(Error::InsufficientSamples { .. })
        ));
    }
}
