//! Monomial ideals: Newton polyhedra, their facet valuations, integral
//! closures of powers, volume multiplicities and empirical searches for
//! Briançon–Skoda and Artin–Rees constants.

use std::collections::HashSet;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::poly::{Exponent, Polynomial, Ring};

const MAX_VARS: usize = 4;
const MAX_GENS: usize = 12;

/// `{v ≥ 0 : ⟨normals[k], v⟩ ≥ offsets[k]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    pub normals: Vec<Vec<u64>>,
    pub offsets: Vec<u64>,
    pub generators: Vec<Vec<u32>>,
}

/// Monomial valuation `x^v ↦ ⟨weights, v⟩` with its value on the ideal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MonomialValuation {
    pub weights: Vec<u64>,
    pub value_on_ideal: u64,
}

impl MonomialValuation {
    pub fn on_exponent(&self, e: &[u32]) -> u64 {
        self.weights.iter().zip(e).map(|(&w, &k)| w * k as u64).sum()
    }

    /// Minimum over the terms; `None` for the zero polynomial.
    pub fn value(&self, f: &Polynomial) -> Option<u64> {
        f.terms().iter().map(|t| self.on_exponent(t.exp.as_slice())).min()
    }
}

fn dot(a: &[u64], v: &[u32]) -> u64 {
    a.iter().zip(v).map(|(&x, &y)| x * y as u64).sum()
}

impl NewtonPolyhedron {
    pub fn nvars(&self) -> usize {
        self.generators.first().map_or(0, |g| g.len())
    }

    /// True when the normal of facet `k` has no zero entry.
    pub fn is_bounded(&self, k: usize) -> bool {
        self.normals[k].iter().all(|&a| a > 0)
    }

    /// Facet test for `v ∈ n·NP`.
    pub fn contains(&self, v: &[u32], n: u32) -> bool {
        self.normals
            .iter()
            .zip(&self.offsets)
            .all(|(a, &b)| dot(a, v) >= n as u64 * b)
    }

    /// Facets with positive offset; the bounded ones plus any coordinate
    /// facets of a non-primary ideal.
    pub fn valuations(&self) -> Vec<MonomialValuation> {
        self.normals
            .iter()
            .zip(&self.offsets)
            .filter(|(_, &b)| b > 0)
            .map(|(a, &b)| MonomialValuation {
                weights: a.clone(),
                value_on_ideal: b,
            })
            .collect()
    }
}

/// Minimal exponent vectors of a monomial ideal of a polynomial ring.
pub fn monomial_exponents(i: &IdealHandle) -> Result<Vec<Vec<u32>>> {
    if !i.algebra().is_polynomial_ring() {
        return Err(Error::Precondition("monomial ideals must live in a polynomial ring".into()));
    }
    let mut exps = Vec::new();
    for g in i.generators() {
        if !g.is_monomial() {
            return Err(Error::Precondition(format!("{g} is not a monomial")));
        }
        exps.push(g.leading_exp().expect("nonzero").as_slice().to_vec());
    }
    if exps.is_empty() {
        return Err(Error::ZeroInput("monomial ideal without generators"));
    }
    Ok(minimal(exps))
}

fn minimal(mut exps: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    exps.sort_by_key(|e| (e.iter().sum::<u32>(), e.clone()));
    exps.dedup();
    let mut out: Vec<Vec<u32>> = Vec::new();
    for e in exps {
        if !out.iter().any(|g| g.iter().zip(&e).all(|(a, b)| a <= b)) {
            out.push(e);
        }
    }
    out
}

fn det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    match n {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Generalized cross product of `n − 1` vectors in `Zⁿ`.
fn normal_of(rows: &[Vec<i128>], n: usize) -> Vec<i128> {
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                .collect();
            let s = if j % 2 == 0 { 1 } else { -1 };
            s * det(&minor)
        })
        .collect()
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

pub fn newton_polyhedron(i: &IdealHandle) -> Result<NewtonPolyhedron> {
    let n = i.ring().nvars();
    if n > MAX_VARS {
        return Err(Error::Limit(format!("Newton polyhedra support at most {MAX_VARS} variables")));
    }
    let gens = monomial_exponents(i)?;
    if gens.len() > MAX_GENS {
        return Err(Error::Limit(format!("at most {MAX_GENS} minimal generators")));
    }
    Ok(polyhedron_of(gens, n))
}

pub(crate) fn polyhedron_of(gens: Vec<Vec<u32>>, n: usize) -> NewtonPolyhedron {
    let mut facets: Vec<(Vec<u64>, u64)> = Vec::new();
    let mut seen = HashSet::new();
    for p0 in &gens {
        let mut dirs: Vec<Vec<i128>> = gens
            .iter()
            .filter(|g| *g != p0)
            .map(|g| g.iter().zip(p0).map(|(&a, &b)| a as i128 - b as i128).collect())
            .collect();
        for k in 0..n {
            let mut e = vec![0i128; n];
            e[k] = 1;
            dirs.push(e);
        }
        for pick in subsets(dirs.len(), n.saturating_sub(1)) {
            let rows: Vec<Vec<i128>> = pick.iter().map(|&j| dirs[j].clone()).collect();
            let mut a = normal_of(&rows, n);
            if a.iter().all(|&x| x == 0) {
                continue;
            }
            if a.iter().all(|&x| x <= 0) {
                a.iter_mut().for_each(|x| *x = -*x);
            }
            if a.iter().any(|&x| x < 0) {
                continue;
            }
            let g = a.iter().fold(0i128, |acc, &x| acc.gcd(&x));
            let a: Vec<u64> = a.iter().map(|&x| (x / g) as u64).collect();
            let b = gens.iter().map(|v| dot(&a, v)).min().expect("nonempty");
            if dot(&a, p0) != b || !seen.insert(a.clone()) {
                continue;
            }
            facets.push((a, b));
        }
    }
    facets.sort();
    NewtonPolyhedron {
        normals: facets.iter().map(|f| f.0.clone()).collect(),
        offsets: facets.iter().map(|f| f.1).collect(),
        generators: gens,
    }
}

/// One valuation per facet of positive offset, with `ν(I)` the offset.
pub fn rees_valuations_monomial(i: &IdealHandle) -> Result<Vec<MonomialValuation>> {
    Ok(newton_polyhedron(i)?.valuations())
}

fn lattice_box(bounds: &[u32]) -> impl Iterator<Item = Vec<u32>> + '_ {
    let total: u64 = bounds.iter().map(|&b| b as u64 + 1).product();
    (0..total).map(move |mut idx| {
        bounds
            .iter()
            .map(|&b| {
                let r = (idx % (b as u64 + 1)) as u32;
                idx /= b as u64 + 1;
                r
            })
            .collect()
    })
}

/// Minimal exponents of `closure(Iⁿ)` = lattice points of `n·NP`.
pub fn closure_exponents(np: &NewtonPolyhedron, n: u32) -> Vec<Vec<u32>> {
    let nv = np.nvars();
    let bounds: Vec<u32> = (0..nv)
        .map(|k| n * np.generators.iter().map(|g| g[k]).max().unwrap_or(0))
        .collect();
    let mut out: Vec<Vec<u32>> = lattice_box(&bounds)
        .filter(|v| {
            np.contains(v, n)
                && (0..nv).all(|k| {
                    if v[k] == 0 {
                        return true;
                    }
                    let mut w = v.clone();
                    w[k] -= 1;
                    !np.contains(&w, n)
                })
        })
        .collect();
    out.sort_by_key(|e| (e.iter().sum::<u32>(), std::cmp::Reverse(e.clone())));
    out
}

fn monomials(ring: &Ring, exps: &[Vec<u32>]) -> Vec<Polynomial> {
    exps.iter()
        .map(|e| Polynomial::monomial(ring, ring.field().one(), Exponent::new(e.clone())))
        .collect()
}

/// `closure(Iⁿ)` by its minimal monomial generators.
pub fn integral_closure_power(i: &IdealHandle, n: u32) -> Result<IdealHandle> {
    let np = newton_polyhedron(i)?;
    let exps = if n == 0 { vec![vec![0; i.ring().nvars()]] } else { closure_exponents(&np, n) };
    IdealHandle::new(i.algebra(), monomials(i.ring(), &exps))
}

/// Decides `e ∈ n·NP(I)` without facets: a vertex of
/// `{λ ≥ 0, Σλ = n, Σ λ_g g ≤ e}` is the solution of a square system on at
/// most `nvars + 1` generators, found by exhaustive search.
pub fn membership_oracle_caratheodory(gens: &[Vec<u32>], e: &[u32], n: u32) -> bool {
    if n == 0 {
        return true;
    }
    let d = e.len();
    for size in 1..=(d + 1).min(gens.len()) {
        for s in subsets(gens.len(), size) {
            for t in subsets(d, size - 1) {
                // rows: Σλ = n, then Σ λ_g g_k = e_k for k ∈ t
                let mut m: Vec<Vec<i128>> = vec![vec![1; size]];
                let mut rhs: Vec<i128> = vec![n as i128];
                for &k in &t {
                    m.push(s.iter().map(|&g| gens[g][k] as i128).collect());
                    rhs.push(e[k] as i128);
                }
                let dm = det(&m);
                if dm == 0 {
                    continue;
                }
                // Cramer: λ_j = det_j / dm
                let num: Vec<i128> = (0..size)
                    .map(|j| {
                        let mj: Vec<Vec<i128>> = m
                            .iter()
                            .zip(&rhs)
                            .map(|(row, &r)| {
                                let mut row = row.clone();
                                row[j] = r;
                                row
                            })
                            .collect();
                        det(&mj)
                    })
                    .collect();
                let sgn = dm.signum();
                if num.iter().any(|&x| x * sgn < 0) {
                    continue;
                }
                let fits = (0..d).all(|k| {
                    let lhs: i128 = s.iter().zip(&num).map(|(&g, &x)| gens[g][k] as i128 * x).sum();
                    lhs * sgn <= e[k] as i128 * dm.abs()
                });
                if fits {
                    return true;
                }
            }
        }
    }
    false
}

/// `e_I(R)` for an `𝔪`-primary monomial ideal in at most three variables:
/// `d!·vol` of the region under the Newton boundary, as a sum of
/// determinants over a triangulation of its compact facets.
pub fn monomial_multiplicity(i: &IdealHandle) -> Result<u64> {
    let np = newton_polyhedron(i)?;
    let d = i.ring().nvars();
    if d > 3 {
        return Err(Error::Limit("volume multiplicities support at most 3 variables".into()));
    }
    let primary = (0..d).all(|k| np.generators.iter().any(|g| (0..d).all(|j| j == k || g[j] == 0)));
    if !primary {
        return Err(Error::Precondition("ideal is not primary to the maximal ideal".into()));
    }
    let mut total: i128 = 0;
    for (a, &b) in np.normals.iter().zip(&np.offsets) {
        if b == 0 || a.iter().any(|&x| x == 0) {
            continue;
        }
        let pts: Vec<Vec<i128>> = np
            .generators
            .iter()
            .filter(|g| dot(a, g) == b)
            .map(|g| g.iter().map(|&x| x as i128).collect())
            .collect();
        total += match d {
            1 => pts[0][0],
            2 => {
                let lo = pts.iter().min_by_key(|p| p[0]).expect("two points");
                let hi = pts.iter().max_by_key(|p| p[0]).expect("two points");
                det(&[lo.clone(), hi.clone()]).abs()
            }
            _ => fan_volume_3d(&pts) as i128,
        };
    }
    Ok(total as u64)
}

/// `Σ |det(v_0, v_k, v_{k+1})|` over a fan triangulation of the convex hull
/// of coplanar points in `Z³`.
pub(crate) fn fan_volume_3d(pts: &[Vec<i128>]) -> u64 {
    let hull = hull_on_plane(pts);
    if hull.len() < 3 {
        return 0;
    }
    (1..hull.len() - 1)
        .map(|k| det(&[hull[0].clone(), hull[k].clone(), hull[k + 1].clone()]).unsigned_abs() as u64)
        .sum()
}

/// Convex hull, in cyclic order, of coplanar points in `Z³` whose plane has
/// a normal with nonzero last coordinate (monotone chain on the first two).
fn hull_on_plane(pts: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut p: Vec<Vec<i128>> = pts.to_vec();
    p.sort();
    p.dedup();
    if p.len() < 3 {
        return p;
    }
    let cross = |o: &[i128], a: &[i128], b: &[i128]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let mut lower: Vec<Vec<i128>> = Vec::new();
    for q in &p {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], q) <= 0 {
            lower.pop();
        }
        lower.push(q.clone());
    }
    let mut upper: Vec<Vec<i128>> = Vec::new();
    for q in p.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], q) <= 0 {
            upper.pop();
        }
        upper.push(q.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `ν'(f) = min_k ν(a_k)` for `f = Σ a_k X^k`, where `ν` is a monomial
/// valuation on the variables other than `x`. `None` for `f = 0`.
pub fn gaussian_extension(v: &MonomialValuation, f: &Polynomial, x: usize) -> Result<Option<u64>> {
    let n = f.ring().nvars();
    if x >= n || v.weights.len() + 1 != n {
        return Err(Error::LengthMismatch(v.weights.len() + 1, n));
    }
    let mut w = v.weights.clone();
    w.insert(x, 0);
    let ext = MonomialValuation {
        weights: w,
        value_on_ideal: v.value_on_ideal,
    };
    Ok(f.coefficients_in(x).iter().filter_map(|(_, a)| ext.value(a)).min())
}

fn divisible_by_some(v: &[u32], gens: &[Vec<u32>]) -> bool {
    gens.iter().any(|g| g.iter().zip(v).all(|(a, b)| a <= b))
}

fn power_exponents(gens: &[Vec<u32>], n: u32) -> Vec<Vec<u32>> {
    let mut acc = vec![vec![0u32; gens.first().map_or(0, |g| g.len())]];
    for _ in 0..n {
        let mut next = Vec::new();
        for a in &acc {
            for g in gens {
                next.push(a.iter().zip(g).map(|(x, y)| x + y).collect());
            }
        }
        acc = minimal(next);
    }
    acc
}

/// Least `B ≤ nmax` with `closure(I^{n+B}) ⊆ Iⁿ` for every `n ≤ nmax`.
pub fn find_min_briancon_skoda(i: &IdealHandle, nmax: u32) -> Result<u32> {
    let np = newton_polyhedron(i)?;
    let mut b = 0u32;
    for n in 1..=nmax {
        let target = power_exponents(&np.generators, n);
        loop {
            if b > nmax {
                return Err(Error::NotFound(nmax));
            }
            if closure_exponents(&np, n + b).iter().all(|v| divisible_by_some(v, &target)) {
                break;
            }
            b += 1;
        }
    }
    Ok(b)
}

/// Least `A ≤ nmax` with `(c) ∩ I^{n+A} ⊆ c·Iⁿ` for every `n ≤ nmax`.
pub fn find_min_artin_rees(c: &Polynomial, i: &IdealHandle, nmax: u32) -> Result<u32> {
    let alg = i.algebra();
    let principal = IdealHandle::new(alg, vec![c.clone()])?;
    if principal.is_zero()? {
        return Err(Error::ZeroInput("Artin-Rees search for a zero element"));
    }
    let mut a = 0u32;
    for n in 1..=nmax {
        let small = principal.product(&i.power(n))?;
        loop {
            if a > nmax {
                return Err(Error::NotFound(nmax));
            }
            let big = IdealHandle::new(alg, i.power(n + a).reduced_generators()?)?;
            if small.contains(&principal.intersect(&big)?)? {
                break;
            }
            a += 1;
        }
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{double_point, poly, polynomial_ring};
    use crate::rings::Algebra;

    fn ideal(r: &Algebra, gens: &[&str]) -> IdealHandle {
        r.ideal(gens.iter().map(|g| poly(r, g)).collect()).unwrap()
    }

    #[test]
    fn polyhedra() {
        let r = polynomial_ring(&["x", "y"]);
        let np = newton_polyhedron(&ideal(&r, &["x^2", "y^3"])).unwrap();
        let bounded: Vec<_> = (0..np.normals.len()).filter(|&k| np.is_bounded(k)).collect();
        assert_eq!(bounded.len(), 1);
        assert_eq!((np.normals[bounded[0]].clone(), np.offsets[bounded[0]]), (vec![3, 2], 6));
        assert_eq!(
            rees_valuations_monomial(&ideal(&r, &["x", "y"])).unwrap(),
            [MonomialValuation { weights: vec![1, 1], value_on_ideal: 1 }]
        );
        assert_eq!(
            rees_valuations_monomial(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap(),
            [MonomialValuation { weights: vec![1, 1], value_on_ideal: 2 }]
        );
        let vs = rees_valuations_monomial(&ideal(&r, &["x^2*y", "x*y^3"])).unwrap();
        assert!(vs.contains(&MonomialValuation { weights: vec![2, 1], value_on_ideal: 5 }));
        let json = serde_json::to_value(&np).unwrap();
        assert!(json.get("normals").is_some() && json.get("offsets").is_some() && json.get("generators").is_some());
        let big = polynomial_ring(&["a", "b", "c", "d", "e"]);
        assert!(matches!(newton_polyhedron(&ideal(&big, &["a"])), Err(Error::Limit(_))));
    }

    #[test]
    fn closures() {
        let r = polynomial_ring(&["x", "y"]);
        let c = integral_closure_power(&ideal(&r, &["x^2", "y^3"]), 1).unwrap();
        assert!(c.equals(&ideal(&r, &["x^2", "x*y^2", "y^3"])).unwrap());
        let m = ideal(&r, &["x", "y"]);
        for n in 1..=4 {
            assert!(integral_closure_power(&m, n).unwrap().equals(&m.power(n)).unwrap());
        }
        let c = integral_closure_power(&ideal(&r, &["x^4", "y^4"]), 1).unwrap();
        assert!(c.contains_poly(&poly(&r, "x^2*y^2")).unwrap());
    }

    #[test]
    fn caratheodory_examples() {
        let g = vec![vec![2, 0], vec![0, 3]];
        assert!(membership_oracle_caratheodory(&g, &[1, 2], 1));
        assert!(!membership_oracle_caratheodory(&g, &[1, 1], 1));
        assert!(membership_oracle_caratheodory(&g, &[2, 0], 1));
        assert!(membership_oracle_caratheodory(&g, &[0, 3], 1));
        assert!(membership_oracle_caratheodory(&g, &[2, 3], 2));
        assert!(!membership_oracle_caratheodory(&g, &[2, 2], 2));
    }

    #[test]
    fn multiplicities() {
        let r = polynomial_ring(&["x", "y"]);
        assert_eq!(monomial_multiplicity(&ideal(&r, &["x^2", "y^3"])).unwrap(), 6);
        assert_eq!(monomial_multiplicity(&ideal(&r, &["x", "y"])).unwrap(), 1);
        assert_eq!(monomial_multiplicity(&ideal(&r, &["x^2", "x*y", "y^2"])).unwrap(), 4);
        assert!(monomial_multiplicity(&ideal(&r, &["x^2", "x*y"])).is_err());
        let s = polynomial_ring(&["x", "y", "z"]);
        // (x,y,z)^2 has e = 8; (x^2, y^3, z^5) has e = 30
        assert_eq!(monomial_multiplicity(&ideal(&s, &["x", "y", "z"]).power(2)).unwrap(), 8);
        assert_eq!(monomial_multiplicity(&ideal(&s, &["x^2", "y^3", "z^5"])).unwrap(), 30);
        assert_eq!(monomial_multiplicity(&ideal(&s, &["x^2", "y^2", "z^2", "x*y*z"])).unwrap(), 8);
    }

    #[test]
    fn gaussian_extensions() {
        let r = polynomial_ring(&["x", "y", "X"]);
        let v = MonomialValuation { weights: vec![3, 2], value_on_ideal: 6 };
        assert_eq!(gaussian_extension(&v, &poly(&r, "x*X^5 + y^2"), 2).unwrap(), Some(3));
        assert_eq!(gaussian_extension(&v, &poly(&r, "x*y + y^3"), 2).unwrap(), Some(5));
        assert_eq!(gaussian_extension(&v, &Polynomial::zero(r.ring()), 2).unwrap(), None);
        assert!(gaussian_extension(&v, &poly(&r, "x"), 3).is_err());
    }

    #[test]
    fn bound_searches() {
        let r = polynomial_ring(&["x", "y"]);
        assert_eq!(find_min_briancon_skoda(&ideal(&r, &["x^2", "y^3"]), 6).unwrap(), 1);
        assert_eq!(find_min_briancon_skoda(&ideal(&r, &["x", "y"]), 6).unwrap(), 0);
        let a = find_min_artin_rees(&poly(&r, "x"), &ideal(&r, &["x^2", "y"]), 4).unwrap();
        assert!(a <= 2);
        let d = double_point();
        let m = IdealHandle::variables(&d);
        assert_eq!(find_min_artin_rees(&poly(&d, "x1"), &m, 4).unwrap(), 2);
    }
}
