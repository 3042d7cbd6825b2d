//! Checks of containments and inequalities between symbolic powers, orders,
//! valuations and multiplicities over a finite range of exponents.
//!
//! A passing report means "verified for the listed n on this input", never
//! more.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ideal::IdealHandle;
use crate::monomial::{closure_exponents, newton_polyhedron, monomial_multiplicity, MonomialValuation};
use crate::multiplicity::{length_sampler, multiplicity_from_table, multiplicity_graded};
use crate::poly::Polynomial;
use crate::rings::{check_projective_closure_iso, verify_exceptional_certificate, Algebra, ExceptionalPrimeCertificate, ReesPresentation};
use crate::symbolic::{symbolic_order_along, Separator, SymbolicPowers};

/// Default number of samples for length tables.
pub const DEFAULT_SAMPLES: u32 = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    UserSupplied,
    Computed,
    Formula,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Constant {
    pub value: u64,
    pub provenance: Provenance,
}

impl Constant {
    pub fn user(value: u64) -> Self {
        Constant {
            value,
            provenance: Provenance::UserSupplied,
        }
    }

    pub fn computed(value: u64) -> Self {
        Constant {
            value,
            provenance: Provenance::Computed,
        }
    }
}

/// Artin–Rees `A`, Briançon–Skoda `B`, multiplicity/order ratio `C`,
/// Izumi–Rees `E`, maximal local multiplicity `e`, initial order `t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UniformConstants {
    #[serde(rename = "A")]
    pub a: Constant,
    #[serde(rename = "B")]
    pub b: Constant,
    #[serde(rename = "C")]
    pub c: Constant,
    #[serde(rename = "E")]
    pub e_izumi: Constant,
    #[serde(rename = "e")]
    pub e_mult: Constant,
    pub t: Constant,
}

impl UniformConstants {
    /// `C·E·(A+1)²·e²·(B+1)`.
    pub fn chevalley_constant(&self) -> u64 {
        let a1 = self.a.value + 1;
        self.c.value * self.e_izumi.value * a1 * a1 * self.e_mult.value * self.e_mult.value * (self.b.value + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckItem {
    pub label: String,
    pub verdict: Outcome,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub inputs: BTreeMap<String, String>,
    pub n_range: Option<[u32; 2]>,
    pub items: Vec<CheckItem>,
    pub assertions: Vec<String>,
    pub values: BTreeMap<String, Value>,
    pub verdict: Outcome,
    pub scope: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.verdict == Outcome::Pass
    }

    pub fn without_timing(mut self) -> Self {
        self.timing_ms = None;
        self
    }
}

struct Builder {
    report: CheckReport,
    start: Instant,
}

impl Builder {
    fn new(check: &str) -> Self {
        Builder {
            report: CheckReport {
                check: check.into(),
                inputs: BTreeMap::new(),
                n_range: None,
                items: Vec::new(),
                assertions: Vec::new(),
                values: BTreeMap::new(),
                verdict: Outcome::Pass,
                scope: String::new(),
                timing_ms: None,
            },
            start: Instant::now(),
        }
    }

    fn input(&mut self, k: &str, v: impl ToString) -> &mut Self {
        self.report.inputs.insert(k.into(), v.to_string());
        self
    }

    fn value(&mut self, k: &str, v: Value) -> &mut Self {
        self.report.values.insert(k.into(), v);
        self
    }

    fn assume(&mut self, a: &str) -> &mut Self {
        self.report.assertions.push(a.into());
        self
    }

    fn range(&mut self, lo: u32, hi: u32) -> &mut Self {
        self.report.n_range = Some([lo, hi]);
        self
    }

    /// Records one item; budget exhaustion becomes a `budget` verdict and
    /// any other error propagates.
    fn record(&mut self, label: impl Into<String>, r: Result<(bool, String)>) -> Result<()> {
        let (verdict, detail) = match r {
            Ok((true, d)) => (Outcome::Pass, d),
            Ok((false, d)) => (Outcome::Fail, d),
            Err(e @ Error::Budget { .. }) => (Outcome::Budget, e.to_string()),
            Err(e) => return Err(e),
        };
        self.report.items.push(CheckItem {
            label: label.into(),
            verdict,
            detail,
        });
        Ok(())
    }

    fn finish(mut self) -> CheckReport {
        let r = &mut self.report;
        r.verdict = if r.items.iter().any(|i| i.verdict == Outcome::Fail) {
            Outcome::Fail
        } else if r.items.iter().any(|i| i.verdict == Outcome::Budget) {
            Outcome::Budget
        } else {
            Outcome::Pass
        };
        r.scope = match r.n_range {
            Some([lo, hi]) => format!("verified for {lo} <= n <= {hi} on this input"),
            None => "verified for the listed items on this input".into(),
        };
        r.timing_ms = Some(self.start.elapsed().as_millis() as u64);
        self.report
    }
}

fn assertion_names(alg: &Algebra) -> Vec<&'static str> {
    alg.assertions().describe()
}

/// `e` of `R/(I-adic, f)` from a length table; non-stabilized tables are
/// reported as budget exhaustion.
fn sampled_multiplicity(r: &Algebra, i: &IdealHandle, f: &Polynomial, samples: u32) -> Result<u64> {
    let tab = length_sampler(r, i, Some(f), samples)?;
    let (e, stable) = multiplicity_from_table(&tab, r.dimension()?)?;
    if !stable {
        return Err(Error::Budget {
            steps: samples as u64,
            pairs: 0,
        });
    }
    Ok(e)
}

/// `𝔭⁽ⁿ⁾ ⊆ 𝔮⁽ⁿ⁾` for `n ≤ nmax`.
pub fn check_local_zariski_nagata(p: &mut SymbolicPowers, q: &mut SymbolicPowers, nmax: u32) -> Result<CheckReport> {
    if !q.prime().contains(p.prime())? {
        return Err(Error::Precondition("the first prime is not contained in the second".into()));
    }
    let mut b = Builder::new("local-zariski-nagata");
    b.input("p", p.prime()).input("q", q.prime()).range(1, nmax);
    for a in assertion_names(p.prime().algebra()) {
        b.assume(a);
    }
    for n in 1..=nmax {
        let r = (|| {
            let big = q.get(n)?;
            Ok((big.contains(&p.get(n)?)?, format!("p^({n}) in q^({n})")))
        })();
        b.record(format!("n={n}"), r)?;
    }
    Ok(b.finish())
}

/// `𝔭^(e(S)n+1) ⊆ 𝔮⁽ⁿ⁾` and `𝔭^(2e(S)n) ⊆ 𝔭^(e(S)n+1)` for `n ≤ nmax`,
/// where `S` is the projective closure of `R`.
pub fn check_main_theorem_a(r: &Algebra, s: &Algebra, p: &mut SymbolicPowers, q: &mut SymbolicPowers, nmax: u32) -> Result<CheckReport> {
    if !s.assertions().normal {
        return Err(Error::Precondition("the projective closure must carry a normality assertion".into()));
    }
    if !check_projective_closure_iso(r, s)? {
        return Err(Error::Precondition("S is not the projective closure of R".into()));
    }
    let e = multiplicity_graded(s)? as u32;
    let mut b = Builder::new("main-theorem-a");
    b.input("R", r).input("S", s).input("p", p.prime()).input("q", q.prime());
    b.value("e(S)", json!(e)).range(0, nmax).assume("normal (S)");
    for n in 0..=nmax {
        let k = e * n + 1;
        let r = (|| Ok((q.get(n)?.contains(&p.get(k)?)?, format!("p^({k}) in q^({n})"))))();
        b.record(format!("n={n}"), r)?;
        if n >= 1 {
            let big = 2 * e * n;
            let r = (|| Ok((p.get(k)?.contains(&p.get(big)?)?, format!("p^({big}) in p^({k})"))))();
            b.record(format!("chain n={n}"), r)?;
        }
    }
    Ok(b.finish())
}

/// `e(R/fR) ≤ C·ord_𝔪(f)` at the origin, multiplicities from length tables.
pub fn check_uniform_izumi_multiplicity(r: &Algebra, fs: &[Polynomial], c: u64, nmax: u32, samples: u32) -> Result<CheckReport> {
    if !r.contains_origin() {
        return Err(Error::Precondition("the origin does not lie on the variety".into()));
    }
    let m = IdealHandle::variables(r);
    let mut orders = SymbolicPowers::new(&m, &Separator::Auto)?;
    let mut b = Builder::new("uniform-izumi-multiplicity");
    b.input("R", r).input("C", c).input("f", join(fs)).range(1, nmax);
    for a in assertion_names(r) {
        b.assume(a);
    }
    for f in fs {
        let res = (|| {
            let (ord, exact) = orders.order(f, nmax)?;
            let e = sampled_multiplicity(r, &m, f, samples)?;
            let ord_s = if exact { ord.to_string() } else { format!(">= {ord}") };
            Ok((e <= c * ord as u64, format!("e = {e}, ord = {ord_s}, C*ord = {}", c * ord as u64)))
        })();
        b.record(format!("f={f}"), res)?;
    }
    Ok(b.finish())
}

/// Data for the order ideal identity `e(R/(I-adic, f)) = Σ ν(f)·d_ν`.
pub enum OrderIdealSetting<'a> {
    /// Monomial `𝔪`-primary `I` in a polynomial ring; valuations are the
    /// Newton facets and `d_ν` the normalized lattice volume of the facet.
    Monomial { ideal: &'a IdealHandle },
    /// Standard graded normal `S` with its irrelevant ideal; one valuation,
    /// the order, with `d = e(S)`.
    Graded { algebra: &'a Algebra },
    /// A Rees presentation with a certificate of its exceptional primes;
    /// `d_ν` is the multiplicity of the presentation modulo `Q_ν`.
    Rees {
        presentation: &'a ReesPresentation,
        certificate: &'a ExceptionalPrimeCertificate,
        nmax: u32,
    },
}

/// Facet values `ν(I)` and normalized facet volumes `d_ν` of an
/// `𝔪`-primary monomial ideal in at most three variables.
pub fn facet_degrees(i: &IdealHandle) -> Result<Vec<(MonomialValuation, u64)>> {
    let np = newton_polyhedron(i)?;
    let d = np.nvars();
    let mut out = Vec::new();
    for v in np.valuations() {
        // one-facet ideal with the same facet: its multiplicity is ν(I)·d_ν
        let on: Vec<Vec<u32>> = np
            .generators
            .iter()
            .filter(|g| v.on_exponent(g) == v.value_on_ideal)
            .cloned()
            .collect();
        let vol = facet_volume(&on, d);
        if vol % v.value_on_ideal != 0 {
            return Err(Error::Precondition("facet volume not divisible by its offset".into()));
        }
        out.push((v.clone(), vol / v.value_on_ideal));
    }
    Ok(out)
}

fn facet_volume(pts: &[Vec<u32>], d: usize) -> u64 {
    let as_i: Vec<Vec<i128>> = pts.iter().map(|p| p.iter().map(|&x| x as i128).collect()).collect();
    match d {
        1 => as_i[0][0] as u64,
        2 => {
            let lo = as_i.iter().min_by_key(|p| p[0]).expect("points");
            let hi = as_i.iter().max_by_key(|p| p[0]).expect("points");
            (lo[0] * hi[1] - lo[1] * hi[0]).unsigned_abs() as u64
        }
        _ => crate::monomial::fan_volume_3d(&as_i),
    }
}

pub fn check_order_ideal_theorem(setting: OrderIdealSetting<'_>, f: &Polynomial, samples: u32) -> Result<CheckReport> {
    let mut b = Builder::new("order-ideal-theorem");
    b.input("f", f);
    match setting {
        OrderIdealSetting::Monomial { ideal } => {
            b.input("I", ideal).assume("monomial");
            let degs = facet_degrees(ideal)?;
            let e_i = monomial_multiplicity(ideal)?;
            let corollary: u64 = degs.iter().map(|(v, d)| v.value_on_ideal * d).sum();
            b.value("e_I(R)", json!(e_i));
            b.value("d", json!(degs.iter().map(|(_, d)| *d).collect::<Vec<_>>()));
            b.record(
                "corollary identity",
                Ok((corollary == e_i, format!("sum nu(I)*d = {corollary}, e_I = {e_i}"))),
            )?;
            let rhs: u64 = degs.iter().map(|(v, d)| v.value(f).unwrap_or(0) * d).sum();
            let r = ideal.algebra().clone();
            let res = sampled_multiplicity(&r, ideal, f, samples).map(|e| (e == rhs, format!("e = {e}, sum nu(f)*d = {rhs}")));
            b.record("identity", res)?;
        }
        OrderIdealSetting::Graded { algebra } => {
            if !algebra.assertions().normal || !algebra.assertions().standard_graded {
                return Err(Error::Precondition("expected a standard graded algebra asserted normal".into()));
            }
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous(f.to_string()));
            }
            b.input("S", algebra).assume("normal").assume("graded");
            let res = (|| {
                let e_s = multiplicity_graded(algebra)?;
                let m = IdealHandle::variables(algebra);
                let (ord, _) = SymbolicPowers::new(&m, &Separator::Auto)?.order(f, f.total_degree().unwrap_or(0) + 1)?;
                let e_f = multiplicity_graded(&algebra.quotient_by(std::slice::from_ref(f))?)?;
                let rhs = e_s * ord as u64;
                Ok((e_f == rhs, format!("e(S/F) = {e_f}, e(S)*ord = {e_s}*{ord} = {rhs}")))
            })();
            b.record("identity", res)?;
        }
        OrderIdealSetting::Rees {
            presentation,
            certificate,
            nmax,
        } => {
            let base = presentation.base();
            b.input("R", base).input("I", join(presentation.ideal_generators()));
            b.assume("normal (presentation)");
            if !verify_exceptional_certificate(presentation, certificate)? {
                b.record("certificate", Ok((false, "exceptional prime certificate rejected".into())))?;
                return Ok(b.finish());
            }
            b.record("certificate", Ok((true, "intersection of symbolic powers equals (u)".into())))?;
            let g = presentation.lift(f)?;
            let mut rhs = 0u64;
            let mut nus = Vec::new();
            let mut ds = Vec::new();
            for (q, sep) in certificate.primes.iter().zip(&certificate.separators) {
                let (nu, _) = symbolic_order_along(q, &g, nmax, sep)?;
                let d = degree_modulo(q)?;
                rhs += nu as u64 * d;
                nus.push(nu);
                ds.push(d);
            }
            b.value("nu(f)", json!(nus)).value("d", json!(ds));
            let i = IdealHandle::new(base, presentation.ideal_generators().to_vec())?;
            let res = sampled_multiplicity(base, &i, f, samples).map(|e| (e == rhs, format!("e = {e}, sum nu(f)*d = {rhs}")));
            b.record("identity", res)?;
        }
    }
    Ok(b.finish())
}

/// `e` of the presentation modulo `Q`, through the reduced basis of `Q + P`.
fn degree_modulo(q: &IdealHandle) -> Result<u64> {
    let alg = q.algebra();
    let gens = q.gb()?.generators().to_vec();
    let quotient = crate::rings::AffineAlgebra::new(alg.ring(), gens, Default::default(), *alg.budget())?;
    multiplicity_graded(&quotient)
}

/// `ν_i(f) ≤ E·ν_j(f)` for all pairs of certified exceptional primes.
pub fn check_izumi_valuation_bound(
    presentation: &ReesPresentation,
    certificate: &ExceptionalPrimeCertificate,
    fs: &[Polynomial],
    e: u64,
    nmax: u32,
) -> Result<CheckReport> {
    if certificate.primes.len() < 2 {
        return Err(Error::Precondition("need at least two exceptional primes".into()));
    }
    let mut b = Builder::new("izumi-valuation-bound");
    b.input("R", presentation.base()).input("E", e).input("f", join(fs));
    b.assume("normal (presentation)");
    if !verify_exceptional_certificate(presentation, certificate)? {
        b.record("certificate", Ok((false, "exceptional prime certificate rejected".into())))?;
        return Ok(b.finish());
    }
    for f in fs {
        let res = (|| {
            let g = presentation.lift(f)?;
            let mut nus = Vec::new();
            for (q, sep) in certificate.primes.iter().zip(&certificate.separators) {
                nus.push(symbolic_order_along(q, &g, nmax, sep)?.0 as u64);
            }
            let ok = nus.iter().all(|&a| nus.iter().all(|&c| a <= e * c));
            Ok((ok, format!("nu = {nus:?}")))
        })();
        b.record(format!("f={f}"), res)?;
    }
    Ok(b.finish())
}

/// Left side of the fixed power containment.
pub enum FixedPowerSide<'a> {
    /// A prime whose symbolic powers contain `closure(𝔭^N)R_W ∩ R`.
    Symbolic(&'a mut SymbolicPowers),
    /// An `𝔪`-primary monomial ideal: `closure(I^N)` from its polyhedron.
    MonomialPrimary(&'a IdealHandle),
}

/// `closure(I^{E·t·e²})R_W ∩ R ⊆ 𝔪ᵗ` for `t ≤ tmax`; `multiplier`
/// replaces `E·e²` for controls.
pub fn check_fixed_power_lemma(
    side: FixedPowerSide<'_>,
    m: &IdealHandle,
    e_izumi: u64,
    e_mult: u64,
    tmax: u32,
    multiplier: Option<u64>,
) -> Result<CheckReport> {
    let k = multiplier.unwrap_or(e_izumi * e_mult * e_mult) as u32;
    let mut b = Builder::new("fixed-power-lemma");
    b.input("m", m).input("E", e_izumi).input("e", e_mult).input("multiplier", k).range(1, tmax);
    b.assume("powers of m integrally closed");
    match side {
        FixedPowerSide::Symbolic(p) => {
            b.input("I", p.prime()).assume("symbolic powers contain the localized closure");
            for t in 1..=tmax {
                let res = (|| Ok((m.power(t).contains(&p.get(k * t)?)?, format!("I^({}) in m^{t}", k * t))))();
                b.record(format!("t={t}"), res)?;
            }
        }
        FixedPowerSide::MonomialPrimary(i) => {
            b.input("I", i).assume("monomial");
            let np = newton_polyhedron(i)?;
            for t in 1..=tmax {
                let res = (|| {
                    let ring = i.ring();
                    let gens = closure_exponents(&np, k * t)
                        .into_iter()
                        .map(|e| Polynomial::monomial(ring, ring.field().one(), crate::poly::Exponent::new(e)))
                        .collect();
                    let c = IdealHandle::new(i.algebra(), gens)?;
                    Ok((m.power(t).contains(&c)?, format!("closure(I^{}) in m^{t}", k * t)))
                })();
                b.record(format!("t={t}"), res)?;
            }
        }
    }
    Ok(b.finish())
}

/// Finds `t` (largest with `𝔭 ⊆ 𝔮^(t)`) and the least `C_emp` with
/// `𝔭^(C_emp·n) ⊆ 𝔮^(tn)` for `n ≤ nmax`, then checks that the constant
/// from `constants` is at least `C_emp`. Larger exponents follow from
/// `𝔭^(a) ⊆ 𝔭^(b)` for `a ≥ b`; the constant itself is tested directly at
/// `n = 1` when it is at most `direct_cap`.
pub fn check_improved_chevalley(
    p: &mut SymbolicPowers,
    q: &mut SymbolicPowers,
    constants: &UniformConstants,
    nmax: u32,
    direct_cap: u64,
) -> Result<CheckReport> {
    if !q.prime().contains(p.prime())? {
        return Err(Error::Precondition("the first prime is not contained in the second".into()));
    }
    let mut b = Builder::new("improved-chevalley");
    b.input("p", p.prime()).input("q", q.prime()).range(1, nmax);
    for a in assertion_names(p.prime().algebra()) {
        b.assume(a);
    }
    let mut t = 0;
    for cand in (1..=nmax).rev() {
        if q.get(cand)?.contains(p.prime())? {
            t = cand;
            break;
        }
    }
    let formula = constants.chevalley_constant();
    let mut consts = *constants;
    consts.t = Constant::computed(t as u64);
    b.value("t", json!(t)).value("constants", json!(consts)).value("formula_constant", json!(formula));
    let cap = formula.max(1) as u32;
    let mut c_emp = None;
    'search: for c in 1..=cap {
        for n in 1..=nmax {
            if !q.get(t * n)?.contains(&p.get(c * n)?)? {
                continue 'search;
            }
        }
        c_emp = Some(c);
        break;
    }
    match c_emp {
        None => {
            b.record("C_emp", Ok((false, format!("no C <= {cap} works for n <= {nmax}"))))?;
        }
        Some(c) => {
            b.value("C_emp", json!(c));
            for n in 1..=nmax {
                b.record(format!("n={n}"), Ok((true, format!("p^({}) in q^({})", c * n, t * n))))?;
            }
            b.record(
                "formula constant",
                Ok((formula >= c as u64, format!("C·E·(A+1)^2·e^2·(B+1) = {formula} >= C_emp = {c}"))),
            )?;
            if formula <= direct_cap {
                let k = formula as u32;
                let res = (|| Ok((q.get(t)?.contains(&p.get(k)?)?, format!("p^({k}) in q^({t})"))))();
                b.record("formula constant n=1", res)?;
            }
        }
    }
    Ok(b.finish())
}

/// Where the valuations of `𝔮` come from.
pub enum ValuationData<'a> {
    Monomial(&'a [MonomialValuation]),
    Certificate {
        presentation: &'a ReesPresentation,
        certificate: &'a ExceptionalPrimeCertificate,
        nmax: u32,
    },
}

/// `min_ν ⌊ν(I)/ν(𝔮)⌋`.
pub fn compute_normalized_ord(i: &IdealHandle, data: ValuationData<'_>) -> Result<u64> {
    let mut best: Option<u64> = None;
    match data {
        ValuationData::Monomial(vals) => {
            for v in vals {
                let vi = i
                    .generators()
                    .iter()
                    .filter_map(|g| v.value(g))
                    .min()
                    .ok_or(Error::ZeroInput("normalized order of the zero ideal"))?;
                let r = vi / v.value_on_ideal;
                best = Some(best.map_or(r, |b| b.min(r)));
            }
        }
        ValuationData::Certificate {
            presentation,
            certificate,
            nmax,
        } => {
            for ((q, sep), &nq) in certificate.primes.iter().zip(&certificate.separators).zip(&certificate.multiplicities) {
                let mut vi: Option<u64> = None;
                for g in i.generators() {
                    let (o, _) = symbolic_order_along(q, &presentation.lift(g)?, nmax, sep)?;
                    vi = Some(vi.map_or(o as u64, |x| x.min(o as u64)));
                }
                let vi = vi.ok_or(Error::ZeroInput("normalized order of the zero ideal"))?;
                let r = vi / nq.max(1) as u64;
                best = Some(best.map_or(r, |b| b.min(r)));
            }
        }
    }
    best.ok_or_else(|| Error::Precondition("no valuations available".into()))
}

fn join<T: std::fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{double_point, double_point_rees, poly, polynomial_ring};
    use crate::monomial::rees_valuations_monomial;
    use crate::rings::homogenization;

    fn primes(r: &Algebra, p: &[&str], sep: Option<&str>) -> SymbolicPowers {
        let i = r.ideal(p.iter().map(|g| poly(r, g)).collect()).unwrap();
        let s = sep.map_or(Separator::Auto, |s| Separator::Given(poly(r, s)));
        SymbolicPowers::new(&i, &s).unwrap()
    }

    fn polys(r: &Algebra, fs: &[&str]) -> Vec<Polynomial> {
        fs.iter().map(|f| poly(r, f)).collect()
    }

    fn example_constants() -> UniformConstants {
        UniformConstants {
            a: Constant::computed(2),
            b: Constant::user(1),
            c: Constant::computed(3),
            e_izumi: Constant::computed(2),
            e_mult: Constant::computed(2),
            t: Constant::computed(1),
        }
    }

    #[test]
    fn zariski_nagata() {
        let r = polynomial_ring(&["x", "y", "z"]);
        let mut m = primes(&r, &["x", "y", "z"], None);
        let rep = check_local_zariski_nagata(&mut primes(&r, &["x", "y"], None), &mut m, 4).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let mut curve = primes(&r, &["x^3 - y*z", "y^2 - x*z", "z^2 - x^2*y"], Some("x"));
        assert!(check_local_zariski_nagata(&mut curve, &mut m, 3).unwrap().passed());
        let mut other = primes(&r, &["x", "z - 1"], Some("y"));
        assert!(check_local_zariski_nagata(&mut m, &mut other, 2).is_err());
    }

    #[test]
    fn main_theorem_a() {
        let r = double_point();
        let s = homogenization(&r, "X0").unwrap();
        let mut p = primes(&r, &["x1", "x3"], Some("x2"));
        let mut m = primes(&r, &["x1", "x2", "x3"], None);
        let rep = check_main_theorem_a(&r, &s, &mut p, &mut m, 3).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.values["e(S)"], json!(3));
        let mut p2 = primes(&r, &["x1", "x3"], Some("x2"));
        assert!(check_main_theorem_a(&r, &s, &mut p, &mut p2, 2).unwrap().passed());
    }

    #[test]
    fn izumi_multiplicity() {
        let r = double_point();
        let fs = polys(&r, &["x1", "x2", "x3", "x3^2", "x1 + x3", "x1*x2"]);
        let rep = check_uniform_izumi_multiplicity(&r, &fs, 3, 12, DEFAULT_SAMPLES).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.items[0].detail, "e = 3, ord = 1, C*ord = 3");
        assert_eq!(rep.items[2].detail, "e = 2, ord = 1, C*ord = 3");
        let tight = check_uniform_izumi_multiplicity(&r, &fs[..1], 2, 12, DEFAULT_SAMPLES).unwrap();
        assert_eq!(tight.verdict, Outcome::Fail);
    }

    #[test]
    fn order_ideal_settings() {
        let r = double_point();
        let s = homogenization(&r, "X0").unwrap();
        for (f, e) in [("x3", "e(S/F) = 3"), ("X0*x1*x2", "e(S/F) = 9")] {
            let rep = check_order_ideal_theorem(OrderIdealSetting::Graded { algebra: &s }, &poly(&s, f), DEFAULT_SAMPLES).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.items[0].detail.starts_with(e));
        }
        let (pres, cert) = double_point_rees();
        let rep = check_order_ideal_theorem(
            OrderIdealSetting::Rees {
                presentation: &pres,
                certificate: &cert,
                nmax: 8,
            },
            &poly(&r, "x1"),
            DEFAULT_SAMPLES,
        )
        .unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.values["nu(f)"], json!([2, 1]));
        assert_eq!(rep.values["d"], json!([1, 1]));

        let p = polynomial_ring(&["x", "y"]);
        let i = p.ideal(polys(&p, &["x^2", "y^3"])).unwrap();
        for f in ["x", "y", "x*y + y^2"] {
            let rep = check_order_ideal_theorem(OrderIdealSetting::Monomial { ideal: &i }, &poly(&p, f), DEFAULT_SAMPLES).unwrap();
            assert!(rep.passed(), "{f}: {rep:?}");
        }
    }

    #[test]
    fn izumi_valuations() {
        let r = double_point();
        let (pres, cert) = double_point_rees();
        let fs = polys(&r, &["x1", "x3", "x1^2"]);
        let rep = check_izumi_valuation_bound(&pres, &cert, &fs, 2, 10).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!(rep.items[0].detail, "nu = [2, 1]");
        assert_eq!(rep.items[1].detail, "nu = [1, 1]");
        assert_eq!(rep.items[2].detail, "nu = [4, 2]");
        let rep = check_izumi_valuation_bound(&pres, &cert, &fs[..1], 1, 10).unwrap();
        assert_eq!(rep.verdict, Outcome::Fail);
    }

    #[test]
    fn fixed_powers() {
        let r = polynomial_ring(&["x", "y", "z"]);
        let m = IdealHandle::variables(&r);
        let mut p = primes(&r, &["x", "y"], None);
        assert!(check_fixed_power_lemma(FixedPowerSide::Symbolic(&mut p), &m, 1, 1, 3, None).unwrap().passed());

        let d = double_point();
        let m = IdealHandle::variables(&d);
        let mut p = primes(&d, &["x1", "x3"], Some("x2"));
        let rep = check_fixed_power_lemma(FixedPowerSide::Symbolic(&mut p), &m, 2, 2, 2, None).unwrap();
        assert!(rep.passed(), "{rep:?}");
        let control = check_fixed_power_lemma(FixedPowerSide::Symbolic(&mut p), &m, 2, 2, 2, Some(1)).unwrap();
        assert_eq!(control.verdict, Outcome::Fail);

        let q = polynomial_ring(&["x", "y"]);
        let i = q.ideal(polys(&q, &["x^2", "y^3"])).unwrap();
        let rep = check_fixed_power_lemma(FixedPowerSide::MonomialPrimary(&i), &IdealHandle::variables(&q), 1, 1, 3, None).unwrap();
        assert!(rep.passed());
    }

    #[test]
    fn chevalley() {
        let d = double_point();
        let mut m = primes(&d, &["x1", "x2", "x3"], None);
        let mut p = primes(&d, &["x1", "x3"], Some("x2"));
        let rep = check_improved_chevalley(&mut p, &mut m, &example_constants(), 2, 64).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert_eq!((rep.values["t"].clone(), rep.values["C_emp"].clone()), (json!(1), json!(2)));
        let rep = check_improved_chevalley(&mut p, &mut m, &example_constants(), 3, 64).unwrap();
        assert_eq!(rep.values["C_emp"], json!(3));
        assert_eq!(rep.values["formula_constant"], json!(432));

        let mut m2 = primes(&d, &["x1", "x2", "x3"], None);
        let rep = check_improved_chevalley(&mut m, &mut m2, &example_constants(), 3, 64).unwrap();
        assert_eq!(rep.values["C_emp"], json!(1));

        let r = polynomial_ring(&["x", "y", "z"]);
        let mut m = primes(&r, &["x", "y", "z"], None);
        let mut p = primes(&r, &["x", "y"], None);
        let rep = check_improved_chevalley(&mut p, &mut m, &example_constants(), 3, 64).unwrap();
        assert!(rep.passed());
        assert!(rep.values["C_emp"].as_u64().unwrap() <= 3);
    }

    #[test]
    fn normalized_orders() {
        let r = polynomial_ring(&["x", "y"]);
        let q = r.ideal(polys(&r, &["x", "y"])).unwrap();
        let vals = rees_valuations_monomial(&q).unwrap();
        for (gens, t) in [(&["x^3", "y^3"][..], 3), (&["x^2", "y^3"][..], 2), (&["x", "y"][..], 1)] {
            let i = r.ideal(polys(&r, gens)).unwrap();
            assert_eq!(compute_normalized_ord(&i, ValuationData::Monomial(&vals)).unwrap(), t);
        }
        assert!(compute_normalized_ord(&q, ValuationData::Monomial(&[])).is_err());

        let d = double_point();
        let (pres, cert) = double_point_rees();
        let data = || ValuationData::Certificate {
            presentation: &pres,
            certificate: &cert,
            nmax: 8,
        };
        assert_eq!(compute_normalized_ord(&IdealHandle::variables(&d), data()).unwrap(), 1);
        let sq = d.ideal(polys(&d, &["x1^2", "x2^2", "x3^2"])).unwrap();
        assert_eq!(compute_normalized_ord(&sq, data()).unwrap(), 2);
    }

    #[test]
    fn constants_serialize_with_provenance() {
        let v = serde_json::to_value(example_constants()).unwrap();
        assert_eq!(v["B"], json!({"value": 1, "provenance": "user-supplied"}));
        assert_eq!(v["e"]["provenance"], json!("computed"));
    }
}
