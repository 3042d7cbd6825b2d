use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use super::{is_identifier, Command, Item, SessionFile};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::ideal::IdealHandle;
use crate::monomial::{
    find_min_artin_rees, find_min_briancon_skoda, integral_closure_power, monomial_multiplicity, newton_polyhedron,
    rees_valuations_monomial,
};
use crate::multiplicity::{
    hilbert_series_monomial, hilbert_series_of_exponents, length_sampler, local_multiplicity_via_gr,
    multiplicity_from_table, multiplicity_graded,
};
use crate::poly::{parse_polynomial, Coefficient, Polynomial};
use crate::rings::{
    associated_graded, extended_rees_presentation, homogenization, translate_to_origin, translation_images,
    AffineAlgebra, Algebra, Assertions, ExceptionalPrimeCertificate, ReesPresentation,
};
use crate::symbolic::{symbolic_power, Separator, SymbolicPowerRequest, SymbolicPowers};
use crate::verify::{self, Constant, FixedPowerSide, OrderIdealSetting, Outcome, UniformConstants, ValuationData};

pub const REPORT_VERSION: &str = "reeskit-report/1";

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed: u64,
    /// Reduction-step cap; `None` keeps the default budget.
    pub budget: Option<u64>,
    pub fail_fast: bool,
    pub parallel: bool,
    pub timing: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub name: String,
    pub args: Vec<String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Outcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl CommandResult {
    /// An error, or a check whose verdict is not a pass.
    pub fn failed(&self) -> bool {
        self.error.is_some() || matches!(self.verdict, Some(v) if v != Outcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RingEcho {
    pub vars: Vec<String>,
    pub field: String,
    pub modulus: Vec<String>,
    pub order: String,
    pub assertions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub version: String,
    pub ring: RingEcho,
    pub seed: u64,
    pub commands: Vec<CommandResult>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.commands.iter().any(CommandResult::failed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Env {
    alg: Algebra,
    ideals: BTreeMap<String, IdealHandle>,
    seed: u64,
}

/// Positional arguments and `--key value` options.
struct Args<'a> {
    pos: Vec<&'a str>,
    opts: BTreeMap<&'a str, &'a str>,
}

impl<'a> Args<'a> {
    fn new(raw: &'a [String]) -> Result<Self> {
        let mut pos = Vec::new();
        let mut opts = BTreeMap::new();
        let mut it = raw.iter();
        while let Some(a) = it.next() {
            if let Some(key) = a.strip_prefix("--") {
                let v = it.next().ok_or_else(|| Error::Precondition(format!("option --{key} needs a value")))?;
                opts.insert(key, v.as_str());
            } else {
                pos.push(a.as_str());
            }
        }
        Ok(Args { pos, opts })
    }

    fn at(&self, i: usize) -> Result<&'a str> {
        self.pos
            .get(i)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("missing argument {}", i + 1)))
    }

    fn opt(&self, key: &str) -> Option<&'a str> {
        self.opts.get(key).copied()
    }

    fn need(&self, key: &str) -> Result<&'a str> {
        self.opt(key).ok_or_else(|| Error::Precondition(format!("missing option --{key}")))
    }

    fn num<T: std::str::FromStr>(text: &str, what: &str) -> Result<T> {
        text.parse().map_err(|_| Error::Precondition(format!("{what}: expected a number, got '{text}'")))
    }

    fn num_at<T: std::str::FromStr>(&self, i: usize) -> Result<T> {
        Self::num(self.at(i)?, &format!("argument {}", i + 1))
    }

    fn num_opt<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        self.opt(key).map_or(Ok(default), |v| Self::num(v, key))
    }

    fn num_need<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        Self::num(self.need(key)?, key)
    }
}

impl Env {
    fn ideal(&self, name: &str) -> Result<&IdealHandle> {
        self.ideals
            .get(name)
            .ok_or_else(|| Error::Precondition(format!("undefined ideal '{name}'")))
    }

    fn poly(&self, text: &str) -> Result<Polynomial> {
        self.alg.parse(text)
    }

    fn polys(&self, text: &str) -> Result<Vec<Polynomial>> {
        text.split(',').map(|t| self.poly(t.trim())).collect()
    }

    fn separator(&self, text: Option<&str>) -> Result<Separator> {
        match text {
            None | Some("auto") => Ok(Separator::Auto),
            Some(t) => Ok(Separator::Given(self.poly(t)?)),
        }
    }

    fn symbolic(&self, name: &str, sep: Option<&str>) -> Result<SymbolicPowers> {
        SymbolicPowers::new(self.ideal(name)?, &self.separator(sep)?)
    }
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn generators(i: &IdealHandle) -> Result<Value> {
    Ok(json!({ "generators": strings(&i.reduced_generators()?) }))
}

fn algebra_json(a: &Algebra) -> Value {
    json!({ "vars": a.ring().vars(), "relations": strings(a.modulus()) })
}

fn assertions_from(names: &[String]) -> Assertions {
    let has = |s: &str| names.iter().any(|n| n == s);
    Assertions {
        domain: has("domain"),
        normal: has("normal"),
        standard_graded: has("graded"),
    }
}

/// Presentation of `I` and a certificate read from `--certificate "g, g; g, g"`,
/// `--values` and `--separators`, all in the presentation's variables.
fn rees_certificate(env: &Env, a: &Args<'_>) -> Result<(ReesPresentation, ExceptionalPrimeCertificate)> {
    if !env.alg.assertions().normal {
        return Err(Error::Precondition("a Rees certificate needs 'assert: normal' on the ring".into()));
    }
    let pres = extended_rees_presentation(&env.alg, env.ideal(a.need("rees")?)?)?.with_assertions(env.alg.assertions())?;
    let palg = pres.algebra().clone();
    let primes = a
        .need("certificate")?
        .split(';')
        .map(|part| {
            let gens = part.split(',').map(|t| palg.parse(t.trim())).collect::<Result<Vec<_>>>()?;
            palg.ideal(gens)
        })
        .collect::<Result<Vec<_>>>()?;
    let values = a
        .need("values")?
        .split(',')
        .map(|t| Args::num(t.trim(), "values"))
        .collect::<Result<Vec<u32>>>()?;
    let seps = match a.opt("separators") {
        None => vec![Separator::Auto; primes.len()],
        Some(s) => s
            .split(',')
            .map(|t| match t.trim() {
                "auto" => Ok(Separator::Auto),
                t => Ok(Separator::Given(palg.parse(t)?)),
            })
            .collect::<Result<Vec<_>>>()?,
    };
    let cert = ExceptionalPrimeCertificate::new(primes, values, seps)?;
    Ok((pres, cert))
}

/// The homogenizing variable named by `--closure`; a non-identifier such
/// as `S.ring` selects the default `X0`.
fn closure_var(a: &Args<'_>) -> String {
    match a.opt("closure") {
        Some(v) if is_identifier(v) => v.to_string(),
        _ => "X0".to_string(),
    }
}

fn constants(a: &Args<'_>) -> Result<UniformConstants> {
    let get = |k: &str| -> Result<Constant> { Ok(Constant::user(a.num_need(k)?)) };
    Ok(UniformConstants {
        a: get("A")?,
        b: get("B")?,
        c: get("C")?,
        e_izumi: get("E")?,
        e_mult: get("e")?,
        t: Constant::user(a.num_opt("t", 1)?),
    })
}

fn run_check(env: &Env, a: &Args<'_>) -> Result<verify::CheckReport> {
    let nmax: u32 = a.num_opt("nmax", 3)?;
    let samples: u32 = a.num_opt("samples", verify::DEFAULT_SAMPLES)?;
    match a.at(0)? {
        "zariski-nagata" => {
            let mut p = env.symbolic(a.need("p")?, a.opt("sep-p"))?;
            let mut q = env.symbolic(a.need("q")?, a.opt("sep-q"))?;
            verify::check_local_zariski_nagata(&mut p, &mut q, nmax)
        }
        "main-a" => {
            let s = homogenization(&env.alg, &closure_var(a))?;
            let mut p = env.symbolic(a.need("p")?, a.opt("sep-p"))?;
            let mut q = env.symbolic(a.need("q")?, a.opt("sep-q"))?;
            verify::check_main_theorem_a(&env.alg, &s, &mut p, &mut q, nmax)
        }
        "izumi-multiplicity" => {
            let fs = env.polys(a.need("f")?)?;
            verify::check_uniform_izumi_multiplicity(&env.alg, &fs, a.num_need("C")?, nmax, samples)
        }
        "order-ideal" => {
            let f = env.poly(a.need("f")?)?;
            if let Some(name) = a.opt("monomial") {
                verify::check_order_ideal_theorem(OrderIdealSetting::Monomial { ideal: env.ideal(name)? }, &f, samples)
            } else if a.opt("rees").is_some() {
                let (pres, cert) = rees_certificate(env, a)?;
                let setting = OrderIdealSetting::Rees {
                    presentation: &pres,
                    certificate: &cert,
                    nmax,
                };
                verify::check_order_ideal_theorem(setting, &f, samples)
            } else {
                verify::check_order_ideal_theorem(OrderIdealSetting::Graded { algebra: &env.alg }, &f, samples)
            }
        }
        "izumi-valuation" => {
            let fs = env.polys(a.need("f")?)?;
            let (pres, cert) = rees_certificate(env, a)?;
            verify::check_izumi_valuation_bound(&pres, &cert, &fs, a.num_need("E")?, nmax)
        }
        "fixed-power" => {
            let m = env.ideal(a.need("m")?)?;
            let (e, em, tmax) = (a.num_need("E")?, a.num_need("e")?, a.num_opt("tmax", 2)?);
            let multiplier = a.opt("multiplier").map(|v| Args::num(v, "multiplier")).transpose()?;
            if let Some(name) = a.opt("monomial") {
                verify::check_fixed_power_lemma(FixedPowerSide::MonomialPrimary(env.ideal(name)?), m, e, em, tmax, multiplier)
            } else {
                let mut p = env.symbolic(a.need("p")?, a.opt("separator"))?;
                verify::check_fixed_power_lemma(FixedPowerSide::Symbolic(&mut p), m, e, em, tmax, multiplier)
            }
        }
        "chevalley" => {
            let mut p = env.symbolic(a.need("p")?, a.opt("sep-p"))?;
            let mut q = env.symbolic(a.need("q")?, a.opt("sep-q"))?;
            verify::check_improved_chevalley(&mut p, &mut q, &constants(a)?, nmax, a.num_opt("direct-cap", 40)?)
        }
        other => Err(Error::Unsupported(format!("check '{other}'"))),
    }
}

fn hilbert(i: &IdealHandle) -> Result<Value> {
    let hs = if i.generators().iter().all(Polynomial::is_monomial) && i.algebra().is_polynomial_ring() {
        hilbert_series_monomial(i)?
    } else {
        let homogeneous = i.ambient_generators().iter().all(Polynomial::is_homogeneous);
        if !homogeneous || !i.ring().order().is_degree_compatible() {
            return Err(Error::Unsupported(
                "Hilbert series of a non-monomial ideal needs homogeneous generators and a graded order".into(),
            ));
        }
        hilbert_series_of_exponents(i.ring().nvars(), &i.gb()?.leading_exponents())
    };
    let (reduced, d) = hs.reduced();
    Ok(json!({
        "numerator": hs.numerator(),
        "reduced_numerator": reduced,
        "dimension": d,
        "multiplicity": hs.multiplicity(),
    }))
}

/// Value and verdict of one command against a fixed environment.
fn execute(env: &Env, cmd: &Command) -> Result<(Value, Option<Outcome>)> {
    let a = Args::new(&cmd.args)?;
    let plain = |v: Value| Ok((v, None));
    match cmd.name.as_str() {
        "gb" => plain(generators(env.ideal(a.at(0)?)?)?),
        "contains" => {
            let i = env.ideal(a.at(0)?)?;
            let rest = a.pos[1..].join(" ");
            let ok = match env.ideals.get(rest.as_str()) {
                Some(j) => i.contains(j)?,
                None => env.polys(&rest)?.iter().try_fold(true, |acc, f| Ok::<_, Error>(acc && i.contains_poly(f)?))?,
            };
            plain(json!({ "contains": ok }))
        }
        "quotient" => {
            let i = env.ideal(a.at(0)?)?;
            let q = match env.ideals.get(a.at(1)?) {
                Some(j) => i.quotient_ideal(j)?,
                None => i.quotient(&env.poly(a.at(1)?)?)?,
            };
            plain(generators(&q)?)
        }
        "saturate" => {
            let (s, steps) = env.ideal(a.at(0)?)?.saturate(&env.poly(a.at(1)?)?)?;
            let mut v = generators(&s)?;
            v["steps"] = json!(steps);
            plain(v)
        }
        "intersect" => plain(generators(&env.ideal(a.at(0)?)?.intersect(env.ideal(a.at(1)?)?)?)?),
        "eliminate" => {
            let ring = env.alg.ring();
            let drop = a.pos[1..]
                .iter()
                .map(|v| ring.var_index(v).ok_or_else(|| Error::Precondition(format!("unknown variable '{v}'"))))
                .collect::<Result<Vec<_>>>()?;
            plain(generators(&env.ideal(a.at(0)?)?.eliminate(&drop)?)?)
        }
        "radical-member" => {
            let ok = env.ideal(a.at(0)?)?.radical_membership(&env.poly(a.at(1)?)?)?;
            plain(json!({ "member": ok }))
        }
        "dimension" => {
            let d = match a.pos.first() {
                Some(name) => env.alg.quotient_by(env.ideal(name)?.generators())?.dimension()?,
                None => env.alg.dimension()?,
            };
            plain(json!({ "dimension": d }))
        }
        "hilbert" => plain(hilbert(env.ideal(a.at(0)?)?)?),
        "multiplicity" => {
            let f = a.pos.first().map(|t| env.poly(t)).transpose()?;
            plain(json!({ "multiplicity": local_multiplicity_via_gr(&env.alg, f.as_ref())? }))
        }
        "graded-multiplicity" => plain(json!({ "multiplicity": multiplicity_graded(&env.alg)? })),
        "lengths" => {
            let i = env.ideal(a.at(0)?)?;
            let f = a.opt("f").map(|t| env.poly(t)).transpose()?;
            let tab = length_sampler(&env.alg, i, f.as_ref(), a.num_at(1)?)?;
            let (e, stable) = multiplicity_from_table(&tab, env.alg.dimension()?)?;
            plain(json!({ "lengths": tab.entries, "multiplicity": e, "stabilized": stable }))
        }
        "rees" => {
            let pres = extended_rees_presentation(&env.alg, env.ideal(a.at(0)?)?)?;
            let mut v = algebra_json(pres.algebra());
            v["u"] = json!(pres.u().to_string());
            v["y"] = json!(pres.y_vars().iter().map(|&k| pres.y(k - pres.y_vars()[0]).to_string()).collect::<Vec<_>>());
            plain(v)
        }
        "gr" => {
            let pres = extended_rees_presentation(&env.alg, env.ideal(a.at(0)?)?)?;
            plain(algebra_json(&associated_graded(&pres)?))
        }
        "homogenize" => plain(algebra_json(&homogenization(&env.alg, a.opt("var").unwrap_or("X0"))?)),
        "symbolic-power" => {
            let req = SymbolicPowerRequest::new(env.ideal(a.at(0)?)?.clone(), a.num_at(1)?, env.separator(a.opt("separator"))?)
                .with_screen(a.num_opt("screen", 0)?, env.seed);
            let sp = symbolic_power(&req)?;
            let mut v = generators(&sp.ideal)?;
            v["certificate"] = json!(sp.certificate);
            plain(v)
        }
        "ord" => {
            let mut p = env.symbolic(a.at(0)?, a.opt("separator"))?;
            let (o, exact) = p.order(&env.poly(a.at(1)?)?, a.num_opt("nmax", 10)?)?;
            plain(json!({ "ord": o, "exact": exact }))
        }
        "newton" => {
            let i = env.ideal(a.at(0)?)?;
            let np = newton_polyhedron(i)?;
            let mut v = json!(np);
            v["valuations"] = json!(rees_valuations_monomial(i)?);
            plain(v)
        }
        "closure" => plain(generators(&integral_closure_power(env.ideal(a.at(0)?)?, a.num_at(1)?)?)?),
        "monomial-multiplicity" => plain(json!({ "multiplicity": monomial_multiplicity(env.ideal(a.at(0)?)?)? })),
        "briancon-skoda" => plain(json!({ "B": find_min_briancon_skoda(env.ideal(a.at(0)?)?, a.num_at(1)?)? })),
        "artin-rees" => {
            let c = env.poly(a.at(0)?)?;
            plain(json!({ "A": find_min_artin_rees(&c, env.ideal(a.at(1)?)?, a.num_at(2)?)? }))
        }
        "normalized-ord" => {
            let vals = rees_valuations_monomial(env.ideal(a.at(1)?)?)?;
            let v = verify::compute_normalized_ord(env.ideal(a.at(0)?)?, ValuationData::Monomial(&vals))?;
            plain(json!({ "normalized_ord": v }))
        }
        "check" => {
            let report = run_check(env, &a)?;
            let verdict = report.verdict;
            Ok((json!(report.without_timing()), Some(verdict)))
        }
        other => Err(Error::Unsupported(format!("command '{other}'"))),
    }
}

fn parse_point(env: &Env, text: &str) -> Result<Vec<Coefficient>> {
    text.split(',')
        .map(|t| {
            let c = parse_polynomial(env.alg.ring(), t.trim())?;
            if !c.is_constant() {
                return Err(Error::Precondition(format!("'{t}' is not a constant")));
            }
            Ok(c.constant_term())
        })
        .collect()
}

/// Moves `point` to the origin and rewrites every bound ideal.
fn translate(env: &mut Env, cmd: &Command) -> Result<Value> {
    let a = Args::new(&cmd.args)?;
    let point = parse_point(env, &a.pos.join(" "))?;
    let images = translation_images(env.alg.ring(), &point)?;
    let alg = translate_to_origin(&env.alg, &point)?;
    let ideals = env
        .ideals
        .iter()
        .map(|(k, i)| Ok((k.clone(), i.map_to(&alg, &images)?)))
        .collect::<Result<BTreeMap<_, _>>>()?;
    env.alg = alg;
    env.ideals = ideals;
    Ok(json!({ "modulus": strings(env.alg.modulus()) }))
}

fn record(cmd: &Command, timing: bool, f: impl FnOnce() -> Result<(Value, Option<Outcome>)>) -> CommandResult {
    let start = Instant::now();
    let out = f();
    let timing_ms = timing.then(|| start.elapsed().as_millis() as u64);
    let (result, verdict, error) = match out {
        Ok((v, verdict)) => (v, verdict, None),
        Err(e @ Error::Budget { .. }) if cmd.name == "check" => (Value::Null, Some(Outcome::Budget), Some(e.to_string())),
        Err(e) => (Value::Null, None, Some(e.to_string())),
    };
    CommandResult {
        name: cmd.name.clone(),
        args: cmd.args.clone(),
        result,
        verdict,
        error,
        timing_ms,
    }
}

fn run_batch(env: &Env, batch: &[&Command], opts: &RunOptions) -> Vec<CommandResult> {
    if opts.parallel && batch.len() > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = batch
                .iter()
                .map(|cmd| s.spawn(move || record(cmd, opts.timing, || execute(env, cmd))))
                .collect();
            handles.into_iter().map(|h| h.join().expect("command thread panicked")).collect()
        })
    } else {
        let mut out = Vec::new();
        for cmd in batch {
            let r = record(cmd, opts.timing, || execute(env, cmd));
            let stop = opts.fail_fast && r.failed();
            out.push(r);
            if stop {
                break;
            }
        }
        out
    }
}

/// Executes the session in order. Commands between two ideal bindings or
/// translations are independent and run concurrently under `parallel`;
/// the report is the same either way.
pub fn run(session: &SessionFile, opts: &RunOptions) -> Result<Report> {
    let ring = session.build_ring()?;
    let mut budget = Budget::default();
    if let Some(steps) = opts.budget {
        budget.max_steps = steps;
    }
    let modulus = session
        .ring
        .modulus
        .iter()
        .map(|t| parse_polynomial(&ring, t))
        .collect::<Result<Vec<_>>>()?;
    let alg = AffineAlgebra::new(&ring, modulus, assertions_from(&session.ring.assertions), budget)?;
    let mut env = Env {
        alg,
        ideals: BTreeMap::new(),
        seed: opts.seed,
    };
    let mut commands: Vec<CommandResult> = Vec::new();
    let mut batch: Vec<&Command> = Vec::new();
    let mut stopped = false;

    let flush = |env: &Env, batch: &mut Vec<&Command>, commands: &mut Vec<CommandResult>| -> bool {
        let results = run_batch(env, batch, opts);
        batch.clear();
        for r in results {
            let stop = opts.fail_fast && r.failed();
            commands.push(r);
            if stop {
                return true;
            }
        }
        false
    };

    for item in &session.items {
        match item {
            Item::Command(c) if c.name != "translate-origin" => batch.push(c),
            Item::Command(c) => {
                if flush(&env, &mut batch, &mut commands) {
                    stopped = true;
                    break;
                }
                let r = record(c, opts.timing, || translate(&mut env, c).map(|v| (v, None)));
                let stop = opts.fail_fast && r.failed();
                commands.push(r);
                if stop {
                    stopped = true;
                    break;
                }
            }
            Item::Ideal(b) => {
                if flush(&env, &mut batch, &mut commands) {
                    stopped = true;
                    break;
                }
                let gens = b.generators.iter().map(|t| parse_polynomial(env.alg.ring(), t)).collect::<Result<Vec<_>>>()?;
                let i = IdealHandle::new(&env.alg, gens)?;
                env.ideals.insert(b.name.clone(), i);
            }
        }
    }
    if !stopped {
        flush(&env, &mut batch, &mut commands);
    }

    Ok(Report {
        version: REPORT_VERSION.to_string(),
        ring: RingEcho {
            vars: session.ring.vars.clone(),
            field: session.ring.field.describe(),
            modulus: session.ring.modulus.clone(),
            order: session.ring.order.to_string(),
            assertions: session.ring.assertions.clone(),
        },
        seed: opts.seed,
        commands,
    })
}
