//! The acceptance suite: one line per criterion, nonzero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use reeskit::fixtures::{double_point, double_point_rees, poly, polynomial_ring};
use reeskit::groebner::{buchberger_in_ring, normal_form_with, Budget, GroebnerBasis};
use reeskit::ideal::IdealHandle;
use reeskit::monomial::{
    find_min_artin_rees, find_min_briancon_skoda, membership_oracle_caratheodory, monomial_multiplicity,
    newton_polyhedron,
};
use reeskit::multiplicity::{length_sampler, local_multiplicity_via_gr, multiplicity_from_table, multiplicity_graded};
use reeskit::poly::{parse_polynomial, Exponent, Field, MonomialOrder, PolyRing, Polynomial, Ring};
use reeskit::rings::{homogenization, verify_exceptional_certificate, Algebra};
use reeskit::session::{parse_session, run, RunOptions};
use reeskit::symbolic::{symbolic_order_along, Separator, SymbolicPowers};
use reeskit::verify::{
    check_improved_chevalley, check_main_theorem_a, check_order_ideal_theorem, check_uniform_izumi_multiplicity,
    facet_degrees, Constant, OrderIdealSetting, UniformConstants,
};

const LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ideal(alg: &Algebra, gens: &[&str]) -> IdealHandle {
    IdealHandle::new(alg, gens.iter().map(|g| poly(alg, g)).collect()).unwrap()
}

fn random_poly(r: &Ring, rng: &mut ChaCha8Rng, terms: usize, max_exp: u32) -> Polynomial {
    let n = r.nvars();
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            (r.field().from_i64(rng.gen_range(-4..=4)), Exponent::new(e))
        })
        .collect();
    Polynomial::from_terms(r, ts).unwrap()
}

fn groebner_engine() -> Outcome {
    let r = PolyRing::new(["x", "y", "z"], Field::Rational, MonomialOrder::Lex).unwrap();
    let gens: Vec<Polynomial> = ["x^2 - y", "x^3 - z"].iter().map(|s| parse_polynomial(&r, s).unwrap()).collect();
    let g = ok(buchberger_in_ring(&r, &gens, &Budget::default()))?;
    let mut got: Vec<String> = g.generators().iter().map(|p| p.to_string()).collect();
    let mut want: Vec<String> = ["x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"].iter().map(|s| s.to_string()).collect();
    got.sort();
    want.sort();
    ensure(got == want, format!("basis {got:?}"))?;

    let gr = PolyRing::new(["x", "y", "z"], Field::Rational, MonomialOrder::GrevLex).unwrap();
    let mut instances = 0;
    let mut seed = 0u64;
    while instances < 50 {
        seed += 1;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gens: Vec<Polynomial> = (0..3).map(|_| random_poly(&gr, &mut rng, 3, 3)).filter(|p| !p.is_zero()).collect();
        if gens.is_empty() {
            continue;
        }
        let basis: GroebnerBasis = match buchberger_in_ring(&gr, &gens, &Budget::default()) {
            Ok(b) => b,
            Err(_) => continue,
        };
        instances += 1;
        for _ in 0..4 {
            let f = random_poly(&gr, &mut rng, 5, 4);
            let first = ok(normal_form_with(&f, &basis, &mut |c: &[usize]| c[0]))?;
            let last = ok(normal_form_with(&f, &basis, &mut |c: &[usize]| c[c.len() - 1]))?;
            let random = ok(normal_form_with(&f, &basis, &mut |c: &[usize]| c[rng.gen_range(0..c.len())]))?;
            ensure(first == last && first == random, format!("seed {seed}: reduction paths disagree on {f}"))?;
        }
    }
    Ok(format!("lex basis exact; 50 seeded instances path-independent (seeds 1..={seed})"))
}

fn monomial_criterion() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0u64;
    for k in 0..20 {
        let n = 1 + k % 3;
        let count = rng.gen_range(1..=5);
        let gens: Vec<Vec<u32>> = (0..count)
            .map(|_| loop {
                let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
                if e.iter().any(|&a| a > 0) {
                    break e;
                }
            })
            .collect();
        let alg = polynomial_ring(&["x", "y", "z"][..n]);
        let r = alg.ring();
        let i = IdealHandle::new(
            &alg,
            gens.iter().map(|e| Polynomial::monomial(r, r.field().one(), Exponent::new(e.clone()))).collect(),
        )
        .unwrap();
        let np = ok(newton_polyhedron(&i))?;
        let mut stack = vec![vec![]];
        for _ in 0..n {
            stack = stack
                .into_iter()
                .flat_map(|e: Vec<u32>| {
                    let used: u32 = e.iter().sum();
                    (0..=12 - used).map(move |a| {
                        let mut e = e.clone();
                        e.push(a);
                        e
                    })
                })
                .collect();
        }
        for e in &stack {
            for m in 1..=3 {
                checked += 1;
                ensure(
                    np.contains(e, m) == membership_oracle_caratheodory(&gens, e, m),
                    format!("disagreement at {e:?}, n = {m}, generators {gens:?}"),
                )?;
            }
        }
    }
    Ok(format!("20 ideals, {checked} membership queries, 0 disagreements"))
}

fn worked_example() -> Outcome {
    let r = double_point();
    let (pres, cert) = double_point_rees();
    let pa = pres.algebra();
    ensure(pa.ring().vars() == ["y1", "y2", "y3", "u"], format!("variables {:?}", pa.ring().vars()))?;
    let expected = ideal(pa, &["y1*y2 + u*y3^3"]);
    let actual = ok(IdealHandle::new(pa, pa.modulus().to_vec()))?;
    let zero = IdealHandle::new(&reeskit::rings::AffineAlgebra::polynomial(pa.ring()), pa.modulus().to_vec()).unwrap();
    let expected_free = IdealHandle::new(zero.algebra(), expected.generators().to_vec()).unwrap();
    ensure(ok(zero.equals(&expected_free))?, format!("relations {actual}"))?;
    ensure(ok(verify_exceptional_certificate(&pres, &cert))?, "certificate rejected")?;
    let e_r = ok(local_multiplicity_via_gr(&r, None))?;
    ensure(e_r == 2, format!("e(R) = {e_r}"))?;
    let s = ok(homogenization(&r, "X0"))?;
    let e_s = ok(multiplicity_graded(&s))?;
    ensure(e_s == 3, format!("e(S) = {e_s}"))?;
    Ok(format!("presentation {pa}; certificate (u,y1),(u,y2) with nu = (1,1) verified; e(R) = {e_r}; e(S) = {e_s}"))
}

fn order_ideal() -> Outcome {
    let r = double_point();
    let x1 = poly(&r, "x1");
    let via_gr = ok(local_multiplicity_via_gr(&r, Some(&x1)))?;
    let m = IdealHandle::variables(&r);
    let tab = ok(length_sampler(&r, &m, Some(&x1), 5))?;
    let (via_lengths, stable) = ok(multiplicity_from_table(&tab, 2))?;
    ensure(via_gr == 3 && via_lengths == 3 && stable, format!("gr {via_gr}, sampler {via_lengths} (stable {stable})"))?;
    let (pres, cert) = double_point_rees();
    let rep = ok(check_order_ideal_theorem(
        OrderIdealSetting::Rees {
            presentation: &pres,
            certificate: &cert,
            nmax: 4,
        },
        &x1,
        6,
    ))?;
    ensure(rep.passed(), format!("{:?}", rep.items))?;
    let nus = rep.values["nu(f)"].clone();
    let ds = rep.values["d"].clone();
    ensure(nus == serde_json::json!([2, 1]) && ds == serde_json::json!([1, 1]), format!("nu {nus}, d {ds}"))?;
    Ok(format!("e(R/x1R) = 3 by gr and by lengths {:?}; nu(x1) = {nus}, d = {ds}", tab.lengths()))
}

fn izumi() -> Outcome {
    let r = double_point();
    let (pres, cert) = double_point_rees();
    let g = ok(pres.lift(&poly(&r, "x1")))?;
    let mut nus = Vec::new();
    for (q, sep) in cert.primes.iter().zip(&cert.separators) {
        nus.push(ok(symbolic_order_along(q, &g, 6, sep))?.0 as u64);
    }
    let e_s = ok(multiplicity_graded(&ok(homogenization(&r, "X0"))?))?;
    ensure(nus == [2, 1] && nus[0] == (e_s - 1) * nus[1], format!("nu(x1) = {nus:?}, e(S) = {e_s}"))?;
    let fs: Vec<Polynomial> = ["x1", "x2", "x3", "x3^2", "x1 + x3", "x1*x2"].iter().map(|f| poly(&r, f)).collect();
    let rep = ok(check_uniform_izumi_multiplicity(&r, &fs, e_s, 3, 6))?;
    ensure(rep.passed(), format!("{:?}", rep.items))?;
    Ok(format!("nu1(x1) = 2 = (e(S)-1)*nu2(x1); e(R/fR) <= 3*ord(f) for {} elements", fs.len()))
}

fn main_theorem_a() -> Outcome {
    let r = double_point();
    let s = ok(homogenization(&r, "X0"))?;
    let mut p = ok(SymbolicPowers::new(&ideal(&r, &["x1", "x3"]), &Separator::Given(poly(&r, "x2"))))?;
    let mut m = ok(SymbolicPowers::new(&IdealHandle::variables(&r), &Separator::Auto))?;
    let rep = ok(check_main_theorem_a(&r, &s, &mut p, &mut m, 3))?;
    ensure(rep.passed(), format!("{:?}", rep.items))?;
    let labels: Vec<&str> = rep.items.iter().map(|i| i.label.as_str()).collect();
    Ok(format!("{} containments hold: {}", rep.items.len(), labels.join(", ")))
}

fn symbolic() -> Outcome {
    let a = polynomial_ring(&["x", "y", "z"]);
    for gens in [&["x"][..], &["x", "y"], &["x", "y", "z"], &["y", "z"]] {
        let p = ideal(&a, gens);
        let mut sp = ok(SymbolicPowers::new(&p, &Separator::Auto))?;
        for n in 1..=4 {
            ensure(ok(ok(sp.get(n))?.equals(&p.power(n)))?, format!("p^({n}) != p^{n} for {p}"))?;
        }
    }
    let p = ideal(&a, &["y^2 - x*z", "x^3 - y*z", "z^2 - x^2*y"]);
    let p2 = IdealHandle::new(&a, ok(p.power(2).reduced_generators())?).unwrap();
    let (sat, _) = ok(p2.saturate(&poly(&a, "x")))?;
    let forward = ok(sat.contains(&p2))?;
    let backward = ok(p2.contains(&sat))?;
    ensure(forward, "p^2 not inside its saturation")?;
    let witness = ok(p2.first_outside(&sat))?.map(|w| w.to_string()).unwrap_or_default();
    let verdict = if backward { "equal" } else { "strict" };
    ensure(!backward, "saturation equals p^2")?;
    Ok(format!("coordinate primes: p^(n) = p^n for n <= 4; curve prime: saturate(p^2, x) {verdict} (witness {witness})"))
}

fn multiplicities() -> Outcome {
    let a = polynomial_ring(&["x", "y"]);
    let mut parts = Vec::new();
    for (gens, want) in [(&["x^2", "y^3"][..], 6u64), (&["x^2", "x*y", "y^2"], 4), (&["x", "y"], 1)] {
        let i = ideal(&a, gens);
        let e = ok(monomial_multiplicity(&i))?;
        let tab = ok(length_sampler(&a, &i, None, 6))?;
        let (s, stable) = ok(multiplicity_from_table(&tab, 2))?;
        ensure(e == want && s == want && stable, format!("{i}: polyhedron {e}, sampler {s} (stable {stable})"))?;
        parts.push(format!("{i} -> {e}"));
    }
    let i = ideal(&a, &["x^2", "y^3"]);
    let fd = ok(facet_degrees(&i))?;
    let total: u64 = fd.iter().map(|(v, d)| v.value_on_ideal * d).sum();
    ensure(fd.len() == 1 && fd[0].1 == 1 && total == 6, format!("facet degrees {fd:?}"))?;
    Ok(format!("{}; e_I = nu(I)*d = 6*1", parts.join(", ")))
}

fn bound_finders() -> Outcome {
    let a = polynomial_ring(&["x", "y"]);
    let b = ok(find_min_briancon_skoda(&ideal(&a, &["x^2", "y^3"]), 6))?;
    ensure(b == 1, format!("B = {b}"))?;
    let r = double_point();
    let fixtures: [(Algebra, &str, Vec<&str>); 3] = [
        (a.clone(), "x", vec!["x^2", "y^3"]),
        (a.clone(), "x + y", vec!["x^2", "x*y", "y^2"]),
        (r.clone(), "x1", vec!["x1", "x2", "x3"]),
    ];
    let mut found = Vec::new();
    for (alg, c, gens) in &fixtures {
        let av = ok(find_min_artin_rees(&poly(alg, c), &ideal(alg, gens), 4))?;
        ensure(av <= 4, format!("A = {av}"))?;
        found.push(av);
    }
    let e_s = ok(multiplicity_graded(&ok(homogenization(&r, "X0"))?))?;
    let e_r = ok(local_multiplicity_via_gr(&r, None))?;
    let constants = UniformConstants {
        a: Constant::computed(found[2] as u64),
        b: Constant::user(1),
        c: Constant::computed(e_s),
        e_izumi: Constant::computed(e_s - 1),
        e_mult: Constant::computed(e_r),
        t: Constant::computed(1),
    };
    let mut p = ok(SymbolicPowers::new(&ideal(&r, &["x1", "x3"]), &Separator::Given(poly(&r, "x2"))))?;
    let mut m = ok(SymbolicPowers::new(&IdealHandle::variables(&r), &Separator::Auto))?;
    let rep = ok(check_improved_chevalley(&mut p, &mut m, &constants, 3, 64))?;
    ensure(rep.passed(), format!("{:?}", rep.items))?;
    Ok(format!(
        "B = {b}; A = {found:?}; C_emp = {}, formula constant = {}",
        rep.values["C_emp"], rep.values["formula_constant"]
    ))
}

fn determinism() -> Outcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    let mut files: Vec<_> = ok(std::fs::read_dir(&dir))?.map(|e| e.unwrap().path()).collect();
    files.retain(|p| p.extension().is_some_and(|e| e == "session"));
    files.sort();
    ensure(!files.is_empty(), "no fixture sessions")?;
    let opts = RunOptions {
        seed: 11,
        ..Default::default()
    };
    let suite = |o: &RunOptions| -> Result<String, String> {
        let mut out = String::new();
        for f in &files {
            let s = ok(parse_session(&ok(std::fs::read_to_string(f))?))?;
            out.push_str(&ok(run(&s, o))?.to_json());
        }
        Ok(out)
    };
    let first = suite(&opts)?;
    let second = suite(&opts)?;
    let parallel = suite(&RunOptions {
        parallel: true,
        ..opts.clone()
    })?;
    ensure(first == second, "reports differ between runs")?;
    ensure(first == parallel, "parallel report differs")?;
    Ok(format!("{} fixture sessions, {} bytes, identical across runs", files.len(), first.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("Groebner engine", groebner_engine),
        ("monomial valuation criterion", monomial_criterion),
        ("worked example", worked_example),
        ("order ideal instance", order_ideal),
        ("Izumi tightness and multiplicity bound", izumi),
        ("main theorem A sweep", main_theorem_a),
        ("symbolic powers", symbolic),
        ("multiplicity cross-checks", multiplicities),
        ("bound finders", bound_finders),
        ("determinism", determinism),
    ];
    let mut failures = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let res = match res {
            Ok(msg) if elapsed > LIMIT => Err(format!("took {elapsed:.1?}, over the limit ({msg})")),
            other => other,
        };
        match res {
            Ok(msg) => println!("criterion {:>2} PASS  {name} [{:.2?}]: {msg}", k + 1, elapsed),
            Err(msg) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} [{:.2?}]: {msg}", k + 1, elapsed);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}
