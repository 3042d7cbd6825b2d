//! Small rings used throughout the tests, the acceptance suite and the CLI demos.

use crate::groebner::Budget;
use crate::ideal::IdealHandle;
use crate::poly::{parse_polynomial, Field, MonomialOrder, PolyRing, Polynomial, Ring};
use crate::rings::{extended_rees_presentation, AffineAlgebra, Algebra, Assertions, ExceptionalPrimeCertificate, ReesPresentation};
use crate::symbolic::Separator;

pub fn ring(vars: &[&str]) -> Ring {
    PolyRing::new(vars.iter().copied(), Field::Rational, MonomialOrder::GrevLex).expect("valid variables")
}

pub fn polynomial_ring(vars: &[&str]) -> Algebra {
    AffineAlgebra::polynomial(&ring(vars))
}

/// `k[x_1..x_n]/(rels)` with the given assertions.
pub fn algebra(vars: &[&str], rels: &[&str], assertions: Assertions) -> Algebra {
    let r = ring(vars);
    let m = rels.iter().map(|s| parse_polynomial(&r, s).expect("valid relation")).collect();
    AffineAlgebra::new(&r, m, assertions, Budget::default()).expect("proper modulus")
}

/// `Q[x1,x2,x3]/(x1·x2 + x3³)`, a normal surface with a rational double point
/// at the origin.
pub fn double_point() -> Algebra {
    algebra(
        &["x1", "x2", "x3"],
        &["x1*x2 + x3^3"],
        Assertions {
            domain: true,
            normal: true,
            standard_graded: false,
        },
    )
}

pub fn poly(alg: &Algebra, text: &str) -> Polynomial {
    parse_polynomial(alg.ring(), text).expect("valid polynomial")
}

/// The extended Rees presentation of the maximal ideal of [`double_point`],
/// asserted normal, with its two exceptional primes `(u, y1)`, `(u, y2)`,
/// both of value one on the maximal ideal.
pub fn double_point_rees() -> (ReesPresentation, ExceptionalPrimeCertificate) {
    let r = double_point();
    let pres = extended_rees_presentation(&r, &IdealHandle::variables(&r))
        .and_then(|p| {
            p.with_assertions(Assertions {
                domain: true,
                normal: true,
                standard_graded: false,
            })
        })
        .expect("presentation");
    let a = pres.algebra().clone();
    let (u, y1, y2) = (pres.u(), pres.y(0), pres.y(1));
    let q1 = a.ideal(vec![u.clone(), y1.clone()]).expect("same ring");
    let q2 = a.ideal(vec![u, y2.clone()]).expect("same ring");
    let cert = ExceptionalPrimeCertificate::new(vec![q1, q2], vec![1, 1], vec![Separator::Given(y2), Separator::Given(y1)])
        .expect("matching lengths");
    (pres, cert)
}
