//! Sparse multivariate polynomials over exact fields, Buchberger, elimination.

mod field;
mod groebner;
mod monomial;
#[allow(clippy::module_inception)]
mod poly;
mod text;

pub use field::{parse_field_spec, Field, PrimeField, Rationals};
pub use groebner::{buchberger, buchberger_over, contains, eliminate, eliminate_over, groebner_in, ideal_equal, reduce, reduce_in, s_polynomial, Limits};
pub use monomial::{Monomial, MonomialOrder};
pub use poly::{Ideal, Poly, Polynomial, Ring};
pub use text::{format_ideal, format_polynomial, is_valid_variable, parse_ideal, parse_order, parse_polynomial};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("{0} is not a prime below 2^31")]
    BadModulus(u64),
    #[error("denominator of {value} vanishes mod {p}")]
    DenominatorVanishes { value: String, p: u64 },
}

/// Sets every variable selected by `primed` to 1 and drops it from the ring.
pub fn dehomogenize(ideal: &Ideal, primed: impl Fn(&str) -> bool) -> Ideal {
    let n = ideal.ring.len();
    let kept: Vec<String> = ideal.ring.names().iter().filter(|v| !primed(v)).cloned().collect();
    let ring = Ring::new(kept).expect("subset of distinct names");
    let map: Vec<Option<usize>> = ideal.ring.names().iter().map(|v| ring.index_of(v)).collect();
    let gens = ideal
        .gens
        .iter()
        .map(|g| {
            let terms = g.terms().iter().map(|(m, c)| {
                let mut e = vec![0; ring.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    if let Some(j) = map[i] {
                        e[j] += x;
                    }
                }
                (Monomial(e), c.clone())
            });
            debug_assert_eq!(g.nvars(), n);
            Polynomial::from_terms(ring.len(), terms)
        })
        .collect();
    Ideal::new(ring, gens)
}

/// Convenience: ideal from text generators in a ring built by first appearance.
pub fn ideal_from_strs(gens: &[&str]) -> Result<Ideal, PolyError> {
    parse_ideal(&gens.join("\n"), None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lex_gb(gens: &[&str], vars: &str) -> (Ring, Vec<Polynomial>) {
        let text = format!("# vars: {vars}\n{}", gens.join("\n"));
        let ideal = parse_ideal(&text, None).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::Lex, Limits::default()).unwrap();
        (ideal.ring, gb)
    }

    #[test]
    fn chain_of_differences() {
        let (ring, gb) = lex_gb(&["x - y", "y - z"], "x y z");
        let shown: Vec<String> = gb.iter().map(|g| format_polynomial(&ring, g, &MonomialOrder::Lex)).collect();
        assert_eq!(shown, vec!["x - z", "y - z"]);
        let f = parse_polynomial(&ring, "x - z").unwrap();
        let divisors = vec![parse_polynomial(&ring, "x - y").unwrap(), parse_polynomial(&ring, "y - z").unwrap()];
        assert!(reduce(&f, &divisors, &MonomialOrder::Lex).is_zero());
    }

    #[test]
    fn twisted_cubic_grevlex() {
        let ideal = parse_ideal("# vars: x y z w\nx*z - y^2\ny*w - z^2\nx*w - y*z", None).unwrap();
        let gb = buchberger(&ideal, &MonomialOrder::Grevlex, Limits::default()).unwrap();
        assert_eq!(gb.len(), 3);
        for a in &gb {
            for b in &gb {
                let s = s_polynomial(a, b, &MonomialOrder::Grevlex);
                assert!(reduce(&s, &gb, &MonomialOrder::Grevlex).is_zero());
            }
        }
    }

    #[test]
    fn unit_and_inequality() {
        let i = ideal_from_strs(&["x - 1", "x - 2"]).unwrap();
        let gb = buchberger(&i, &MonomialOrder::Grevlex, Limits::default()).unwrap();
        assert_eq!(gb.len(), 1);
        assert!(gb[0].is_constant());
        let a = ideal_from_strs(&["x - y"]).unwrap();
        let b = ideal_from_strs(&["x - y", "x^2"]).unwrap();
        assert!(!ideal_equal(&a, &b, Limits::default()).unwrap());
        assert!(ideal_equal(&b, &ideal_from_strs(&["x^2", "y - x", "x*y"]).unwrap(), Limits::default()).unwrap());
    }

    #[test]
    fn elimination_keeps_projection() {
        let i = parse_ideal("# vars: t x y\nx - t^2\ny - t^3", None).unwrap();
        let e = eliminate(&i, &["x".into(), "y".into()], Limits::default()).unwrap();
        assert_eq!(e.gens.len(), 1);
        assert_eq!(format_polynomial(&e.ring, &e.gens[0], &MonomialOrder::Grevlex), "x^3 - y^2");
    }

    #[test]
    fn degree_cap_is_reported() {
        let i = parse_ideal("# vars: x y\nx^3 - y^2\nx*y^2 - 1", None).unwrap();
        let tight = Limits { max_degree: 2, max_basis: 100 };
        assert!(matches!(buchberger(&i, &MonomialOrder::Grevlex, tight), Err(PolyError::ResourceLimit(_))));
    }

    #[test]
    fn prime_field_bases_use_symmetric_representatives() {
        let f7 = PrimeField::new(7).unwrap();
        let i = ideal_from_strs(&["2*x - 1", "y^2 - 8"]).unwrap();
        let gb = buchberger_over(&i, Some(&f7), &MonomialOrder::Grevlex, Limits::default()).unwrap();
        let shown: Vec<String> = gb.iter().map(|g| format_polynomial(&i.ring, g, &MonomialOrder::Grevlex)).collect();
        assert_eq!(shown, ["y^2 - 1", "x + 3"]);
        let unit = ideal_from_strs(&["7*x + 1"]).unwrap();
        assert!(buchberger_over(&unit, Some(&f7), &MonomialOrder::Grevlex, Limits::default()).unwrap()[0].is_constant());
        let e = eliminate_over(&ideal_from_strs(&["x - 3*y", "y - 5"]).unwrap(), &["x".into()], Some(&f7), Limits::default()).unwrap();
        assert_eq!(format_polynomial(&e.ring, &e.gens[0], &MonomialOrder::Grevlex), "x - 1");
    }

    #[test]
    fn dehomogenize_drops_only_selected() {
        let i = parse_ideal("# vars: g1 g1' g2 g2' y1'\ng1'*g2 - y1'*g1'*g2' - g1*g2'", None).unwrap();
        let d = dehomogenize(&i, |v| v.starts_with('g') && v.ends_with('\''));
        assert_eq!(format_polynomial(&d.ring, &d.gens[0], &MonomialOrder::Grevlex), "-g1 + g2 - y1'");
    }

    #[test]
    fn prime_field_agrees_on_small_system() {
        let fp = PrimeField::new(101).unwrap();
        let i = ideal_from_strs(&["x^2 - 2*y", "x*y - 1"]).unwrap();
        let q = buchberger(&i, &MonomialOrder::Lex, Limits::default()).unwrap();
        let gens: Vec<_> = i.gens.iter().map(|g| g.map_coeffs(&fp, |c| fp.from_rational(c).unwrap())).collect();
        let p = groebner_in(&fp, &gens, &MonomialOrder::Lex, Limits::default()).unwrap();
        let q_mod: Vec<_> = q.iter().map(|g| g.map_coeffs(&fp, |c| fp.from_rational(c).unwrap())).collect();
        assert_eq!(p, q_mod);
    }
}
