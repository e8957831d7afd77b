use pnscheme::poly::{buchberger, eliminate, reduce, s_polynomial, Ideal, Limits, MonomialOrder};

use super::MacaulayOracle;

/// Macaulay-matrix degree for the oracle-to-engine direction.
pub const FORWARD_DEGREE: u32 = 5;
/// Largest Macaulay-matrix degree tried when certifying a computed generator.
pub const CERTIFY_DEGREE: u32 = 12;

/// Soundness of one Gröbner computation on `ideal`: S-pairs of the output reduce to
/// zero, the output is reduced and stable, and every input generator reduces to zero.
pub fn check_groebner(ideal: &Ideal, order: &MonomialOrder) -> Result<(), String> {
    let lim = Limits::default();
    let gb = buchberger(ideal, order, lim).map_err(|e| e.to_string())?;
    for (i, a) in gb.iter().enumerate() {
        for b in &gb[i + 1..] {
            if !reduce(&s_polynomial(a, b, order), &gb, order).is_zero() {
                return Err("S-polynomial does not reduce to zero".into());
            }
        }
        let (la, _) = a.leading(order).unwrap();
        for (j, b) in gb.iter().enumerate() {
            if i != j && b.terms().iter().any(|(m, _)| la.divides(m)) {
                return Err("basis is not reduced".into());
            }
        }
    }
    for g in &ideal.gens {
        if !reduce(g, &gb, order).is_zero() {
            return Err("generator not in the span of its basis".into());
        }
    }
    let again = buchberger(&Ideal::new(ideal.ring.clone(), gb.clone()), order, lim).map_err(|e| e.to_string())?;
    if again != gb {
        return Err("recomputing the basis changed it".into());
    }
    Ok(())
}

/// Elimination of `x0` against the Macaulay-matrix oracle: every element of
/// `I ∩ k[x1..]` the oracle finds in degree `FORWARD_DEGREE` lies in the computed
/// elimination ideal, and every computed generator is found by the oracle at some
/// degree up to `CERTIFY_DEGREE`.
pub fn check_elimination(ideal: &Ideal) -> Result<(), String> {
    let lim = Limits::default();
    let keep: Vec<String> = ideal.ring.names()[1..].to_vec();
    let elim = eliminate(ideal, &keep, lim).map_err(|e| e.to_string())?;
    let lifted = elim.into_ring(&ideal.ring).map_err(|e| e.to_string())?;
    let gb = buchberger(&lifted, &MonomialOrder::Grevlex, lim).map_err(|e| e.to_string())?;
    let oracle = MacaulayOracle::new(ideal, &[0], FORWARD_DEGREE);
    for row in oracle.kept_rows() {
        if !reduce(&row, &gb, &MonomialOrder::Grevlex).is_zero() {
            return Err("oracle element missing from the elimination ideal".into());
        }
    }
    for g in &lifted.gens {
        let dg = g.total_degree().unwrap_or(0);
        if !(dg..=CERTIFY_DEGREE.max(dg)).any(|d| MacaulayOracle::new(ideal, &[0], d).contains(g) == Some(true)) {
            return Err(format!("generator of degree {dg} not certified up to degree {CERTIFY_DEGREE}"));
        }
    }
    Ok(())
}
