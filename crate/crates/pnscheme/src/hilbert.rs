//! Macaulay representations, the Macaulay bracket, multigraded Hilbert functions and
//! the Gotzmann number of a stabilized Hilbert function.

use serde::Serialize;
use thiserror::Error;

use crate::poly::{buchberger, Ideal, Limits, Monomial, MonomialOrder, PolyError, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("generator {0} is not multihomogeneous for the block grading")]
    NotMultihomogeneous(usize),
    #[error("resource limit: {0}")]
    ResourceLimit(String),
    #[error("Hilbert function did not stabilize within degree {0}")]
    NotStabilized(u32),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Exact binomial coefficient; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Greedy `d`-binomial expansion `c = C(k_d, d) + C(k_{d-1}, d-1) + ... + C(k_δ, δ)`
/// with `k_d > k_{d-1} > ... > k_δ ≥ δ ≥ 1`. Returned as `(k_i, i)` from `i = d` down.
pub fn d_binomial_expansion(c: u64, d: u32) -> Result<Vec<(u64, u32)>, HilbertError> {
    if d == 0 {
        return Err(HilbertError::InvalidInput("degree must be positive".into()));
    }
    if c == 0 {
        return Err(HilbertError::InvalidInput("value must be positive".into()));
    }
    let mut rest = c as u128;
    let mut out = Vec::new();
    let mut i = d as u64;
    while rest > 0 && i >= 1 {
        // largest k with C(k, i) <= rest; C(i, i) = 1 <= rest always holds
        let mut k = i;
        while binomial(k + 1, i).is_some_and(|b| b <= rest) {
            k += 1;
        }
        rest -= binomial(k, i).unwrap();
        out.push((k, i as u32));
        i -= 1;
    }
    Ok(out)
}

/// `(k_d - d, ..., k_δ - δ)`.
pub fn macaulay_diff_set(c: u64, d: u32) -> Result<Vec<u64>, HilbertError> {
    Ok(d_binomial_expansion(c, d)?.into_iter().map(|(k, i)| k - i as u64).collect())
}

/// `c^<d> = Σ C(k_i + 1, i + 1)`; zero maps to zero.
pub fn macaulay_bracket(c: u64, d: u32) -> Result<u64, HilbertError> {
    if c == 0 {
        return Ok(0);
    }
    let mut acc: u128 = 0;
    for (k, i) in d_binomial_expansion(c, d)? {
        acc += binomial(k + 1, i as u64 + 1).ok_or_else(|| HilbertError::ResourceLimit("binomial overflow".into()))?;
    }
    u64::try_from(acc).map_err(|_| HilbertError::ResourceLimit("bracket exceeds u64".into()))
}

/// Partition of a ring's variables into blocks; multidegree counts degree per block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grading {
    pub blocks: Vec<Vec<usize>>,
}

impl Grading {
    /// Pairs each `x` with `x'`; unpaired variables form singleton blocks.
    pub fn from_primed_pairs(ring: &Ring) -> Self {
        let mut blocks = Vec::new();
        let mut used = vec![false; ring.len()];
        for i in 0..ring.len() {
            if used[i] {
                continue;
            }
            let name = ring.name(i);
            let partner = match name.strip_suffix('\'') {
                Some(base) => ring.index_of(base),
                None => ring.index_of(&format!("{name}'")),
            };
            let mut block = vec![i];
            used[i] = true;
            if let Some(j) = partner.filter(|&j| !used[j]) {
                block.push(j);
                used[j] = true;
            }
            block.sort_unstable();
            blocks.push(block);
        }
        Grading { blocks }
    }

    fn multidegree(&self, m: &Monomial) -> Vec<u32> {
        self.blocks.iter().map(|b| b.iter().map(|&i| m.0[i]).sum()).collect()
    }
}

/// Largest number of monomials enumerated for one degree.
pub const SLICE_CAP: u128 = 1_000_000;

/// `h(d) = dim (S/I)_{(d,...,d)}` for `d = 0..=d_max`, counted as standard monomials.
pub fn hilbert_function(ideal: &Ideal, grading: &Grading, d_max: u32) -> Result<Vec<u64>, HilbertError> {
    let n = ideal.ring.len();
    let covered: usize = grading.blocks.iter().map(Vec::len).sum();
    if covered != n {
        return Err(HilbertError::InvalidInput("grading must cover every variable exactly once".into()));
    }
    for (k, g) in ideal.gens.iter().enumerate() {
        let mut degs = g.terms().iter().map(|(m, _)| grading.multidegree(m));
        let first = degs.next();
        if degs.any(|d| Some(d) != first) {
            return Err(HilbertError::NotMultihomogeneous(k));
        }
    }
    let gb = buchberger(ideal, &MonomialOrder::Grevlex, Limits::default())?;
    let leads: Vec<Monomial> = gb.iter().filter_map(|g| g.leading(&MonomialOrder::Grevlex).map(|t| t.0.clone())).collect();

    let mut table = Vec::with_capacity(d_max as usize + 1);
    for d in 0..=d_max {
        let mut size: u128 = 1;
        for b in &grading.blocks {
            size = size.saturating_mul(binomial(d as u64 + b.len() as u64 - 1, b.len() as u64 - 1).unwrap_or(u128::MAX));
        }
        if size > SLICE_CAP {
            return Err(HilbertError::ResourceLimit(format!("degree {d} slice has {size} monomials")));
        }
        let mut count = 0u64;
        let mut m = Monomial::one(n);
        count_standard(&grading.blocks, 0, d, &mut m, &leads, &mut count);
        table.push(count);
    }
    Ok(table)
}

fn count_standard(blocks: &[Vec<usize>], bi: usize, d: u32, m: &mut Monomial, leads: &[Monomial], count: &mut u64) {
    if bi == blocks.len() {
        if !leads.iter().any(|l| l.divides(m)) {
            *count += 1;
        }
        return;
    }
    fill_block(blocks, bi, 0, d, d, m, leads, count);
}

#[allow(clippy::too_many_arguments)]
fn fill_block(blocks: &[Vec<usize>], bi: usize, pos: usize, left: u32, d: u32, m: &mut Monomial, leads: &[Monomial], count: &mut u64) {
    let block = &blocks[bi];
    let v = block[pos];
    if pos + 1 == block.len() {
        m.0[v] = left;
        count_standard(blocks, bi + 1, d, m, leads, count);
        m.0[v] = 0;
        return;
    }
    for e in 0..=left {
        m.0[v] = e;
        fill_block(blocks, bi, pos + 1, left - e, d, m, leads, count);
    }
    m.0[v] = 0;
}

/// Stabilization data of a Hilbert function table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gotzmann {
    /// First degree from which `h(d+1) = h(d)^<d>` holds throughout the table.
    pub j: u32,
    pub gotzmann: usize,
    pub diff_set: Vec<u64>,
}

/// Consecutive degrees on which the ladder identity must hold before `j` is declared.
pub const CONFIRMATIONS: u32 = 3;

/// Finds `j` and reads the Gotzmann number off `M_j(h(j))`. `table[d] = h(d)`.
pub fn gotzmann_number(table: &[u64]) -> Result<Gotzmann, HilbertError> {
    let d_max = table.len().saturating_sub(1) as u32;
    let holds = |d: u32| -> Result<bool, HilbertError> {
        Ok(macaulay_bracket(table[d as usize], d)? == table[d as usize + 1])
    };
    let mut ladder = Vec::new();
    for d in 1..d_max {
        ladder.push(holds(d)?);
    }
    // ladder[k] refers to degree k + 1
    for start in 0..ladder.len() {
        if ladder[start..].iter().all(|&b| b) && (ladder.len() - start) as u32 >= CONFIRMATIONS {
            let j = start as u32 + 1;
            let c = table[j as usize];
            let diff_set = if c == 0 { Vec::new() } else { macaulay_diff_set(c, j)? };
            return Ok(Gotzmann { j, gotzmann: diff_set.len(), diff_set });
        }
    }
    Err(HilbertError::NotStabilized(d_max))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_ideal;

    #[test]
    fn expansion_of_27_in_degree_4() {
        assert_eq!(d_binomial_expansion(27, 4).unwrap(), vec![(6, 4), (5, 3), (2, 2), (1, 1)]);
        assert_eq!(macaulay_diff_set(27, 4).unwrap(), vec![2, 2, 0, 0]);
        assert_eq!(macaulay_bracket(27, 4).unwrap(), 38);
    }

    #[test]
    fn bracket_of_odd_line() {
        for d in 1..20u32 {
            let c = 2 * d as u64 + 1;
            if d >= 2 {
                assert_eq!(macaulay_bracket(c, d).unwrap(), c + 2);
            }
        }
        assert!(d_binomial_expansion(0, 3).is_err());
        assert!(d_binomial_expansion(3, 0).is_err());
    }

    #[test]
    fn diagonal_minor_hilbert_and_gotzmann() {
        let i = parse_ideal("# vars: m1 m1' m2 m2'\nm1*m2' - m1'*m2", None).unwrap();
        let g = Grading::from_primed_pairs(&i.ring);
        let h = hilbert_function(&i, &g, 8).unwrap();
        assert_eq!(h, (0..=8).map(|d| 2 * d + 1).collect::<Vec<u64>>());
        let got = gotzmann_number(&h).unwrap();
        assert_eq!((got.j, got.gotzmann), (2, 2));
    }

    #[test]
    fn constant_and_linear_tables() {
        assert_eq!(gotzmann_number(&[1; 8]).unwrap().gotzmann, 1);
        let lin: Vec<u64> = (0..8).map(|d| d + 1).collect();
        assert_eq!(gotzmann_number(&lin).unwrap().gotzmann, 1);
        assert!(matches!(gotzmann_number(&[1, 3, 5]), Err(HilbertError::NotStabilized(_))));
    }

    #[test]
    fn rejects_inhomogeneous_generators() {
        let i = parse_ideal("# vars: a a'\na - 1", None).unwrap();
        let g = Grading::from_primed_pairs(&i.ring);
        assert!(matches!(hilbert_function(&i, &g, 2), Err(HilbertError::NotMultihomogeneous(0))));
    }
}
