#![allow(dead_code)]

pub mod checks;

use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use pnscheme::net::{church, ProofNet};
use pnscheme::poly::{Ideal, Monomial, Polynomial, Ring};
use rand::Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture(name: &str) -> ProofNet {
    let path = fixture_dir().join(format!("{name}.json"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    ProofNet::from_json(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Fixture names with the given prefix, sorted.
pub fn fixtures_with_prefix(prefix: &str) -> Vec<String> {
    let mut out: Vec<String> = std::fs::read_dir(fixture_dir())
        .unwrap()
        .filter_map(|e| {
            let name = e.unwrap().file_name().into_string().unwrap();
            let stem = name.strip_suffix(".json")?.to_string();
            stem.starts_with(prefix).then_some(stem)
        })
        .collect();
    out.sort();
    out
}

/// Exponential-free nets: the linear fixtures and the identity numeral.
pub fn mll_corpus() -> Vec<(String, ProofNet)> {
    let mut out: Vec<(String, ProofNet)> = fixtures_with_prefix("")
        .into_iter()
        .map(|n| (n.clone(), fixture(&n)))
        .filter(|(_, net)| net.edges().values().all(|f| f.is_linear()))
        .collect();
    out.push(("church0".into(), church(0)));
    out
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Random ideal in `x0..x{n-1}`: up to three generators of up to three terms,
/// total degree at most 3, small integer coefficients.
pub fn random_ideal<R: Rng>(rng: &mut R) -> Ideal {
    let n = rng.gen_range(2..=4);
    let ring = Ring::new((0..n).map(|i| format!("x{i}"))).unwrap();
    let gens = (0..rng.gen_range(1..=3))
        .map(|_| {
            let terms = (0..rng.gen_range(1..=3)).map(|_| {
                let mut e = vec![0u32; n];
                for _ in 0..rng.gen_range(0..=3) {
                    e[rng.gen_range(0..n)] += 1;
                }
                let mut c = rng.gen_range(-3..=3);
                if c == 0 {
                    c = 1;
                }
                (Monomial(e), rat(c))
            });
            Polynomial::from_terms(n, terms)
        })
        .collect();
    Ideal::new(ring, gens)
}

/// All exponent vectors in `n` variables of total degree at most `d`.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(i: usize, n: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            rec(i + 1, n, left - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// Row-reduced span of `{m * g : deg(m g) <= d}`; columns put monomials touching an
/// eliminated variable first, so rows led by a kept-only column lie in `k[keep]`.
pub struct MacaulayOracle {
    pub columns: Vec<Vec<u32>>,
    pub rows: Vec<(usize, Vec<BigRational>)>,
    pub eliminated: Vec<usize>,
}

impl MacaulayOracle {
    pub fn new(ideal: &Ideal, eliminated: &[usize], d: u32) -> Self {
        let n = ideal.ring.len();
        let mut columns = monomials_up_to(n, d);
        columns.sort_by_key(|m| (!eliminated.iter().any(|&i| m[i] > 0), std::cmp::Reverse(m.iter().sum::<u32>()), m.clone()));
        let index = |m: &[u32]| columns.iter().position(|c| c == m).unwrap();
        let mut raw: Vec<Vec<BigRational>> = Vec::new();
        for g in &ideal.gens {
            let gd = g.total_degree().unwrap_or(0);
            if gd > d {
                continue;
            }
            for m in monomials_up_to(n, d - gd) {
                let mut row = vec![BigRational::zero(); columns.len()];
                for (t, c) in g.terms() {
                    let e: Vec<u32> = t.0.iter().zip(&m).map(|(a, b)| a + b).collect();
                    row[index(&e)] += c;
                }
                raw.push(row);
            }
        }
        let rows = rref(raw);
        MacaulayOracle { columns, rows, eliminated: eliminated.to_vec() }
    }

    fn vector(&self, p: &Polynomial) -> Option<Vec<BigRational>> {
        let mut v = vec![BigRational::zero(); self.columns.len()];
        for (m, c) in p.terms() {
            let i = self.columns.iter().position(|col| col == &m.0)?;
            v[i] = c.clone();
        }
        Some(v)
    }

    /// Whether `p` is a combination of the rows; `None` if `p` exceeds the degree bound.
    pub fn contains(&self, p: &Polynomial) -> Option<bool> {
        let mut v = self.vector(p)?;
        for (lead, row) in &self.rows {
            if !v[*lead].is_zero() {
                let f = v[*lead].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &f * r;
                }
            }
        }
        Some(v.iter().all(Zero::is_zero))
    }

    /// Rows free of eliminated variables, as polynomials.
    pub fn kept_rows(&self) -> Vec<Polynomial> {
        let n = self.columns[0].len();
        self.rows
            .iter()
            .filter(|(lead, _)| !self.eliminated.iter().any(|&i| self.columns[*lead][i] > 0))
            .map(|(_, row)| {
                Polynomial::from_terms(
                    n,
                    row.iter().zip(&self.columns).filter(|(c, _)| !c.is_zero()).map(|(c, m)| (Monomial(m.clone()), c.clone())),
                )
            })
            .collect()
    }
}

fn rref(mut rows: Vec<Vec<BigRational>>) -> Vec<(usize, Vec<BigRational>)> {
    let mut out: Vec<(usize, Vec<BigRational>)> = Vec::new();
    let width = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &f * y;
                }
            }
        }
        out.push((col, pivot));
        r += 1;
    }
    out
}

/// Exhaustive search for decreasing representations `c = Σ C(k_i, i)` with
/// `k_d > k_{d-1} > ... > k_δ ≥ δ ≥ 1`, independent of the greedy construction.
pub fn all_expansions(c: u64, d: u32) -> Vec<Vec<(u64, u32)>> {
    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
    }
    fn rec(rest: u64, i: u32, max_k: u64, cur: &mut Vec<(u64, u32)>, out: &mut Vec<Vec<(u64, u32)>>) {
        if rest == 0 && !cur.is_empty() {
            out.push(cur.clone());
        }
        if i == 0 || rest == 0 {
            return;
        }
        for k in (i as u64)..max_k {
            let b = binom(k, i as u64);
            if b > rest {
                break;
            }
            cur.push((k, i));
            rec(rest - b, i - 1, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(c, d, c + d as u64 + 1, &mut Vec::new(), &mut out);
    out
}
