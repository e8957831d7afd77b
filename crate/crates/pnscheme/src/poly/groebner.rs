use std::cmp::Ordering;

use super::field::{Field, PrimeField, Rationals};
use super::monomial::{Monomial, MonomialOrder};
use super::poly::{Ideal, Poly, Polynomial, Ring};
use super::PolyError;

/// Caps that turn a runaway Buchberger run into [`PolyError::ResourceLimit`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest total degree of an S-pair lcm that will be processed.
    pub max_degree: u32,
    /// Largest number of polynomials ever added to the working basis.
    pub max_basis: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 40, max_basis: 10_000 }
    }
}

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
struct OPoly<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: Clone + PartialEq> OPoly<E> {
    fn from_poly(p: &Poly<E>, order: &MonomialOrder) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        OPoly { terms }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `a - c * q * b`, with both inputs sorted under `order`.
fn sub_scaled<F: Field>(
    f: &F,
    order: &MonomialOrder,
    a: &[(Monomial, F::Elem)],
    c: &F::Elem,
    q: &Monomial,
    b: &[(Monomial, F::Elem)],
) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let shifted = |k: usize| -> (Monomial, F::Elem) { (b[k].0.mul(q), f.neg(&f.mul(c, &b[k].1))) };
    while i < a.len() || j < b.len() {
        if j == b.len() {
            out.push(a[i].clone());
            i += 1;
            continue;
        }
        let (bm, bc) = shifted(j);
        if i == a.len() {
            out.push((bm, bc));
            j += 1;
            continue;
        }
        match order.cmp(&a[i].0, &bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((bm, bc));
                j += 1;
            }
            Ordering::Equal => {
                let s = f.add(&a[i].1, &bc);
                if !f.is_zero(&s) {
                    out.push((bm, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by monic divisors; the first divisor (in list order) whose
/// leading monomial divides the current term is used.
fn normal_form<F: Field>(f: &F, order: &MonomialOrder, p: Vec<(Monomial, F::Elem)>, divisors: &[&OPoly<F::Elem>]) -> Vec<(Monomial, F::Elem)> {
    let mut rem = Vec::new();
    let mut cur = p;
    while !cur.is_empty() {
        let (lm, lc) = cur[0].clone();
        match divisors.iter().find(|g| g.lm().divides(&lm)) {
            Some(g) => {
                let lcg = &g.terms[0].1;
                let c = f.mul(&lc, &f.inv(lcg));
                let q = g.lm().quotient_of(&lm);
                cur = sub_scaled(f, order, &cur, &c, &q, &g.terms);
            }
            None => {
                rem.push((lm, lc));
                cur.remove(0);
            }
        }
    }
    rem
}

fn make_monic<F: Field>(f: &F, terms: Vec<(Monomial, F::Elem)>) -> OPoly<F::Elem> {
    if terms.is_empty() || f.is_one(&terms[0].1) {
        return OPoly { terms };
    }
    let inv = f.inv(&terms[0].1);
    OPoly { terms: terms.into_iter().map(|(m, c)| (m, f.mul(&c, &inv))).collect() }
}

fn to_poly<F: Field>(f: &F, nvars: usize, p: &OPoly<F::Elem>) -> Poly<F::Elem> {
    Poly::from_terms_in(f, nvars, p.terms.iter().cloned())
}

/// Remainder of `p` under the division algorithm with the given divisors.
pub fn reduce_in<F: Field>(f: &F, p: &Poly<F::Elem>, divisors: &[Poly<F::Elem>], order: &MonomialOrder) -> Poly<F::Elem> {
    let ds: Vec<OPoly<F::Elem>> = divisors.iter().filter(|d| !d.is_zero()).map(|d| OPoly::from_poly(d, order)).collect();
    let refs: Vec<&OPoly<F::Elem>> = ds.iter().collect();
    let rem = normal_form(f, order, OPoly::from_poly(p, order).terms, &refs);
    Poly::from_terms_in(f, p.nvars(), rem)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis, monic, sorted by decreasing leading monomial.
pub fn groebner_in<F: Field>(f: &F, gens: &[Poly<F::Elem>], order: &MonomialOrder, limits: Limits) -> Result<Vec<Poly<F::Elem>>, PolyError> {
    let nvars = match gens.first() {
        Some(g) => g.nvars(),
        None => return Ok(Vec::new()),
    };
    let mut store: Vec<OPoly<F::Elem>> = Vec::new();
    let mut basis: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    for g in gens {
        let active: Vec<&OPoly<F::Elem>> = basis.iter().map(|&k| &store[k]).collect();
        let h = make_monic(f, normal_form(f, order, OPoly::from_poly(g, order).terms, &active));
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(vec![Poly::constant_in(f, nvars, f.one())]);
        }
        store.push(h);
        update(&store, &mut basis, &mut pairs, store.len() - 1);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| order.cmp(&pairs[a].lcm, &pairs[b].lcm).then((pairs[a].i, pairs[a].j).cmp(&(pairs[b].i, pairs[b].j))))
            .unwrap();
        let pair = pairs.swap_remove(best);
        if pair.lcm.degree() > limits.max_degree {
            return Err(PolyError::ResourceLimit(format!("S-pair degree {} exceeds cap {}", pair.lcm.degree(), limits.max_degree)));
        }
        let (a, b) = (&store[pair.i], &store[pair.j]);
        let qa = a.lm().quotient_of(&pair.lcm);
        let qb = b.lm().quotient_of(&pair.lcm);
        let scaled_a: Vec<_> = a.terms.iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
        let s = sub_scaled(f, order, &scaled_a, &f.one(), &qb, &b.terms);
        let active: Vec<&OPoly<F::Elem>> = basis.iter().map(|&k| &store[k]).collect();
        let h = make_monic(f, normal_form(f, order, s, &active));
        if h.is_zero() {
            continue;
        }
        if h.lm().is_one() {
            return Ok(vec![Poly::constant_in(f, nvars, f.one())]);
        }
        if store.len() >= limits.max_basis {
            return Err(PolyError::ResourceLimit(format!("basis size exceeds cap {}", limits.max_basis)));
        }
        store.push(h);
        update(&store, &mut basis, &mut pairs, store.len() - 1);
    }

    // `basis` is minimal; interreduce tails.
    let mut reduced: Vec<OPoly<F::Elem>> = Vec::with_capacity(basis.len());
    for (pos, &k) in basis.iter().enumerate() {
        let others: Vec<&OPoly<F::Elem>> = basis.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &o)| &store[o]).collect();
        let g = &store[k];
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(normal_form(f, order, g.terms[1..].to_vec(), &others));
        reduced.push(OPoly { terms });
    }
    reduced.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    Ok(reduced.iter().map(|p| to_poly(f, nvars, p)).collect())
}

/// Gebauer–Möller pair update for the new basis element `h`.
fn update<E: Clone + PartialEq>(store: &[OPoly<E>], basis: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize) {
    let lh = store[h].lm().clone();
    let mut c: Vec<(usize, Monomial)> = basis.iter().map(|&g| (g, lh.lcm(store[g].lm()))).collect();
    let mut d: Vec<(usize, Monomial)> = Vec::new();
    while let Some((g1, l1)) = c.pop() {
        let coprime = lh.coprime(store[g1].lm());
        let dominated = c.iter().chain(d.iter()).any(|(_, l2)| l2.divides(&l1));
        if coprime || !dominated {
            d.push((g1, l1));
        }
    }
    let new_pairs: Vec<Pair> = d
        .into_iter()
        .filter(|(g, _)| !lh.coprime(store[*g].lm()))
        .map(|(g, lcm)| Pair { i: g.min(h), j: g.max(h), lcm })
        .collect();
    pairs.retain(|p| {
        if !lh.divides(&p.lcm) {
            return true;
        }
        let l1 = store[p.i].lm().lcm(&lh);
        let l2 = store[p.j].lm().lcm(&lh);
        l1 == p.lcm || l2 == p.lcm
    });
    pairs.extend(new_pairs);
    basis.retain(|&g| !lh.divides(store[g].lm()));
    basis.push(h);
}

/// Remainder of `f` divided by `basis` (division algorithm, divisors tried in order).
pub fn reduce(f: &Polynomial, basis: &[Polynomial], order: &MonomialOrder) -> Polynomial {
    reduce_in(&Rationals, f, basis, order)
}

/// Reduced Gröbner basis of the ideal over the rationals.
pub fn buchberger(ideal: &Ideal, order: &MonomialOrder, limits: Limits) -> Result<Vec<Polynomial>, PolyError> {
    if ideal.gens.is_empty() {
        return Ok(Vec::new());
    }
    groebner_in(&Rationals, &ideal.gens, order, limits)
}

/// `I ∩ k[keep]`, returned as a reduced grevlex basis in the ring of kept variables.
pub fn eliminate(ideal: &Ideal, keep: &[String], limits: Limits) -> Result<Ideal, PolyError> {
    eliminate_over(ideal, keep, None, limits)
}

/// Reduced Gröbner basis over the rationals, or over `F_p` when `prime` is given.
/// Prime-field coefficients come back as their symmetric representatives.
pub fn buchberger_over(
    ideal: &Ideal,
    prime: Option<&PrimeField>,
    order: &MonomialOrder,
    limits: Limits,
) -> Result<Vec<Polynomial>, PolyError> {
    let Some(p) = prime else { return buchberger(ideal, order, limits) };
    let mut gens = Vec::with_capacity(ideal.gens.len());
    for g in &ideal.gens {
        let mut terms = Vec::with_capacity(g.len());
        for (m, c) in g.terms() {
            terms.push((m.clone(), p.from_rational(c)?));
        }
        gens.push(Poly::from_terms_in(p, g.nvars(), terms));
    }
    let gb = groebner_in(p, &gens, order, limits)?;
    Ok(gb.iter().map(|g| g.map_coeffs(&Rationals, |c| p.to_rational(c))).filter(|g| !g.is_zero()).collect())
}

/// [`eliminate`] over the rationals or `F_p`.
pub fn eliminate_over(ideal: &Ideal, keep: &[String], prime: Option<&PrimeField>, limits: Limits) -> Result<Ideal, PolyError> {
    let sub = ideal.ring.restrict(keep)?;
    let elim: Vec<usize> = (0..ideal.ring.len()).filter(|&i| !keep.contains(&ideal.ring.names()[i])).collect();
    let order = MonomialOrder::elimination(ideal.ring.len(), &elim);
    let gb = buchberger_over(ideal, prime, &order, limits)?;
    let kept: Vec<Polynomial> = gb.into_iter().filter(|g| g.variables().iter().all(|v| !elim.contains(v))).collect();
    let moved = Ideal::new(ideal.ring.clone(), kept).into_ring(&sub)?;
    let reduced = buchberger_over(&moved, prime, &MonomialOrder::Grevlex, limits)?;
    Ok(Ideal::new(sub, reduced))
}

/// Whether two ideals (possibly in different rings) are equal in the union ring.
pub fn ideal_equal(a: &Ideal, b: &Ideal, limits: Limits) -> Result<bool, PolyError> {
    let mut names: Vec<String> = a.ring.names().to_vec();
    for n in b.ring.names() {
        if !names.contains(n) {
            names.push(n.clone());
        }
    }
    let ring = Ring::new(names)?;
    let ga = buchberger(&a.into_ring(&ring)?, &MonomialOrder::Grevlex, limits)?;
    let gb = buchberger(&b.into_ring(&ring)?, &MonomialOrder::Grevlex, limits)?;
    Ok(ga == gb)
}

/// Membership test via a Gröbner basis.
pub fn contains(ideal: &Ideal, p: &Polynomial, limits: Limits) -> Result<bool, PolyError> {
    let order = MonomialOrder::Grevlex;
    let gb = buchberger(ideal, &order, limits)?;
    Ok(reduce(p, &gb, &order).is_zero())
}

/// S-polynomial of two polynomials, exposed for basis certification.
pub fn s_polynomial(a: &Polynomial, b: &Polynomial, order: &MonomialOrder) -> Polynomial {
    let f = Rationals;
    let (oa, ob) = (OPoly::from_poly(a, order), OPoly::from_poly(b, order));
    if oa.is_zero() || ob.is_zero() {
        return Poly::zero(a.nvars());
    }
    let (oa, ob) = (make_monic(&f, oa.terms), make_monic(&f, ob.terms));
    let l = oa.lm().lcm(ob.lm());
    let qa = oa.lm().quotient_of(&l);
    let qb = ob.lm().quotient_of(&l);
    let scaled: Vec<_> = oa.terms.iter().map(|(m, c)| (m.mul(&qa), c.clone())).collect();
    let s = sub_scaled(&f, order, &scaled, &f.one(), &qb, &ob.terms);
    Poly::from_terms_in(&f, a.nvars(), s)
}
