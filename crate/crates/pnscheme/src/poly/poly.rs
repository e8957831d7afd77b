use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, Rationals};
use super::monomial::{Monomial, MonomialOrder};
use super::PolyError;

/// Ordered list of variable names. Index 0 is the largest variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    names: Arc<Vec<String>>,
    index: Arc<HashMap<String, usize>>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Ring { names: Arc::new(names), index: Arc::new(index) })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn var(&self, name: &str) -> Result<Polynomial, PolyError> {
        let i = self.index_of(name).ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::monomial(Monomial::var(self.len(), i), BigRational::one()))
    }

    /// Sub-ring on the listed names, keeping this ring's relative order.
    pub fn restrict(&self, keep: &[String]) -> Result<Ring, PolyError> {
        for k in keep {
            if self.index_of(k).is_none() {
                return Err(PolyError::UnknownVariable(k.clone()));
            }
        }
        Ring::new(self.names.iter().filter(|n| keep.contains(n)).cloned())
    }
}

/// Sparse polynomial: terms sorted by decreasing lex monomial, no zero coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly<E> {
    terms: Vec<(Monomial, E)>,
    nvars: usize,
}

/// Polynomials over the rationals.
pub type Polynomial = Poly<BigRational>;

impl<E: Clone + PartialEq> Poly<E> {
    pub fn zero(nvars: usize) -> Self {
        Poly { terms: Vec::new(), nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.nvars];
        for (m, _) in &self.terms {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| used[i]).collect()
    }

    /// Leading term under `order`.
    pub fn leading(&self, order: &MonomialOrder) -> Option<&(Monomial, E)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }
}

impl<E: Clone + PartialEq> Poly<E> {
    pub fn monomial_in<F: Field<Elem = E>>(f: &F, m: Monomial, c: E) -> Self {
        let nvars = m.nvars();
        if f.is_zero(&c) {
            return Poly::zero(nvars);
        }
        Poly { terms: vec![(m, c)], nvars }
    }

    pub fn constant_in<F: Field<Elem = E>>(f: &F, nvars: usize, c: E) -> Self {
        Self::monomial_in(f, Monomial::one(nvars), c)
    }

    /// Builds from arbitrary terms, merging duplicates and dropping zeros.
    pub fn from_terms_in<F: Field<Elem = E>>(f: &F, nvars: usize, terms: impl IntoIterator<Item = (Monomial, E)>) -> Self {
        let mut map: BTreeMap<Monomial, E> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match map.get_mut(&m) {
                Some(acc) => *acc = f.add(acc, &c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        let terms = map.into_iter().rev().filter(|(_, c)| !f.is_zero(c)).collect();
        Poly { terms, nvars }
    }

    pub fn add_in<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        Self::from_terms_in(f, self.nvars, self.terms.iter().chain(other.terms.iter()).cloned())
    }

    pub fn sub_in<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        self.add_in(f, &other.neg_in(f))
    }

    pub fn neg_in<F: Field<Elem = E>>(&self, f: &F) -> Self {
        Poly { terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(), nvars: self.nvars }
    }

    pub fn scale_in<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Self {
        if f.is_zero(c) {
            return Poly::zero(self.nvars);
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(), nvars: self.nvars }
    }

    pub fn mul_in<F: Field<Elem = E>>(&self, f: &F, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push((m1.mul(m2), f.mul(c1, c2)));
            }
        }
        Self::from_terms_in(f, self.nvars, out)
    }

    pub fn pow_in<F: Field<Elem = E>>(&self, f: &F, e: u32) -> Self {
        let mut acc = Self::constant_in(f, self.nvars, f.one());
        for _ in 0..e {
            acc = acc.mul_in(f, self);
        }
        acc
    }

    /// Divides by the leading coefficient under `order`.
    pub fn monic_in<F: Field<Elem = E>>(&self, f: &F, order: &MonomialOrder) -> Self {
        match self.leading(order) {
            Some((_, c)) => {
                let inv = f.inv(c);
                self.scale_in(f, &inv)
            }
            None => self.clone(),
        }
    }

    /// Replaces variable `var` by the polynomial `value`.
    pub fn substitute_in<F: Field<Elem = E>>(&self, f: &F, var: usize, value: &Self) -> Self {
        let mut acc = Poly::zero(self.nvars);
        let mut powers: Vec<Self> = vec![Self::constant_in(f, self.nvars, f.one())];
        for (m, c) in &self.terms {
            let e = m.0[var] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul_in(f, value);
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[var] = 0;
            let term = Self::monomial_in(f, rest, c.clone()).mul_in(f, &powers[e]);
            acc = acc.add_in(f, &term);
        }
        acc
    }

    /// Moves the polynomial into another ring; `map[i]` is the new index of old variable `i`.
    pub fn remap(&self, map: &[Option<usize>], new_nvars: usize) -> Result<Self, usize> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0; new_nvars];
            for (i, &x) in m.0.iter().enumerate() {
                if x > 0 {
                    match map[i] {
                        Some(j) => e[j] += x,
                        None => return Err(i),
                    }
                }
            }
            terms.push((Monomial(e), c.clone()));
        }
        // Order can change under a remap; re-sort without merging (map is injective).
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        Ok(Poly { terms, nvars: new_nvars })
    }

    pub fn map_coeffs<G: Field>(&self, g: &G, h: impl Fn(&E) -> G::Elem) -> Poly<G::Elem> {
        Poly::from_terms_in(g, self.nvars, self.terms.iter().map(|(m, c)| (m.clone(), h(c))))
    }
}

impl Polynomial {
    pub fn monomial(m: Monomial, c: BigRational) -> Self {
        Self::monomial_in(&Rationals, m, c)
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Self::constant_in(&Rationals, nvars, c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, BigRational::one())
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        Self::from_terms_in(&Rationals, nvars, terms)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        self.scale_in(&Rationals, c)
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_in(&Rationals, e)
    }

    pub fn substitute(&self, var: usize, value: &Polynomial) -> Self {
        self.substitute_in(&Rationals, var, value)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.add_in(&Rationals, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.sub_in(&Rationals, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.mul_in(&Rationals, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.neg_in(&Rationals)
    }
}

/// Generators in a named ring.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    pub ring: Ring,
    pub gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: Ring, gens: Vec<Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring, gens }
    }

    /// Moves the generators into `target`, matching variables by name.
    pub fn into_ring(&self, target: &Ring) -> Result<Ideal, PolyError> {
        let map: Vec<Option<usize>> = self.ring.names().iter().map(|n| target.index_of(n)).collect();
        let mut gens = Vec::with_capacity(self.gens.len());
        for g in &self.gens {
            let moved = g
                .remap(&map, target.len())
                .map_err(|i| PolyError::UnknownVariable(self.ring.name(i).to_string()))?;
            gens.push(moved);
        }
        Ok(Ideal { ring: target.clone(), gens })
    }

    /// Renames variables; names absent from `renaming` are kept.
    pub fn rename(&self, renaming: &HashMap<String, String>) -> Result<Ideal, PolyError> {
        let names: Vec<String> =
            self.ring.names().iter().map(|n| renaming.get(n).cloned().unwrap_or_else(|| n.clone())).collect();
        let ring = Ring::new(names)?;
        Ok(Ideal { ring, gens: self.gens.clone() })
    }

    pub fn is_unit(&self) -> bool {
        self.gens.iter().any(|g| g.is_constant() && !g.is_zero())
    }
}
