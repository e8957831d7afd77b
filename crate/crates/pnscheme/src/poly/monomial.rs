use std::cmp::Ordering;

/// Dense exponent vector. Variable 0 is the largest variable in every order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }
}

/// Term orders on monomials of a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Grevlex on the flagged variables first, ties broken by grevlex on the rest.
    /// Any polynomial whose leading monomial avoids the flagged block lies entirely
    /// outside it, which is what elimination needs.
    Elimination(Vec<bool>),
}

impl MonomialOrder {
    pub fn elimination(nvars: usize, eliminated: &[usize]) -> Self {
        let mut mask = vec![false; nvars];
        for &i in eliminated {
            mask[i] = true;
        }
        MonomialOrder::Elimination(mask)
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex(a.0.iter().copied(), b.0.iter().copied(), a.degree(), b.degree()),
            MonomialOrder::Elimination(mask) => {
                block_grevlex(a, b, mask, true).then_with(|| block_grevlex(a, b, mask, false))
            }
        }
    }
}

fn block_grevlex(a: &Monomial, b: &Monomial, mask: &[bool], inside: bool) -> Ordering {
    let deg = |m: &Monomial| -> u32 { m.0.iter().zip(mask).filter(|(_, f)| **f == inside).map(|(e, _)| *e).sum() };
    let (da, db) = (deg(a), deg(b));
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..mask.len()).rev() {
        if mask[i] == inside && a.0[i] != b.0[i] {
            return b.0[i].cmp(&a.0[i]);
        }
    }
    Ordering::Equal
}

fn grevlex(
    a: impl DoubleEndedIterator<Item = u32>,
    b: impl DoubleEndedIterator<Item = u32>,
    da: u32,
    db: u32,
) -> Ordering {
    if da != db {
        return da.cmp(&db);
    }
    for (x, y) in a.rev().zip(b.rev()) {
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: &[u32]) -> Monomial {
        Monomial(v.to_vec())
    }

    #[test]
    fn grevlex_textbook_cases() {
        let o = MonomialOrder::Grevlex;
        // x^2 y z^2 < x y^3 z  (Cox-Little-O'Shea)
        assert_eq!(o.cmp(&m(&[1, 3, 1]), &m(&[2, 1, 2])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 2]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn elimination_order_prefers_eliminated_block() {
        let o = MonomialOrder::elimination(3, &[0]);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 2, 0]), &m(&[0, 1, 0])), Ordering::Greater);
    }
}
