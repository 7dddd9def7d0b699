//! Monomials as exponent vectors and the four supported term orders.
//!
//! Conventions: `lex` and `tdlex` treat the first coordinate (x) as dominant,
//! `inlex` and `tdinlex` the last coordinate (y); the total-degree orders
//! compare total degree first. Generic dimension is supported everywhere.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// An exponent vector. The derived `Ord` is storage order only, never a term
/// order; use [`TermOrder::compare`] for semantic comparisons.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    pub fn var(dim: usize, idx: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[idx] = 1;
        Monomial { exps }
    }

    /// x^i y^j in the bivariate ring.
    pub fn xy(i: u32, j: u32) -> Self {
        Monomial { exps: vec![i, j] }
    }

    pub fn dim(&self) -> usize {
        self.exps.len()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn mul_var(&self, idx: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[idx] += 1;
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.dim() == other.dim() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial {
                exps: self
                    .exps
                    .iter()
                    .zip(&other.exps)
                    .map(|(a, b)| a - b)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.dim(), other.dim());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }
}

/// Variable names used for rendering: x, y, z up to dimension 3, x1..xd above.
pub fn var_names(dim: usize) -> Vec<String> {
    if dim <= 3 {
        ["x", "y", "z"][..dim].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=dim).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let names = var_names(self.dim());
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| format!("{}^{}", names[i], e))
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TermOrder {
    Lex,
    Inlex,
    Tdlex,
    Tdinlex,
}

impl TermOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.dim() != b.dim() {
            return Err(Error::DimensionMismatch(a.dim(), b.dim()));
        }
        Ok(self.cmp_unchecked(a, b))
    }

    /// Comparison for internal use where dimensions are known equal.
    pub fn cmp_unchecked(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            TermOrder::Lex => first_dominant(a, b),
            TermOrder::Inlex => last_dominant(a, b),
            TermOrder::Tdlex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| first_dominant(a, b)),
            TermOrder::Tdinlex => a
                .total_degree()
                .cmp(&b.total_degree())
                .then_with(|| last_dominant(a, b)),
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp_unchecked(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TermOrder::Lex => "lex",
            TermOrder::Inlex => "inlex",
            TermOrder::Tdlex => "tdlex",
            TermOrder::Tdinlex => "tdinlex",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lex" => Ok(TermOrder::Lex),
            "inlex" => Ok(TermOrder::Inlex),
            "tdlex" => Ok(TermOrder::Tdlex),
            "tdinlex" => Ok(TermOrder::Tdinlex),
            _ => Err(Error::ParseError(format!("unknown term order `{s}`"))),
        }
    }
}

fn first_dominant(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn last_dominant(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps().iter().zip(b.exps()).rev() {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

/// Order on index pairs (i, j) used for Newton triangularity: inlex compares
/// j first, lex compares i first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexOrder {
    Lex,
    Inlex,
}

impl IndexOrder {
    pub fn compare(&self, a: (u32, u32), b: (u32, u32)) -> Ordering {
        match self {
            IndexOrder::Lex => a.0.cmp(&b.0).then(a.1.cmp(&b.1)),
            IndexOrder::Inlex => a.1.cmp(&b.1).then(a.0.cmp(&b.0)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn m(i: u32, j: u32) -> Monomial {
        Monomial::xy(i, j)
    }

    #[test]
    fn tdlex_tie_break_is_x_dominant() {
        // max(x*y^3, x^2*y^2) must be x^2*y^2 under tdlex.
        assert_eq!(
            TermOrder::Tdlex.compare(&m(2, 2), &m(1, 3)).unwrap(),
            Ordering::Greater
        );
    }

    #[test]
    fn one_is_minimal_in_every_order() {
        for o in [
            TermOrder::Lex,
            TermOrder::Inlex,
            TermOrder::Tdlex,
            TermOrder::Tdinlex,
        ] {
            assert_eq!(o.compare(&m(0, 0), &m(1, 0)).unwrap(), Ordering::Less);
            assert_eq!(o.compare(&m(0, 0), &m(0, 1)).unwrap(), Ordering::Less);
        }
    }

    #[test]
    fn dominance_conventions() {
        // lex: y < x; inlex: x < y.
        assert_eq!(
            TermOrder::Lex.compare(&m(0, 1), &m(1, 0)).unwrap(),
            Ordering::Less
        );
        assert_eq!(
            TermOrder::Inlex.compare(&m(1, 0), &m(0, 1)).unwrap(),
            Ordering::Less
        );
    }

    #[test]
    fn index_order_pairs() {
        assert_eq!(
            IndexOrder::Inlex.compare((0, 1), (2, 0)),
            Ordering::Greater
        );
        assert_eq!(IndexOrder::Inlex.compare((3, 3), (3, 3)), Ordering::Equal);
        assert_eq!(IndexOrder::Lex.compare((2, 0), (0, 1)), Ordering::Greater);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let a = Monomial::new(vec![1, 2]);
        let b = Monomial::new(vec![1, 2, 3]);
        assert!(TermOrder::Lex.compare(&a, &b).is_err());
    }

    fn random_monomial(rng: &mut StdRng, dim: usize) -> Monomial {
        Monomial::new((0..dim).map(|_| rng.gen_range(0..6)).collect())
    }

    #[test]
    fn order_axioms_on_random_triples() {
        let mut rng = StdRng::seed_from_u64(7);
        let orders = [
            TermOrder::Lex,
            TermOrder::Inlex,
            TermOrder::Tdlex,
            TermOrder::Tdinlex,
        ];
        for _ in 0..1000 {
            let dim = rng.gen_range(1..=4);
            let a = random_monomial(&mut rng, dim);
            let b = random_monomial(&mut rng, dim);
            let c = random_monomial(&mut rng, dim);
            for o in orders {
                // antisymmetry
                assert_eq!(
                    o.cmp_unchecked(&a, &b),
                    o.cmp_unchecked(&b, &a).reverse()
                );
                // Equal iff identical exponent vectors
                assert_eq!(o.cmp_unchecked(&a, &b) == Ordering::Equal, a == b);
                // transitivity
                if o.cmp_unchecked(&a, &b) != Ordering::Greater
                    && o.cmp_unchecked(&b, &c) != Ordering::Greater
                {
                    assert_ne!(o.cmp_unchecked(&a, &c), Ordering::Greater);
                }
                // multiplicative compatibility
                let t = random_monomial(&mut rng, dim);
                assert_eq!(
                    o.cmp_unchecked(&a, &b),
                    o.cmp_unchecked(&a.mul(&t), &b.mul(&t))
                );
            }
        }
    }
}
