//! Sparse multivariate polynomials, multivariate division, S-polynomials, and
//! the Groebner-basis verification predicates.
//!
//! Terms are stored keyed by exponent vector; leading-term queries scan for
//! the maximum under the active order, so a polynomial is never tied to one
//! term order.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldValue};
use crate::monomial::{var_names, Monomial, TermOrder};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial {
    ctx: FieldContext,
    dim: usize,
    terms: BTreeMap<Monomial, FieldValue>,
}

impl Polynomial {
    pub fn zero(ctx: FieldContext, dim: usize) -> Self {
        Polynomial {
            ctx,
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ctx: FieldContext, dim: usize, c: FieldValue) -> Self {
        let mut p = Self::zero(ctx, dim);
        p.add_term(Monomial::one(dim), c);
        p
    }

    pub fn from_term(ctx: FieldContext, m: Monomial, c: FieldValue) -> Self {
        let dim = m.dim();
        let mut p = Self::zero(ctx, dim);
        p.add_term(m, c);
        p
    }

    pub fn monomial(ctx: FieldContext, m: Monomial) -> Self {
        let c = ctx.one();
        Self::from_term(ctx, m, c)
    }

    /// The linear polynomial `x_idx - a`.
    pub fn linear_factor(ctx: FieldContext, dim: usize, idx: usize, a: &FieldValue) -> Self {
        let mut p = Self::zero(ctx, dim);
        p.add_term(Monomial::var(dim, idx), ctx.one());
        p.add_term(Monomial::one(dim), ctx.neg(a).expect("context-checked"));
        p
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldValue)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> FieldValue {
        self.terms.get(m).cloned().unwrap_or_else(|| self.ctx.zero())
    }

    /// Adds `c * m` in place, dropping the term if the sum cancels.
    pub fn add_term(&mut self, m: Monomial, c: FieldValue) {
        debug_assert_eq!(m.dim(), self.dim);
        if self.ctx.is_zero(&c) {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = self.ctx.add(&old, &c).expect("context-checked");
                if !self.ctx.is_zero(&s) {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    fn check_compat(&self, other: &Polynomial) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::MixedContexts);
        }
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = Self::zero(self.ctx, self.dim);
        for (m, c) in &self.terms {
            out.terms
                .insert(m.clone(), self.ctx.neg(c).expect("context-checked"));
        }
        out
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &FieldValue) -> Result<Polynomial> {
        if self.ctx.is_zero(c) {
            return Ok(Self::zero(self.ctx, self.dim));
        }
        let mut out = Self::zero(self.ctx, self.dim);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), self.ctx.mul(a, c)?);
        }
        Ok(out)
    }

    /// Multiplies by the single term `c * t`.
    pub fn mul_term(&self, t: &Monomial, c: &FieldValue) -> Result<Polynomial> {
        if self.ctx.is_zero(c) {
            return Ok(Self::zero(self.ctx, self.dim));
        }
        let mut out = Self::zero(self.ctx, self.dim);
        for (m, a) in &self.terms {
            out.terms.insert(m.mul(t), self.ctx.mul(a, c)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compat(other)?;
        let mut out = Self::zero(self.ctx, self.dim);
        for (m, a) in &self.terms {
            for (n, b) in &other.terms {
                out.add_term(m.mul(n), self.ctx.mul(a, b)?);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[FieldValue]) -> Result<FieldValue> {
        if point.len() != self.dim {
            return Err(Error::DimensionMismatch(self.dim, point.len()));
        }
        let mut acc = self.ctx.zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let p = self.ctx.pow(&point[i], e)?;
                    term = self.ctx.mul(&term, &p)?;
                }
            }
            acc = self.ctx.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// Leading (monomial, coefficient) under `order`.
    pub fn leading(&self, order: TermOrder) -> Result<(Monomial, FieldValue)> {
        let mut best: Option<&Monomial> = None;
        for m in self.terms.keys() {
            best = Some(match best {
                None => m,
                Some(b) => order.max(b, m),
            });
        }
        match best {
            None => Err(Error::ZeroPolynomial),
            Some(m) => Ok((m.clone(), self.terms[m].clone())),
        }
    }

    pub fn leading_monomial(&self, order: TermOrder) -> Result<Monomial> {
        Ok(self.leading(order)?.0)
    }

    pub fn is_monic(&self, order: TermOrder) -> Result<bool> {
        let (_, c) = self.leading(order)?;
        Ok(self.ctx.is_one(&c))
    }

    /// Monomials in strictly decreasing `order`.
    pub fn sorted_terms(&self, order: TermOrder) -> Vec<(Monomial, FieldValue)> {
        let mut v: Vec<_> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        v.sort_by(|a, b| order.cmp_unchecked(&b.0, &a.0));
        v
    }

    /// Canonical text form: terms in strictly decreasing active order, the
    /// coefficient always printed, `^` for powers and `*` separators, e.g.
    /// `1*x^3 + -3*x^2 + 2*x^1`.
    pub fn render(&self, order: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let names = var_names(self.dim);
        let parts: Vec<String> = self
            .sorted_terms(order)
            .into_iter()
            .map(|(m, c)| {
                if m.is_one() {
                    format!("{c}")
                } else {
                    let vars: Vec<String> = m
                        .exps()
                        .iter()
                        .enumerate()
                        .filter(|(_, &e)| e > 0)
                        .map(|(i, &e)| format!("{}^{}", names[i], e))
                        .collect();
                    format!("{}*{}", c, vars.join("*"))
                }
            })
            .collect();
        parts.join(" + ")
    }

    /// JSON form: a list of `{exponents, coefficient}` in decreasing order.
    pub fn to_json(&self, order: TermOrder) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .sorted_terms(order)
            .into_iter()
            .map(|(m, c)| {
                json!({
                    "exponents": m.exps(),
                    "coefficient": format!("{c}"),
                })
            })
            .collect();
        serde_json::Value::Array(items)
    }
}

/// Multivariate division of `f` by the ordered set `divisors`.
///
/// Always reduces the order-largest reducible monomial first and tries
/// divisors in the stored order, so the output is deterministic. Returns the
/// remainder and the quotient attached to each divisor; the remainder has no
/// monomial divisible by any divisor's leading monomial.
pub fn normal_form(
    f: &Polynomial,
    divisors: &[Polynomial],
    order: TermOrder,
) -> Result<(Polynomial, Vec<Polynomial>)> {
    let ctx = f.context();
    let dim = f.dim();
    let mut quots = vec![Polynomial::zero(ctx, dim); divisors.len()];
    if divisors.is_empty() {
        return Ok((f.clone(), quots));
    }
    let leads: Vec<(Monomial, FieldValue)> = divisors
        .iter()
        .map(|g| g.leading(order))
        .collect::<Result<_>>()?;
    let mut rem = f.clone();
    loop {
        // order-largest monomial of rem divisible by some divisor lead
        let mut target: Option<(Monomial, FieldValue, usize)> = None;
        for (m, c) in rem.sorted_terms(order) {
            if let Some(idx) = leads.iter().position(|(lm, _)| lm.divides(&m)) {
                target = Some((m, c, idx));
                break;
            }
        }
        let Some((m, c, idx)) = target else { break };
        let factor_m = m.checked_div(&leads[idx].0).expect("divisibility checked");
        let factor_c = ctx.div(&c, &leads[idx].1)?;
        let update = divisors[idx].mul_term(&factor_m, &factor_c)?;
        rem = rem.sub(&update)?;
        quots[idx].add_term(factor_m, factor_c);
    }
    Ok((rem, quots))
}

/// S(f, g) = (lcm/LT(f)) f - (lcm/LT(g)) g; the leading terms cancel.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, order: TermOrder) -> Result<Polynomial> {
    let ctx = f.context();
    let (fm, fc) = f.leading(order)?;
    let (gm, gc) = g.leading(order)?;
    let l = fm.lcm(&gm);
    let a = f.mul_term(
        &l.checked_div(&fm).expect("lcm divisible"),
        &ctx.inv(&fc)?,
    )?;
    let b = g.mul_term(
        &l.checked_div(&gm).expect("lcm divisible"),
        &ctx.inv(&gc)?,
    )?;
    a.sub(&b)
}

/// Buchberger's S-pair criterion: true iff every pairwise S-polynomial
/// reduces to zero modulo the set.
pub fn is_groebner(basis: &[Polynomial], order: TermOrder) -> Result<bool> {
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j], order)?;
            if s.is_zero() {
                continue;
            }
            let (rem, _) = normal_form(&s, basis, order)?;
            if !rem.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff every element is monic and no monomial of any element is
/// divisible by another element's leading monomial. Requires the set to be a
/// Groebner basis.
pub fn is_reduced_groebner(basis: &[Polynomial], order: TermOrder) -> Result<bool> {
    if !is_groebner(basis, order)? {
        return Err(Error::NotAGroebnerBasis);
    }
    let leads: Vec<Monomial> = basis
        .iter()
        .map(|g| g.leading_monomial(order))
        .collect::<Result<_>>()?;
    for (i, g) in basis.iter().enumerate() {
        if !g.is_monic(order)? {
            return Ok(false);
        }
        for (m, _) in g.terms() {
            for (j, lm) in leads.iter().enumerate() {
                if i != j && lm.divides(m) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
