//! Degree-reducing Lagrange interpolation: Newton forward substitution over
//! either the closed-form basis (tower and lex/inlex sites) or the basis
//! produced by the main algorithm (any site).

use std::collections::HashMap;

use crate::bases;
use crate::engine;
use crate::error::{Error, Result};
use crate::field::FieldValue;
use crate::monomial::TermOrder;
use crate::poly::Polynomial;
use crate::sites::{Node, Site};

/// A site together with one prescribed value per node, aligned with the
/// site's node order.
#[derive(Clone, Debug)]
pub struct InterpolationProblem {
    pub site: Site,
    pub values: Vec<FieldValue>,
}

impl InterpolationProblem {
    pub fn new(site: Site, values: Vec<FieldValue>) -> Result<Self> {
        if values.len() != site.len() {
            return Err(Error::LengthMismatch {
                expected: site.len(),
                got: values.len(),
            });
        }
        Ok(InterpolationProblem { site, values })
    }

    /// The prescribed value at a given node.
    fn value_map(&self) -> HashMap<&Node, &FieldValue> {
        self.site.nodes().iter().zip(&self.values).collect()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Closed-form Newton basis; restricted like the bases themselves.
    ClosedForm,
    /// Newton basis discovered by the main algorithm; works on any site.
    Bm,
}

/// The unique interpolant inside the span of the escalier monomials. Its
/// leading monomial never exceeds that of any other polynomial matching the
/// same values.
pub fn interpolate(
    problem: &InterpolationProblem,
    order: TermOrder,
    method: Method,
) -> Result<Polynomial> {
    let ctx = problem.site.context();
    let (basis, nodes): (Vec<Polynomial>, Vec<Node>) = match method {
        Method::ClosedForm => {
            let nb = bases::drinb(&problem.site, order)?;
            let mut basis = Vec::with_capacity(nb.entries.len());
            let mut nodes = Vec::with_capacity(nb.entries.len());
            for e in nb.entries {
                basis.push(e.poly);
                nodes.push(e.node);
            }
            (basis, nodes)
        }
        Method::Bm => {
            let t = engine::bm(&problem.site, order)?;
            (t.newton, t.newton_nodes)
        }
    };

    let by_node = problem.value_map();
    let mut interpolant = Polynomial::zero(ctx, problem.site.dim());
    for (q, node) in basis.iter().zip(&nodes) {
        let f = by_node.get(node).ok_or_else(|| {
            Error::InternalDisagreement(format!("basis node {node} is not a site node"))
        })?;
        // forward substitution: element k vanishes at the earlier nodes, so
        // the running residual at node k pins coefficient k
        let partial = interpolant.eval(node.coords())?;
        let c = ctx.sub(f, &partial)?;
        if !ctx.is_zero(&c) {
            interpolant = interpolant.add(&q.scale(&c)?)?;
        }
    }

    // residual check: exactness is cheap insurance here
    for (node, f) in problem.site.nodes().iter().zip(&problem.values) {
        if &interpolant.eval(node.coords())? != f {
            return Err(Error::InternalDisagreement(format!(
                "interpolant misses its prescribed value at {node}"
            )));
        }
    }
    Ok(interpolant)
}

/// Degree-reduction guarantee: interpolating the restriction of `q` to the
/// site never increases the leading monomial. Returns the interpolant and
/// whether LM(p) <= LM(q); a vanishing restriction yields the zero
/// interpolant, which counts as reduced.
pub fn degree_reduction_check(
    site: &Site,
    order: TermOrder,
    q: &Polynomial,
) -> Result<(Polynomial, bool)> {
    let values: Vec<FieldValue> = site
        .nodes()
        .iter()
        .map(|n| q.eval(n.coords()))
        .collect::<Result<_>>()?;
    let problem = InterpolationProblem::new(site.clone(), values)?;
    let p = interpolate(&problem, order, Method::Bm)?;
    let reduced = if p.is_zero() {
        true
    } else if q.is_zero() {
        false
    } else {
        order.compare(&p.leading_monomial(order)?, &q.leading_monomial(order)?)?
            != std::cmp::Ordering::Greater
    };
    Ok((p, reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;
    use crate::monomial::Monomial;
    use crate::sites::{random_tower_site, TowerKind};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn site_q(points: &[(i64, i64)]) -> Site {
        let ctx = FieldContext::rationals();
        Site::new(
            ctx,
            points
                .iter()
                .map(|&(x, y)| Node(vec![ctx.from_i64(x), ctx.from_i64(y)]))
                .collect(),
        )
        .unwrap()
    }

    fn pint(ctx: FieldContext, terms: &[(u32, u32, i64)]) -> Polynomial {
        let mut p = Polynomial::zero(ctx, 2);
        for &(i, j, c) in terms {
            p.add_term(Monomial::xy(i, j), ctx.from_i64(c));
        }
        p
    }

    fn four_node() -> Site {
        site_q(&[(0, 0), (1, 0), (2, 0), (0, 1)])
    }

    #[test]
    fn four_node_reference_interpolant() {
        let s = four_node();
        let ctx = s.context();
        let values = [0i64, 1, 2, 5].map(|v| ctx.from_i64(v)).to_vec();
        let problem = InterpolationProblem::new(s, values).unwrap();
        let want = pint(ctx, &[(1, 0, 1), (0, 1, 5)]); // x + 5y
        for m in [Method::ClosedForm, Method::Bm] {
            assert_eq!(interpolate(&problem, TermOrder::Tdlex, m).unwrap(), want);
        }
    }

    #[test]
    fn constants_and_zero() {
        let s = four_node();
        let ctx = s.context();
        let problem =
            InterpolationProblem::new(s.clone(), vec![ctx.from_i64(7); 4]).unwrap();
        let p = interpolate(&problem, TermOrder::Tdlex, Method::ClosedForm).unwrap();
        assert_eq!(p, Polynomial::constant(ctx, 2, ctx.from_i64(7)));

        let problem = InterpolationProblem::new(s, vec![ctx.zero(); 4]).unwrap();
        let p = interpolate(&problem, TermOrder::Tdlex, Method::Bm).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn high_degree_input_reduces() {
        // the restriction of x^3 to the four-node site interpolates to
        // 3x^2 - 2x, a strict degree drop
        let s = four_node();
        let ctx = s.context();
        let q = pint(ctx, &[(3, 0, 1)]);
        let (p, reduced) = degree_reduction_check(&s, TermOrder::Tdlex, &q).unwrap();
        assert!(reduced);
        assert_eq!(p, pint(ctx, &[(2, 0, 3), (1, 0, -2)]));
    }

    #[test]
    fn escalier_members_are_fixed_points() {
        let s = four_node();
        let ctx = s.context();
        for m in [(0u32, 0u32), (0, 1), (1, 0), (2, 0)] {
            let q = Polynomial::monomial(ctx, Monomial::xy(m.0, m.1));
            let (p, reduced) = degree_reduction_check(&s, TermOrder::Tdlex, &q).unwrap();
            assert!(reduced);
            assert_eq!(p, q);
        }
    }

    #[test]
    fn vanishing_restriction_gives_zero() {
        let s = four_node();
        let ctx = s.context();
        let q = pint(ctx, &[(1, 1, 1)]); // xy vanishes on the site
        let (p, reduced) = degree_reduction_check(&s, TermOrder::Tdlex, &q).unwrap();
        assert!(p.is_zero());
        assert!(reduced);
    }

    #[test]
    fn methods_agree_on_towers() {
        let mut rng = StdRng::seed_from_u64(31);
        for seed in 0..10 {
            let s = random_tower_site(101, 25, TowerKind::X, seed).unwrap();
            let ctx = s.context();
            let values: Vec<FieldValue> = (0..s.len())
                .map(|_| ctx.from_i64(rng.gen_range(0..101)))
                .collect();
            let problem = InterpolationProblem::new(s, values).unwrap();
            for order in [TermOrder::Tdlex, TermOrder::Lex] {
                let a = interpolate(&problem, order, Method::ClosedForm).unwrap();
                let b = interpolate(&problem, order, Method::Bm).unwrap();
                assert_eq!(a, b, "seed {seed} order {order:?}");
            }
        }
    }

    #[test]
    fn interpolation_is_idempotent() {
        let mut rng = StdRng::seed_from_u64(77);
        let s = random_tower_site(101, 20, TowerKind::Y, 5).unwrap();
        let ctx = s.context();
        let values: Vec<FieldValue> = (0..s.len())
            .map(|_| ctx.from_i64(rng.gen_range(0..101)))
            .collect();
        let problem = InterpolationProblem::new(s.clone(), values).unwrap();
        let p = interpolate(&problem, TermOrder::Tdinlex, Method::Bm).unwrap();
        let (p2, reduced) = degree_reduction_check(&s, TermOrder::Tdinlex, &p).unwrap();
        assert!(reduced);
        assert_eq!(p, p2);
    }

    #[test]
    fn length_mismatch_rejected() {
        let s = four_node();
        let ctx = s.context();
        assert!(matches!(
            InterpolationProblem::new(s, vec![ctx.zero(); 3]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
