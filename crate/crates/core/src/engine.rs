//! The Buchberger-Moller algorithm and its tower-seeded fast path.
//!
//! Both algorithms return the same kind of triple: the reduced Groebner basis
//! of the vanishing ideal, the escalier, and a Newton basis of the
//! interpolation space. The fast path skips the escalier discovery entirely:
//! it seeds the elimination state with the closed-form monomial and Newton
//! bases and the triangular evaluation matrix, then runs the main loop over
//! the border monomials only.
//!
//! The elimination keeps each recorded row normalized to 1 at its pivot
//! column, so every Newton element evaluates to 1 at its own node and to 0 at
//! all earlier ones. Newton coefficients are carried as dense vectors over
//! the escalier, which keeps the inner loops free of map lookups.

use std::collections::HashMap;

use serde::Serialize;

use crate::bases::{self, Flavor};
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldValue};
use crate::monomial::{Monomial, TermOrder};
use crate::poly::{self, Polynomial};
use crate::sites::{Node, Site};

/// The (G, N, Q) output of a run.
#[derive(Clone, Debug)]
pub struct BasisTriple {
    pub order: TermOrder,
    /// Reduced Groebner basis, sorted by increasing leading monomial.
    pub groebner: Vec<Polynomial>,
    /// Escalier in increasing order; its length equals the node count.
    pub escalier: Vec<Monomial>,
    /// Newton basis in its triangular order: pivot-discovery order for `bm`,
    /// index order for `tbm`. `newton[k]` evaluates to 1 at
    /// `newton_nodes[k]` and to 0 at `newton_nodes[h]` for h < k.
    pub newton: Vec<Polynomial>,
    pub newton_nodes: Vec<Node>,
}

impl BasisTriple {
    pub fn leading_terms(&self) -> Result<Vec<Monomial>> {
        self.groebner
            .iter()
            .map(|g| g.leading_monomial(self.order))
            .collect()
    }

    /// Every Newton element has its monomials inside the escalier and the
    /// leading monomials of the Newton list are exactly the escalier.
    pub fn newton_spans_escalier(&self) -> Result<bool> {
        if self.newton.len() != self.escalier.len() {
            return Ok(false);
        }
        let cells: std::collections::BTreeSet<&Monomial> = self.escalier.iter().collect();
        let mut lms = Vec::with_capacity(self.newton.len());
        for q in &self.newton {
            for (m, _) in q.terms() {
                if !cells.contains(m) {
                    return Ok(false);
                }
            }
            lms.push(q.leading_monomial(self.order)?);
        }
        lms.sort_by(|a, b| self.order.cmp_unchecked(a, b));
        Ok(lms == self.escalier)
    }

    /// The delta pattern on and below the diagonal of the Newton evaluation
    /// matrix, in the triple's own node order.
    pub fn newton_is_triangular(&self, ctx: FieldContext) -> Result<bool> {
        for (k, q) in self.newton.iter().enumerate() {
            for (h, node) in self.newton_nodes.iter().enumerate().take(k + 1) {
                let v = q.eval(node.coords())?;
                let want_one = h == k;
                if want_one != ctx.is_one(&v) || (!want_one && !ctx.is_zero(&v)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Structural agreement between two runs on the same site: G and N must
    /// match exactly; the Newton lists may differ (they depend on the node
    /// order) but both must be bases of the escalier span.
    pub fn agrees_with(&self, other: &BasisTriple) -> Result<bool> {
        Ok(self.order == other.order
            && self.groebner == other.groebner
            && self.escalier == other.escalier
            && self.newton_spans_escalier()?
            && other.newton_spans_escalier()?)
    }
}

fn eval_monomial(ctx: FieldContext, m: &Monomial, node: &Node) -> Result<FieldValue> {
    let mut acc = ctx.one();
    for (i, &e) in m.exps().iter().enumerate() {
        if e > 0 {
            acc = ctx.mul(&acc, &ctx.pow(&node.coords()[i], e)?)?;
        }
    }
    Ok(acc)
}

fn eval_vector(ctx: FieldContext, m: &Monomial, nodes: &[Node]) -> Result<Vec<FieldValue>> {
    nodes.iter().map(|n| eval_monomial(ctx, m, n)).collect()
}

/// Recorded rows with their pivot columns. Row k is zero at the pivot
/// columns of rows 0..k and holds 1 at its own pivot.
struct Reducer {
    ctx: FieldContext,
    rows: Vec<Vec<FieldValue>>,
    pivots: Vec<usize>,
}

impl Reducer {
    /// Eliminates `v` against the rows in recording order; returns the
    /// coefficient used per row.
    fn reduce(&self, v: &mut [FieldValue]) -> Result<Vec<FieldValue>> {
        let mut coeffs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let a = v[p].clone();
            if !self.ctx.is_zero(&a) {
                for (vj, rj) in v.iter_mut().zip(row) {
                    if !self.ctx.is_zero(rj) {
                        *vj = self.ctx.sub(vj, &self.ctx.mul(&a, rj)?)?;
                    }
                }
            }
            coeffs.push(a);
        }
        Ok(coeffs)
    }
}

/// The candidate list L, kept sorted in increasing active order.
struct Frontier {
    order: TermOrder,
    items: Vec<Monomial>,
}

impl Frontier {
    fn new(order: TermOrder, mut items: Vec<Monomial>) -> Self {
        items.sort_by(|a, b| order.cmp_unchecked(a, b));
        items.dedup();
        Frontier { order, items }
    }

    fn pop_min(&mut self) -> Option<Monomial> {
        if self.items.is_empty() {
            None
        } else {
            Some(self.items.remove(0))
        }
    }

    /// Inserts `m` unless it is a multiple of a listed candidate or of a
    /// recorded leading term.
    fn insert_candidate(&mut self, m: Monomial, g_leads: &[Monomial]) {
        if self.items.iter().any(|u| u.divides(&m)) || g_leads.iter().any(|u| u.divides(&m)) {
            return;
        }
        let pos = self
            .items
            .partition_point(|u| self.order.cmp_unchecked(u, &m) == std::cmp::Ordering::Less);
        self.items.insert(pos, m);
    }

    fn remove_multiples_of(&mut self, t: &Monomial) {
        self.items.retain(|u| !t.divides(u));
    }
}

/// t - sum of coeffs[i] * qvecs[i], materialized over the escalier.
fn combine_generator(
    ctx: FieldContext,
    t: &Monomial,
    coeffs: &[FieldValue],
    qvecs: &[Vec<FieldValue>],
    escalier: &[Monomial],
) -> Result<Polynomial> {
    let mut dense = vec![ctx.zero(); escalier.len()];
    for (a, qv) in coeffs.iter().zip(qvecs) {
        if ctx.is_zero(a) {
            continue;
        }
        for (d, y) in dense.iter_mut().zip(qv) {
            if !ctx.is_zero(y) {
                *d = ctx.add(d, &ctx.mul(a, y)?)?;
            }
        }
    }
    let mut g = Polynomial::from_term(ctx, t.clone(), ctx.one());
    for (pos, c) in dense.into_iter().enumerate() {
        if !ctx.is_zero(&c) {
            g.add_term(escalier[pos].clone(), ctx.neg(&c)?);
        }
    }
    Ok(g)
}

fn materialize_newton(
    ctx: FieldContext,
    dim: usize,
    qvecs: &[Vec<FieldValue>],
    escalier: &[Monomial],
) -> Vec<Polynomial> {
    qvecs
        .iter()
        .map(|qv| {
            let mut p = Polynomial::zero(ctx, dim);
            for (pos, c) in qv.iter().enumerate().take(escalier.len()) {
                p.add_term(escalier[pos].clone(), c.clone());
            }
            p
        })
        .collect()
}

/// The paper promises the reduced basis; re-reducing must change nothing.
fn assert_interreduced(groebner: &[Polynomial], order: TermOrder) -> Result<()> {
    for (i, g) in groebner.iter().enumerate() {
        let others: Vec<Polynomial> = groebner
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (rem, _) = poly::normal_form(g, &others, order)?;
        if &rem != g {
            return Err(Error::InternalDisagreement(format!(
                "tail interreduction altered a basis element with leading monomial {}",
                g.leading_monomial(order)?
            )));
        }
    }
    Ok(())
}

fn finalize(
    site: &Site,
    order: TermOrder,
    mut g_out: Vec<(Monomial, Polynomial)>,
    escalier: Vec<Monomial>,
    newton: Vec<Polynomial>,
    newton_nodes: Vec<Node>,
) -> Result<BasisTriple> {
    if escalier.len() != site.len() {
        return Err(Error::InternalDisagreement(format!(
            "escalier has {} monomials for {} nodes",
            escalier.len(),
            site.len()
        )));
    }
    g_out.sort_by(|a, b| order.cmp_unchecked(&a.0, &b.0));
    let groebner: Vec<Polynomial> = g_out.into_iter().map(|(_, g)| g).collect();
    assert_interreduced(&groebner, order)?;
    Ok(BasisTriple {
        order,
        groebner,
        escalier,
        newton,
        newton_nodes,
    })
}

/// Buchberger-Moller: compute (G, N, Q) for a site of distinct nodes in any
/// dimension, processing candidate monomials in increasing order.
pub fn bm(site: &Site, order: TermOrder) -> Result<BasisTriple> {
    let ctx = site.context();
    let dim = site.dim();
    let mu = site.len();
    let nodes = site.nodes();

    let mut frontier = Frontier::new(order, vec![Monomial::one(dim)]);
    let mut reducer = Reducer {
        ctx,
        rows: Vec::with_capacity(mu),
        pivots: Vec::with_capacity(mu),
    };
    let mut escalier: Vec<Monomial> = Vec::with_capacity(mu);
    let mut qvecs: Vec<Vec<FieldValue>> = Vec::with_capacity(mu);
    let mut pivot_nodes: Vec<usize> = Vec::with_capacity(mu);
    let mut g_out: Vec<(Monomial, Polynomial)> = Vec::new();
    let mut g_leads: Vec<Monomial> = Vec::new();

    let ceiling = 10 * mu + 100;
    let mut steps = 0usize;
    while let Some(t) = frontier.pop_min() {
        steps += 1;
        if steps > ceiling {
            return Err(Error::InternalDisagreement(format!(
                "frontier failed to drain within {ceiling} steps"
            )));
        }
        let mut v = eval_vector(ctx, &t, nodes)?;
        let coeffs = reducer.reduce(&mut v)?;
        match v.iter().position(|x| !ctx.is_zero(x)) {
            None => {
                let g = combine_generator(ctx, &t, &coeffs, &qvecs, &escalier)?;
                frontier.remove_multiples_of(&t);
                g_leads.push(t.clone());
                g_out.push((t, g));
            }
            Some(p) => {
                let c = v[p].clone();
                let cinv = ctx.inv(&c)?;
                for x in v.iter_mut() {
                    if !ctx.is_zero(x) {
                        *x = ctx.mul(x, &cinv)?;
                    }
                }
                let pos = escalier.len();
                let mut qv = vec![ctx.zero(); mu];
                qv[pos] = ctx.one();
                for (a, qi) in coeffs.iter().zip(&qvecs) {
                    if ctx.is_zero(a) {
                        continue;
                    }
                    for (x, y) in qv.iter_mut().zip(qi) {
                        if !ctx.is_zero(y) {
                            *x = ctx.sub(x, &ctx.mul(a, y)?)?;
                        }
                    }
                }
                for x in qv.iter_mut() {
                    if !ctx.is_zero(x) {
                        *x = ctx.mul(x, &cinv)?;
                    }
                }
                reducer.rows.push(v);
                reducer.pivots.push(p);
                pivot_nodes.push(p);
                escalier.push(t.clone());
                qvecs.push(qv);
                for i in 0..dim {
                    frontier.insert_candidate(t.mul_var(i), &g_leads);
                }
            }
        }
    }

    let newton = materialize_newton(ctx, dim, &qvecs, &escalier);
    let newton_nodes = pivot_nodes.iter().map(|&i| nodes[i].clone()).collect();
    finalize(site, order, g_out, escalier, newton, newton_nodes)
}

/// Tower-seeded run: the closed-form bases feed the loop, which then only
/// has to reduce the border monomials. Requires a tower site of the order's
/// flavor; see [`tbm_any_site`] for the lex/inlex relaxation.
pub fn tbm(site: &Site, order: TermOrder) -> Result<BasisTriple> {
    tbm_inner(site, order, false)
}

/// Like [`tbm`], but accepts arbitrary planar sites for lex and inlex, where
/// the closed-form bases hold without the tower hypothesis.
pub fn tbm_any_site(site: &Site, order: TermOrder) -> Result<BasisTriple> {
    tbm_inner(site, order, true)
}

fn tbm_inner(site: &Site, order: TermOrder, any_site: bool) -> Result<BasisTriple> {
    let ctx = site.context();
    let mu = site.len();
    let flavor = Flavor::of(order);
    let (tower, witness) = match flavor {
        Flavor::X => site.is_x_tower()?,
        Flavor::Y => site.is_y_tower()?,
    };
    if !tower {
        let relaxed = any_site && matches!(order, TermOrder::Lex | TermOrder::Inlex);
        if !relaxed {
            return Err(Error::NotTower(witness));
        }
    }

    let mb = bases::drimb(site, order)?;
    let nb = bases::drinb(site, order)?;
    let escalier = mb.monomials().to_vec();
    debug_assert_eq!(escalier.len(), mu);
    debug_assert_eq!(nb.entries.len(), mu);

    let pos: HashMap<&Monomial, usize> = escalier.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut qvecs: Vec<Vec<FieldValue>> = Vec::with_capacity(mu);
    for entry in &nb.entries {
        let mut qv = vec![ctx.zero(); mu];
        for (m, c) in entry.poly.terms() {
            let &p = pos.get(m).ok_or_else(|| {
                Error::InternalDisagreement(format!(
                    "Newton basis monomial {m} lies outside the escalier"
                ))
            })?;
            qv[p] = c.clone();
        }
        qvecs.push(qv);
    }

    let labeled: Vec<Node> = nb.entries.iter().map(|e| e.node.clone()).collect();
    let rows = newton_eval_matrix(site, flavor, &labeled)?;
    let reducer = Reducer {
        ctx,
        rows,
        pivots: (0..mu).collect(),
    };

    // border set of the escalier, in increasing order
    let cells: std::collections::BTreeSet<&Monomial> = escalier.iter().collect();
    let mut border: Vec<Monomial> = Vec::new();
    for t in &escalier {
        for i in 0..2 {
            let u = t.mul_var(i);
            if !cells.contains(&u) {
                border.push(u);
            }
        }
    }
    let mut frontier = Frontier::new(order, border);

    let mut g_out: Vec<(Monomial, Polynomial)> = Vec::new();
    let ceiling = 10 * mu + 100;
    let mut steps = 0usize;
    while let Some(t) = frontier.pop_min() {
        steps += 1;
        if steps > ceiling {
            return Err(Error::InternalDisagreement(format!(
                "border frontier failed to drain within {ceiling} steps"
            )));
        }
        let mut v = eval_vector(ctx, &t, &labeled)?;
        let coeffs = reducer.reduce(&mut v)?;
        if let Some(k) = v.iter().position(|x| !ctx.is_zero(x)) {
            return Err(Error::InternalDisagreement(format!(
                "border monomial {t} did not reduce to zero (column {k}); the seeded escalier is incomplete"
            )));
        }
        let g = combine_generator(ctx, &t, &coeffs, &qvecs, &escalier)?;
        frontier.remove_multiples_of(&t);
        g_out.push((t, g));
    }

    let newton: Vec<Polynomial> = nb.entries.into_iter().map(|e| e.poly).collect();
    finalize(site, order, g_out, escalier, newton, labeled)
}

/// The evaluation matrix of the closed-form Newton basis at the labeled
/// nodes, both in index order. Entry (h, k) is phi_h(u_k); the factored
/// product form makes each column an O(mu) prefix-product sweep.
fn newton_eval_matrix(
    site: &Site,
    flavor: Flavor,
    labeled: &[Node],
) -> Result<Vec<Vec<FieldValue>>> {
    let ctx = site.context();
    let mu = site.len();
    let analysis = site.analyze()?;
    let (lines, outer_coord, inner_coord) = match flavor {
        Flavor::X => (&analysis.rows, 1usize, 0usize),
        Flavor::Y => (&analysis.columns, 0usize, 1usize),
    };

    let mut unscaled = vec![vec![ctx.zero(); mu]; mu];
    for (k, node) in labeled.iter().enumerate() {
        let outer = &node.coords()[outer_coord];
        let inner = &node.coords()[inner_coord];
        let mut outer_pref = ctx.one();
        let mut h = 0usize;
        for line in lines.iter() {
            let mut pref = outer_pref.clone();
            for member in &line.members {
                unscaled[h][k] = pref.clone();
                pref = ctx.mul(&pref, &ctx.sub(inner, member)?)?;
                h += 1;
            }
            outer_pref = ctx.mul(&outer_pref, &ctx.sub(outer, &line.coordinate)?)?;
        }
        debug_assert_eq!(h, mu);
    }
    for (h, row) in unscaled.iter_mut().enumerate() {
        let d = ctx.inv(&row[h].clone())?;
        for x in row.iter_mut() {
            if !ctx.is_zero(x) {
                *x = ctx.mul(x, &d)?;
            }
        }
    }
    Ok(unscaled)
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(VerifyCheck {
            name: name.to_string(),
            pass,
            detail,
        });
    }
}

/// Aggregated contract check for a produced triple: vanishing, the Groebner
/// and reduced-basis predicates, escalier shape, Newton triangularity, and
/// (for x-tower sites under tdlex) the predicted leading-term set.
pub fn verify_triple(site: &Site, order: TermOrder, triple: &BasisTriple) -> Result<VerifyReport> {
    let ctx = site.context();
    let mut report = VerifyReport { checks: Vec::new() };

    let mut vanish = true;
    let mut vanish_detail = String::from("every basis element vanishes at every node");
    'outer: for g in &triple.groebner {
        for n in site.nodes() {
            if !ctx.is_zero(&g.eval(n.coords())?) {
                vanish = false;
                vanish_detail = format!("element with LT {} does not vanish at {n}",
                    g.leading_monomial(order)?);
                break 'outer;
            }
        }
    }
    report.push("groebner_vanishes", vanish, vanish_detail);

    let gb = poly::is_groebner(&triple.groebner, order)?;
    report.push(
        "is_groebner",
        gb,
        if gb {
            "all S-pairs reduce to zero".to_string()
        } else {
            "an S-pair leaves a nonzero remainder".to_string()
        },
    );
    let reduced = gb && poly::is_reduced_groebner(&triple.groebner, order)?;
    report.push(
        "is_reduced_groebner",
        reduced,
        if reduced {
            "monic and autoreduced".to_string()
        } else {
            "fails monic/autoreduced conditions".to_string()
        },
    );

    let card = triple.escalier.len() == site.len();
    report.push(
        "escalier_cardinality",
        card,
        format!("|N| = {}, mu = {}", triple.escalier.len(), site.len()),
    );

    let cells: std::collections::BTreeSet<&Monomial> = triple.escalier.iter().collect();
    let closed = triple.escalier.iter().all(|m| {
        (0..m.dim()).all(|i| {
            m.exp(i) == 0 || {
                let mut e = m.exps().to_vec();
                e[i] -= 1;
                cells.contains(&Monomial::new(e))
            }
        })
    });
    report.push(
        "escalier_downward_closed",
        closed,
        "N is closed under monomial division".to_string(),
    );

    let leads = triple.leading_terms()?;
    let outside = triple
        .escalier
        .iter()
        .all(|m| leads.iter().all(|lt| !lt.divides(m)));
    report.push(
        "escalier_outside_leading_ideal",
        outside,
        "no escalier monomial is a multiple of a leading term".to_string(),
    );

    // completeness: the border of N lies inside the leading-term ideal, so
    // G cuts out exactly the escalier complement
    let complete = triple.escalier.iter().all(|m| {
        (0..m.dim()).all(|i| {
            let u = m.mul_var(i);
            cells.contains(&u) || leads.iter().any(|lt| lt.divides(&u))
        })
    });
    report.push(
        "escalier_complete",
        complete,
        "every border monomial of N is a leading-term multiple".to_string(),
    );

    let spans = triple.newton_spans_escalier()?;
    report.push(
        "newton_spans_escalier",
        spans,
        "Newton supports lie in N and their leading monomials enumerate N".to_string(),
    );
    let tri = triple.newton_is_triangular(ctx)?;
    report.push(
        "newton_triangular",
        tri,
        "unit delta pattern on and below the diagonal".to_string(),
    );

    if site.dim() == 2 && order == TermOrder::Tdlex && site.is_x_tower()?.0 {
        let predicted = bases::predicted_leading_terms(site)?;
        let mut got = leads;
        got.sort_by(|a, b| TermOrder::Tdlex.cmp_unchecked(a, b));
        let ok = got == predicted;
        report.push(
            "predicted_leading_terms",
            ok,
            format!("LT(G) = {{{}}}", join_monomials(&got)),
        );
    }

    Ok(report)
}

fn join_monomials(ms: &[Monomial]) -> String {
    ms.iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
