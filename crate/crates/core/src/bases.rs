//! Closed-form degree-reducing interpolation bases for tower sites, the
//! arbitrary-site lex/inlex bases, the predicted leading-term set, and the
//! ideal of collinear nodes.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::{IndexOrder, Monomial, TermOrder};
use crate::poly::Polynomial;
use crate::sites::{LowerSet, Node, Site};

/// Which covering direction a term order draws its basis from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    X,
    Y,
}

impl Flavor {
    pub fn of(order: TermOrder) -> Flavor {
        match order {
            TermOrder::Lex | TermOrder::Tdlex => Flavor::X,
            TermOrder::Inlex | TermOrder::Tdinlex => Flavor::Y,
        }
    }

    /// Index order giving the Newton triangularity for this flavor.
    pub fn index_order(self) -> IndexOrder {
        match self {
            Flavor::X => IndexOrder::Inlex,
            Flavor::Y => IndexOrder::Lex,
        }
    }
}

/// The closed-form bases require a tower site for the total-degree orders;
/// lex and inlex work on any site.
pub fn check_applicable(site: &Site, order: TermOrder) -> Result<()> {
    match order {
        TermOrder::Tdlex => {
            let (ok, witness) = site.is_x_tower()?;
            if !ok {
                return Err(Error::NotTower(format!("tdlex needs an x-tower site: {witness}")));
            }
        }
        TermOrder::Tdinlex => {
            let (ok, witness) = site.is_y_tower()?;
            if !ok {
                return Err(Error::NotTower(format!("tdinlex needs a y-tower site: {witness}")));
            }
        }
        TermOrder::Lex | TermOrder::Inlex => {}
    }
    Ok(())
}

/// The monomial basis x^i y^j over a lower set, listed in increasing active
/// order.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
    source: LowerSet,
}

impl MonomialBasis {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn source(&self) -> &LowerSet {
        &self.source
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

/// Degree-reducing interpolation monomial basis: the S_x monomials for tdlex
/// and lex, the S_y monomials for tdinlex and inlex.
pub fn drimb(site: &Site, order: TermOrder) -> Result<MonomialBasis> {
    check_applicable(site, order)?;
    let source = match Flavor::of(order) {
        Flavor::X => site.lower_set_x()?,
        Flavor::Y => site.lower_set_y()?,
    };
    let mut monomials: Vec<Monomial> = source
        .cells()
        .iter()
        .map(|&(i, j)| Monomial::xy(i, j))
        .collect();
    monomials.sort_by(|a, b| order.cmp_unchecked(a, b));
    Ok(MonomialBasis { monomials, source })
}

#[derive(Clone, Debug)]
pub struct NewtonEntry {
    pub index: (u32, u32),
    pub node: Node,
    pub poly: Polynomial,
}

/// Degree-reducing interpolation Newton basis, listed in increasing index
/// order of its flavor (inlex for the x-flavor, lex for the y-flavor). Each
/// element is normalized so that it evaluates to 1 at its own node, and to 0
/// at every index-order-smaller node.
#[derive(Clone, Debug)]
pub struct NewtonBasis {
    pub flavor: Flavor,
    pub entries: Vec<NewtonEntry>,
}

impl NewtonBasis {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn drinb(site: &Site, order: TermOrder) -> Result<NewtonBasis> {
    check_applicable(site, order)?;
    let flavor = Flavor::of(order);
    let ctx = site.context();
    let analysis = site.analyze()?;
    let (lines, outer_var, inner_var) = match flavor {
        // rows: the outer product runs over row ordinates (y), the inner
        // over within-row abscissae (x)
        Flavor::X => (&analysis.rows, 1usize, 0usize),
        Flavor::Y => (&analysis.columns, 0usize, 1usize),
    };

    let mut entries = Vec::with_capacity(site.len());
    let mut outer_prefix = Polynomial::constant(ctx, 2, ctx.one());
    for (j, line) in lines.iter().enumerate() {
        let mut prefix = outer_prefix.clone();
        for (i, coord) in line.members.iter().enumerate() {
            let node = match flavor {
                Flavor::X => Node(vec![coord.clone(), line.coordinate.clone()]),
                Flavor::Y => Node(vec![line.coordinate.clone(), coord.clone()]),
            };
            let denom = prefix.eval(node.coords())?;
            let poly = prefix.scale(&ctx.inv(&denom)?)?;
            let index = match flavor {
                Flavor::X => (i as u32, j as u32),
                Flavor::Y => (j as u32, i as u32),
            };
            entries.push(NewtonEntry { index, node, poly });
            prefix = prefix.mul(&Polynomial::linear_factor(ctx, 2, inner_var, coord))?;
        }
        outer_prefix = outer_prefix.mul(&Polynomial::linear_factor(
            ctx,
            2,
            outer_var,
            &line.coordinate,
        ))?;
    }
    debug_assert!(entries
        .windows(2)
        .all(|w| flavor.index_order().compare(w[0].index, w[1].index) == Ordering::Less));
    Ok(NewtonBasis { flavor, entries })
}

/// The leading terms of the tdlex reduced Groebner basis of an x-tower site,
/// read off the row size profile (m_0, ..., m_nu):
/// x^{m_0+1}, x^{m_1+1} y, ..., x^{m_nu+1} y^nu, y^{nu+1}.
pub fn predicted_leading_terms(site: &Site) -> Result<Vec<Monomial>> {
    let (ok, witness) = site.is_x_tower()?;
    if !ok {
        return Err(Error::NotTower(witness));
    }
    let row_form = site.lower_set_x()?.row_form().to_vec();
    let nu = row_form.len() as u32 - 1;
    let mut out: Vec<Monomial> = row_form
        .iter()
        .enumerate()
        .map(|(j, &m)| Monomial::xy(m + 1, j as u32))
        .collect();
    out.push(Monomial::xy(0, nu + 1));
    out.sort_by(|a, b| TermOrder::Tdlex.cmp_unchecked(a, b));
    Ok(out)
}

/// The two-element reduced Groebner basis of nodes on one horizontal line:
/// the product of (x - x_i) over the abscissae, and y - y_0.
pub fn line_ideal(nodes: &[Node]) -> Result<Vec<Polynomial>> {
    let Some(first) = nodes.first() else {
        return Err(Error::NotCollinear("no nodes given".to_string()));
    };
    if first.coords().len() != 2 {
        return Err(Error::WrongDimension(first.coords().len()));
    }
    // infer the context from the first coordinate
    let ctx = match &first.coords()[0] {
        crate::field::FieldValue::Residue(_) => {
            // the residues do not carry the modulus; callers hand us nodes
            // taken from a Site, so recover q is impossible here. Collinear
            // node sets therefore come in via site_line_ideal below.
            return Err(Error::NonPrimeField);
        }
        crate::field::FieldValue::Rational(_) => crate::field::FieldContext::Rationals,
    };
    line_ideal_in(ctx, nodes)
}

/// Same as [`line_ideal`] with an explicit field context.
pub fn line_ideal_in(ctx: crate::field::FieldContext, nodes: &[Node]) -> Result<Vec<Polynomial>> {
    let Some(first) = nodes.first() else {
        return Err(Error::NotCollinear("no nodes given".to_string()));
    };
    if first.coords().len() != 2 {
        return Err(Error::WrongDimension(first.coords().len()));
    }
    let y0 = first.coords()[1].clone();
    let mut seen = std::collections::HashSet::new();
    let mut product = Polynomial::constant(ctx, 2, ctx.one());
    for n in nodes {
        if n.coords()[1] != y0 {
            return Err(Error::NotCollinear(format!(
                "node {n} is not on the line of ordinate {y0}"
            )));
        }
        if !seen.insert(n.coords()[0].clone()) {
            return Err(Error::DuplicateNodes(n.to_string()));
        }
        product = product.mul(&Polynomial::linear_factor(ctx, 2, 0, &n.coords()[0]))?;
    }
    Ok(vec![
        product,
        Polynomial::linear_factor(ctx, 2, 1, &y0),
    ])
}
