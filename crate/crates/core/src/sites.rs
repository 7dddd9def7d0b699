//! Node-set geometry: covering lines, the lower sets S_x/S_y, coordinate
//! chains, the lower/tower classifiers, and seeded random site generators.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldValue};

/// A point of F^d; coordinates share one context.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Node(pub Vec<FieldValue>);

impl Node {
    pub fn coords(&self) -> &[FieldValue] {
        &self.0
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// An interpolation site: a nonempty ordered collection of distinct nodes.
#[derive(Clone, Debug)]
pub struct Site {
    ctx: FieldContext,
    dim: usize,
    nodes: Vec<Node>,
}

impl Site {
    pub fn new(ctx: FieldContext, nodes: Vec<Node>) -> Result<Self> {
        let Some(first) = nodes.first() else {
            return Err(Error::EmptySite);
        };
        let dim = first.0.len();
        let mut seen = HashSet::new();
        for n in &nodes {
            if n.0.len() != dim {
                return Err(Error::DimensionMismatch(dim, n.0.len()));
            }
            for c in &n.0 {
                // reuse the context's kind check through a no-op addition
                ctx.add(c, &ctx.zero())?;
            }
            if !seen.insert(n.clone()) {
                return Err(Error::DuplicateNodes(n.to_string()));
            }
        }
        Ok(Site { ctx, dim, nodes })
    }

    pub fn context(&self) -> FieldContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    fn require_planar(&self) -> Result<()> {
        if self.dim != 2 {
            return Err(Error::WrongDimension(self.dim));
        }
        Ok(())
    }

    /// Covering-line decomposition: rows grouped by equal ordinate, columns
    /// by equal abscissa, each sorted by descending node count with ties
    /// broken by ascending coordinate value.
    pub fn analyze(&self) -> Result<CoveringAnalysis> {
        self.require_planar()?;
        let mut by_y: BTreeMap<FieldValue, BTreeSet<FieldValue>> = BTreeMap::new();
        let mut by_x: BTreeMap<FieldValue, BTreeSet<FieldValue>> = BTreeMap::new();
        for n in &self.nodes {
            by_y.entry(n.0[1].clone())
                .or_default()
                .insert(n.0[0].clone());
            by_x.entry(n.0[0].clone())
                .or_default()
                .insert(n.0[1].clone());
        }
        let collect = |m: BTreeMap<FieldValue, BTreeSet<FieldValue>>| {
            let mut lines: Vec<CoveringLine> = m
                .into_iter()
                .map(|(coordinate, members)| CoveringLine {
                    coordinate,
                    members: members.into_iter().collect(),
                })
                .collect();
            lines.sort_by(|a, b| {
                b.members
                    .len()
                    .cmp(&a.members.len())
                    .then_with(|| a.coordinate.cmp(&b.coordinate))
            });
            lines
        };
        Ok(CoveringAnalysis {
            rows: collect(by_y),
            columns: collect(by_x),
        })
    }

    /// S_x: the lower set of the row size profile.
    pub fn lower_set_x(&self) -> Result<LowerSet> {
        let a = self.analyze()?;
        LowerSet::from_row_form(
            &a.rows
                .iter()
                .map(|l| (l.members.len() - 1) as u32)
                .collect::<Vec<_>>(),
        )
    }

    /// S_y: the lower set of the column size profile (as a column form).
    pub fn lower_set_y(&self) -> Result<LowerSet> {
        let a = self.analyze()?;
        LowerSet::from_column_form(
            &a.columns
                .iter()
                .map(|l| (l.members.len() - 1) as u32)
                .collect::<Vec<_>>(),
        )
    }

    /// Lower-site test: S_x = S_y as cell sets, cross-checked against the
    /// nested-chain criterion. The two must agree; a disagreement signals an
    /// implementation bug.
    pub fn is_lower(&self) -> Result<(bool, String)> {
        let a = self.analyze()?;
        let sx = self.lower_set_x()?;
        let sy = self.lower_set_y()?;
        let by_profiles = sx.cells() == sy.cells();

        let h_nested = chain_nested(&a.rows);
        let v_nested = chain_nested(&a.columns);
        let by_chains = h_nested.is_none() || v_nested.is_none();
        if by_profiles != by_chains {
            return Err(Error::InternalDisagreement(format!(
                "profile criterion says {by_profiles}, chain criterion says {by_chains}"
            )));
        }
        let witness = if by_profiles {
            if h_nested.is_none() {
                "H-chain nested: H_0 \u{2287} H_1 \u{2287} ...".to_string()
            } else {
                "V-chain nested: V_0 \u{2287} V_1 \u{2287} ...".to_string()
            }
        } else {
            format!(
                "S_x {:?} != S_y {:?}; H-chain breaks at {}; V-chain breaks at {}",
                sx.row_form(),
                sy.column_form(),
                h_nested.map_or("-".to_string(), |j| format!("H_{} \u{2289} H_{}", j - 1, j)),
                v_nested.map_or("-".to_string(), |i| format!("V_{} \u{2289} V_{}", i - 1, i)),
            )
        };
        Ok((by_profiles, witness))
    }

    /// x-tower test: strictly decreasing row sizes, and every row draws its
    /// abscissae from the largest row's abscissa set.
    pub fn is_x_tower(&self) -> Result<(bool, String)> {
        let a = self.analyze()?;
        Ok(tower_check(&a.rows, "row", "H"))
    }

    pub fn is_y_tower(&self) -> Result<(bool, String)> {
        let a = self.analyze()?;
        Ok(tower_check(&a.columns, "column", "V"))
    }

    /// Under a strictly nested H-chain (resp. V-chain), the lower and
    /// x-tower (resp. y-tower) classifiers must coincide.
    pub fn prop34_consistency(&self) -> Result<bool> {
        let a = self.analyze()?;
        let (lower, _) = self.is_lower()?;
        if chain_strictly_nested(&a.rows) {
            Ok(lower == self.is_x_tower()?.0)
        } else if chain_strictly_nested(&a.columns) {
            Ok(lower == self.is_y_tower()?.0)
        } else {
            Err(Error::PreconditionUnmet(
                "neither coordinate chain is strictly nested".to_string(),
            ))
        }
    }

    /// Tower node labeling u_ij with (i, j) in S_x: rows in covering order,
    /// abscissae ascending within each row; emitted row-major, which is
    /// increasing inlex on the index pairs.
    pub fn labeled_nodes_x(&self) -> Result<Vec<((u32, u32), Node)>> {
        let a = self.analyze()?;
        let mut out = Vec::with_capacity(self.len());
        for (j, line) in a.rows.iter().enumerate() {
            for (i, x) in line.members.iter().enumerate() {
                out.push((
                    (i as u32, j as u32),
                    Node(vec![x.clone(), line.coordinate.clone()]),
                ));
            }
        }
        Ok(out)
    }

    /// Symmetric labeling over columns; emitted column-major, which is
    /// increasing lex on the index pairs.
    pub fn labeled_nodes_y(&self) -> Result<Vec<((u32, u32), Node)>> {
        let a = self.analyze()?;
        let mut out = Vec::with_capacity(self.len());
        for (i, line) in a.columns.iter().enumerate() {
            for (j, y) in line.members.iter().enumerate() {
                out.push((
                    (i as u32, j as u32),
                    Node(vec![line.coordinate.clone(), y.clone()]),
                ));
            }
        }
        Ok(out)
    }
}

/// One covering line: the shared coordinate and the other coordinates of its
/// nodes, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveringLine {
    pub coordinate: FieldValue,
    pub members: Vec<FieldValue>,
}

#[derive(Clone, Debug)]
pub struct CoveringAnalysis {
    pub rows: Vec<CoveringLine>,
    pub columns: Vec<CoveringLine>,
}

/// Returns `None` when the chain is nested, otherwise the first index j with
/// line j not contained in line j-1.
fn chain_nested(lines: &[CoveringLine]) -> Option<usize> {
    for j in 1..lines.len() {
        let prev: BTreeSet<_> = lines[j - 1].members.iter().collect();
        if !lines[j].members.iter().all(|m| prev.contains(m)) {
            return Some(j);
        }
    }
    None
}

fn chain_strictly_nested(lines: &[CoveringLine]) -> bool {
    chain_nested(lines).is_none()
        && lines
            .windows(2)
            .all(|w| w[1].members.len() < w[0].members.len())
}

fn tower_check(lines: &[CoveringLine], kind: &str, chain: &str) -> (bool, String) {
    for j in 1..lines.len() {
        if lines[j].members.len() >= lines[j - 1].members.len() {
            return (
                false,
                format!(
                    "{kind} sizes not strictly decreasing: #{} = {} vs #{} = {}",
                    j - 1,
                    lines[j - 1].members.len(),
                    j,
                    lines[j].members.len()
                ),
            );
        }
    }
    let h0: BTreeSet<_> = lines[0].members.iter().collect();
    for (j, line) in lines.iter().enumerate().skip(1) {
        if let Some(stray) = line.members.iter().find(|m| !h0.contains(m)) {
            return (
                false,
                format!("{chain}_{j} \u{2288} {chain}_0: coordinate {stray} missing from {chain}_0"),
            );
        }
    }
    (
        true,
        format!(
            "sizes strictly decrease ({}) and every {kind} is drawn from {chain}_0",
            lines
                .iter()
                .map(|l| l.members.len().to_string())
                .collect::<Vec<_>>()
                .join(">")
        ),
    )
}

/// A finite downward-closed subset of N_0^2 with its two tuple encodings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerSet {
    cells: BTreeSet<(u32, u32)>,
    row_form: Vec<u32>,
    column_form: Vec<u32>,
}

impl LowerSet {
    /// L_x(m_0, ..., m_nu); the profile must be non-increasing.
    pub fn from_row_form(ms: &[u32]) -> Result<Self> {
        if ms.is_empty() {
            return Err(Error::InvalidLowerSet("empty row form".to_string()));
        }
        if ms.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidLowerSet(format!(
                "row form {ms:?} is not non-increasing"
            )));
        }
        let mut cells = BTreeSet::new();
        for (j, &m) in ms.iter().enumerate() {
            for i in 0..=m {
                cells.insert((i, j as u32));
            }
        }
        Ok(Self::from_cells_unchecked(cells))
    }

    /// L_y(n_0, ..., n_{m_0}).
    pub fn from_column_form(ns: &[u32]) -> Result<Self> {
        if ns.is_empty() {
            return Err(Error::InvalidLowerSet("empty column form".to_string()));
        }
        if ns.windows(2).any(|w| w[1] > w[0]) {
            return Err(Error::InvalidLowerSet(format!(
                "column form {ns:?} is not non-increasing"
            )));
        }
        let mut cells = BTreeSet::new();
        for (i, &n) in ns.iter().enumerate() {
            for j in 0..=n {
                cells.insert((i as u32, j));
            }
        }
        Ok(Self::from_cells_unchecked(cells))
    }

    pub fn from_cells(cells: BTreeSet<(u32, u32)>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::InvalidLowerSet("empty cell set".to_string()));
        }
        for &(i, j) in &cells {
            if (i > 0 && !cells.contains(&(i - 1, j))) || (j > 0 && !cells.contains(&(i, j - 1))) {
                return Err(Error::InvalidLowerSet(format!(
                    "cell ({i}, {j}) has a missing predecessor"
                )));
            }
        }
        Ok(Self::from_cells_unchecked(cells))
    }

    fn from_cells_unchecked(cells: BTreeSet<(u32, u32)>) -> Self {
        let nu = cells.iter().map(|&(_, j)| j).max().unwrap();
        let m0 = cells.iter().map(|&(i, _)| i).max().unwrap();
        let row_form = (0..=nu)
            .map(|j| cells.iter().filter(|&&(_, jj)| jj == j).map(|&(i, _)| i).max().unwrap())
            .collect();
        let column_form = (0..=m0)
            .map(|i| cells.iter().filter(|&&(ii, _)| ii == i).map(|&(_, j)| j).max().unwrap())
            .collect();
        LowerSet {
            cells,
            row_form,
            column_form,
        }
    }

    pub fn cells(&self) -> &BTreeSet<(u32, u32)> {
        &self.cells
    }

    pub fn size(&self) -> usize {
        self.cells.len()
    }

    pub fn row_form(&self) -> &[u32] {
        &self.row_form
    }

    pub fn column_form(&self) -> &[u32] {
        &self.column_form
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TowerKind {
    X,
    Y,
}

/// Deterministic seeded generator of tower sites over F_q. Row sizes are a
/// random strictly decreasing profile summing exactly to `mu_target`;
/// abscissae of every row are drawn from the first row's abscissa set. Nodes
/// come out in canonical labeled order.
pub fn random_tower_site(q: u64, mu_target: u64, kind: TowerKind, seed: u64) -> Result<Site> {
    let ctx = FieldContext::prime(q)?;
    let bound = q * (q + 1) / 2;
    if mu_target == 0 || mu_target > bound {
        return Err(Error::TargetTooLarge {
            target: mu_target,
            bound,
            q,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7057_3173);
    let mut sizes: Vec<u64> = Vec::new();
    let mut remaining = mu_target;
    let mut cap = q;
    while remaining > 0 {
        let mut s_min = 1u64;
        while s_min * (s_min + 1) / 2 < remaining {
            s_min += 1;
        }
        let s_max = cap.min(remaining);
        debug_assert!(s_min <= s_max);
        let s = rng.gen_range(s_min..=s_max);
        sizes.push(s);
        remaining -= s;
        cap = s - 1;
    }

    let ordinates: Vec<u64> = sample(&mut rng, q as usize, sizes.len())
        .into_iter()
        .map(|i| i as u64)
        .collect();
    let mut h0: Vec<u64> = sample(&mut rng, q as usize, sizes[0] as usize)
        .into_iter()
        .map(|i| i as u64)
        .collect();
    h0.sort_unstable();

    let mut nodes = Vec::with_capacity(mu_target as usize);
    for (j, &s) in sizes.iter().enumerate() {
        let mut xs: Vec<u64> = if j == 0 {
            h0.clone()
        } else {
            sample(&mut rng, h0.len(), s as usize)
                .into_iter()
                .map(|i| h0[i])
                .collect()
        };
        xs.sort_unstable();
        for x in xs {
            let (a, b) = (ctx.from_i64(x as i64), ctx.from_i64(ordinates[j] as i64));
            nodes.push(match kind {
                TowerKind::X => Node(vec![a, b]),
                TowerKind::Y => Node(vec![b, a]),
            });
        }
    }
    Site::new(ctx, nodes)
}

/// Seeded uniform sample of `mu` distinct points of F_q x F_q.
pub fn random_site(q: u64, mu: usize, seed: u64) -> Result<Site> {
    let ctx = FieldContext::prime(q)?;
    let total = (q * q) as usize;
    if mu == 0 || mu > total {
        return Err(Error::PreconditionUnmet(format!(
            "cannot sample {mu} distinct points from F_{q}^2"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5173_e5e5);
    let nodes = sample(&mut rng, total, mu)
        .into_iter()
        .map(|k| {
            Node(vec![
                ctx.from_i64((k as u64 % q) as i64),
                ctx.from_i64((k as u64 / q) as i64),
            ])
        })
        .collect();
    Site::new(ctx, nodes)
}
