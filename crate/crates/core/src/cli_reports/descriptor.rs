//! Line-oriented `key=value` group descriptors.
//!
//! ```text
//! # comments run to the end of the line
//! component=A3          # repeatable; `type=A rank=3` is the same
//! isogeny=sc            # sc | ad, or lattice=rows
//! lattice=1,0;0,1/2     # basis rows in simple-coroot coordinates
//! central_rank=0
//! res_copies=1
//! diagram=3,2,1         # 1-based node permutation
//! inner=nu(1)^1         # trivial | nu(i) | nu(i)^j
//! ```

use std::fmt;
use std::str::FromStr;

use crate::descent::{res_diagram, Frobenius, InnerTwist};
use crate::error::{Error, Result};
use crate::lattice::Q;
use crate::root_datum::{cartan, Isogeny, RootDatum, RootType};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    Sc,
    Ad,
    Rows(Vec<Vec<Q>>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub components: Vec<(RootType, usize)>,
    pub lattice: LatticeSpec,
    pub central_rank: usize,
    pub res_copies: usize,
    /// 1-based; of the base component when `res_copies > 1`.
    pub diagram: Option<Vec<usize>>,
    pub inner: InnerTwist,
}

#[derive(Debug, Clone, Copy, Default)]
struct Pos {
    line: usize,
    col: usize,
}

#[derive(Debug, Default)]
struct Spans {
    components: Vec<Pos>,
    lattice: Pos,
    diagram: Pos,
    inner: Pos,
    res: Pos,
}

fn err(pos: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: pos.line, col: pos.col, msg: msg.into() }
}

impl GroupDescriptor {
    pub fn simple(kind: RootType, rank: usize, lattice: LatticeSpec) -> GroupDescriptor {
        GroupDescriptor {
            components: vec![(kind, rank)],
            lattice,
            central_rank: 0,
            res_copies: 1,
            diagram: None,
            inner: InnerTwist::Trivial,
        }
    }

    pub fn with_diagram(mut self, diagram: &[usize]) -> Self {
        self.diagram = Some(diagram.to_vec());
        self
    }

    pub fn with_inner(mut self, inner: InnerTwist) -> Self {
        self.inner = inner;
        self
    }

    /// Components of the datum, with restriction-of-scalars copies expanded.
    pub fn expanded_components(&self) -> Vec<(RootType, usize)> {
        (0..self.res_copies).flat_map(|_| self.components.iter().copied()).collect()
    }

    pub fn datum(&self) -> Result<RootDatum> {
        let iso = match &self.lattice {
            LatticeSpec::Sc => Isogeny::Sc,
            LatticeSpec::Ad => Isogeny::Ad,
            LatticeSpec::Rows(r) => Isogeny::Rows(r.clone()),
        };
        RootDatum::new(&self.expanded_components(), self.central_rank, iso)
    }

    /// 0-based permutation of all finite nodes.
    pub fn sigma(&self) -> Result<Vec<usize>> {
        let base_rank: usize = self.components.iter().map(|c| c.1).sum();
        let base: Vec<usize> = match &self.diagram {
            None => (0..base_rank).collect(),
            Some(d) => {
                if d.len() != base_rank || d.iter().any(|&i| i == 0 || i > base_rank) {
                    return Err(Error::InvalidDiagram(format!("expected a permutation of 1..{base_rank}")));
                }
                d.iter().map(|i| i - 1).collect()
            }
        };
        Ok(res_diagram(base_rank, self.res_copies, &base))
    }

    pub fn build(&self) -> Result<Frobenius> {
        if self.res_copies > 1 && self.components.len() != 1 {
            return Err(Error::InvalidDiagram("res_copies needs a single base component".into()));
        }
        Frobenius::new(self.datum()?, self.sigma()?, self.inner)
    }

    /// Canonical form on one line.
    pub fn one_line(&self) -> String {
        self.to_string().trim_end().replace('\n', " ")
    }
}

fn fmt_q(x: &Q) -> String {
    if *x.denom() == 1 {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, n) in &self.components {
            writeln!(f, "component={k}{n}")?;
        }
        match &self.lattice {
            LatticeSpec::Sc => writeln!(f, "isogeny=sc")?,
            LatticeSpec::Ad => writeln!(f, "isogeny=ad")?,
            LatticeSpec::Rows(rows) => {
                let rows: Vec<String> =
                    rows.iter().map(|r| r.iter().map(fmt_q).collect::<Vec<_>>().join(",")).collect();
                writeln!(f, "lattice={}", rows.join(";"))?
            }
        }
        if self.central_rank > 0 {
            writeln!(f, "central_rank={}", self.central_rank)?;
        }
        if self.res_copies > 1 {
            writeln!(f, "res_copies={}", self.res_copies)?;
        }
        if let Some(d) = &self.diagram {
            let d: Vec<String> = d.iter().map(|i| i.to_string()).collect();
            writeln!(f, "diagram={}", d.join(","))?;
        }
        if self.inner != InnerTwist::Trivial {
            writeln!(f, "inner={}", self.inner)?;
        }
        Ok(())
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_descriptor(s)
    }
}

fn parse_usize(v: &str, pos: Pos, what: &str) -> Result<usize> {
    v.parse().map_err(|_| err(pos, format!("{what} must be a non-negative integer, got {v:?}")))
}

fn parse_q(v: &str, pos: Pos) -> Result<Q> {
    let bad = || err(pos, format!("bad rational {v:?}"));
    match v.split_once('/') {
        None => v.parse::<i64>().map(Q::from_integer).map_err(|_| bad()),
        Some((a, b)) => {
            let (a, b) = (a.parse::<i64>().map_err(|_| bad())?, b.parse::<i64>().map_err(|_| bad())?);
            if b == 0 {
                return Err(bad());
            }
            Ok(Q::new(a, b))
        }
    }
}

fn parse_type(v: &str, pos: Pos) -> Result<RootType> {
    v.parse().map_err(|_| err(pos, format!("unknown type {v:?}")))
}

fn parse_inner(v: &str, pos: Pos) -> Result<InnerTwist> {
    if v == "trivial" {
        return Ok(InnerTwist::Trivial);
    }
    let bad = || err(pos, format!("inner must be trivial, nu(i) or nu(i)^j, got {v:?}"));
    let rest = v.strip_prefix("nu(").ok_or_else(bad)?;
    let (node, rest) = rest.split_once(')').ok_or_else(bad)?;
    let node: usize = node.parse().map_err(|_| bad())?;
    let power = match rest {
        "" => 1,
        _ => rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
    };
    if node == 0 {
        return Err(bad());
    }
    Ok(InnerTwist::Nu { node: node - 1, power })
}

/// Whitespace-separated tokens with 1-based line and column.
fn tokens(text: &str) -> impl Iterator<Item = (Pos, &str)> {
    text.lines().enumerate().flat_map(|(ln, line)| {
        let line = line.split('#').next().unwrap_or("");
        let mut out = Vec::new();
        let mut start = None;
        for (i, c) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    let col = line[..s].chars().count() + 1;
                    out.push((Pos { line: ln + 1, col }, &line[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        out
    })
}

pub fn parse_descriptor(text: &str) -> Result<GroupDescriptor> {
    let mut d = GroupDescriptor {
        components: Vec::new(),
        lattice: LatticeSpec::Sc,
        central_rank: 0,
        res_copies: 1,
        diagram: None,
        inner: InnerTwist::Trivial,
    };
    let mut spans = Spans::default();
    let mut lattice_seen = false;
    let mut pending_type: Option<(RootType, Pos)> = None;
    let mut pending_rank: Option<(usize, Pos)> = None;
    let mut last = Pos { line: 1, col: 1 };
    for (pos, tok) in tokens(text) {
        last = pos;
        let (key, value) = tok.split_once('=').ok_or_else(|| err(pos, format!("expected key=value, got {tok:?}")))?;
        let vpos = Pos { line: pos.line, col: pos.col + key.chars().count() + 1 };
        match key {
            "type" => {
                if pending_type.is_some() {
                    return Err(err(pos, "type without a rank"));
                }
                pending_type = Some((parse_type(value, vpos)?, pos));
            }
            "rank" => {
                if pending_rank.is_some() {
                    return Err(err(pos, "rank without a type"));
                }
                pending_rank = Some((parse_usize(value, vpos, "rank")?, pos));
            }
            "component" => {
                let mut chars = value.chars();
                let kind = parse_type(&chars.next().map(String::from).unwrap_or_default(), vpos)?;
                let rank = parse_usize(chars.as_str(), Pos { line: vpos.line, col: vpos.col + 1 }, "rank")?;
                d.components.push((kind, rank));
                spans.components.push(pos);
            }
            "isogeny" | "lattice" => {
                if lattice_seen {
                    return Err(err(pos, "lattice given twice"));
                }
                lattice_seen = true;
                spans.lattice = pos;
                d.lattice = match (key, value) {
                    ("isogeny", "sc") => LatticeSpec::Sc,
                    ("isogeny", "ad") => LatticeSpec::Ad,
                    ("isogeny", _) => return Err(err(vpos, format!("isogeny must be sc or ad, got {value:?}"))),
                    _ => LatticeSpec::Rows(
                        value
                            .split(';')
                            .map(|row| row.split(',').map(|x| parse_q(x, vpos)).collect::<Result<Vec<_>>>())
                            .collect::<Result<_>>()?,
                    ),
                };
            }
            "central_rank" => d.central_rank = parse_usize(value, vpos, "central_rank")?,
            "res_copies" => {
                spans.res = pos;
                d.res_copies = parse_usize(value, vpos, "res_copies")?;
                if d.res_copies == 0 {
                    return Err(err(vpos, "res_copies must be positive"));
                }
            }
            "diagram" => {
                spans.diagram = pos;
                d.diagram =
                    Some(value.split(',').map(|x| parse_usize(x, vpos, "diagram entry")).collect::<Result<_>>()?);
            }
            "inner" => {
                spans.inner = pos;
                d.inner = parse_inner(value, vpos)?;
            }
            _ => return Err(err(pos, format!("unknown key {key:?}"))),
        }
        if let (Some((kind, p)), Some((rank, _))) = (pending_type, pending_rank) {
            d.components.push((kind, rank));
            spans.components.push(p);
            pending_type = None;
            pending_rank = None;
        }
    }
    if let Some((_, p)) = pending_type {
        return Err(err(p, "type without a rank"));
    }
    if let Some((_, p)) = pending_rank {
        return Err(err(p, "rank without a type"));
    }
    if d.components.is_empty() {
        return Err(err(last, "no components"));
    }
    for (&(kind, rank), &p) in d.components.iter().zip(&spans.components) {
        cartan::check_rank(kind, rank).map_err(|e| err(p, e.to_string()))?;
    }
    if let LatticeSpec::Rows(rows) = &d.lattice {
        let dim: usize = d.components.iter().map(|c| c.1).sum::<usize>() * d.res_copies + d.central_rank;
        if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
            return Err(err(spans.lattice, format!("lattice needs {dim} rows of length {dim}")));
        }
    }
    d.build().map_err(|e| {
        let p = match e {
            Error::InvalidLattice(_) => spans.lattice,
            Error::InvalidDiagram(_) if d.res_copies > 1 && d.diagram.is_none() => spans.res,
            Error::InvalidDiagram(_) => spans.diagram,
            Error::InvalidInner(_) => spans.inner,
            _ => last,
        };
        err(p, e.to_string())
    })?;
    Ok(d)
}
