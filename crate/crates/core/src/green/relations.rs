//! α-equality relations on parameters, fine per-index relations and the
//! mixed relations built from them.

use std::fmt;
use std::str::FromStr;

use super::{Green, GreensClasses, Partition};
use crate::band::{BandElement, BandKind, Family};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeltaMode {
    /// One parameter: `p[t]`, `q[u]`, `y[t]`.
    Single,
    /// Both parameters of the rectangular band.
    Double,
    /// Every parameter of an `(n|n)`-band element.
    NPle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    R,
    L,
}

fn alpha_images(x: &BandElement, params: Vec<GrassmannElement>) -> Vec<GrassmannElement> {
    params.iter().map(|t| x.alpha() * t).collect()
}

fn single_param(x: &BandElement) -> Option<(u8, GrassmannElement)> {
    match x.kind() {
        BandKind::P(t) => Some((0, t.clone())),
        BandKind::Q(u) => Some((1, u.clone())),
        BandKind::Y(t) => Some((2, t.clone())),
        _ => None,
    }
}

fn check_homogeneous(elems: &[BandElement]) -> Result<()> {
    if let Some(first) = elems.first() {
        if let Some(x) = elems.iter().find(|x| x.family() != first.family()) {
            return Err(Error::HeterogeneousKinds(format!("{first} and {x}")));
        }
        if let Some(x) = elems.iter().find(|x| x.alpha() != first.alpha()) {
            return Err(Error::HeterogeneousKinds(format!(
                "{first} and {x} use different α"
            )));
        }
    }
    Ok(())
}

/// Blocks of elements whose parameters are componentwise α-equal.
pub fn delta_partition(elems: &[BandElement], mode: DeltaMode) -> Result<Partition> {
    check_homogeneous(elems)?;
    match mode {
        DeltaMode::Single => {
            let mut keys = Vec::with_capacity(elems.len());
            let mut tag = None;
            for x in elems {
                let (k, t) = single_param(x).ok_or_else(|| {
                    Error::HeterogeneousKinds(format!("{x} has no single parameter"))
                })?;
                if *tag.get_or_insert(k) != k {
                    return Err(Error::HeterogeneousKinds(format!(
                        "{x} differs in kind from {}",
                        elems[0]
                    )));
                }
                keys.push(x.alpha() * &t);
            }
            Ok(Partition::from_keys(keys))
        }
        DeltaMode::Double | DeltaMode::NPle => {
            if let Some(x) = elems.iter().find(|x| match x.family() {
                Family::Wreath => false,
                Family::Higher(n) => mode == DeltaMode::Double && n != 1,
                Family::Null => true,
            }) {
                return Err(Error::HeterogeneousKinds(format!(
                    "{x} is not a {} element",
                    if mode == DeltaMode::Double {
                        "(1|1)"
                    } else {
                        "band"
                    }
                )));
            }
            Ok(Partition::from_keys(elems.iter().map(|x| {
                (alpha_images(x, x.t_params()), alpha_images(x, x.u_params()))
            })))
        }
    }
}

/// `R^(k)` (side R) or `L^(k)` (side L), `k` counted from 1: blocks of
/// elements whose `k`-th left (right) parameters are α-equal.
pub fn fine_relation(elems: &[BandElement], side: Side, k: usize) -> Result<Partition> {
    check_homogeneous(elems)?;
    let mut keys = Vec::with_capacity(elems.len());
    for x in elems {
        if x.family() == Family::Null {
            return Err(Error::WrongKind(format!("{x} has no fine relations")));
        }
        let params = match side {
            Side::R => x.t_params(),
            Side::L => x.u_params(),
        };
        if k == 0 || k > params.len() {
            return Err(Error::IndexOutOfRange {
                index: k,
                len: params.len(),
            });
        }
        keys.push(x.alpha() * &params[k - 1]);
    }
    Ok(Partition::from_keys(keys))
}

/// A relation that can label an eggbox axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RelationSpec {
    Green(Green),
    /// `R1`, `L2`, ...
    Fine(Side, usize),
    /// `H(12|1)`: meet of `R^(i)`, `i ∈ I`, and `L^(j)`, `j ∈ J`.
    MixedH(Vec<usize>, Vec<usize>),
    /// `D(1|2)`: join of the meet of `R^(i)` and the meet of `L^(j)`.
    MixedD(Vec<usize>, Vec<usize>),
}

fn fmt_indices(v: &[usize]) -> String {
    if v.iter().all(|&i| i < 10) {
        v.iter().map(|i| i.to_string()).collect()
    } else {
        v.iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for RelationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelationSpec::Green(g) => write!(f, "{g:?}"),
            RelationSpec::Fine(Side::R, k) => write!(f, "R{k}"),
            RelationSpec::Fine(Side::L, k) => write!(f, "L{k}"),
            RelationSpec::MixedH(i, j) => write!(f, "H({}|{})", fmt_indices(i), fmt_indices(j)),
            RelationSpec::MixedD(i, j) => write!(f, "D({}|{})", fmt_indices(i), fmt_indices(j)),
        }
    }
}

fn parse_indices(s: &str, whole: &str) -> Result<Vec<usize>> {
    let bad = || Error::Config(format!("bad relation {whole:?}"));
    let s = s.trim();
    let mut out: Vec<usize> = if s.is_empty() {
        Vec::new()
    } else if s.contains(',') {
        s.split(',')
            .map(|p| p.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(bad))
            .collect::<Result<_>>()?
    };
    if out.contains(&0) {
        return Err(bad());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

impl FromStr for RelationSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Config(format!("bad relation {s:?}"));
        let green = match t {
            "R" => Some(Green::R),
            "L" => Some(Green::L),
            "H" => Some(Green::H),
            "D" => Some(Green::D),
            "J" => Some(Green::J),
            _ => None,
        };
        if let Some(g) = green {
            return Ok(RelationSpec::Green(g));
        }
        let (head, rest) = t.split_at(t.chars().next().ok_or_else(bad)?.len_utf8());
        if let Some(inner) = rest.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
            let (i, j) = inner.split_once('|').ok_or_else(bad)?;
            let (i, j) = (parse_indices(i, s)?, parse_indices(j, s)?);
            if i.is_empty() && j.is_empty() {
                return Err(bad());
            }
            return match head {
                "H" => Ok(RelationSpec::MixedH(i, j)),
                "D" => Ok(RelationSpec::MixedD(i, j)),
                _ => Err(bad()),
            };
        }
        let k: usize = rest.parse().map_err(|_| bad())?;
        if k == 0 {
            return Err(bad());
        }
        match head {
            "R" => Ok(RelationSpec::Fine(Side::R, k)),
            "L" => Ok(RelationSpec::Fine(Side::L, k)),
            _ => Err(bad()),
        }
    }
}

fn meet_all(elems: &[BandElement], side: Side, idx: &[usize]) -> Result<Partition> {
    let mut acc = Partition::universal(elems.len());
    for &k in idx {
        acc = acc.meet(&fine_relation(elems, side, k)?)?;
    }
    Ok(acc)
}

/// `H^(I|J)`: the meet of all `R^(i)`, `i ∈ I`, and `L^(j)`, `j ∈ J`.
pub fn mixed_h(elems: &[BandElement], i: &[usize], j: &[usize]) -> Result<Partition> {
    meet_all(elems, Side::R, i)?.meet(&meet_all(elems, Side::L, j)?)
}

/// `D^(I|J)`: the join of `∩ R^(i)` and `∩ L^(j)`.
pub fn mixed_d(elems: &[BandElement], i: &[usize], j: &[usize]) -> Result<Partition> {
    meet_all(elems, Side::R, i)?.join(&meet_all(elems, Side::L, j)?)
}

impl RelationSpec {
    /// Evaluates on `elems`. Green's relations come from `greens`, which
    /// must be computed on the same list.
    pub fn evaluate(&self, elems: &[BandElement], greens: &GreensClasses) -> Result<Partition> {
        match self {
            RelationSpec::Green(g) => {
                let p = greens.get(*g);
                if p.len() != elems.len() {
                    return Err(Error::PartitionMismatch(p.len(), elems.len()));
                }
                Ok(p.clone())
            }
            RelationSpec::Fine(side, k) => fine_relation(elems, *side, *k),
            RelationSpec::MixedH(i, j) => mixed_h(elems, i, j),
            RelationSpec::MixedD(i, j) => mixed_d(elems, i, j),
        }
    }
}

/// The mixed relation names for an `(n|n)`-band: `H(i|j)`, `D(i|j)`, and
/// the three-index forms `H(ij|k)`, `H(i|kl)`, `D(ij|k)`, `D(i|kl)`.
pub fn mixed_families(n: usize) -> Vec<RelationSpec> {
    let idx: Vec<usize> = (1..=n).collect();
    let pairs: Vec<Vec<usize>> = idx
        .iter()
        .flat_map(|&a| {
            idx.iter()
                .filter(move |&&b| b > a)
                .map(move |&b| vec![a, b])
        })
        .collect();
    let singles: Vec<Vec<usize>> = idx.iter().map(|&a| vec![a]).collect();
    let mut out = Vec::new();
    for i in &singles {
        for j in &singles {
            out.push(RelationSpec::MixedH(i.clone(), j.clone()));
            out.push(RelationSpec::MixedD(i.clone(), j.clone()));
        }
    }
    for p in &pairs {
        for s in &singles {
            out.push(RelationSpec::MixedH(p.clone(), s.clone()));
            out.push(RelationSpec::MixedH(s.clone(), p.clone()));
            out.push(RelationSpec::MixedD(p.clone(), s.clone()));
            out.push(RelationSpec::MixedD(s.clone(), p.clone()));
        }
    }
    out
}
