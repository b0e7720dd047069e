use serde::Serialize;

use super::{band_greens, fine_relation, Side};
use crate::band::{higher_mul, BandElement};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;

/// Selects the elements of an `(n|n)`-band whose parameters other than the
/// `free`-th ones have prescribed α-images: `αt_i = β_i`, `αu_i = γ_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsemigroupSpec {
    /// Free index, counted from 1.
    pub free: usize,
    /// Targets for `αt_i`, indexed from 0; the free entry is ignored.
    pub beta: Vec<GrassmannElement>,
    /// Targets for `αu_i`, indexed from 0; the free entry is ignored.
    pub gamma: Vec<GrassmannElement>,
}

impl SubsemigroupSpec {
    /// Fixes every index but `free` to the α-images of `x`'s parameters.
    pub fn through(x: &BandElement, free: usize) -> Result<Self> {
        let n = x.t_params().len();
        if free == 0 || free > n {
            return Err(Error::IndexOutOfRange {
                index: free,
                len: n,
            });
        }
        let img = |v: Vec<GrassmannElement>| v.iter().map(|t| x.alpha() * t).collect();
        Ok(Self {
            free,
            beta: img(x.t_params()),
            gamma: img(x.u_params()),
        })
    }

    pub fn contains(&self, x: &BandElement) -> bool {
        let (t, u) = (x.t_params(), x.u_params());
        t.len() == self.beta.len()
            && (0..t.len())
                .filter(|&i| i + 1 != self.free)
                .all(|i| x.alpha() * &t[i] == self.beta[i] && x.alpha() * &u[i] == self.gamma[i])
    }
}

/// Green's relations of the subsemigroup against the restricted fine
/// relations of the whole band.
#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub free: usize,
    pub subsemigroup_size: usize,
    /// `R` on the subsemigroup equals `R^(k)` restricted to it.
    pub r: bool,
    /// `L` on the subsemigroup equals `L^(k)` restricted to it.
    pub l: bool,
    /// `H` on the subsemigroup equals `R^(k) ∩ L^(k)` restricted to it.
    pub h: bool,
    /// `D` on the subsemigroup equals `R^(k) ∨ L^(k)` restricted to it.
    pub d: bool,
}

impl RestrictionReport {
    pub fn holds(&self) -> bool {
        self.r && self.l && self.h && self.d
    }
}

/// `elems` is the whole band sample; Green's relations of the selected
/// subset are computed from its own table, fine relations on all of `elems`.
pub fn subsemigroup_restriction(
    spec: &SubsemigroupSpec,
    elems: &[BandElement],
) -> Result<RestrictionReport> {
    let idx: Vec<usize> = (0..elems.len())
        .filter(|&i| spec.contains(&elems[i]))
        .collect();
    let sub: Vec<BandElement> = idx.iter().map(|&i| elems[i].clone()).collect();
    for x in &sub {
        for y in &sub {
            let xy = higher_mul(x, y)?;
            if !sub.contains(&xy) {
                return Err(Error::NotClosed(format!("{x} * {y} = {xy}")));
            }
        }
    }
    let g = band_greens(&sub)?;
    let k = spec.free;
    let rk = fine_relation(elems, Side::R, k)?;
    let lk = fine_relation(elems, Side::L, k)?;
    let hk = rk.meet(&lk)?;
    let dk = rk.join(&lk)?;
    Ok(RestrictionReport {
        free: k,
        subsemigroup_size: sub.len(),
        r: g.r == rk.restrict(&idx),
        l: g.l == lk.restrict(&idx),
        h: g.h == hk.restrict(&idx),
        d: g.d == dk.restrict(&idx),
    })
}
