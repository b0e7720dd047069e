use serde::Serialize;

use super::Partition;
use crate::band::BandElement;
use crate::cayley::CayleyTable;
use crate::error::Result;
use crate::semigroup::FiniteSemigroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreensClasses {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
    pub j: Partition,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Green {
    R,
    L,
    H,
    D,
    J,
}

impl GreensClasses {
    pub fn get(&self, g: Green) -> &Partition {
        match g {
            Green::R => &self.r,
            Green::L => &self.l,
            Green::H => &self.h,
            Green::D => &self.d,
            Green::J => &self.j,
        }
    }

    /// Pulls classes on the blocks of `kernel` back to its elements.
    pub fn lift(&self, kernel: &Partition) -> Result<Self> {
        Ok(Self {
            r: self.r.lift(kernel)?,
            l: self.l.lift(kernel)?,
            h: self.h.lift(kernel)?,
            d: self.d.lift(kernel)?,
            j: self.j.lift(kernel)?,
        })
    }
}

/// R: equal `aS¹`; L: equal `S¹a`; H = R ∩ L; D = R ∨ L; J: equal `S¹aS¹`.
pub fn greens(s: &FiniteSemigroup) -> GreensClasses {
    let n = s.size();
    let r = Partition::from_keys((0..n).map(|a| s.right_ideal(a)));
    let l = Partition::from_keys((0..n).map(|a| s.left_ideal(a)));
    let j = Partition::from_keys((0..n).map(|a| s.principal_ideal(a)));
    let h = r.meet(&l).expect("same size");
    let d = r.join(&l).expect("same size");
    GreensClasses { r, l, h, d, j }
}

/// Green's classes of a closed table.
pub fn greens_classes(table: &CayleyTable) -> Result<GreensClasses> {
    Ok(greens(&table.semigroup()?))
}

/// Elements with the same supermatrix share a block.
pub fn rep_kernel(elems: &[BandElement]) -> Partition {
    Partition::from_keys(elems.iter().map(|x| x.rep()))
}

/// Green's classes of the matrix semigroup spanned by `elems`, reported on
/// the elements themselves: the table is taken modulo equality of
/// supermatrices, the classes are computed there, and lifted back. With
/// canonical parameters the kernel is trivial.
pub fn band_greens(elems: &[BandElement]) -> Result<GreensClasses> {
    let table = CayleyTable::of_band(elems)?;
    let s = table.semigroup()?;
    let kernel = rep_kernel(elems);
    greens(&s.quotient(&kernel)?).lift(&kernel)
}

/// Outcome of the check that every pair of elements is J-related.
#[derive(Debug, Clone, Serialize)]
pub struct JUniversal {
    pub j_classes: usize,
    /// Pairs `(x, y)` checked for the sandwich identity `xyx = x`.
    pub pairs_checked: usize,
    pub sandwich_failures: usize,
}

impl JUniversal {
    pub fn holds(&self) -> bool {
        self.j_classes <= 1 && self.sandwich_failures == 0
    }
}

/// J has a single class, confirmed independently by `xyx = x` for all pairs
/// (so `x ∈ S¹yS¹` for every `x`, `y`).
pub fn j_universal_check(elems: &[BandElement]) -> Result<JUniversal> {
    let table = CayleyTable::of_band(elems)?;
    let s = table.semigroup()?;
    let g = band_greens(elems)?;
    let n = s.size();
    let kernel = rep_kernel(elems);
    let mut failures = 0;
    for x in 0..n {
        for y in 0..n {
            if !kernel.related(s.mul(s.mul(x, y), x), x) {
                failures += 1;
            }
        }
    }
    Ok(JUniversal {
        j_classes: g.j.num_blocks(),
        pairs_checked: n * n,
        sandwich_failures: failures,
    })
}
