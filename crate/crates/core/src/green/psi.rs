use serde::Serialize;

use super::GreensClasses;
use crate::band::BandElement;
use crate::cayley::CayleyTable;
use crate::error::{Error, Result};

/// The map `x ↦ (R-class of x, L-class of x)` on a rectangular band, with
/// the product `(R1, L1) ⋆ (R2, L2) = (R1, L2)` on pairs.
#[derive(Debug, Clone, Serialize)]
pub struct PsiReport {
    /// `(R-class index, L-class index)` per element.
    pub values: Vec<(usize, usize)>,
    pub is_surjective: bool,
    pub is_injective: bool,
    pub is_homomorphism: bool,
    /// Two distinct labels with the same image.
    pub non_injective_witness: Option<(String, String)>,
}

pub fn psi_map(elems: &[BandElement], greens: &GreensClasses) -> Result<PsiReport> {
    if greens.r.len() != elems.len() {
        return Err(Error::PartitionMismatch(greens.r.len(), elems.len()));
    }
    let s = CayleyTable::of_band(elems)?.semigroup()?;
    let values: Vec<(usize, usize)> = (0..elems.len())
        .map(|i| (greens.r.block_of(i), greens.l.block_of(i)))
        .collect();

    let mut hit = vec![false; greens.r.num_blocks() * greens.l.num_blocks()];
    for &(r, l) in &values {
        hit[r * greens.l.num_blocks() + l] = true;
    }

    let mut witness = None;
    'outer: for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                witness = Some((elems[i].label(), elems[j].label()));
                break 'outer;
            }
        }
    }

    let n = elems.len();
    let is_homomorphism =
        (0..n).all(|x| (0..n).all(|y| values[s.mul(x, y)] == (values[x].0, values[y].1)));

    Ok(PsiReport {
        is_surjective: hit.iter().all(|&h| h),
        is_injective: witness.is_none(),
        is_homomorphism,
        non_injective_witness: witness,
        values,
    })
}
