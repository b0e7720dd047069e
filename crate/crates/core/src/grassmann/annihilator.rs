use num_traits::Zero;

use super::{even_masks, odd_masks, GrassmannElement, Parity};
use crate::error::{Error, Result};
use crate::linalg;

/// Basis of the even annihilator `{x ∈ Λ0 : αx = 0}` of a fixed odd `α`.
///
/// Also carries the echelon form of the basis, which gives every coset
/// `t + Ann α` a unique representative: the element with all pivot
/// coordinates cleared.
#[derive(Debug, Clone)]
pub struct AnnihilatorBasis {
    alpha: GrassmannElement,
    basis: Vec<GrassmannElement>,
    reducer: Vec<(u32, GrassmannElement)>,
}

fn require_odd(alpha: &GrassmannElement) -> Result<()> {
    if alpha.is_zero() {
        return Err(Error::Degenerate(
            "alpha is zero, so its annihilator is all of the even sector".into(),
        ));
    }
    if alpha.parity() != Parity::Odd {
        return Err(Error::Parity {
            expected: "odd",
            got: alpha.parity().to_string(),
        });
    }
    Ok(())
}

fn require_even(x: &GrassmannElement) -> Result<()> {
    if !x.is_even() {
        return Err(Error::Parity {
            expected: "even",
            got: x.parity().to_string(),
        });
    }
    Ok(())
}

/// Solves `α·x = 0` over the even sector by exact elimination.
pub fn annihilator_even(alpha: &GrassmannElement) -> Result<AnnihilatorBasis> {
    require_odd(alpha)?;
    let n = alpha.n_generators();
    let evens: Vec<u32> = even_masks(n).collect();
    let images: Vec<GrassmannElement> = evens
        .iter()
        .map(|&m| alpha * &GrassmannElement::from_mask(n, m, super::rational(1)))
        .collect();
    // α odd times an even monomial only lands on odd monomials.
    let rows: Vec<Vec<_>> = odd_masks(n)
        .map(|target| images.iter().map(|img| img.coeff(target)).collect())
        .collect();
    let basis: Vec<GrassmannElement> = linalg::null_space(&rows, evens.len())
        .into_iter()
        .map(|v| {
            GrassmannElement::from_terms(n, evens.iter().copied().zip(v))
                .expect("even masks are in range")
        })
        .collect();

    let coords: Vec<Vec<_>> = basis.iter().map(GrassmannElement::even_coords).collect();
    let (reduced, pivots) = linalg::rref(&coords);
    let reducer = reduced
        .into_iter()
        .zip(pivots)
        .map(|(row, p)| {
            let elem = GrassmannElement::from_terms(n, evens.iter().copied().zip(row))
                .expect("even masks are in range");
            (evens[p], elem)
        })
        .collect();

    Ok(AnnihilatorBasis {
        alpha: alpha.clone(),
        basis,
        reducer,
    })
}

impl AnnihilatorBasis {
    pub fn alpha(&self) -> &GrassmannElement {
        &self.alpha
    }

    pub fn n_generators(&self) -> usize {
        self.alpha.n_generators()
    }

    pub fn basis(&self) -> &[GrassmannElement] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, x: &GrassmannElement) -> bool {
        x.is_even() && (&self.alpha * x).is_zero()
    }

    /// Even masks that are not pivots of the echelon basis. Coset
    /// representatives are exactly the even elements supported on these.
    pub fn free_masks(&self) -> Vec<u32> {
        let mut out: Vec<u32> = even_masks(self.n_generators())
            .filter(|m| self.reducer.iter().all(|(p, _)| p != m))
            .collect();
        out.sort_by_key(|m| (m.count_ones(), super::text::mask_indices(*m)));
        out
    }

    /// Unique representative of `t + Ann α`.
    pub fn reduce(&self, t: &GrassmannElement) -> GrassmannElement {
        let mut out = t.clone();
        for (pivot, v) in &self.reducer {
            let c = out.coeff(*pivot);
            if !c.is_zero() {
                out = &out - &v.scale(&c);
            }
        }
        out
    }
}

/// `t Δα u`, i.e. `α(t - u) = 0`.
pub fn alpha_equal(
    alpha: &GrassmannElement,
    t: &GrassmannElement,
    u: &GrassmannElement,
) -> Result<bool> {
    require_odd(alpha)?;
    require_even(t)?;
    require_even(u)?;
    Ok(alpha.checked_mul(&t.checked_sub(u)?)?.is_zero())
}
