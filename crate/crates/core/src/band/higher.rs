//! Structure of the `(n|n)`-bands: factorization into left and right parts,
//! the block form for `n = km`, and why `(k|m)`-bands do not reduce to the
//! two-sided rectangular band.

use serde::Serialize;

use super::{band_mul, higher_mul, wreath_mul, Band, BandElement, BandKind};
use crate::error::{Error, Result};
use crate::grassmann::GrassmannElement;
use crate::supermatrix::Supermatrix;

/// Splits `x` into a left factor and a right factor whose product is `x`:
/// `r[t;u] = p[t] q[u]`, `f[t;u] = f[t;1..] f[1..;u]`.
pub fn band_decompose(x: &BandElement) -> Result<(BandElement, BandElement)> {
    let alpha = x.alpha.clone();
    let make = |kind| BandElement {
        kind,
        alpha: alpha.clone(),
    };
    let one = GrassmannElement::one(x.n_generators());
    let is_one = |t: &GrassmannElement| (x.alpha() * &(t - &one)).is_zero();
    let (l, r) = match x.kind() {
        BandKind::R(t, u) => (make(BandKind::P(t.clone())), make(BandKind::Q(u.clone()))),
        BandKind::P(t) => (make(BandKind::P(t.clone())), make(BandKind::E)),
        BandKind::Q(u) => (make(BandKind::E), make(BandKind::Q(u.clone()))),
        BandKind::F { t, u } => {
            if t.iter().chain(u).all(is_one) {
                return Err(Error::ExcludedParameter);
            }
            let ones = vec![one.clone(); t.len()];
            (
                make(BandKind::F {
                    t: t.clone(),
                    u: ones.clone(),
                }),
                make(BandKind::F {
                    t: ones,
                    u: u.clone(),
                }),
            )
        }
        BandKind::E => return Err(Error::ExcludedParameter),
        _ => return Err(Error::WrongKind(format!("cannot decompose {x}"))),
    };
    debug_assert_eq!(&band_mul(&l, &r)?, x);
    Ok((l, r))
}

/// The `(k|m)` idempotent `[[0, αT], [αU, I_m]]` with `T` of size `k×m`
/// and `U` of size `m×k`.
pub fn block_matrix(
    alpha: &GrassmannElement,
    t: &[Vec<GrassmannElement>],
    u: &[Vec<GrassmannElement>],
) -> Result<Supermatrix> {
    let (k, m) = (t.len(), u.len());
    if t.iter().any(|r| r.len() != m) || u.iter().any(|r| r.len() != k) {
        return Err(Error::Shape(format!("T must be {k}x{m} and U {m}x{k}")));
    }
    let n = alpha.n_generators();
    let mut rows = vec![vec![GrassmannElement::zero(n); k + m]; k + m];
    for i in 0..k {
        for j in 0..m {
            rows[i][k + j] = alpha * &t[i][j];
            rows[k + j][i] = alpha * &u[j][i];
        }
    }
    for j in 0..m {
        rows[k + j][k + j] = GrassmannElement::one(n);
    }
    Supermatrix::new(k, m, rows)
}

/// Parameter correspondence between the `(1|n)` form and the `(k|m)` block
/// form, plus the outcome of the checks on a sample.
#[derive(Debug, Clone, Serialize)]
pub struct BlockIsomorphism {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    /// `t_map[i] = (r, c)`: parameter `t_{i+1}` becomes `T[r][c]`.
    pub t_map: Vec<(usize, usize)>,
    /// `u_map[i] = (r, c)`: parameter `u_{i+1}` becomes `U[r][c]`.
    pub u_map: Vec<(usize, usize)>,
    pub pairs_checked: usize,
    pub injective: bool,
    pub product_compatible: bool,
}

impl BlockIsomorphism {
    pub fn holds(&self) -> bool {
        self.injective && self.product_compatible
    }
}

fn to_blocks(
    iso: &BlockIsomorphism,
    x: &BandElement,
) -> (Vec<Vec<GrassmannElement>>, Vec<Vec<GrassmannElement>>) {
    let zero = GrassmannElement::zero(x.n_generators());
    let mut t = vec![vec![zero.clone(); iso.m]; iso.k];
    let mut u = vec![vec![zero; iso.k]; iso.m];
    for (i, v) in x.t_params().into_iter().enumerate() {
        let (r, c) = iso.t_map[i];
        t[r][c] = v;
    }
    for (i, v) in x.u_params().into_iter().enumerate() {
        let (r, c) = iso.u_map[i];
        u[r][c] = v;
    }
    (t, u)
}

/// Maps `f[t1..tn; u1..un]` to the block idempotent with `T[i][j] = t_{im+j}`
/// and `U[j][i] = u_{im+j}`, and checks on every pair of `sample` that the
/// map is injective and carries products to supermatrix products.
pub fn block_isomorphism(
    n: usize,
    k: usize,
    m: usize,
    sample: &[BandElement],
) -> Result<BlockIsomorphism> {
    if n != k * m || n == 0 {
        return Err(Error::Domain(format!("n = {n} is not k·m = {k}·{m}")));
    }
    let index = |i: usize| (i / m, i % m);
    let mut iso = BlockIsomorphism {
        n,
        k,
        m,
        t_map: (0..n).map(index).collect(),
        u_map: (0..n).map(|i| (index(i).1, index(i).0)).collect(),
        pairs_checked: 0,
        injective: true,
        product_compatible: true,
    };
    let image = |x: &BandElement| -> Result<Supermatrix> {
        if x.t_params().len() != n {
            return Err(Error::ArityMismatch(x.t_params().len(), n));
        }
        let (t, u) = to_blocks(&iso, x);
        block_matrix(x.alpha(), &t, &u)
    };
    let images = sample.iter().map(image).collect::<Result<Vec<_>>>()?;
    let (mut pairs, mut injective, mut compatible) = (0, true, true);
    for (i, x) in sample.iter().enumerate() {
        for (j, y) in sample.iter().enumerate() {
            pairs += 1;
            if (x.rep() == y.rep()) != (images[i] == images[j]) {
                injective = false;
            }
            let xy = higher_mul(x, y)?;
            if image(&xy)? != images[i].smul(&images[j])? {
                compatible = false;
            }
        }
    }
    iso.pairs_checked = pairs;
    iso.injective = injective;
    iso.product_compatible = compatible;
    Ok(iso)
}

/// Evidence that a `(k|m)`-band is not the ordinary rectangular band.
#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityReport {
    pub k: usize,
    pub m: usize,
    /// The chain `p[t1] … p[tk] q[u1] … q[um]` in the one-parameter band.
    pub chain: Vec<String>,
    pub chain_product: String,
    /// The chain equals `r[t1;um]`.
    pub collapses: bool,
    /// The chain agrees with the product of the matrices.
    pub matrix_consistent: bool,
    /// The parameter dropped by the chain still separates `(k|m)` elements.
    pub lost_parameter_distinguishes: bool,
}

impl IrreducibilityReport {
    pub fn holds(&self) -> bool {
        self.collapses && self.matrix_consistent && self.lost_parameter_distinguishes
    }
}

/// Builds the report for parameters `t` (length `k`) and `u` (length `m`),
/// `k + m >= 3`. `alt` replaces the first parameter lost by the chain
/// (`t2` if `k >= 2`, else `u1`) to show it still matters in the
/// `(k|m)`-band.
pub fn irreducibility_witness(
    band: &Band,
    t: &[GrassmannElement],
    u: &[GrassmannElement],
    alt: &GrassmannElement,
) -> Result<IrreducibilityReport> {
    let (k, m) = (t.len(), u.len());
    if k == 0 || m == 0 || k + m < 3 {
        return Err(Error::Domain(format!(
            "need k, m >= 1 and k + m >= 3, got ({k}|{m})"
        )));
    }
    let mut chain = Vec::new();
    for x in t {
        chain.push(band.p(x)?);
    }
    for x in u {
        chain.push(band.q(x)?);
    }
    let mut product = chain[0].clone();
    let mut matrix = chain[0].rep();
    for x in &chain[1..] {
        product = wreath_mul(&product, x)?;
        matrix = matrix.smul(&x.rep())?;
    }
    let expected = band.r(&t[0], &u[m - 1])?;

    let n = k.max(m);
    let base = band.f_padded(t, u, n)?;
    let (mut t2, mut u2) = (t.to_vec(), u.to_vec());
    if k >= 2 {
        t2[1] = alt.clone();
    } else {
        u2[0] = alt.clone();
    }
    let changed = band.f_padded(&t2, &u2, n)?;

    Ok(IrreducibilityReport {
        k,
        m,
        chain: chain.iter().map(|x| x.label()).collect(),
        chain_product: product.label(),
        collapses: product == expected,
        matrix_consistent: matrix == product.rep(),
        lost_parameter_distinguishes: base.rep() != changed.rep(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, c: i64) -> GrassmannElement {
        GrassmannElement::integer(n, c)
    }

    fn band(n: usize) -> Band {
        Band::new(GrassmannElement::theta(n, 1).unwrap()).unwrap()
    }

    #[test]
    fn decompose_wreath_and_higher() {
        let b = band(3);
        let r = b.r(&g(3, 0), &g(3, 2)).unwrap();
        let (p, q) = band_decompose(&r).unwrap();
        assert_eq!(p, b.p(&g(3, 0)).unwrap());
        assert_eq!(q, b.q(&g(3, 2)).unwrap());
        let f = b.f(&[g(3, 0), g(3, 2)], &[g(3, -1), g(3, 1)]).unwrap();
        let (p, q) = band_decompose(&f).unwrap();
        assert_eq!(p, b.p_vec(&[g(3, 0), g(3, 2)]).unwrap());
        assert_eq!(q, b.q_vec(&[g(3, -1), g(3, 1)]).unwrap());
        assert_eq!(higher_mul(&p, &q).unwrap(), f);
        let e_like = b.f(&vec![g(3, 1); 2], &vec![g(3, 1); 2]).unwrap();
        assert_eq!(
            band_decompose(&e_like).unwrap_err(),
            Error::ExcludedParameter
        );
    }

    #[test]
    fn block_form_is_idempotent() {
        let a = GrassmannElement::theta(3, 1).unwrap();
        let t = vec![vec![g(3, 2), g(3, 0)]];
        let u = vec![vec![g(3, -1)], vec![g(3, 3)]];
        let m = block_matrix(&a, &t, &u).unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(m.smul(&m).unwrap(), m);
    }

    #[test]
    fn isomorphism_domain() {
        assert!(matches!(
            block_isomorphism(3, 2, 2, &[]),
            Err(Error::Domain(_))
        ));
        let b = band(2);
        let x = b.f(&[g(2, 0)], &[g(2, 2)]).unwrap();
        let iso = block_isomorphism(1, 1, 1, &[x]).unwrap();
        assert_eq!(iso.t_map, vec![(0, 0)]);
        assert!(iso.holds());
    }

    #[test]
    fn four_two_two() {
        let b = band(3);
        let vals = [g(3, 0), g(3, 2), g(3, -1)];
        let mut sample = Vec::new();
        for (i, x) in vals.iter().enumerate() {
            for y in &vals {
                let t = [x.clone(), y.clone(), vals[(i + 1) % 3].clone(), x.clone()];
                let u = [y.clone(), x.clone(), x.clone(), vals[(i + 2) % 3].clone()];
                sample.push(b.f(&t, &u).unwrap());
            }
        }
        let iso = block_isomorphism(4, 2, 2, &sample).unwrap();
        assert_eq!(iso.pairs_checked, 81);
        assert!(iso.holds());
        let mut seen: Vec<_> = iso.t_map.clone();
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 4);
    }

    #[test]
    fn chains_collapse() {
        let b = band(3);
        let r = irreducibility_witness(&b, &[g(3, 0), g(3, 2)], &[g(3, -1)], &g(3, -1)).unwrap();
        assert_eq!(r.chain_product, "r[0;-1]");
        assert!(r.holds());
        let r = irreducibility_witness(&b, &[g(3, 0)], &[g(3, 2), g(3, -1)], &g(3, 0)).unwrap();
        assert_eq!(r.chain_product, "r[0;-1]");
        assert!(r.holds());
        assert!(irreducibility_witness(&b, &[g(3, 0)], &[g(3, 2)], &g(3, 0)).is_err());
    }
}
