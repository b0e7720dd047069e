//! Band semigroups built from odd-reduced supermatrices.
//!
//! A [`Band`] fixes the odd element `α` and builds labelled elements:
//!
//! | kind      | matrix                          |
//! |-----------|---------------------------------|
//! | `z`       | zero `(1|1)` matrix             |
//! | `y[t]`    | `[[0, αt], [α, 0]]`             |
//! | `p[t]`    | `[[0, αt], [α, 1]]`             |
//! | `q[u]`    | `[[0, α], [αu, 1]]`             |
//! | `r[t;u]`  | `[[0, αt], [αu, 1]]`            |
//! | `e`       | `[[0, α], [α, 1]]`              |
//! | `f[t..;u..]` | `(1|n)`: `[[0, αt1 .. αtn], [αu_i, I]]` |
//!
//! Parameters are even. Two parameters give the same matrix exactly when
//! `α(t - u) = 0`, so in canonical mode every parameter is replaced by the
//! representative of its class `t + Ann α` and [`BandElement::rep`] is
//! injective. Raw mode keeps parameters as given.

mod grid;
mod higher;
mod wreath;

pub(crate) use grid::collision_partners;
pub use grid::{even_candidates, ParameterGrid};
pub use higher::{
    band_decompose, block_isomorphism, irreducibility_witness, BlockIsomorphism,
    IrreducibilityReport,
};
pub use wreath::{reference_symbols, symbolic_closure, Wreath};

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grassmann::{annihilator_even, AnnihilatorBasis, GrassmannElement, Parity};
use crate::supermatrix::Supermatrix;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BandKind {
    Zero,
    Y(GrassmannElement),
    E,
    P(GrassmannElement),
    Q(GrassmannElement),
    R(GrassmannElement, GrassmannElement),
    F {
        t: Vec<GrassmannElement>,
        u: Vec<GrassmannElement>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Null,
    Wreath,
    Higher(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BandElement {
    kind: BandKind,
    alpha: Arc<GrassmannElement>,
}

/// Element factory for a fixed odd `α`.
#[derive(Debug, Clone)]
pub struct Band {
    alpha: Arc<GrassmannElement>,
    ann: Arc<AnnihilatorBasis>,
    canonical: bool,
}

impl Band {
    /// Canonical-mode band. `alpha` must be odd and nonzero.
    pub fn new(alpha: GrassmannElement) -> Result<Self> {
        let ann = annihilator_even(&alpha)?;
        Ok(Self {
            alpha: Arc::new(alpha),
            ann: Arc::new(ann),
            canonical: true,
        })
    }

    /// Same `α`, but parameters are stored exactly as given.
    pub fn raw(&self) -> Self {
        Self {
            canonical: false,
            ..self.clone()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical
    }

    pub fn alpha(&self) -> &GrassmannElement {
        &self.alpha
    }

    pub fn annihilator(&self) -> &AnnihilatorBasis {
        &self.ann
    }

    pub fn n_generators(&self) -> usize {
        self.alpha.n_generators()
    }

    pub fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.n_generators())
    }

    /// Whether `t ∈ 1 + Ann α`.
    pub fn is_one_class(&self, t: &GrassmannElement) -> bool {
        (&*self.alpha * &(t - &self.one())).is_zero()
    }

    /// Validates an even parameter and applies the mode's canonicalization.
    pub fn param(&self, t: &GrassmannElement) -> Result<GrassmannElement> {
        if t.n_generators() != self.n_generators() {
            return Err(Error::DimensionMismatch {
                left: self.n_generators(),
                right: t.n_generators(),
            });
        }
        if t.parity() != Parity::Even {
            return Err(Error::Parity {
                expected: "even",
                got: t.parity().to_string(),
            });
        }
        Ok(if self.canonical {
            self.ann.reduce(t)
        } else {
            t.clone()
        })
    }

    fn wreath_param(&self, t: &GrassmannElement) -> Result<GrassmannElement> {
        let t = self.param(t)?;
        if self.is_one_class(&t) {
            return Err(Error::ExcludedParameter);
        }
        Ok(t)
    }

    fn make(&self, kind: BandKind) -> BandElement {
        BandElement {
            kind,
            alpha: self.alpha.clone(),
        }
    }

    pub fn zero(&self) -> BandElement {
        self.make(BandKind::Zero)
    }

    pub fn y(&self, t: &GrassmannElement) -> Result<BandElement> {
        Ok(self.make(BandKind::Y(self.param(t)?)))
    }

    pub fn e(&self) -> BandElement {
        self.make(BandKind::E)
    }

    pub fn p(&self, t: &GrassmannElement) -> Result<BandElement> {
        Ok(self.make(BandKind::P(self.wreath_param(t)?)))
    }

    pub fn q(&self, u: &GrassmannElement) -> Result<BandElement> {
        Ok(self.make(BandKind::Q(self.wreath_param(u)?)))
    }

    pub fn r(&self, t: &GrassmannElement, u: &GrassmannElement) -> Result<BandElement> {
        Ok(self.make(BandKind::R(self.wreath_param(t)?, self.wreath_param(u)?)))
    }

    /// Element of the `(n|n)`-band, `n = t.len() = u.len() >= 1`.
    pub fn f(&self, t: &[GrassmannElement], u: &[GrassmannElement]) -> Result<BandElement> {
        if t.len() != u.len() {
            return Err(Error::ArityMismatch(t.len(), u.len()));
        }
        if t.is_empty() {
            return Err(Error::Domain(
                "a band element needs at least one parameter pair".into(),
            ));
        }
        let t = t.iter().map(|x| self.param(x)).collect::<Result<_>>()?;
        let u = u.iter().map(|x| self.param(x)).collect::<Result<_>>()?;
        Ok(self.make(BandKind::F { t, u }))
    }

    /// A `(k|m)`-band element padded to `(n|n)` with the parameter 1.
    pub fn f_padded(
        &self,
        t: &[GrassmannElement],
        u: &[GrassmannElement],
        n: usize,
    ) -> Result<BandElement> {
        if t.len() > n || u.len() > n {
            return Err(Error::Domain(format!(
                "({}|{}) parameters do not fit an ({n}|{n})-band",
                t.len(),
                u.len()
            )));
        }
        let pad = |v: &[GrassmannElement]| {
            let mut v = v.to_vec();
            v.resize(n, self.one());
            v
        };
        self.f(&pad(t), &pad(u))
    }

    /// `p_{t1...tk}`: the left factor, all right parameters 1.
    pub fn p_vec(&self, t: &[GrassmannElement]) -> Result<BandElement> {
        self.f(t, &vec![self.one(); t.len()])
    }

    /// `q_{u1...um}`: the right factor, all left parameters 1.
    pub fn q_vec(&self, u: &[GrassmannElement]) -> Result<BandElement> {
        self.f(&vec![self.one(); u.len()], u)
    }
}

impl BandElement {
    pub fn kind(&self) -> &BandKind {
        &self.kind
    }

    pub fn alpha(&self) -> &GrassmannElement {
        &self.alpha
    }

    pub fn n_generators(&self) -> usize {
        self.alpha.n_generators()
    }

    pub fn family(&self) -> Family {
        match &self.kind {
            BandKind::Zero | BandKind::Y(_) => Family::Null,
            BandKind::E | BandKind::P(_) | BandKind::Q(_) | BandKind::R(..) => Family::Wreath,
            BandKind::F { t, .. } => Family::Higher(t.len()),
        }
    }

    fn one(&self) -> GrassmannElement {
        GrassmannElement::one(self.n_generators())
    }

    fn as_wreath(&self) -> Option<Wreath<GrassmannElement>> {
        Some(match &self.kind {
            BandKind::E => Wreath::E,
            BandKind::P(t) => Wreath::P(t.clone()),
            BandKind::Q(u) => Wreath::Q(u.clone()),
            BandKind::R(t, u) => Wreath::R(t.clone(), u.clone()),
            _ => return None,
        })
    }

    fn from_wreath(w: Wreath<GrassmannElement>, alpha: Arc<GrassmannElement>) -> Self {
        let kind = match w {
            Wreath::E => BandKind::E,
            Wreath::P(t) => BandKind::P(t),
            Wreath::Q(u) => BandKind::Q(u),
            Wreath::R(t, u) => BandKind::R(t, u),
        };
        Self { kind, alpha }
    }

    /// Left-side parameters; the reserved parameter 1 where a wreath element
    /// has none.
    pub fn t_params(&self) -> Vec<GrassmannElement> {
        match &self.kind {
            BandKind::F { t, .. } => t.clone(),
            BandKind::Y(t) => vec![t.clone()],
            BandKind::Zero => vec![],
            _ => {
                let w = self.as_wreath().expect("wreath kind");
                vec![w.left().cloned().unwrap_or_else(|| self.one())]
            }
        }
    }

    pub fn u_params(&self) -> Vec<GrassmannElement> {
        match &self.kind {
            BandKind::F { u, .. } => u.clone(),
            BandKind::Y(_) | BandKind::Zero => vec![],
            _ => {
                let w = self.as_wreath().expect("wreath kind");
                vec![w.right().cloned().unwrap_or_else(|| self.one())]
            }
        }
    }

    /// The supermatrix of this element (the representation map).
    pub fn rep(&self) -> Supermatrix {
        let n = self.n_generators();
        let a = &*self.alpha;
        let zero = || GrassmannElement::zero(n);
        let m = match &self.kind {
            BandKind::Zero => return Supermatrix::zero(1, 1, n),
            BandKind::Y(t) => Supermatrix::one_one(zero(), a * t, a.clone(), zero()),
            BandKind::F { t, u } => {
                let size = t.len() + 1;
                let mut rows = vec![vec![zero(); size]; size];
                for k in 0..t.len() {
                    rows[0][k + 1] = a * &t[k];
                    rows[k + 1][0] = a * &u[k];
                    rows[k + 1][k + 1] = self.one();
                }
                Supermatrix::new(1, t.len(), rows)
            }
            _ => {
                let w = self.as_wreath().expect("wreath kind");
                let top = w.left().map_or_else(|| a.clone(), |t| a * t);
                let bottom = w.right().map_or_else(|| a.clone(), |u| a * u);
                Supermatrix::one_one(zero(), top, bottom, self.one())
            }
        };
        m.expect("band matrices are graded")
    }

    pub fn label(&self) -> String {
        let txt = |x: &GrassmannElement| x.to_text(false, true);
        let list = |v: &[GrassmannElement]| v.iter().map(txt).collect::<Vec<_>>().join(",");
        match &self.kind {
            BandKind::Zero => "z".into(),
            BandKind::Y(t) => format!("y[{}]", txt(t)),
            BandKind::F { t, u } => format!("f[{};{}]", list(t), list(u)),
            _ => {
                let w = self.as_wreath().expect("wreath kind");
                match w {
                    Wreath::E => "e".into(),
                    Wreath::P(t) => format!("p[{}]", txt(&t)),
                    Wreath::Q(u) => format!("q[{}]", txt(&u)),
                    Wreath::R(t, u) => format!("r[{};{}]", txt(&t), txt(&u)),
                }
            }
        }
    }
}

impl fmt::Display for BandElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

fn same_alpha(x: &BandElement, y: &BandElement) -> Result<()> {
    if x.alpha != y.alpha {
        return Err(Error::MixedAlpha);
    }
    Ok(())
}

/// Product in the wreath rectangular band (`e`, `p`, `q`, `r` kinds).
pub fn wreath_mul(x: &BandElement, y: &BandElement) -> Result<BandElement> {
    same_alpha(x, y)?;
    match (x.as_wreath(), y.as_wreath()) {
        (Some(a), Some(b)) => Ok(BandElement::from_wreath(a.mul(&b), x.alpha.clone())),
        _ => Err(Error::WrongKind(format!("wreath product of {x} and {y}"))),
    }
}

/// Product in the null semigroup `{y[t], z}`: always `z`.
pub fn null_mul(x: &BandElement, y: &BandElement) -> Result<BandElement> {
    same_alpha(x, y)?;
    if x.family() != Family::Null || y.family() != Family::Null {
        return Err(Error::WrongKind(format!("null product of {x} and {y}")));
    }
    Ok(BandElement {
        kind: BandKind::Zero,
        alpha: x.alpha.clone(),
    })
}

/// Product in the `(n|n)`-band: `f[t;u] f[t';u'] = f[t;u']`.
pub fn higher_mul(x: &BandElement, y: &BandElement) -> Result<BandElement> {
    same_alpha(x, y)?;
    match (&x.kind, &y.kind) {
        (BandKind::F { t, .. }, BandKind::F { u, .. }) => {
            if t.len() != u.len() {
                return Err(Error::ArityMismatch(t.len(), u.len()));
            }
            Ok(BandElement {
                kind: BandKind::F {
                    t: t.clone(),
                    u: u.clone(),
                },
                alpha: x.alpha.clone(),
            })
        }
        _ => Err(Error::WrongKind(format!("band product of {x} and {y}"))),
    }
}

/// Dispatches to the product of the elements' common family.
pub fn band_mul(x: &BandElement, y: &BandElement) -> Result<BandElement> {
    match (x.family(), y.family()) {
        (Family::Null, Family::Null) => null_mul(x, y),
        (Family::Wreath, Family::Wreath) => wreath_mul(x, y),
        (Family::Higher(_), Family::Higher(_)) => higher_mul(x, y),
        _ => Err(Error::HeterogeneousKinds(format!("{x} and {y}"))),
    }
}
