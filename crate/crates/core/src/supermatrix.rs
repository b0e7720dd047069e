//! Even supermatrices over the Grassmann algebra.
//!
//! A `(p|q)` supermatrix is a square `(p+q) x (p+q)` grid split into blocks
//!
//! ```text
//! [ A  B ]    A: p x p, D: q x q   even entries
//! [ C  D ]    B: p x q, C: q x p   odd entries
//! ```
//!
//! In the `(1|1)` case the entries are named `[[a, α], [β, b]]`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grassmann::{rational, GrassmannElement, Parity, TermJson};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Supermatrix {
    even: usize,
    odd: usize,
    n: usize,
    entries: Vec<GrassmannElement>,
}

/// JSON form: `{"shape": [p, q], "entries": [[elem, ...], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupermatrixJson {
    pub shape: [usize; 2],
    pub entries: Vec<Vec<Vec<TermJson>>>,
}

type Block = Vec<Vec<GrassmannElement>>;

impl Supermatrix {
    /// Builds a `(p|q)` supermatrix, rejecting entries that break the grading.
    pub fn new(even: usize, odd: usize, rows: Vec<Vec<GrassmannElement>>) -> Result<Self> {
        let size = even + odd;
        if size == 0 {
            return Err(Error::Shape("empty supermatrix".into()));
        }
        if rows.len() != size || rows.iter().any(|r| r.len() != size) {
            return Err(Error::Shape(format!(
                "a ({even}|{odd}) supermatrix needs {size} rows of {size} entries"
            )));
        }
        let n = rows[0][0].n_generators();
        let mut entries = Vec::with_capacity(size * size);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                if x.n_generators() != n {
                    return Err(Error::DimensionMismatch {
                        left: n,
                        right: x.n_generators(),
                    });
                }
                let diagonal_block = (i < even) == (j < even);
                let ok = if diagonal_block {
                    x.parity() == Parity::Even
                } else {
                    x.is_odd_or_zero()
                };
                if !ok {
                    return Err(Error::Grading {
                        row: i,
                        col: j,
                        expected: if diagonal_block { "even" } else { "odd" },
                    });
                }
                entries.push(x);
            }
        }
        Ok(Self {
            even,
            odd,
            n,
            entries,
        })
    }

    /// `[[a, α], [β, b]]`.
    pub fn one_one(
        a: GrassmannElement,
        alpha: GrassmannElement,
        beta: GrassmannElement,
        b: GrassmannElement,
    ) -> Result<Self> {
        Self::new(1, 1, vec![vec![a, alpha], vec![beta, b]])
    }

    pub fn identity(even: usize, odd: usize, n: usize) -> Self {
        let size = even + odd;
        let rows = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| GrassmannElement::integer(n, i64::from(i == j)))
                    .collect()
            })
            .collect();
        Self::new(even, odd, rows).expect("identity is graded")
    }

    pub fn zero(even: usize, odd: usize, n: usize) -> Self {
        let size = even + odd;
        Self::new(even, odd, vec![vec![GrassmannElement::zero(n); size]; size])
            .expect("zero is graded")
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.even, self.odd)
    }

    pub fn size(&self) -> usize {
        self.even + self.odd
    }

    pub fn n_generators(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &GrassmannElement {
        &self.entries[i * self.size() + j]
    }

    pub fn rows(&self) -> Block {
        self.entries
            .chunks(self.size())
            .map(<[_]>::to_vec)
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape(format!(
                "({}|{}) vs ({}|{})",
                self.even, self.odd, other.even, other.odd
            )));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    fn with_entries(&self, entries: Vec<GrassmannElement>) -> Self {
        Self {
            even: self.even,
            odd: self.odd,
            n: self.n,
            entries,
        }
    }

    /// Ordinary matrix product with Grassmann multiplication; entries keep
    /// their left-to-right order.
    pub fn smul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let s = self.size();
        let mut entries = Vec::with_capacity(s * s);
        for i in 0..s {
            for j in 0..s {
                let mut acc = GrassmannElement::zero(self.n);
                for k in 0..s {
                    let (x, y) = (self.get(i, k), other.get(k, j));
                    if x.is_zero() || y.is_zero() {
                        continue;
                    }
                    acc = &acc + &(x * y);
                }
                entries.push(acc);
            }
        }
        Ok(self.with_entries(entries))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x + y)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(self.with_entries(
            self.entries
                .iter()
                .zip(&other.entries)
                .map(|(x, y)| x - y)
                .collect(),
        ))
    }

    /// Left multiplication of every entry by an even scalar.
    pub fn scale(&self, c: &GrassmannElement) -> Result<Self> {
        if c.parity() != Parity::Even {
            return Err(Error::Parity {
                expected: "even",
                got: c.parity().to_string(),
            });
        }
        let entries = self
            .entries
            .iter()
            .map(|x| c.checked_mul(x))
            .collect::<Result<_>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.even, self.odd, self.n);
        for _ in 0..k {
            acc = acc.smul(self).expect("same shape");
        }
        acc
    }

    /// `str M = tr A - tr D`; for `(1|1)` this is `a - b`.
    pub fn supertrace(&self) -> GrassmannElement {
        let mut acc = GrassmannElement::zero(self.n);
        for i in 0..self.size() {
            if i < self.even {
                acc = &acc + self.get(i, i);
            } else {
                acc = &acc - self.get(i, i);
            }
        }
        acc
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Block {
        rows.map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// `Ber M = det(A - B D^-1 C) · det(D)^-1`, defined when the body of
    /// `det D` is nonzero.
    pub fn berezinian(&self) -> Result<GrassmannElement> {
        let (p, s) = (self.even, self.size());
        let a = self.block(0..p, 0..p);
        let b = self.block(0..p, p..s);
        let c = self.block(p..s, 0..p);
        let d = self.block(p..s, p..s);
        let det_d = determinant(&d, self.n);
        let det_d_inv = det_d.inverse()?;
        if p == 0 {
            return Ok(det_d_inv);
        }
        let d_inv = inverse_even(&d, &det_d_inv, self.n);
        let schur = mat_sub(&a, &mat_mul(&mat_mul(&b, &d_inv, self.n), &c, self.n));
        Ok(&determinant(&schur, self.n) * &det_d_inv)
    }

    fn require_one_one(&self) -> Result<()> {
        if self.shape() != (1, 1) {
            return Err(Error::Shape(format!(
                "expected a (1|1) supermatrix, got ({}|{})",
                self.even, self.odd
            )));
        }
        Ok(())
    }

    /// `[[a, α], [β, b]] -> [[a, α], [0, b]]`.
    pub fn reduce_even(&self) -> Result<Self> {
        self.require_one_one()?;
        let mut e = self.entries.clone();
        e[2] = GrassmannElement::zero(self.n);
        Ok(self.with_entries(e))
    }

    /// `[[a, α], [β, b]] -> [[0, α], [β, b]]`.
    pub fn reduce_odd(&self) -> Result<Self> {
        self.require_one_one()?;
        let mut e = self.entries.clone();
        e[0] = GrassmannElement::zero(self.n);
        Ok(self.with_entries(e))
    }

    pub fn is_odd_reduced(&self) -> bool {
        self.shape() == (1, 1) && self.entries[0].is_zero()
    }

    /// Closed form of the `k`-th power of an odd-reduced `(1|1)` matrix:
    /// `b^(k-2) [[αβ, αb], [βb, b² - (k-1)αβ]]` for `k >= 2`.
    pub fn odd_power_closed_form(&self, k: u32) -> Result<Self> {
        if !self.is_odd_reduced() {
            return Err(Error::NotOddReduced);
        }
        match k {
            0 => return Ok(Self::identity(1, 1, self.n)),
            1 => return Ok(self.clone()),
            _ => {}
        }
        let (alpha, beta, b) = (&self.entries[1], &self.entries[2], &self.entries[3]);
        let ab = alpha * beta;
        let prefactor = b.pow(k - 2);
        let corner = &(b * b) - &ab.scale(&rational(i64::from(k) - 1));
        let m = Self::one_one(ab, alpha * b, beta * b, corner)?;
        m.scale(&prefactor)
    }

    /// For an odd-reduced matrix: whether `αβ = 0`.
    pub fn is_odd_closed(&self) -> bool {
        self.shape() == (1, 1) && (&self.entries[1] * &self.entries[2]).is_zero()
    }

    pub fn to_json(&self) -> SupermatrixJson {
        SupermatrixJson {
            shape: [self.even, self.odd],
            entries: self
                .rows()
                .iter()
                .map(|r| r.iter().map(GrassmannElement::to_json).collect())
                .collect(),
        }
    }

    pub fn from_json(n: usize, json: &SupermatrixJson) -> Result<Self> {
        let rows = json
            .entries
            .iter()
            .map(|r| {
                r.iter()
                    .map(|e| GrassmannElement::from_json(n, e))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.shape[0], json.shape[1], rows)
    }

    pub fn to_text(&self, ascii: bool) -> String {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_text(ascii, false)).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

impl fmt::Display for Supermatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

impl fmt::Debug for Supermatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{}) {}", self.even, self.odd, self)
    }
}

fn mat_mul(x: &Block, y: &Block, n: usize) -> Block {
    let inner = y.len();
    let cols = y.first().map_or(0, Vec::len);
    x.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(GrassmannElement::zero(n), |acc, k| {
                        &acc + &(&row[k] * &y[k][j])
                    })
                })
                .collect()
        })
        .collect()
}

fn mat_sub(x: &Block, y: &Block) -> Block {
    x.iter()
        .zip(y)
        .map(|(r, s)| r.iter().zip(s).map(|(a, b)| a - b).collect())
        .collect()
}

fn minor(m: &Block, skip_row: usize, skip_col: usize) -> Block {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != skip_row)
        .map(|(_, r)| {
            r.iter()
                .enumerate()
                .filter(|(j, _)| *j != skip_col)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Cofactor expansion; valid because even entries commute.
fn determinant(m: &Block, n: usize) -> GrassmannElement {
    match m.len() {
        0 => GrassmannElement::one(n),
        1 => m[0][0].clone(),
        size => {
            let mut acc = GrassmannElement::zero(n);
            for j in 0..size {
                if m[0][j].is_zero() {
                    continue;
                }
                let term = &m[0][j] * &determinant(&minor(m, 0, j), n);
                acc = if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                };
            }
            acc
        }
    }
}

/// Adjugate inverse of an even block given `det^-1`.
fn inverse_even(m: &Block, det_inv: &GrassmannElement, n: usize) -> Block {
    let size = m.len();
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let cof = determinant(&minor(m, j, i), n);
                    let cof = if (i + j) % 2 == 0 { cof } else { -cof };
                    &cof * det_inv
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn th(n: usize, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::monomial(n, idx, rational(1)).unwrap()
    }

    fn int(n: usize, c: i64) -> GrassmannElement {
        GrassmannElement::integer(n, c)
    }

    fn m11(
        a: GrassmannElement,
        al: GrassmannElement,
        be: GrassmannElement,
        b: GrassmannElement,
    ) -> Supermatrix {
        Supermatrix::one_one(a, al, be, b).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = m11(int(2, 3), th(2, &[1]), th(2, &[2]), int(2, 1));
        let id = Supermatrix::identity(1, 1, 2);
        assert_eq!(id.smul(&m).unwrap(), m);
        assert_eq!(m.smul(&id).unwrap(), m);
    }

    #[test]
    fn odd_reduced_square() {
        let m = m11(int(2, 0), th(2, &[1]), th(2, &[2]), int(2, 1));
        let expected = m11(
            th(2, &[1, 2]),
            th(2, &[1]),
            th(2, &[2]),
            &int(2, 1) - &th(2, &[1, 2]),
        );
        assert_eq!(m.smul(&m).unwrap(), expected);
    }

    #[test]
    fn product_of_two_odd_reduced() {
        let m1 = m11(int(4, 0), th(4, &[1]), th(4, &[2]), int(4, 2));
        let m2 = m11(int(4, 0), th(4, &[3]), th(4, &[4]), int(4, 1));
        let expected = m11(
            th(4, &[1, 4]),
            th(4, &[1]),
            th(4, &[4]).scale(&rational(2)),
            &int(4, 2) + &th(4, &[2, 3]),
        );
        assert_eq!(m1.smul(&m2).unwrap(), expected);
    }

    #[test]
    fn supertrace_examples() {
        let m = m11(int(2, 1), th(2, &[1]), th(2, &[2]), int(2, 1));
        assert!(m.supertrace().is_zero());
        assert_eq!(
            m11(int(2, 2), int(2, 0), int(2, 0), int(2, 1)).supertrace(),
            int(2, 1)
        );
        let t12 = th(2, &[1, 2]);
        assert_eq!(
            m11(t12.clone(), int(2, 0), int(2, 0), int(2, 0)).supertrace(),
            t12
        );
    }

    #[test]
    fn berezinian_examples() {
        assert_eq!(
            Supermatrix::identity(1, 1, 2).berezinian().unwrap(),
            int(2, 1)
        );
        let m = m11(int(2, 1), th(2, &[1]), th(2, &[2]), int(2, 1));
        assert_eq!(m.berezinian().unwrap(), &int(2, 1) - &th(2, &[1, 2]));
        let odd = m11(int(2, 0), th(2, &[1]), th(2, &[2]), int(2, 1));
        let ber = odd.berezinian().unwrap();
        assert_eq!(ber, -th(2, &[1, 2]));
        assert!((&ber * &ber).is_zero());
    }

    #[test]
    fn berezinian_needs_invertible_body() {
        let m = m11(int(2, 1), th(2, &[1]), th(2, &[2]), th(2, &[1, 2]));
        assert_eq!(m.berezinian().unwrap_err(), Error::NonInvertibleBody);
    }

    #[test]
    fn berezinian_one_two_matches_schur_by_hand() {
        // [[a, α1, α2], [β1, 1, 0], [β2, 0, 1]]: Ber = a - α1β1 - α2β2.
        let n = 4;
        let a = int(n, 3);
        let m = Supermatrix::new(
            1,
            2,
            vec![
                vec![a.clone(), th(n, &[1]), th(n, &[2])],
                vec![th(n, &[3]), int(n, 1), int(n, 0)],
                vec![th(n, &[4]), int(n, 0), int(n, 1)],
            ],
        )
        .unwrap();
        let expected = &(&a - &th(n, &[1, 3])) - &th(n, &[2, 4]);
        assert_eq!(m.berezinian().unwrap(), expected);
    }

    #[test]
    fn reductions() {
        let (a, al, be, b) = (int(3, 2), th(3, &[1]), th(3, &[2]), int(3, 5));
        let m = m11(a.clone(), al.clone(), be.clone(), b.clone());
        assert_eq!(
            m.reduce_even().unwrap(),
            m11(a, al.clone(), int(3, 0), b.clone())
        );
        assert_eq!(m.reduce_odd().unwrap(), m11(int(3, 0), al, be, b));
        let big = Supermatrix::identity(1, 2, 3);
        assert!(big.reduce_even().is_err());
        assert!(big.reduce_odd().is_err());
    }

    #[test]
    fn closed_form_powers() {
        let m = m11(int(2, 0), th(2, &[1]), th(2, &[2]), int(2, 1));
        let sq = m11(
            th(2, &[1, 2]),
            th(2, &[1]),
            th(2, &[2]),
            &int(2, 1) - &th(2, &[1, 2]),
        );
        let cube = m11(
            th(2, &[1, 2]),
            th(2, &[1]),
            th(2, &[2]),
            &int(2, 1) - &th(2, &[1, 2]).scale(&rational(2)),
        );
        assert_eq!(m.odd_power_closed_form(2).unwrap(), sq);
        assert_eq!(m.odd_power_closed_form(3).unwrap(), cube);
        assert_eq!(m.odd_power_closed_form(1).unwrap(), m);
        let not_reduced = m11(int(2, 1), th(2, &[1]), th(2, &[2]), int(2, 1));
        assert_eq!(
            not_reduced.odd_power_closed_form(2).unwrap_err(),
            Error::NotOddReduced
        );
    }

    #[test]
    fn odd_closedness() {
        let n = 3;
        let t = &int(n, 2) + &th(n, &[2, 3]);
        let m = m11(int(n, 0), th(n, &[1]), &th(n, &[1]) * &t, int(n, 1));
        assert!(m.is_odd_closed());
        assert!(!m11(int(n, 0), th(n, &[1]), th(n, &[2]), int(n, 1)).is_odd_closed());
        assert!(m11(int(n, 0), th(n, &[1, 2, 3]), th(n, &[1]), int(n, 1)).is_odd_closed());
    }

    #[test]
    fn grading_is_enforced() {
        assert!(matches!(
            Supermatrix::one_one(th(2, &[1]), int(2, 0), int(2, 0), int(2, 1)),
            Err(Error::Grading { row: 0, col: 0, .. })
        ));
        assert!(matches!(
            Supermatrix::one_one(int(2, 1), int(2, 1), int(2, 0), int(2, 1)),
            Err(Error::Grading { row: 0, col: 1, .. })
        ));
        assert!(Supermatrix::new(1, 1, vec![vec![int(2, 1)]]).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let m = m11(int(2, 0), th(2, &[1]), th(2, &[2]), int(2, 1));
        let json = serde_json::to_string(&m.to_json()).unwrap();
        let back: SupermatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(Supermatrix::from_json(2, &back).unwrap(), m);
    }
}
