//! Text and JSON encodings of Grassmann elements.
//!
//! Text: a signed sum of terms `c*θi.θj`, with a unit coefficient omitted and
//! the empty product written as the bare coefficient (`1`, `-3/2`). The ASCII
//! form spells generators `gi` instead of `θi`.

use std::fmt;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::{GrassmannElement, Rational};
use crate::error::{Error, Result};

/// One term of the JSON encoding: 1-based generator indices and the
/// coefficient as `"p/q"` (or `"p"`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub mask: Vec<usize>,
    pub coeff: String,
}

pub(crate) fn mask_indices(mask: u32) -> Vec<usize> {
    (0..32)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| b as usize + 1)
        .collect()
}

fn display_order(x: &GrassmannElement) -> Vec<(u32, &Rational)> {
    let mut terms: Vec<_> = x.terms().collect();
    terms.sort_by_key(|(m, _)| (m.count_ones(), mask_indices(*m)));
    terms
}

fn write_monomial(out: &mut String, mask: u32, ascii: bool) {
    let sym = if ascii { "g" } else { "θ" };
    let parts: Vec<String> = mask_indices(mask)
        .into_iter()
        .map(|i| format!("{sym}{i}"))
        .collect();
    out.push_str(&parts.join("."));
}

impl GrassmannElement {
    /// Canonical text form. `compact` drops the spaces around `+`/`-`.
    pub fn to_text(&self, ascii: bool, compact: bool) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (mask, c)) in display_order(self).into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative, compact) {
                (0, true, _) => out.push('-'),
                (0, false, _) => {}
                (_, true, false) => out.push_str(" - "),
                (_, false, false) => out.push_str(" + "),
                (_, true, true) => out.push('-'),
                (_, false, true) => out.push('+'),
            }
            let mag = c.abs();
            if mask == 0 {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&mag.to_string());
                    out.push('*');
                }
                write_monomial(&mut out, mask, ascii);
            }
        }
        out
    }

    pub fn to_json(&self) -> Vec<TermJson> {
        display_order(self)
            .into_iter()
            .map(|(mask, c)| TermJson {
                mask: mask_indices(mask),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json(n: usize, terms: &[TermJson]) -> Result<Self> {
        let mut acc = GrassmannElement::zero(n);
        for t in terms {
            let coeff: Rational = t.coeff.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad coefficient {:?}", t.coeff),
            })?;
            acc = &acc + &GrassmannElement::monomial(n, &t.mask, coeff)?;
        }
        Ok(acc)
    }

    /// Parses the text form (or any expression without matrices) in `∧(n)`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        crate::expr::parse_element(text, n)
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false, false))
    }
}

impl fmt::Debug for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[∧{}] {}", self.n_generators(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::{ratio, rational};

    fn th(n: usize, idx: &[usize]) -> GrassmannElement {
        GrassmannElement::monomial(n, idx, rational(1)).unwrap()
    }

    #[test]
    fn text_examples() {
        let x = &GrassmannElement::one(3) - &th(3, &[1, 2]);
        assert_eq!(x.to_string(), "1 - θ1.θ2");
        assert_eq!(x.to_text(true, false), "1 - g1.g2");
        assert_eq!(x.to_text(false, true), "1-θ1.θ2");
        let y = th(3, &[1]).scale(&ratio(-3, 2));
        assert_eq!(y.to_string(), "-3/2*θ1");
        assert_eq!(GrassmannElement::zero(2).to_string(), "0");
        let z = &th(4, &[1, 4]) + &th(4, &[2, 3]);
        assert_eq!(z.to_string(), "θ1.θ4 + θ2.θ3");
    }

    #[test]
    fn json_roundtrip() {
        let x = &GrassmannElement::integer(3, 2) + &th(3, &[1, 3]).scale(&ratio(1, 3));
        let json = x.to_json();
        assert_eq!(json[1].mask, vec![1, 3]);
        assert_eq!(json[1].coeff, "1/3");
        assert_eq!(GrassmannElement::from_json(3, &json).unwrap(), x);
    }

    #[test]
    fn text_roundtrip() {
        let x = &(&GrassmannElement::integer(4, -2) + &th(4, &[1, 2]).scale(&ratio(5, 7)))
            - &th(4, &[1, 2, 3, 4]);
        assert_eq!(GrassmannElement::parse(&x.to_string(), 4).unwrap(), x);
        assert_eq!(
            GrassmannElement::parse(&x.to_text(true, true), 4).unwrap(),
            x
        );
    }
}
