//! The wreath rectangular band, generic over the parameter type.
//!
//! Every element is a pair `(left, right)` where a missing side stands for
//! the reserved parameter 1: `e = (1, 1)`, `p_t = (t, 1)`, `q_u = (1, u)`,
//! `r_tu = (t, u)`. The product keeps the outer sides: `(a, b)(c, d) = (a, d)`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Wreath<P> {
    E,
    P(P),
    Q(P),
    R(P, P),
}

impl<P: Clone> Wreath<P> {
    pub fn from_pair(left: Option<P>, right: Option<P>) -> Self {
        match (left, right) {
            (None, None) => Wreath::E,
            (Some(t), None) => Wreath::P(t),
            (None, Some(u)) => Wreath::Q(u),
            (Some(t), Some(u)) => Wreath::R(t, u),
        }
    }

    pub fn left(&self) -> Option<&P> {
        match self {
            Wreath::P(t) | Wreath::R(t, _) => Some(t),
            Wreath::E | Wreath::Q(_) => None,
        }
    }

    pub fn right(&self) -> Option<&P> {
        match self {
            Wreath::Q(u) | Wreath::R(_, u) => Some(u),
            Wreath::E | Wreath::P(_) => None,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_pair(self.left().cloned(), other.right().cloned())
    }
}

impl<P: fmt::Display> fmt::Display for Wreath<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Wreath::E => f.write_str("e"),
            Wreath::P(t) => write!(f, "p[{t}]"),
            Wreath::Q(u) => write!(f, "q[{u}]"),
            Wreath::R(t, u) => write!(f, "r[{t};{u}]"),
        }
    }
}

/// The nine formal elements `e, p_t, p_u, q_t, q_u, r_tu, r_ut, r_tw, r_vw`
/// used to display the band's multiplication on symbols `t, u, v, w`.
pub fn reference_symbols() -> Vec<Wreath<char>> {
    use Wreath::*;
    vec![
        E,
        P('t'),
        P('u'),
        Q('t'),
        Q('u'),
        R('t', 'u'),
        R('u', 't'),
        R('t', 'w'),
        R('v', 'w'),
    ]
}

/// Every formal element over the given symbols, closed under the product.
pub fn symbolic_closure(symbols: &[char]) -> Vec<Wreath<char>> {
    let sides: Vec<Option<char>> = std::iter::once(None)
        .chain(symbols.iter().copied().map(Some))
        .collect();
    let mut out: Vec<Wreath<char>> = sides
        .iter()
        .flat_map(|l| sides.iter().map(move |r| Wreath::from_pair(*l, *r)))
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defining_products() {
        use Wreath::*;
        assert_eq!(P('t').mul(&Q('u')), R('t', 'u'));
        assert_eq!(Q('u').mul(&P('t')), E);
        assert_eq!(R('t', 'u').mul(&R('v', 'w')), R('t', 'w'));
        assert_eq!(P('t').mul(&P('u')), P('t'));
        assert_eq!(Q('t').mul(&Q('u')), Q('u'));
        assert_eq!(E.mul(&P('t')), E);
        assert_eq!(P('t').mul(&E), P('t'));
        assert_eq!(Q('u').mul(&E), E);
        assert_eq!(E.mul(&Q('u')), Q('u'));
    }

    #[test]
    fn labels() {
        assert_eq!(Wreath::R('t', 'u').to_string(), "r[t;u]");
        assert_eq!(Wreath::<char>::E.to_string(), "e");
    }

    #[test]
    fn closure_size() {
        assert_eq!(symbolic_closure(&['t', 'u', 'v', 'w']).len(), 25);
    }
}
