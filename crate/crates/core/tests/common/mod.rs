//! Independent oracles shared by the integration tests.
//!
//! Nothing here calls the library's multiplication of Grassmann elements:
//! monomials are sorted index lists and signs come from counting
//! transpositions in a bubble sort.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use superband::band::BandElement;
use superband::green::Partition;
use superband::{GrassmannElement, Rational, Supermatrix};

pub type Naive = BTreeMap<Vec<usize>, Rational>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn pool() -> Vec<Rational> {
    [-1, 0, 1, 2].into_iter().map(rat).collect()
}

/// Sorts the concatenation of two monomials; `None` if an index repeats.
fn merge(a: &[usize], b: &[usize]) -> Option<(Vec<usize>, bool)> {
    let mut v: Vec<usize> = a.iter().chain(b).copied().collect();
    let mut negative = false;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                negative = !negative;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((v, negative))
}

fn clean(mut x: Naive) -> Naive {
    x.retain(|_, c| !c.is_zero());
    x
}

pub fn nmul(x: &Naive, y: &Naive) -> Naive {
    let mut out = Naive::new();
    for (a, ca) in x {
        for (b, cb) in y {
            if let Some((m, neg)) = merge(a, b) {
                let c = ca * cb;
                let e = out.entry(m).or_insert_with(Rational::zero);
                if neg {
                    *e -= c;
                } else {
                    *e += c;
                }
            }
        }
    }
    clean(out)
}

pub fn nadd(x: &Naive, y: &Naive) -> Naive {
    let mut out = x.clone();
    for (m, c) in y {
        *out.entry(m.clone()).or_insert_with(Rational::zero) += c;
    }
    clean(out)
}

pub fn nneg(x: &Naive) -> Naive {
    x.iter().map(|(m, c)| (m.clone(), -c)).collect()
}

pub fn nscalar(c: Rational) -> Naive {
    clean(Naive::from([(Vec::new(), c)]))
}

/// Inverse of an element with nonzero scalar part, by the finite
/// geometric series in its nilpotent part.
pub fn ninv(x: &Naive, n: usize) -> Naive {
    let body = x.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero);
    assert!(!body.is_zero(), "oracle inverse of a nilpotent element");
    let inv_body = body.recip();
    let mut soul = x.clone();
    soul.remove(&Vec::new());
    // x = body (1 + s), s = soul / body
    let s: Naive = soul
        .iter()
        .map(|(m, c)| (m.clone(), c * &inv_body))
        .collect();
    let minus_s = nneg(&s);
    let mut term = nscalar(Rational::one());
    let mut sum = term.clone();
    for _ in 0..n {
        term = nmul(&term, &minus_s);
        sum = nadd(&sum, &term);
    }
    sum.iter()
        .map(|(m, c)| (m.clone(), c * &inv_body))
        .collect()
}

pub fn to_naive(x: &GrassmannElement) -> Naive {
    clean(
        x.terms()
            .map(|(mask, c)| {
                let idx: Vec<usize> = (0..32)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| i + 1)
                    .collect();
                (idx, c.clone())
            })
            .collect(),
    )
}

pub fn from_naive(n: usize, x: &Naive) -> GrassmannElement {
    let mut out = GrassmannElement::zero(n);
    for (m, c) in x {
        out = &out + &GrassmannElement::monomial(n, m, c.clone()).unwrap();
    }
    out
}

/// All elements of a given parity whose coefficients come from `pool`,
/// one coefficient per monomial.
pub fn all_elements(n: usize, odd: bool, pool: &[Rational]) -> Vec<GrassmannElement> {
    let masks: Vec<u32> = (0..1u32 << n)
        .filter(|m| (m.count_ones() % 2 == 1) == odd)
        .collect();
    let total = pool.len().pow(masks.len() as u32);
    (0..total)
        .map(|mut code| {
            let terms: Vec<(u32, Rational)> = masks
                .iter()
                .map(|&m| {
                    let c = pool[code % pool.len()].clone();
                    code /= pool.len();
                    (m, c)
                })
                .collect();
            GrassmannElement::from_terms(n, terms).unwrap()
        })
        .collect()
}

/// `a/b - αβ/b²` for `[[a, α], [β, b]]`, evaluated with the oracle
/// arithmetic.
pub fn ber_oracle(m: &Supermatrix, n: usize) -> GrassmannElement {
    let a = to_naive(m.get(0, 0));
    let al = to_naive(m.get(0, 1));
    let be = to_naive(m.get(1, 0));
    let b = to_naive(m.get(1, 1));
    let binv = ninv(&b, n);
    let first = nmul(&a, &binv);
    let second = nmul(&nmul(&nmul(&al, &be), &binv), &binv);
    from_naive(n, &nadd(&first, &nneg(&second)))
}

/// 2 x 2 product through the oracle arithmetic.
pub fn one_one_product(x: &Supermatrix, y: &Supermatrix, n: usize) -> [GrassmannElement; 4] {
    let e = |m: &Supermatrix, i, j| to_naive(m.get(i, j));
    let cell = |i, j| {
        from_naive(
            n,
            &nadd(
                &nmul(&e(x, i, 0), &e(y, 0, j)),
                &nmul(&e(x, i, 1), &e(y, 1, j)),
            ),
        )
    };
    [cell(0, 0), cell(0, 1), cell(1, 0), cell(1, 1)]
}

/// Green's relations straight from the definitions on the matrices of
/// `elems`: `a R b` iff `a S¹ = b S¹`, and so on, with elements identified
/// by their matrices.
pub struct GreensOracle {
    pub r: Partition,
    pub l: Partition,
    pub h: Partition,
    pub d: Partition,
    pub j: Partition,
}

fn key(m: &Supermatrix) -> String {
    m.to_text(true)
}

pub fn greens_oracle(elems: &[BandElement]) -> GreensOracle {
    let reps: Vec<Supermatrix> = elems.iter().map(|x| x.rep()).collect();
    let keys: Vec<String> = reps.iter().map(key).collect();
    let n = reps.len();
    let prod: Vec<Vec<String>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| key(&reps[i].smul(&reps[j]).unwrap()))
                .collect()
        })
        .collect();
    let right: Vec<BTreeSet<String>> = (0..n)
        .map(|i| {
            let mut s: BTreeSet<String> = prod[i].iter().cloned().collect();
            s.insert(keys[i].clone());
            s
        })
        .collect();
    let left: Vec<BTreeSet<String>> = (0..n)
        .map(|i| {
            let mut s: BTreeSet<String> = (0..n).map(|j| prod[j][i].clone()).collect();
            s.insert(keys[i].clone());
            s
        })
        .collect();
    let two: Vec<BTreeSet<String>> = (0..n)
        .map(|i| {
            let mut s = right[i].clone();
            s.extend(left[i].iter().cloned());
            for x in 0..n {
                for y in 0..n {
                    let xi = reps[x].smul(&reps[i]).unwrap();
                    s.insert(key(&xi.smul(&reps[y]).unwrap()));
                }
            }
            s
        })
        .collect();
    let r = Partition::from_keys(right.iter().map(|s| s.iter().cloned().collect::<Vec<_>>()));
    let l = Partition::from_keys(left.iter().map(|s| s.iter().cloned().collect::<Vec<_>>()));
    let h = Partition::from_keys((0..n).map(|i| (r.block_of(i), l.block_of(i))));
    // D = R ∘ L: a D b iff some c has a R c and c L b
    let mut dkey = Vec::new();
    for a in 0..n {
        let reach: BTreeSet<usize> = (0..n)
            .filter(|&b| (0..n).any(|c| r.related(a, c) && l.related(c, b)))
            .collect();
        dkey.push(reach.into_iter().collect::<Vec<_>>());
    }
    let d = Partition::from_keys(dkey);
    let j = Partition::from_keys(two.iter().map(|s| s.iter().cloned().collect::<Vec<_>>()));
    GreensOracle { r, l, h, d, j }
}

/// `αt = αu` for each listed parameter pair, by the oracle product.
pub fn alpha_equal(alpha: &GrassmannElement, t: &GrassmannElement, u: &GrassmannElement) -> bool {
    let a = to_naive(alpha);
    nmul(&a, &to_naive(t)) == nmul(&a, &to_naive(u))
}

/// `p_t` to `p[t]`, `r_tu` to `r[t;u]`.
pub fn fixture_label(s: &str) -> String {
    match s.split_once('_') {
        None => s.to_string(),
        Some((k, sub)) if sub.len() == 2 => {
            let (a, b) = sub.split_at(1);
            format!("{k}[{a};{b}]")
        }
        Some((k, sub)) => format!("{k}[{sub}]"),
    }
}

/// Column labels and rows of the transcribed wreath table.
pub fn wreath_fixture() -> (Vec<String>, Vec<Vec<String>>) {
    let text = include_str!("../fixtures/wreath_table.txt");
    let mut lines = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<String> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .skip(1)
        .map(fixture_label)
        .collect();
    let rows = lines
        .map(|l| l.split_whitespace().skip(1).map(fixture_label).collect())
        .collect();
    (header, rows)
}
