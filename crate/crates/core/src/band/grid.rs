//! Finite samples of even parameters, one per `Δα`-class.

use std::collections::BTreeSet;

use num_traits::Zero;
use rand::seq::IndexedRandom;
use rand::Rng;

use super::Band;
use crate::grassmann::{GrassmannElement, Rational};

/// Canonical even parameters with coefficients drawn from `pool`, in a fixed
/// order (scalars first, then growing support). Every returned element is a
/// distinct coset representative; the class of 1 is skipped when
/// `skip_one` is set. Stops after `limit` classes.
pub fn even_candidates(
    band: &Band,
    pool: &[Rational],
    limit: usize,
    skip_one: bool,
) -> Vec<GrassmannElement> {
    let n = band.n_generators();
    let free = band.annihilator().free_masks();
    let mut out = Vec::new();
    if pool.is_empty() || limit == 0 {
        return out;
    }
    // zero first on the non-scalar coordinates so small supports come first
    let mut soul_pool = pool.to_vec();
    soul_pool.sort_by_key(|c| !c.is_zero());
    let mut digits = vec![0usize; free.len()];
    loop {
        let x = GrassmannElement::from_terms(
            n,
            free.iter().zip(&digits).map(|(m, d)| {
                let c = if *m == 0 { &pool[*d] } else { &soul_pool[*d] };
                (*m, c.clone())
            }),
        )
        .expect("free masks fit the algebra");
        if !(skip_one && band.is_one_class(&x)) && !out.contains(&x) {
            out.push(x);
            if out.len() == limit {
                return out;
            }
        }
        // odometer: the scalar coordinate turns fastest
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < pool.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Left and right parameter lists for a band grid.
#[derive(Debug, Clone)]
pub struct ParameterGrid {
    pub t: Vec<GrassmannElement>,
    pub u: Vec<GrassmannElement>,
}

impl ParameterGrid {
    /// `size` distinct classes on each side, skipping the class of 1.
    pub fn exhaustive(band: &Band, pool: &[Rational], size: usize) -> Self {
        let t = even_candidates(band, pool, size, true);
        Self { u: t.clone(), t }
    }

    /// Random distinct classes, `size` per side.
    pub fn random<R: Rng>(band: &Band, pool: &[Rational], size: usize, rng: &mut R) -> Self {
        Self {
            t: random_classes(band, pool, size, rng),
            u: random_classes(band, pool, size, rng),
        }
    }

    /// Appends, for each parameter, a distinct `α`-equal partner `t + a`
    /// with `a` the first annihilator basis element. No-op when the
    /// annihilator is trivial.
    pub fn with_collisions(&self, band: &Band) -> Self {
        let add = |v: &[GrassmannElement]| collision_partners(band, v);
        Self {
            t: add(&self.t),
            u: add(&self.u),
        }
    }
}

pub(crate) fn collision_partners(band: &Band, v: &[GrassmannElement]) -> Vec<GrassmannElement> {
    let mut out = v.to_vec();
    if let Some(a) = band.annihilator().basis().first() {
        out.extend(v.iter().map(|t| t + a));
    }
    out
}

/// Up to `size` random canonical classes (fewer if the pool cannot
/// produce that many).
pub fn random_classes<R: Rng>(
    band: &Band,
    pool: &[Rational],
    size: usize,
    rng: &mut R,
) -> Vec<GrassmannElement> {
    let n = band.n_generators();
    let free = band.annihilator().free_masks();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for _ in 0..size * 64 {
        if out.len() == size {
            break;
        }
        let x = GrassmannElement::from_terms(
            n,
            free.iter()
                .map(|m| (*m, pool.choose(rng).expect("nonempty pool").clone())),
        )
        .expect("free masks fit the algebra");
        if !band.is_one_class(&x) && seen.insert(x.clone()) {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grassmann::rational;
    use rand::SeedableRng;

    fn pool() -> Vec<Rational> {
        [-1, 0, 1, 2].into_iter().map(rational).collect()
    }

    fn band(n: usize) -> Band {
        Band::new(GrassmannElement::theta(n, 1).unwrap()).unwrap()
    }

    #[test]
    fn candidates_are_distinct_classes() {
        let b = band(3);
        let c = even_candidates(&b, &pool(), 100, true);
        // free coordinates: 1 and θ2θ3, minus the class of 1
        assert_eq!(c.len(), 15);
        for (i, x) in c.iter().enumerate() {
            for y in &c[..i] {
                assert!(!(b.alpha() * &(x - y)).is_zero());
            }
        }
        assert_eq!(c[0], GrassmannElement::integer(3, -1));
        assert_eq!(c[1], GrassmannElement::zero(3));
    }

    #[test]
    fn one_generator_has_only_scalars() {
        let c = even_candidates(&band(1), &pool(), 10, true);
        assert_eq!(c.len(), 3);
    }

    #[test]
    fn random_classes_are_seeded() {
        let b = band(4);
        let a = random_classes(
            &b,
            &pool(),
            5,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(7),
        );
        let c = random_classes(
            &b,
            &pool(),
            5,
            &mut rand_chacha::ChaCha8Rng::seed_from_u64(7),
        );
        assert_eq!(a, c);
        assert_eq!(a.len(), 5);
    }

    #[test]
    fn collisions_are_alpha_equal() {
        let b = band(3).raw();
        let g = ParameterGrid::exhaustive(&b, &pool(), 2).with_collisions(&b);
        assert_eq!(g.t.len(), 4);
        assert_ne!(g.t[0], g.t[2]);
        assert!((b.alpha() * &(&g.t[0] - &g.t[2])).is_zero());
    }
}
