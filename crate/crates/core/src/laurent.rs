//! Sparse exact arithmetic for the Laurent polynomial ring `Z[x,x⁻¹,y,y⁻¹]`.
//!
//! A [`LaurentPoly`] is a finite map from exponent pairs to nonzero
//! arbitrary-precision integers. The canonical term order (and the order of
//! serialized output) is lexicographic by `(ey, ex)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A sign `±1`, used for coordinate changes and ring-flavor directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn apply(self, e: i64) -> i64 {
        e * self.to_i64()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => write!(f, "+1"),
            Sign::Neg => write!(f, "-1"),
        }
    }
}

/// Exponent pair of a monomial `x^ex · y^ey`.
///
/// The derived order is lexicographic by `(ey, ex)`; this is the canonical
/// term order used everywhere for deterministic iteration and output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub ex: i64,
    pub ey: i64,
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ey, self.ex).cmp(&(other.ey, other.ex))
    }
}

impl Monomial {
    pub fn new(ex: i64, ey: i64) -> Self {
        Monomial { ex, ey }
    }

    pub fn one() -> Self {
        Monomial { ex: 0, ey: 0 }
    }

    pub fn inverse(self) -> Self {
        Monomial { ex: -self.ex, ey: -self.ey }
    }

    pub fn pow(self, k: i64) -> Self {
        Monomial { ex: self.ex * k, ey: self.ey * k }
    }

    /// L∞ norm of the exponent vector.
    pub fn radius(self) -> i64 {
        self.ex.abs().max(self.ey.abs())
    }

    /// Exponent map `x ↦ x^sx`, `y ↦ y^sy`, then swap of the two exponents
    /// if requested.
    pub fn substitute(self, sx: Sign, sy: Sign, swap: bool) -> Self {
        let ex = sx.apply(self.ex);
        let ey = sy.apply(self.ey);
        if swap {
            Monomial { ex: ey, ey: ex }
        } else {
            Monomial { ex, ey }
        }
    }
}

impl Add for Monomial {
    type Output = Monomial;
    fn add(self, rhs: Monomial) -> Monomial {
        Monomial { ex: self.ex + rhs.ex, ey: self.ey + rhs.ey }
    }
}

impl Sub for Monomial {
    type Output = Monomial;
    fn sub(self, rhs: Monomial) -> Monomial {
        Monomial { ex: self.ex - rhs.ex, ey: self.ey - rhs.ey }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ex, self.ey) {
            (0, 0) => write!(f, "1"),
            (ex, 0) => write!(f, "x^{}", ex),
            (0, ey) => write!(f, "y^{}", ey),
            (ex, ey) => write!(f, "x^{} y^{}", ex, ey),
        }
    }
}

/// Componentwise extremes of a finite support set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SupportBox {
    pub min_ex: i64,
    pub max_ex: i64,
    pub min_ey: i64,
    pub max_ey: i64,
}

impl SupportBox {
    /// Largest side length of the box.
    pub fn spread(&self) -> i64 {
        (self.max_ex - self.min_ex).max(self.max_ey - self.min_ey)
    }
}

/// Sparse Laurent polynomial in `x, y` with exact integer coefficients.
///
/// Invariant: no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::term(BigInt::one(), 0, 0)
    }

    /// The single term `c · x^ex · y^ey` (zero polynomial when `c = 0`).
    pub fn term(c: BigInt, ex: i64, ey: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::new(ex, ey), c);
        }
        LaurentPoly { terms }
    }

    pub fn constant(c: i64) -> Self {
        LaurentPoly::term(BigInt::from(c), 0, 0)
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly::term(BigInt::one(), m.ex, m.ey)
    }

    /// Builds a polynomial from (coefficient, ex, ey) triples, combining
    /// duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64, i64)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (c, ex, ey) in iter {
            p.add_term(Monomial::new(ex, ey), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in the canonical `(ey, ex)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Monomial, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coeff(&self, m: Monomial) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial> + '_ {
        self.terms.keys().copied()
    }

    /// Adds `c · m` in place, removing the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m, -c.clone());
        }
        out
    }

    pub fn neg_ref(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&m, c)| (m, -c.clone())).collect() }
    }

    /// Exact product; zero-coefficient cancellations are removed.
    pub fn mul_ref(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in other.iter() {
                out.add_term(m1 + m2, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&m, k)| (m, k * c)).collect() }
    }

    /// Multiplies by the monomial `m` (exponent shift).
    pub fn mul_monomial(&self, m: Monomial) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&t, c)| (t + m, c.clone())).collect() }
    }

    /// Componentwise extremes of the support; `None` for the zero polynomial.
    pub fn support_box(&self) -> Option<SupportBox> {
        let mut it = self.support();
        let first = it.next()?;
        let mut b = SupportBox {
            min_ex: first.ex,
            max_ex: first.ex,
            min_ey: first.ey,
            max_ey: first.ey,
        };
        for m in it {
            b.min_ex = b.min_ex.min(m.ex);
            b.max_ex = b.max_ex.max(m.ex);
            b.min_ey = b.min_ey.min(m.ey);
            b.max_ey = b.max_ey.max(m.ey);
        }
        Some(b)
    }

    /// Largest L∞ norm over the support (0 for the zero polynomial).
    pub fn support_radius(&self) -> i64 {
        self.support().map(|m| m.radius()).max().unwrap_or(0)
    }

    /// `x ↦ x^sx`, `y ↦ y^sy` on exponents, then `x ↔ y` exponent swap if
    /// requested. Involutive for `swap = false`.
    pub fn substitute(&self, sx: Sign, sy: Sign, swap: bool) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(&m, c)| (m.substitute(sx, sy, swap), c.clone()))
                .collect(),
        }
    }

    /// Restricts to terms with `|ex|, |ey| ≤ radius`.
    pub fn clip_to_radius(&self, radius: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.radius() <= radius)
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// Keeps only terms satisfying the predicate.
    pub fn filter_terms<F: Fn(Monomial) -> bool>(&self, keep: F) -> LaurentPoly {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(&m, _)| keep(m))
                .map(|(&m, c)| (m, c.clone()))
                .collect(),
        }
    }

    /// The terms whose y-exponent is `ey`, as a polynomial in `x` alone.
    pub fn y_slice(&self, ey: i64) -> LaurentPoly {
        self.filter_terms(|m| m.ey == ey)
    }

    /// The terms whose x-exponent is `ex`, as a polynomial in `y` alone.
    pub fn x_slice(&self, ex: i64) -> LaurentPoly {
        self.filter_terms(|m| m.ex == ex)
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        LaurentPoly::one()
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_ref(&rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self.sub_ref(&rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        self.mul_ref(&rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl<'a> Add<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.iter() {
            self.add_term(m, c.clone());
        }
        self
    }
}

impl<'a> Sub<&'a LaurentPoly> for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: &'a LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.iter() {
            self.add_term(m, -c.clone());
        }
        self
    }
}

impl<'a, 'b> Mul<&'b LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'b LaurentPoly) -> LaurentPoly {
        self.mul_ref(rhs)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.iter() {
            if first {
                first = false;
                if m == Monomial::one() {
                    write!(f, "{}", c)?;
                } else if c.is_one() {
                    write!(f, "{}", m)?;
                } else if (-c).is_one() {
                    write!(f, "-{}", m)?;
                } else {
                    write!(f, "{} {}", c, m)?;
                }
            } else if m == Monomial::one() {
                write!(f, " + {}", c)?;
            } else if c.is_one() {
                write!(f, " + {}", m)?;
            } else if (-c).is_one() {
                write!(f, " - {}", m)?;
            } else {
                write!(f, " + {} {}", c, m)?;
            }
        }
        Ok(())
    }
}

/// `μ = 1 + x(y² + x(1+y)) = 1 + xy² + x² + x²y`, the first map of the
/// worked two-variable example.
pub fn example_mu() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 0, 0), (1, 1, 2), (1, 2, 0), (1, 2, 1)])
}

/// `ν = x + y(1 + y(1+x²)) = x + y + y² + x²y²`, the second map of the
/// worked two-variable example.
pub fn example_nu() -> LaurentPoly {
    LaurentPoly::from_terms([(1, 1, 0), (1, 0, 1), (1, 0, 2), (1, 2, 2)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn p(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    pub(crate) fn random_poly(rng: &mut StdRng, max_terms: usize, max_exp: i64) -> LaurentPoly {
        let n = rng.gen_range(0..=max_terms);
        let mut out = LaurentPoly::zero();
        for _ in 0..n {
            let c = rng.gen_range(-5..=5);
            let ex = rng.gen_range(-max_exp..=max_exp);
            let ey = rng.gen_range(-max_exp..=max_exp);
            out.add_term(Monomial::new(ex, ey), BigInt::from(c));
        }
        out
    }

    #[test]
    fn multiply_difference_of_squares() {
        let a = p(&[(1, 0, 0), (1, 1, 0)]);
        let b = p(&[(1, 0, 0), (-1, 1, 0)]);
        assert_eq!(a.mul_ref(&b), p(&[(1, 0, 0), (-1, 2, 0)]));
    }

    #[test]
    fn multiply_mu_expansion() {
        // 1 + x·(y² + x·(1+y)) expands to 1 + xy² + x² + x²y
        let x = LaurentPoly::monomial(Monomial::new(1, 0));
        let y = LaurentPoly::monomial(Monomial::new(0, 1));
        let inner = y.mul_ref(&y).add_ref(&x.mul_ref(&LaurentPoly::one().add_ref(&y)));
        let mu = LaurentPoly::one().add_ref(&x.mul_ref(&inner));
        assert_eq!(mu, example_mu());
    }

    #[test]
    fn multiply_inverse_monomials() {
        let a = p(&[(1, -1, 1)]);
        let b = p(&[(1, 1, -1)]);
        assert_eq!(a.mul_ref(&b), LaurentPoly::one());
    }

    #[test]
    fn support_box_of_mu() {
        let b = example_mu().support_box().unwrap();
        assert_eq!((b.min_ex, b.max_ex, b.min_ey, b.max_ey), (0, 2, 0, 2));
    }

    #[test]
    fn support_box_zero_and_single() {
        assert!(LaurentPoly::zero().support_box().is_none());
        let b = p(&[(1, -3, 5)]).support_box().unwrap();
        assert_eq!((b.min_ex, b.max_ex, b.min_ey, b.max_ey), (-3, -3, 5, 5));
    }

    #[test]
    fn substitute_examples() {
        let q = p(&[(1, 1, 0), (1, 0, 2)]);
        assert_eq!(q.substitute(Sign::Neg, Sign::Pos, false), p(&[(1, -1, 0), (1, 0, 2)]));
        assert_eq!(q.substitute(Sign::Pos, Sign::Pos, true), p(&[(1, 0, 1), (1, 2, 0)]));
        let r = p(&[(1, 1, -1)]);
        assert_eq!(r.substitute(Sign::Neg, Sign::Neg, false), p(&[(1, -1, 1)]));
    }

    #[test]
    fn substitute_involutive_without_swap() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let q = random_poly(&mut rng, 6, 4);
            for (sx, sy) in [(Sign::Pos, Sign::Neg), (Sign::Neg, Sign::Pos), (Sign::Neg, Sign::Neg)] {
                assert_eq!(q.substitute(sx, sy, false).substitute(sx, sy, false), q);
            }
        }
    }

    #[test]
    fn minkowski_support_containment() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..100 {
            let a = random_poly(&mut rng, 5, 3);
            let b = random_poly(&mut rng, 5, 3);
            let prod = a.mul_ref(&b);
            let sums: std::collections::BTreeSet<Monomial> = a
                .support()
                .flat_map(|m| b.support().map(move |n| m + n))
                .collect();
            for m in prod.support() {
                assert!(sums.contains(&m));
            }
        }
    }

    #[test]
    fn mul_commutative_associative() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..60 {
            let a = random_poly(&mut rng, 4, 3);
            let b = random_poly(&mut rng, 4, 3);
            let c = random_poly(&mut rng, 4, 3);
            assert_eq!(a.mul_ref(&b), b.mul_ref(&a));
            assert_eq!(a.mul_ref(&b).mul_ref(&c), a.mul_ref(&b.mul_ref(&c)));
        }
    }

    #[test]
    fn substitute_distributes_over_mul() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..60 {
            let a = random_poly(&mut rng, 4, 3);
            let b = random_poly(&mut rng, 4, 3);
            for swap in [false, true] {
                for (sx, sy) in [(Sign::Pos, Sign::Pos), (Sign::Neg, Sign::Pos), (Sign::Neg, Sign::Neg)] {
                    assert_eq!(
                        a.mul_ref(&b).substitute(sx, sy, swap),
                        a.substitute(sx, sy, swap).mul_ref(&b.substitute(sx, sy, swap))
                    );
                }
            }
        }
    }

    #[test]
    fn canonical_term_order_is_ey_then_ex() {
        let q = p(&[(1, 2, 0), (1, 0, 1), (1, -1, 0)]);
        let supp: Vec<Monomial> = q.support().collect();
        assert_eq!(supp, vec![Monomial::new(-1, 0), Monomial::new(2, 0), Monomial::new(0, 1)]);
    }
}
