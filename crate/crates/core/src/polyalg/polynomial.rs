use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::linalg::Rational;

/// Exponent vector of `t(1)^a1 ... t(n)^an`.
///
/// Ordered graded, then lexicographically with `t(n)` as the most
/// significant variable; canonical output lists terms from largest to
/// smallest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Self(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `∂^self (t^target)`, as `(factor, monomial)`, or `None` when it
    /// vanishes.
    fn differentiate(&self, target: &Monomial) -> Option<(BigInt, Monomial)> {
        let mut factor = BigInt::one();
        let mut out = Vec::with_capacity(self.0.len());
        for (&a, &b) in self.0.iter().zip(&target.0) {
            if a > b {
                return None;
            }
            for k in (b - a + 1)..=b {
                factor *= k;
            }
            out.push(b - a);
        }
        Some((factor, Monomial(out)))
    }

    /// `α!` for the exponent vector `α`.
    fn factorial(&self) -> BigInt {
        self.0.iter().map(|&a| (1..=a).map(BigInt::from).product::<BigInt>()).product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.iter().rev().cmp(other.0.iter().rev()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of total degree `d` in `n` variables, in canonical
/// (descending) order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            rec(n, left - a, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Index lookup for a monomial basis.
pub fn index_of(basis: &[Monomial]) -> HashMap<Monomial, usize> {
    basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect()
}

/// Sparse polynomial in `t(1), ..., t(n)` over the rationals. No zero
/// coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::one(n), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, Rational::one())
    }

    /// The variable `t(i)`, `1 <= i <= n`.
    pub fn var(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::var(n, i), Rational::one());
        p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The common degree of all terms; `None` for the zero polynomial or a
    /// mixed-degree one.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let d = degrees.next()?;
        degrees.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    /// Leading (canonically first) coefficient.
    pub fn leading_coefficient(&self) -> Option<&Rational> {
        self.terms.values().next_back()
    }

    /// Coordinates in the given monomial basis; panics if a term falls
    /// outside it.
    pub fn coordinates(&self, index: &HashMap<Monomial, usize>, len: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); len];
        for (m, c) in &self.terms {
            v[index[m]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(n: usize, basis: &[Monomial], coords: &[Rational]) -> Polynomial {
        let mut p = Polynomial::zero(n);
        for (m, c) in basis.iter().zip(coords) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// `self(D) q`: each monomial `t^α` of `self` acts as `∂^α`.
    pub fn apply_to(&self, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(q.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &q.terms {
                if let Some((factor, m)) = a.differentiate(b) {
                    out.add_term(m, ca * cb * Rational::from_integer(factor));
                }
            }
        }
        out
    }

    /// `self(D) q` evaluated at 0, i.e. `Σ_α p_α q_α α!`.
    pub fn pair(&self, q: &Polynomial) -> Rational {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            if let Some(d) = q.terms.get(m) {
                total += c * d * Rational::from_integer(m.factorial());
            }
        }
        total
    }

    /// Whether `self = c * other` for some nonzero rational `c`, returning
    /// `c`.
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Rational> {
        if self.is_zero() || other.is_zero() || self.terms.len() != other.terms.len() {
            return None;
        }
        let (m, c) = other.terms.iter().next()?;
        let ratio = self.terms.get(m)? / c;
        (other.scale(&ratio) == *self).then_some(ratio)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.n);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &a) in self.0.iter().enumerate() {
            if a == 0 {
                continue;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            write!(f, "t{}", i + 1)?;
            if a > 1 {
                write!(f, "^{a}")?;
            }
        }
        Ok(())
    }
}

/// `"1*t2 - 1*t1"`, `"3/2*t1^2 t2"`, `"1"` (constant) or `"0"`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use proptest::prelude::*;

    fn t(n: usize, i: usize) -> Polynomial {
        Polynomial::var(n, i)
    }

    #[test]
    fn display_format() {
        assert_eq!((&t(2, 2) - &t(2, 1)).to_string(), "1*t2 - 1*t1");
        assert_eq!((&t(2, 1) - &t(2, 2)).to_string(), "-1*t2 + 1*t1");
        assert_eq!(Polynomial::one(3).to_string(), "1");
        assert_eq!(Polynomial::zero(3).to_string(), "0");
        let p = &(&t(2, 1) * &t(2, 1)) * &t(2, 2);
        assert_eq!(p.scale(&Rational::new(3.into(), 2.into())).to_string(), "3/2*t1^2 t2");
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials_of_degree(4, 6).len(), 84);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(2, 0), vec![Monomial::one(2)]);
        let m = monomials_of_degree(3, 2);
        assert!(m.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn differentiation_examples() {
        let q = &t(2, 1) * &t(2, 2);
        assert_eq!(t(2, 1).apply_to(&q), t(2, 2));
        assert_eq!((&t(2, 2) - &t(2, 1)).apply_to(&t(2, 2)), Polynomial::one(2));
        assert!((&t(2, 1) * &t(2, 2)).apply_to(&t(2, 1)).is_zero());
        let cube = &(&t(1, 1) * &t(1, 1)) * &t(1, 1);
        assert_eq!(t(1, 1).apply_to(&cube), (&t(1, 1) * &t(1, 1)).scale(&rational(3)));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!((&t(2, 2) - &t(2, 1)).pair(&t(2, 2)), rational(1));
        let q = &t(2, 1) * &t(2, 2);
        assert_eq!(q.pair(&q), rational(1));
        assert_eq!(t(2, 1).pair(&q), rational(0));
        let sq = &t(2, 1) * &t(2, 1);
        assert_eq!(sq.pair(&sq), rational(2));
    }

    #[test]
    fn ratio() {
        let p = &t(2, 2) - &t(2, 1);
        assert_eq!(p.scale(&rational(-3)).ratio_to(&p), Some(rational(-3)));
        assert_eq!(t(2, 1).ratio_to(&t(2, 2)), None);
        assert_eq!(Polynomial::zero(2).ratio_to(&p), None);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((prop::collection::vec(0u32..3, n), -5i64..=5), 0..6).prop_map(move |terms| {
            let mut p = Polynomial::zero(n);
            for (e, c) in terms {
                p.add_term(Monomial::from_exponents(e), rational(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn pairing_is_constant_term_of_operator(p in arb_poly(3), q in arb_poly(3)) {
            let applied = p.apply_to(&q);
            prop_assert_eq!(p.pair(&q), applied.coefficient(&Monomial::one(3)));
        }

        #[test]
        fn operators_compose_multiplicatively(a in arb_poly(2), b in arb_poly(2), q in arb_poly(2)) {
            prop_assert_eq!((&a * &b).apply_to(&q), a.apply_to(&b.apply_to(&q)));
        }

        #[test]
        fn pairing_is_symmetric(p in arb_poly(3), q in arb_poly(3)) {
            prop_assert_eq!(p.pair(&q), q.pair(&p));
        }
    }
}
