//! Arithmetic in GF(p^k) under a fixed, reproducible labeling.
//!
//! Element `i` is the residue polynomial whose coefficients (low degree
//! first) are the base-`p` digits of `i`. Index 0 is zero and index 1 is one.
//! Multiplication goes through discrete log tables built once per field, so
//! the supported orders are bounded (see [`MAX_ORDER`]).

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Largest field order we build tables for.
pub const MAX_ORDER: u64 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("modulus {0:?} is reducible over GF(p)")]
    Reducible(Vec<u32>),
    #[error("modulus has degree {found}, expected monic of degree {expected}")]
    DegreeMismatch { expected: u32, found: usize },
    #[error("modulus coefficient {0} is not reduced mod p")]
    BadCoefficient(u32),
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("field order {0} exceeds the supported maximum")]
    TooLarge(u64),
    #[error("element {index} is out of range for a field of order {order}")]
    OutOfRange { index: u32, order: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("frobenius exponent {exponent} out of range for degree {degree}")]
    ExponentOutOfRange { exponent: u32, degree: u32 },
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
    #[error("cannot parse field spec `{0}`")]
    Parse(String),
}

/// An element of GF(p^k), identified by its label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A polynomial over some GF(p^k), coefficients low degree first.
///
/// Trailing zero coefficients are trimmed, so the zero polynomial has no
/// coefficients at all.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FPoly {
    coeffs: Vec<FieldElement>,
}

impl FPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FPoly { coeffs }
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        FPoly::new(indices.iter().map(|&i| FieldElement(i)).collect())
    }

    pub fn zero() -> Self {
        FPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: FieldElement) -> Self {
        FPoly::new(vec![c])
    }

    /// `c * x^degree`.
    pub fn monomial(c: FieldElement, degree: usize) -> Self {
        let mut coeffs = vec![FieldElement::ZERO; degree + 1];
        coeffs[degree] = c;
        FPoly::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }
}

/// A concrete realization of GF(p^k).
#[derive(Clone)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    n: u32,
    modulus: Vec<u32>,
    // exp[i] = g^i for a fixed primitive element g, i in 0..n-1
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldSpec({self})")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})/modulus=", self.p, self.k)?;
        for (i, c) in self.modulus.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FieldError::Parse(s.to_string());
        let rest = s.trim().strip_prefix("GF(").ok_or_else(bad)?;
        let (pk, rest) = rest.split_once(')').ok_or_else(bad)?;
        let (p, k) = pk.split_once('^').ok_or_else(bad)?;
        let p: u64 = p.trim().parse().map_err(|_| bad())?;
        let k: u32 = k.trim().parse().map_err(|_| bad())?;
        let modulus = match rest.strip_prefix("/modulus=") {
            Some(list) => Some(
                list.split(',')
                    .map(|c| c.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            None if rest.is_empty() => None,
            None => return Err(bad()),
        };
        FieldSpec::new(p, k, modulus.as_deref())
    }
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^k` with `p` prime.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Polynomials over Z_p as plain coefficient vectors, low degree first.
mod zp {
    pub fn trim(a: &mut Vec<u32>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    /// Remainder of `a` modulo the monic polynomial `m`.
    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        while r.len() > dm && !r.is_empty() {
            let shift = r.len() - 1 - dm;
            let lead = *r.last().unwrap() as u64;
            for (i, &c) in m.iter().enumerate() {
                let sub = (lead * c as u64) % p as u64;
                let v = &mut r[shift + i];
                *v = ((*v as u64 + p as u64 - sub) % p as u64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        trim(&mut out);
        out
    }

    /// Trial division by every monic polynomial of degree 1..=deg/2.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let k = f.len() - 1;
        for d in 1..=k / 2 {
            let count = (p as u64).pow(d as u32);
            for m in 0..count {
                let mut g = Vec::with_capacity(d + 1);
                let mut x = m;
                for _ in 0..d {
                    g.push((x % p as u64) as u32);
                    x /= p as u64;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

impl FieldSpec {
    /// Builds GF(p^k). Without a modulus, the lexicographically smallest
    /// monic irreducible of degree `k` is chosen (coefficient tuples compared
    /// constant term first).
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Self, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if k == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let order = p.checked_pow(k).filter(|&n| n <= MAX_ORDER);
        let Some(order) = order else {
            return Err(FieldError::TooLarge(p.saturating_pow(k)));
        };
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(FieldError::DegreeMismatch {
                        expected: k,
                        found: m.len().saturating_sub(1),
                    });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(FieldError::BadCoefficient(c));
                }
                if !zp::is_irreducible(m, p) {
                    return Err(FieldError::Reducible(m.to_vec()));
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, k),
        };
        let n = order as u32;
        let mut spec = FieldSpec {
            p,
            k,
            n,
            modulus,
            exp: Vec::new(),
            log: Vec::new(),
        };
        spec.build_tables();
        Ok(spec)
    }

    /// GF(q) with the auto-selected modulus.
    pub fn from_order(q: u64) -> Result<Self, FieldError> {
        let (p, k) = prime_power(q).ok_or(FieldError::NotPrimePower(q))?;
        FieldSpec::new(p, k, None)
    }

    fn build_tables(&mut self) {
        let n = self.n;
        if n == 2 {
            self.exp = vec![1];
            self.log = vec![0, 0];
            return;
        }
        let mut seen = vec![false; n as usize];
        for g in 2..n {
            let gd = self.digits(g);
            seen.iter_mut().for_each(|s| *s = false);
            let mut exp = Vec::with_capacity(n as usize - 1);
            let mut cur = 1u32;
            let mut ok = true;
            for _ in 0..n - 1 {
                if seen[cur as usize] {
                    ok = false;
                    break;
                }
                seen[cur as usize] = true;
                exp.push(cur);
                let prod = zp::mul(&self.digits(cur), &gd, self.p);
                cur = self.digits_to_index(&zp::rem(&prod, &self.modulus, self.p));
            }
            if ok && cur == 1 {
                let mut log = vec![0u32; n as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = Vec::with_capacity(self.k as usize);
        for _ in 0..self.k {
            d.push(a % self.p);
            a /= self.p;
        }
        zp::trim(&mut d);
        d
    }

    fn digits_to_index(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element behind the log tables.
    pub fn primitive_element(&self) -> FieldElement {
        FieldElement(self.exp.get(1).copied().unwrap_or(1))
    }

    pub fn element(&self, index: u32) -> Result<FieldElement, FieldError> {
        if index < self.n {
            Ok(FieldElement(index))
        } else {
            Err(FieldError::OutOfRange {
                index,
                order: self.n,
            })
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.n).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.n && b.0 < self.n);
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.k == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0;
        let mut place = 1;
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0;
        let mut place = 1;
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.n && b.0 < self.n);
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let m = self.n - 1;
        let e = (self.log[a.0 as usize] + self.log[b.0 as usize]) % m;
        FieldElement(self.exp[e as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let m = self.n - 1;
        let e = (m - self.log[a.0 as usize]) % m;
        Ok(FieldElement(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e`, with `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        let m = (self.n - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (e % m)) % m) as usize])
    }

    /// `a^(p^i)`.
    pub fn frobenius(&self, a: FieldElement, i: u32) -> Result<FieldElement, FieldError> {
        if i >= self.k {
            return Err(FieldError::ExponentOutOfRange {
                exponent: i,
                degree: self.k,
            });
        }
        Ok(self.pow(a, (self.p as u64).pow(i)))
    }

    pub fn poly_add(&self, f: &FPoly, g: &FPoly) -> FPoly {
        let len = f.coeffs.len().max(g.coeffs.len());
        FPoly::new(
            (0..len)
                .map(|i| self.add(f.coeff(i), g.coeff(i)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, f: &FPoly, g: &FPoly) -> FPoly {
        let len = f.coeffs.len().max(g.coeffs.len());
        FPoly::new(
            (0..len)
                .map(|i| self.sub(f.coeff(i), g.coeff(i)))
                .collect(),
        )
    }

    pub fn eval(&self, f: &FPoly, x: FieldElement) -> FieldElement {
        f.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(FieldElement::ZERO, |acc, (j, &c)| {
                self.add(acc, self.mul(c, self.pow(x, j as u64)))
            })
    }

    /// Number of roots of `f` in the field, by evaluating at every element.
    /// Costs O(n * nonzero terms).
    pub fn count_roots(&self, f: &FPoly) -> Result<usize, FieldError> {
        if f.is_zero() {
            return Err(FieldError::ZeroPolynomial);
        }
        Ok(self.elements().filter(|&x| self.eval(f, x).is_zero()).count())
    }
}

fn smallest_irreducible(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for m in 0..count {
        // c0 is the most significant digit so that ascending m walks the
        // coefficient tuples in lexicographic order, constant term first.
        let mut coeffs = vec![0u32; k as usize + 1];
        let mut x = m;
        for j in (0..k as usize).rev() {
            coeffs[j] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[k as usize] = 1;
        if zp::is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(i: u32) -> FieldElement {
        FieldElement(i)
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn gf4_modulus_is_the_only_irreducible_quadratic() {
        // brute force: x^2+ax+b is irreducible iff it has no root in GF(2)
        let irreducible: Vec<(u32, u32)> = (0..2)
            .flat_map(|b| (0..2).map(move |a| (b, a)))
            .filter(|&(b, a)| (0..2).all(|x| (x * x + a * x + b) % 2 != 0))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f = FieldSpec::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(FieldSpec::new(4, 1, None), Err(FieldError::NotPrime(4)));
        assert!(matches!(
            FieldSpec::new(2, 2, Some(&[1, 0, 1])),
            Err(FieldError::Reducible(_))
        ));
        assert!(matches!(
            FieldSpec::new(2, 3, Some(&[1, 1, 1])),
            Err(FieldError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            FieldSpec::from_order(12),
            Err(FieldError::NotPrimePower(12))
        ));
    }

    #[test]
    fn gf4_arithmetic() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, a), FieldElement::ZERO);
        }
        assert_eq!(f.mul(fe(2), fe(3)), fe(1));
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
        assert_eq!(f.frobenius(fe(2), 1).unwrap(), fe(3));
    }

    #[test]
    fn gf5_inverse_and_errors() {
        let f = FieldSpec::new(5, 1, None).unwrap();
        assert_eq!(f.inv(fe(2)).unwrap(), fe(3));
        assert_eq!(f.inv(FieldElement::ZERO), Err(FieldError::DivisionByZero));
        assert!(matches!(
            f.frobenius(fe(2), 1),
            Err(FieldError::ExponentOutOfRange { .. })
        ));
    }

    #[test]
    fn frobenius_composition_in_gf8() {
        let f = FieldSpec::from_order(8).unwrap();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0).unwrap(), a);
            let twice = f.frobenius(f.frobenius(a, 1).unwrap(), 1).unwrap();
            assert_eq!(twice, f.frobenius(a, 2).unwrap());
        }
    }

    #[test]
    fn root_counts_in_gf4() {
        let f = FieldSpec::new(2, 2, None).unwrap();
        // in characteristic 2, -x = x
        assert_eq!(f.count_roots(&FPoly::from_indices(&[0, 1, 1])).unwrap(), 2);
        assert_eq!(
            f.count_roots(&FPoly::from_indices(&[0, 1, 0, 0, 1])).unwrap(),
            4
        );
        assert_eq!(f.count_roots(&FPoly::from_indices(&[1, 1, 1])).unwrap(), 2);
        assert_eq!(
            f.count_roots(&FPoly::zero()),
            Err(FieldError::ZeroPolynomial)
        );
    }

    #[test]
    fn display_round_trips() {
        let f = FieldSpec::from_order(8).unwrap();
        assert_eq!(f.to_string(), "GF(2^3)/modulus=1,0,1,1");
        assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
        assert!("GF(2^3)/modulus=1,1,1,1".parse::<FieldSpec>().is_err());
    }

    fn small_fields() -> Vec<FieldSpec> {
        [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64]
            .iter()
            .map(|&q| FieldSpec::from_order(q).unwrap())
            .collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for f in small_fields() {
            let els: Vec<_> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, FieldElement::ZERO), a);
                assert_eq!(f.mul(a, FieldElement::ONE), a);
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                }
            }
            // triples are n^3; sample a stride for the larger fields
            let step = if f.order() > 16 { 7 } else { 1 };
            for &a in els.iter().step_by(step) {
                for &b in &els {
                    for &c in els.iter().step_by(step) {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(
                            f.mul(a, f.add(b, c)),
                            f.add(f.mul(a, b), f.mul(a, c))
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_matches_polynomial_reduction() {
        // independent route: schoolbook product reduced by the modulus
        for f in small_fields() {
            let p = f.characteristic();
            for a in f.elements() {
                for b in f.elements() {
                    let prod = zp::mul(&f.digits(a.0), &f.digits(b.0), p);
                    let expect = f.digits_to_index(&zp::rem(&prod, f.modulus(), p));
                    assert_eq!(f.mul(a, b).0, expect);
                }
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        for f in small_fields() {
            for i in 0..f.degree() {
                let mut seen = vec![false; f.order() as usize];
                for a in f.elements() {
                    let fa = f.frobenius(a, i).unwrap();
                    assert!(!seen[fa.0 as usize]);
                    seen[fa.0 as usize] = true;
                    for b in f.elements() {
                        let fb = f.frobenius(b, i).unwrap();
                        assert_eq!(f.frobenius(f.add(a, b), i).unwrap(), f.add(fa, fb));
                        assert_eq!(f.frobenius(f.mul(a, b), i).unwrap(), f.mul(fa, fb));
                    }
                }
            }
        }
    }
}
