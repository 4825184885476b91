use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::LaurentError;

/// Coefficient ring. Arithmetic is checked; overflow aborts instead of
/// wrapping, so every value that is returned is exact.
pub type Coeff = i128;

/// Exponent pair `(e_s, e_t)`. Ordered lexicographically.
pub type Exp = (i32, i32);

pub(crate) fn cadd(a: Coeff, b: Coeff) -> Coeff {
    a.checked_add(b).expect("coefficient overflow in addition")
}

pub(crate) fn cmul(a: Coeff, b: Coeff) -> Coeff {
    a.checked_mul(b).expect("coefficient overflow in multiplication")
}

/// An element of `Z[s^{±1}, t^{±1}]`.
///
/// Terms are kept sorted by exponent (lexicographic on `(e_s, e_t)`) and no
/// stored coefficient is zero, so structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LaurentPoly {
    terms: Vec<(Exp, Coeff)>,
}

/// Which units a canonical representative absorbs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum UnitClass {
    /// Up to `±s^a t^b`.
    #[default]
    UpToMonomialSign,
    /// Up to `(st)^k`.
    UpToPowersOfST,
    /// No normalization.
    Exact,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalForm {
    pub poly: LaurentPoly,
    pub unit_class: UnitClass,
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Coeff, es: i32, et: i32) -> Self {
        if c == 0 {
            Self::zero()
        } else {
            Self { terms: vec![((es, et), c)] }
        }
    }

    /// The variable `s`.
    pub fn s() -> Self {
        Self::monomial(1, 1, 0)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Exp, Coeff)>>(terms: I) -> Self {
        let mut v: Vec<(Exp, Coeff)> = terms.into_iter().collect();
        v.sort_unstable_by_key(|a| a.0);
        let mut out: Vec<(Exp, Coeff)> = Vec::with_capacity(v.len());
        for (e, c) in v {
            match out.last_mut() {
                Some((le, lc)) if *le == e => *lc = cadd(*lc, c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|&(_, c)| c != 0);
        Self { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0] == ((0, 0), 1)
    }

    /// True for `±s^a t^b`, the units of the ring.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.abs() == 1
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> &[(Exp, Coeff)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, es: i32, et: i32) -> Coeff {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&(es, et)))
            .map(|i| self.terms[i].1)
            .unwrap_or(0)
    }

    /// Lexicographically smallest term.
    pub fn low_term(&self) -> Option<(Exp, Coeff)> {
        self.terms.first().copied()
    }

    /// Lexicographically largest term.
    pub fn lead_term(&self) -> Option<(Exp, Coeff)> {
        self.terms.last().copied()
    }

    /// `(min e_s, max e_s, min e_t, max e_t)`; `None` for zero.
    pub fn exponent_box(&self) -> Option<(i32, i32, i32, i32)> {
        let first = self.terms.first()?;
        let mut b = (first.0 .0, first.0 .0, first.0 .1, first.0 .1);
        for &((es, et), _) in &self.terms {
            b.0 = b.0.min(es);
            b.1 = b.1.max(es);
            b.2 = b.2.min(et);
            b.3 = b.3.max(et);
        }
        Some(b)
    }

    /// True when no `s` appears.
    pub fn is_t_only(&self) -> bool {
        self.terms.iter().all(|((es, _), _)| *es == 0)
    }

    /// Multiplies by `s^ds t^dt`.
    pub fn shift(&self, ds: i32, dt: i32) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|&((es, et), c)| ((es + ds, et + dt), c))
                .collect(),
        }
    }

    pub fn scale(&self, k: Coeff) -> Self {
        if k == 0 {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|&(e, c)| (e, cmul(c, k))).collect(),
        }
    }

    /// Integer content (gcd of coefficients, non-negative).
    pub fn content(&self) -> Coeff {
        self.terms.iter().fold(0, |g, &(_, c)| int_gcd(g, c))
    }

    /// `self^k` for `k >= 0`; negative powers are defined for monomials only.
    pub fn pow(&self, k: i32) -> Result<Self, LaurentError> {
        if k < 0 {
            let inv = self.monomial_inverse().ok_or(LaurentError::NotInvertible)?;
            return inv.pow(-k);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = k as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Inverse of `±s^a t^b`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        if self.is_unit() {
            let ((es, et), c) = self.terms[0];
            Some(Self::monomial(c, -es, -et))
        } else {
            None
        }
    }

    /// Exact quotient `self / q`.
    ///
    /// Lex-leading terms of the quotient are peeled off one at a time. Every
    /// quotient exponent must lie in the box spanned by the s- and t-orders of
    /// the operands (orders are additive in a domain), which bounds the loop.
    pub fn exact_div(&self, q: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        if q.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if q.is_monomial() {
            let ((qs, qt), qc) = q.terms[0];
            let mut out = Vec::with_capacity(self.terms.len());
            for &((es, et), c) in &self.terms {
                if c % qc != 0 {
                    return Err(LaurentError::NotDivisible);
                }
                out.push(((es - qs, et - qt), c / qc));
            }
            return Ok(Self { terms: out });
        }
        let (ps_lo, ps_hi, pt_lo, pt_hi) = self.exponent_box().unwrap();
        let (qs_lo, qs_hi, qt_lo, qt_hi) = q.exponent_box().unwrap();
        let (s_lo, s_hi) = (ps_lo - qs_lo, ps_hi - qs_hi);
        let (t_lo, t_hi) = (pt_lo - qt_lo, pt_hi - qt_hi);
        if s_lo > s_hi || t_lo > t_hi {
            return Err(LaurentError::NotDivisible);
        }
        let ((lqs, lqt), lqc) = q.lead_term().unwrap();
        let mut rem = self.clone();
        let mut quot: Vec<(Exp, Coeff)> = Vec::new();
        while let Some(((rs, rt), rc)) = rem.lead_term() {
            let (es, et) = (rs - lqs, rt - lqt);
            if rc % lqc != 0 || es < s_lo || es > s_hi || et < t_lo || et > t_hi {
                return Err(LaurentError::NotDivisible);
            }
            let c = rc / lqc;
            quot.push(((es, et), c));
            rem = &rem - &q.shift(es, et).scale(c);
        }
        quot.reverse();
        Ok(Self { terms: quot })
    }

    /// Canonical representative of the unit orbit of `self`.
    pub fn canonicalize(&self, mode: UnitClass) -> CanonicalForm {
        let poly = match (mode, self.exponent_box()) {
            (_, None) | (UnitClass::Exact, _) => self.clone(),
            (UnitClass::UpToMonomialSign, Some((s_lo, _, t_lo, _))) => {
                let shifted = self.shift(-s_lo, -t_lo);
                if shifted.terms[0].1 < 0 {
                    -shifted
                } else {
                    shifted
                }
            }
            (UnitClass::UpToPowersOfST, Some((s_lo, _, _, _))) => self.shift(-s_lo, -s_lo),
        };
        CanonicalForm {
            poly,
            unit_class: mode,
        }
    }

    /// True when `self = u * other` for a unit `u` of the given class.
    pub fn equivalent(&self, other: &LaurentPoly, mode: UnitClass) -> bool {
        self.canonicalize(mode) == other.canonicalize(mode)
    }

    /// Exact evaluation at nonzero rational points.
    pub fn eval_at(
        &self,
        s_val: Ratio<Coeff>,
        t_val: Ratio<Coeff>,
    ) -> Result<Ratio<Coeff>, LaurentError> {
        if *s_val.numer() == 0 || *t_val.numer() == 0 {
            return Err(LaurentError::ZeroSubstitution);
        }
        let mut acc = Ratio::from_integer(0);
        for &((es, et), c) in &self.terms {
            acc += Ratio::from_integer(c) * rpow(s_val, es) * rpow(t_val, et);
        }
        Ok(acc)
    }

    /// Substitutes `s ↦ s_image`, `t ↦ t_image`. Negative powers require the
    /// corresponding image to be a unit.
    pub fn substitute(
        &self,
        s_image: &LaurentPoly,
        t_image: &LaurentPoly,
    ) -> Result<LaurentPoly, LaurentError> {
        let mut acc = Self::zero();
        for &((es, et), c) in &self.terms {
            let term = &s_image.pow(es)? * &t_image.pow(et)?;
            acc = &acc + &term.scale(c);
        }
        Ok(acc)
    }

    /// Merges two sorted term lists with a sign on the right operand.
    fn merge(&self, other: &LaurentPoly, negate: bool) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let bc = if negate { -b[j].1 } else { b[j].1 };
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((b[j].0, bc));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = cadd(a[i].1, bc);
                    if c != 0 {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|&(e, c)| (e, if negate { -c } else { c })));
        LaurentPoly { terms: out }
    }
}

fn rpow(x: Ratio<Coeff>, e: i32) -> Ratio<Coeff> {
    let base = if e >= 0 { x } else { x.recip() };
    (0..e.unsigned_abs()).fold(Ratio::from_integer(1), |acc, _| acc * base)
}

pub(crate) fn int_gcd(a: Coeff, b: Coeff) -> Coeff {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, false)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.merge(rhs, true)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        if rhs.is_monomial() {
            let ((s, t), c) = rhs.terms[0];
            return self.shift(s, t).scale(c);
        }
        if self.is_monomial() {
            return rhs * self;
        }
        let mut prods = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for &((as_, at), ac) in &self.terms {
            for &((bs, bt), bc) in &rhs.terms {
                prods.push(((as_ + bs, at + bt), cmul(ac, bc)));
            }
        }
        LaurentPoly::from_terms(prods)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|&(e, c)| (e, -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl From<Coeff> for LaurentPoly {
    fn from(c: Coeff) -> Self {
        LaurentPoly::constant(c)
    }
}

impl std::iter::Sum for LaurentPoly {
    fn sum<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::zero(), |a, b| &a + &b)
    }
}

impl std::iter::Product for LaurentPoly {
    fn product<I: Iterator<Item = LaurentPoly>>(iter: I) -> Self {
        iter.fold(LaurentPoly::one(), |a, b| &a * &b)
    }
}

fn write_var(f: &mut fmt::Formatter<'_>, name: &str, e: i32) -> fmt::Result {
    if e == 1 {
        write!(f, "{name}")
    } else {
        write!(f, "{name}^{e}")
    }
}

/// Renders terms in ascending `(e_s, e_t)` order as `c*s^a*t^b`, joined by
/// ` + ` / ` - `. Unit exponents and unit coefficients are omitted.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &((es, et), c)) in self.terms.iter().enumerate() {
            let mag = c.unsigned_abs();
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let mut need_star = false;
            if mag != 1 || (es == 0 && et == 0) {
                write!(f, "{mag}")?;
                need_star = true;
            }
            if es != 0 {
                if need_star {
                    write!(f, "*")?;
                }
                write_var(f, "s", es)?;
                need_star = true;
            }
            if et != 0 {
                if need_star {
                    write!(f, "*")?;
                }
                write_var(f, "t", et)?;
            }
        }
        Ok(())
    }
}

/// Reads the format written by `Display`: terms like `-3*s^2*t^-1` joined by
/// `+` and `-`, in any order and with optional whitespace.
impl std::str::FromStr for LaurentPoly {
    type Err = LaurentError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| LaurentError::Parse(format!("{msg} in {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad("empty input"));
        }
        // split before every sign that is not an exponent sign
        let mut pieces = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);
        let mut terms = Vec::with_capacity(pieces.len());
        for piece in pieces {
            let (neg, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let (mut c, mut es, mut et): (Coeff, i32, i32) = (1, 0, 0);
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<i32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                match base {
                    "s" => es += exp,
                    "t" => et += exp,
                    _ if factor.contains('^') => return Err(bad("exponent on a constant")),
                    _ => c = cmul(c, base.parse::<Coeff>().map_err(|_| bad("bad factor"))?),
                }
            }
            terms.push(((es, et), if neg { -c } else { c }));
        }
        Ok(Self::from_terms(terms))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}
