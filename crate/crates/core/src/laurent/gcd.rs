//! Greatest common divisors in `Z[s^{±1}, t^{±1}]`.
//!
//! Inputs are shifted into `Z[s, t]` and viewed as polynomials in `t` with
//! coefficients in `Z[s]`. The gcd is the product of the `Z[s]`-content gcd
//! and the gcd of primitive parts, found with a primitive pseudo-remainder
//! sequence. `Z[s]` gcds use the same scheme one level down, over `Z`.
//! Intermediate coefficients grow far past the inputs, so the sequences run
//! over big integers; the result divides the inputs and fits back in `Coeff`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use super::poly::{Coeff, LaurentPoly, UnitClass};

/// Dense polynomial over `Z`, index = degree, no trailing zeros.
type UPoly = Vec<BigInt>;

/// Dense polynomial in `t` over `Z[s]`, index = t-degree, no trailing zeros.
type BPoly = Vec<UPoly>;

fn u_trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn u_deg(p: &UPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

fn u_add(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let out = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero))
        .collect();
    u_trim(out)
}

fn u_neg(a: &UPoly) -> UPoly {
    a.iter().map(|c| -c).collect()
}

fn u_sub(a: &UPoly, b: &UPoly) -> UPoly {
    u_add(a, &u_neg(b))
}

fn u_mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    u_trim(out)
}

fn u_scale(a: &UPoly, k: &BigInt) -> UPoly {
    u_trim(a.iter().map(|c| c * k).collect())
}

fn u_content(a: &UPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Exact division over `Z`; `None` when the quotient is not integral.
fn u_exact_div(a: &UPoly, b: &UPoly) -> Option<UPoly> {
    let db = u_deg(b)?;
    if a.is_empty() {
        return Some(Vec::new());
    }
    let da = u_deg(a)?;
    if da < db {
        return None;
    }
    let lb = &b[db];
    let mut rem = a.clone();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        let (f, m) = c.div_rem(lb);
        if !m.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k + j] -= &f * bj;
        }
        q[k] = f;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(u_trim(q))
}

/// Primitive part of the pseudo-remainder of `a` by `b` over `Z`.
fn u_prem(a: &UPoly, b: &UPoly) -> UPoly {
    let db = u_deg(b).expect("prem by zero");
    let mut r = a.clone();
    let lb = &b[db];
    while let Some(dr) = u_deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let mut next = u_scale(&r, lb);
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] -= &lr * bj;
        }
        // only the primitive part of the remainder is used downstream
        r = u_primitive(&u_trim(next));
    }
    r
}

fn u_primitive(a: &UPoly) -> UPoly {
    let c = u_content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if a.last().unwrap().is_negative() { -c } else { c };
    a.iter().map(|x| x / &c).collect()
}

/// gcd over `Z[x]` with positive leading coefficient.
fn u_gcd(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() {
        return u_normalize(b);
    }
    if b.is_empty() {
        return u_normalize(a);
    }
    let c = u_content(a).gcd(&u_content(b));
    let (mut x, mut y) = (u_primitive(a), u_primitive(b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = u_prem(&x, &y);
        x = y;
        y = u_primitive(&r);
    }
    u_scale(&u_primitive(&x), &c)
}

fn u_normalize(a: &UPoly) -> UPoly {
    match a.last() {
        Some(l) if l.is_negative() => u_neg(a),
        _ => a.clone(),
    }
}

fn b_trim(mut p: BPoly) -> BPoly {
    while p.last().is_some_and(|c| c.is_empty()) {
        p.pop();
    }
    p
}

fn b_deg(p: &BPoly) -> Option<usize> {
    p.len().checked_sub(1)
}

/// `Z[s]`-content: gcd of all t-coefficients.
fn b_content(a: &BPoly) -> UPoly {
    a.iter().fold(Vec::new(), |g, c| u_gcd(&g, c))
}

fn b_div_content(a: &BPoly, c: &UPoly) -> BPoly {
    a.iter()
        .map(|x| u_exact_div(x, c).expect("content divides every coefficient"))
        .collect()
}

fn b_primitive(a: &BPoly) -> BPoly {
    if a.is_empty() {
        return Vec::new();
    }
    let c = b_content(a);
    let mut p = b_div_content(a, &c);
    // sign fixed by the leading coefficient of the leading coefficient
    if p.last().and_then(|l| l.last()).is_some_and(Signed::is_negative) {
        p = p.iter().map(u_neg).collect();
    }
    p
}

/// Primitive part of the pseudo-remainder in `t` over `Z[s]`.
fn b_prem(a: &BPoly, b: &BPoly) -> BPoly {
    let db = b_deg(b).expect("prem by zero");
    let lb = &b[db];
    let mut r = a.clone();
    while let Some(dr) = b_deg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let mut next: BPoly = r.iter().map(|c| u_mul(c, lb)).collect();
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            next[j + shift] = u_sub(&next[j + shift], &u_mul(&lr, bj));
        }
        r = b_primitive(&b_trim(next));
    }
    r
}

fn to_dense(p: &LaurentPoly) -> BPoly {
    let (s_lo, s_hi, t_lo, t_hi) = match p.exponent_box() {
        Some(b) => b,
        None => return Vec::new(),
    };
    let mut out: BPoly =
        vec![vec![BigInt::zero(); (s_hi - s_lo + 1) as usize]; (t_hi - t_lo + 1) as usize];
    for &((es, et), c) in p.terms() {
        out[(et - t_lo) as usize][(es - s_lo) as usize] = BigInt::from(c);
    }
    out.into_iter().map(u_trim).collect()
}

fn from_dense(p: &BPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.iter().enumerate().flat_map(|(et, row)| {
        row.iter().enumerate().map(move |(es, c)| {
            let c: Coeff = c.to_i128().expect("a divisor of the inputs fits in a coefficient");
            ((es as i32, et as i32), c)
        })
    }))
}

/// gcd in `Z[s^{±1}, t^{±1}]`, normalized up to `±s^a t^b`. `gcd(0, 0) = 0`.
pub fn gcd(p: &LaurentPoly, q: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return q.canonicalize(UnitClass::UpToMonomialSign).poly;
    }
    if q.is_zero() {
        return p.canonicalize(UnitClass::UpToMonomialSign).poly;
    }
    let (a, b) = (to_dense(p), to_dense(q));
    let content = u_gcd(&b_content(&a), &b_content(&b));
    let (mut x, mut y) = (b_primitive(&a), b_primitive(&b));
    if x.len() < y.len() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = b_prem(&x, &y);
        x = y;
        y = b_primitive(&r);
    }
    let g: BPoly = b_primitive(&x).iter().map(|c| u_mul(c, &content)).collect();
    from_dense(&g).canonicalize(UnitClass::UpToMonomialSign).poly
}

/// gcd of a list; zero for the empty list.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a LaurentPoly>>(items: I) -> LaurentPoly {
    let mut g = LaurentPoly::zero();
    for p in items {
        if g.is_unit() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s() -> LaurentPoly {
        LaurentPoly::s()
    }
    fn t() -> LaurentPoly {
        LaurentPoly::t()
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn gcd_with_zero() {
        let p = LaurentPoly::monomial(-2, -3, 1) * (&one() - &t());
        assert_eq!(gcd(&p, &LaurentPoly::zero()), p.canonicalize(UnitClass::UpToMonomialSign).poly);
        assert!(gcd(&LaurentPoly::zero(), &LaurentPoly::zero()).is_zero());
    }

    #[test]
    fn gcd_shared_linear_factor() {
        let a = (&one() - &s()) * (&one() - &t());
        let st = &s() * &t();
        let b = (&one() - &s()) * (&one() - &st);
        let g = gcd(&a, &b);
        assert!(g.equivalent(&(&one() - &s()), UnitClass::UpToMonomialSign));
        assert!(a.exact_div(&g).is_ok());
        assert!(b.exact_div(&g).is_ok());
    }

    #[test]
    fn gcd_integer_content() {
        let f = &one() - &t();
        let g = gcd(&f.scale(6), &f.scale(4));
        assert!(g.equivalent(&f.scale(2), UnitClass::UpToMonomialSign));
    }

    #[test]
    fn gcd_coprime_is_unit() {
        let a = &s() - &one();
        let b = &t() - &one();
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_of_s_only_polys() {
        let a = (&one() - &s()) * (&one() + &s());
        let b = (&one() - &s()).scale(3);
        assert!(gcd(&a, &b).equivalent(&(&one() - &s()), UnitClass::UpToMonomialSign));
    }

    #[test]
    fn univariate_helpers() {
        let u = |c: &[i64]| c.iter().map(|&x| BigInt::from(x)).collect::<UPoly>();
        assert_eq!(u_gcd(&u(&[-1, 0, 1]), &u(&[2, -2])), u(&[-1, 1]));
        assert_eq!(u_exact_div(&u(&[-1, 0, 1]), &u(&[-1, 1])), Some(u(&[1, 1])));
        assert_eq!(u_exact_div(&u(&[1, 0, 1]), &u(&[-1, 1])), None);
    }

    #[test]
    fn intermediate_growth_does_not_overflow() {
        let a = LaurentPoly::from_terms([((0, -1), 1), ((0, 2), -1), ((1, 1), 3)]);
        let b = LaurentPoly::from_terms([((-1, -3), -3), ((2, 1), 1)]);
        assert!(gcd(&a, &b).is_one());
    }
}
