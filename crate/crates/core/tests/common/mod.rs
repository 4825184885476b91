#![allow(dead_code)]

use valex::LaurentPoly;

pub const TREFOIL: &str = "O1+U2+O3+U1+O2+U3+";
pub const VIRTUAL_TREFOIL: &str = "O1+O2+U1+U2+";
pub const KNOT_4_12: &str = "O1-O2-U1-O3+U2-O4+U3+U4+";

pub fn s() -> LaurentPoly {
    LaurentPoly::s()
}

pub fn t() -> LaurentPoly {
    LaurentPoly::t()
}

pub fn one() -> LaurentPoly {
    LaurentPoly::one()
}

/// `1 - x`
pub fn om(x: &LaurentPoly) -> LaurentPoly {
    &one() - x
}

pub fn st() -> LaurentPoly {
    &s() * &t()
}

pub fn pw(x: &LaurentPoly, k: i32) -> LaurentPoly {
    x.pow(k).unwrap()
}

pub fn prod(factors: &[LaurentPoly]) -> LaurentPoly {
    factors.iter().cloned().product()
}

/// Census rows (name, Gauss code, Δ⁰), compared up to ±s^a t^b.
pub fn census_rows() -> Vec<(&'static str, &'static str, LaurentPoly)> {
    let a = om(&t());
    let b = om(&s());
    let c = om(&st());
    let ab3 = prod(&[a.clone(), b.clone(), pw(&c, 3)]);
    let sq3 = prod(&[om(&pw(&t(), 2)), om(&pw(&s(), 2)), pw(&c, 3)]);
    let zero = LaurentPoly::zero();
    vec![
        ("4.12", KNOT_4_12, prod(&[a.clone(), b.clone(), &t() - &s(), pw(&c, 2)])),
        ("5.93", "O1-O2-U1-U2-U3+O4+O3+U5+U4+O5+", -ab3.clone()),
        ("5.114", "O1-O2-U1-U2-U3+U4-O3+U5+O4-O5+", zero.clone()),
        ("5.212", "O1-O2-U1-O3-U2-O4+U5+U3-O5+U4+", ab3.clone()),
        ("5.344", "O1-O2+U1-O3-U2+U4+O5+O4+U5+U3-", -prod(&[om(&pw(&s(), 2)), pw(&a, 2), pw(&c, 2)])),
        ("5.919", "O1-O2-U1-O3+U4+U2-O5+U3+O4+U5+", ab3.clone()),
        ("5.1034", "O1-O2+U1-O3-U4+U3-O5-U2+O4+U5-", -ab3.clone()),
        ("5.1216", "O1-O2+U1-O3-U4+O5-O4+U2+U5-U3-", zero.clone()),
        ("5.1963", "O1-O2-O3-U1-U2-U4+O5+U3-O4+U5+", zero),
        ("5.2351", "O1-O2-U3+O4+U1-U2-O5-U4+O3+U5-", -ab3),
        ("5.2430", "O1-U2-O3+U1-O2-U4-O5+U3+O4-U5+", -sq3.clone()),
        ("5.2435", "O1-U2-O3-U1-O4+U3-O5+U4+O2-U5+", -sq3),
    ]
}

pub fn census_path() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/small.census")
}
