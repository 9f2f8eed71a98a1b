//! Laurent polynomials in one variable `A` with exact `i64` coefficients.
//!
//! Arithmetic is checked: any coefficient overflow is reported as
//! [`Error::Overflow`] instead of wrapping.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Canonical form: no stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from `(coeff, exp)` terms, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i64, i32)>>(terms: I) -> Result<Self> {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Terms as `(exp, coeff)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    fn add_term(&mut self, c: i64, e: i32) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let slot = self.coeffs.entry(e).or_insert(0);
        *slot = slot.checked_add(c).ok_or(Error::Overflow)?;
        if *slot == 0 {
            self.coeffs.remove(&e);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(c, e)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(c.checked_neg().ok_or(Error::Overflow)?, e)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                let c = c1.checked_mul(c2).ok_or(Error::Overflow)?;
                let e = e1.checked_add(e2).ok_or(Error::Overflow)?;
                out.add_term(c, e)?;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        self.mul(&Self::monomial(k, 0))
    }

    /// Multiplies by `A^shift`.
    pub fn shift(&self, shift: i32) -> Result<Self> {
        let mut out = Self::zero();
        for (e, c) in self.terms() {
            out.add_term(c, e.checked_add(shift).ok_or(Error::Overflow)?)?;
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Result<Self> {
        let mut out = Self::one();
        for _ in 0..n {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Sends every exponent `e` to `-e`.
    pub fn substitute_mirror(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect(),
        }
    }

    /// Renders in the variable `t = A^-4`. Exponents not divisible by 4 are
    /// shown as fractions of `t`.
    pub fn to_t_string(&self) -> String {
        let mut terms: Vec<(i32, i64)> = self.terms().map(|(e, c)| (-e, c)).collect();
        terms.sort();
        let rendered: Vec<(i64, String)> = terms
            .into_iter()
            .map(|(e4, c)| {
                let exp = if e4 % 4 == 0 {
                    (e4 / 4).to_string()
                } else {
                    let g = gcd(e4.unsigned_abs(), 4) as i32;
                    format!("({}/{})", e4 / g, 4 / g)
                };
                (c, format!("t^{exp}"))
            })
            .collect();
        join_terms(&rendered)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn join_terms(terms: &[(i64, String)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (c, var)) in terms.iter().enumerate() {
        if k == 0 {
            if *c < 0 {
                out.push('-');
            }
        } else if *c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&format!("{}*{}", c.unsigned_abs(), var));
    }
    out
}

impl fmt::Display for LaurentPoly {
    /// Sorted sum `c*A^e + ...`, increasing exponents, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i64, String)> = self.terms().map(|(e, c)| (c, format!("A^{e}"))).collect();
        f.write_str(&join_terms(&terms))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Accepts the output of `Display`, plus loose spacing, `A`, `A^-2`,
    /// bare constants and implicit unit coefficients.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::PolyParse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        // split into signed chunks, keeping the '-' of exponents intact
        let bytes = compact.as_bytes();
        let mut chunks = Vec::new();
        let mut start = 0;
        for k in 1..bytes.len() {
            if (bytes[k] == b'+' || bytes[k] == b'-') && bytes[k - 1] != b'^' {
                chunks.push(&compact[start..k]);
                start = k;
            }
        }
        chunks.push(&compact[start..]);
        let mut p = Self::zero();
        for chunk in chunks {
            let (sign, body) = match chunk.as_bytes()[0] {
                b'+' => (1i64, &chunk[1..]),
                b'-' => (-1i64, &chunk[1..]),
                _ => (1i64, chunk),
            };
            if body.is_empty() {
                return Err(bad());
            }
            let (coeff_str, var) = match body.find('A') {
                Some(pos) => (body[..pos].trim_end_matches('*'), Some(&body[pos + 1..])),
                None => (body, None),
            };
            let coeff: i64 = if coeff_str.is_empty() {
                1
            } else {
                coeff_str.parse().map_err(|_| bad())?
            };
            let exp: i32 = match var {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse()
                    .map_err(|_| bad())?,
            };
            p.add_term(sign * coeff, exp)?;
        }
        Ok(p)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
