//! Exact scalars: rational functions over ℚ(i) in named formal parameters.
//!
//! Every [`Scalar`] is kept in reduced form: numerator and denominator share
//! no nonunit factor and the denominator is monic under graded-lex order.
//! Structural equality is therefore equality of rational functions.

mod gauss;
mod parse;
mod poly;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use gauss::{rational_sqrt, GaussRational};
pub use parse::ParseScalarError;
pub use poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter `{param}` may not take the value {value}")]
    ConstraintViolation { param: String, value: String },
    #[error("denominator vanishes under the substitution")]
    DenominatorVanishes,
}

/// Exact element of ℚ(i)(c₁, …, c_m).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Self {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        Self::constant(GaussRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussRational::from_ratio(num, den))
    }

    pub fn constant(c: GaussRational) -> Self {
        Self {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The formal parameter `name`.
    pub fn param(name: &str) -> Self {
        Self {
            num: Poly::var(name),
            den: Poly::one(),
        }
    }

    pub fn from_poly(p: Poly) -> Self {
        Self {
            num: p,
            den: Poly::one(),
        }
    }

    /// Builds `num / den` and reduces it.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if let Some(k) = den.as_constant() {
            if k.is_one() {
                return Self { num, den };
            }
            return Self {
                num: num.scale(&k.inv().unwrap()),
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Self { num, den }
        } else {
            let k = lc.inv().unwrap();
            Self {
                num: num.scale(&k),
                den: den.scale(&k),
            }
        }
    }

    /// `num / den` for coprime parts: only the denominator is made monic.
    fn coprime(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let lc = den.leading_coefficient();
        if lc.is_one() {
            Self { num, den }
        } else {
            let k = lc.inv().expect("nonzero denominator");
            Self {
                num: num.scale(&k),
                den: den.scale(&k),
            }
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// True when no formal parameter occurs.
    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<GaussRational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// Parameter names occurring in the value, sorted.
    pub fn params(&self) -> BTreeSet<String> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    pub fn inv(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if let Some(k) = self.as_constant() {
            return Ok(Self::constant(k.inv().unwrap()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Self, ScalarError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Substitutes constants for parameters, honoring `constraints`.
    pub fn substitute(
        &self,
        bindings: &BTreeMap<String, Scalar>,
        constraints: &[ParameterConstraint],
    ) -> Result<Self, ScalarError> {
        for c in constraints {
            if let Some(v) = bindings.get(&c.param) {
                if c.excluded.contains(v) {
                    return Err(ScalarError::ConstraintViolation {
                        param: c.param.clone(),
                        value: v.to_text(),
                    });
                }
            }
        }
        let mut constant_bindings = BTreeMap::new();
        let mut symbolic = Vec::new();
        for (k, v) in bindings {
            match v.as_constant() {
                Some(c) => {
                    constant_bindings.insert(k.clone(), c);
                }
                None => symbolic.push((k, v)),
            }
        }
        let mut num = Scalar::from_poly(self.num.substitute(&constant_bindings));
        let mut den = Scalar::from_poly(self.den.substitute(&constant_bindings));
        if !symbolic.is_empty() {
            num = num.compose(&symbolic);
            den = den.compose(&symbolic);
        }
        if den.is_zero() {
            return Err(ScalarError::DenominatorVanishes);
        }
        Ok(&num / &den)
    }

    /// Substitution by rational functions (polynomial numerator only).
    fn compose(&self, bindings: &[(&String, &Scalar)]) -> Scalar {
        let mut out = Scalar::zero();
        for (m, c) in self.num.terms() {
            let mut t = Scalar::constant(c.clone());
            for (v, e) in m.factors() {
                let base = bindings
                    .iter()
                    .find(|(k, _)| *k == v)
                    .map(|(_, s)| (*s).clone())
                    .unwrap_or_else(|| Scalar::param(v));
                t = &t * &base.pow(*e);
            }
            out = &out + &t;
        }
        out
    }

    pub fn rename_params(&self, map: &BTreeMap<String, String>) -> Scalar {
        Self::reduced(self.num.rename(map), self.den.rename(map))
    }

    /// Rendering in the textual scalar grammar.
    pub fn to_text(&self) -> String {
        if self.den.is_one() {
            return self.num.to_text();
        }
        let num = if self.num.num_terms() == 1
            && self
                .num
                .leading()
                .is_some_and(|(_, c)| c.is_single_part())
        {
            self.num.to_text()
        } else {
            format!("({})", self.num.to_text())
        };
        let den_simple = self.den.num_terms() == 1
            && self
                .den
                .leading()
                .is_some_and(|(m, _)| m.factors().len() == 1 && m.degree() == 1);
        let den = if den_simple {
            self.den.to_text()
        } else {
            format!("({})", self.den.to_text())
        };
        format!("{num}/{den}")
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<GaussRational> for Scalar {
    fn from(c: GaussRational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return Scalar {
                    num: self.num.add(&rhs.num),
                    den: Poly::one(),
                };
            }
            return Scalar::reduced(self.num.add(&rhs.num), self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only a factor of g can cancel.
        let g = self.den.gcd(&rhs.den);
        if g.is_one() {
            return Scalar::coprime(
                self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
                self.den.mul(&rhs.den),
            );
        }
        let b = self.den.div_exact(&g).expect("gcd divides");
        let d = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d).add(&rhs.num.mul(&b));
        if num.is_zero() {
            return Scalar::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_one() {
            (num, g)
        } else {
            (
                num.div_exact(&h).expect("gcd divides"),
                g.div_exact(&h).expect("gcd divides"),
            )
        };
        Scalar::coprime(num, b.mul(&d).mul(&g))
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return Scalar {
                num: self.num.mul(&rhs.num),
                den: Poly::one(),
            };
        }
        // both factors reduced: cancel across only
        let cross = |n: &Poly, d: &Poly| {
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (
                    n.div_exact(&g).expect("gcd divides"),
                    d.div_exact(&g).expect("gcd divides"),
                )
            }
        };
        let (a, d) = cross(&self.num, &rhs.den);
        let (c, b) = cross(&rhs.num, &self.den);
        Scalar::coprime(a.mul(&c), b.mul(&d))
    }
}

/// Panics on division by zero; use [`Scalar::checked_div`] when the divisor
/// may vanish.
impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &'a Scalar) -> Scalar {
        self.checked_div(rhs).expect("scalar division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Scalar {
    type Err = ParseScalarError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Values a named parameter may not take.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParameterConstraint {
    pub param: String,
    pub excluded: Vec<Scalar>,
}

impl ParameterConstraint {
    pub fn new(param: impl Into<String>, excluded: Vec<Scalar>) -> Self {
        Self {
            param: param.into(),
            excluded,
        }
    }

    /// The `c ≠ ±1` constraint carried by every B-block parameter.
    pub fn not_plus_minus_one(param: impl Into<String>) -> Self {
        Self::new(param, vec![Scalar::one(), Scalar::from_int(-1)])
    }

    /// The `α ≠ 0` constraint.
    pub fn nonzero(param: impl Into<String>) -> Self {
        Self::new(param, vec![Scalar::zero()])
    }
}
