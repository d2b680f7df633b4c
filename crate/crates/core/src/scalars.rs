//! Exact coefficients: Gaussian rationals times monomials in a fixed set of
//! commuting formal parameters.
//!
//! Every residual the verifier reports is an exact multiple of a parameter
//! monomial such as `hbar^2`, so the symbolic path never touches floating
//! point. Floating values only enter through [`Bindings`] at evaluation time.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact complex rational `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gq {
    pub re: BigRational,
    pub im: BigRational,
}

impl Gq {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gq { re, im }
    }

    pub fn zero() -> Self {
        Gq::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        Gq::int(1)
    }

    pub fn i() -> Self {
        Gq::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Gq::new(
            BigRational::from_integer(BigInt::from(n)),
            BigRational::zero(),
        )
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Gq::new(
            BigRational::new(BigInt::from(n), BigInt::from(d)),
            BigRational::zero(),
        )
    }

    pub fn real(r: BigRational) -> Self {
        Gq::new(r, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Gq {
        Gq::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Gq> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gq::new(&self.re / &n, -(&self.im / &n)))
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }

    pub fn pow(&self, k: u32) -> Gq {
        let mut acc = Gq::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

pub(crate) fn rat_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
    })
}

impl From<i64> for Gq {
    fn from(n: i64) -> Self {
        Gq::int(n)
    }
}

impl Add for &Gq {
    type Output = Gq;
    fn add(self, o: &Gq) -> Gq {
        Gq::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl Sub for &Gq {
    type Output = Gq;
    fn sub(self, o: &Gq) -> Gq {
        Gq::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl Mul for &Gq {
    type Output = Gq;
    fn mul(self, o: &Gq) -> Gq {
        Gq::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}

impl Div for &Gq {
    type Output = Gq;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Gq) -> Gq {
        self * &o.inv().expect("division by zero Gaussian rational")
    }
}

impl Neg for &Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        Gq::new(-self.re.clone(), -self.im.clone())
    }
}

impl Add for Gq {
    type Output = Gq;
    fn add(self, o: Gq) -> Gq {
        &self + &o
    }
}

impl Sub for Gq {
    type Output = Gq;
    fn sub(self, o: Gq) -> Gq {
        &self - &o
    }
}

impl Mul for Gq {
    type Output = Gq;
    fn mul(self, o: Gq) -> Gq {
        &self * &o
    }
}

impl Neg for Gq {
    type Output = Gq;
    fn neg(self) -> Gq {
        -&self
    }
}

impl AddAssign<&Gq> for Gq {
    fn add_assign(&mut self, o: &Gq) {
        self.re += &o.re;
        self.im += &o.im;
    }
}

fn fmt_rat_abs(r: &BigRational) -> String {
    let a = r.abs();
    if a.is_integer() {
        a.numer().to_string()
    } else {
        format!("({}/{})", a.numer(), a.denom())
    }
}

fn fmt_rat_signed(r: &BigRational) -> String {
    let body = fmt_rat_abs(r);
    if r.is_negative() {
        format!("-{body}")
    } else {
        body
    }
}

/// Renders `coef * factors...` as a signed product, e.g. `-(1/3)*hbar^2`.
/// Returns the sign separately so sums can print ` - ` between terms.
pub(crate) fn format_term(coef: &Gq, factors: &[String]) -> (bool, String) {
    let mut parts: Vec<String> = Vec::new();
    let negative;
    if coef.is_real() {
        negative = coef.re.is_negative();
        if !(coef.re.abs().is_one() && !factors.is_empty()) {
            parts.push(fmt_rat_abs(&coef.re));
        }
    } else if coef.re.is_zero() {
        negative = coef.im.is_negative();
        if !coef.im.abs().is_one() {
            parts.push(fmt_rat_abs(&coef.im));
        }
        parts.push("i".to_string());
    } else {
        negative = false;
        let im_sign = if coef.im.is_negative() { " - " } else { " + " };
        let im_abs = coef.im.abs();
        let im = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}*i", fmt_rat_abs(&im_abs))
        };
        parts.push(format!("({}{}{})", fmt_rat_signed(&coef.re), im_sign, im));
    }
    parts.extend(factors.iter().cloned());
    (negative, parts.join("*"))
}

/// Joins signed terms into `a + b - c`; empty input prints `0`.
pub(crate) fn join_terms(terms: impl IntoIterator<Item = (bool, String)>) -> String {
    let mut out = String::new();
    for (k, (neg, body)) in terms.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (0, false) => out.push_str(&body),
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for Gq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (neg, body) = format_term(self, &[]);
        if neg {
            write!(f, "-{body}")
        } else {
            write!(f, "{body}")
        }
    }
}

/// The closed set of formal parameters.
///
/// `pi` is carried formally so that torus brackets stay exact.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Param {
    Hbar,
    S,
    A,
    C,
    B,
    E,
    Nu,
    Eta,
    Pi,
}

pub const PARAM_COUNT: usize = 9;

impl Param {
    pub const ALL: [Param; PARAM_COUNT] = [
        Param::Hbar,
        Param::S,
        Param::A,
        Param::C,
        Param::B,
        Param::E,
        Param::Nu,
        Param::Eta,
        Param::Pi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Param::Hbar => "hbar",
            Param::S => "s",
            Param::A => "a",
            Param::C => "c",
            Param::B => "b",
            Param::E => "e",
            Param::Nu => "nu",
            Param::Eta => "eta",
            Param::Pi => "pi",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl FromStr for Param {
    type Err = Error;
    fn from_str(s: &str) -> Result<Param> {
        Param::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownParameter(s.to_string()))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Param::ALL`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamMono(pub [u32; PARAM_COUNT]);

impl ParamMono {
    pub fn one() -> Self {
        ParamMono::default()
    }

    pub fn of(p: Param, k: u32) -> Self {
        let mut m = ParamMono::default();
        m.0[p.index()] = k;
        m
    }

    pub fn exp(&self, p: Param) -> u32 {
        self.0[p.index()]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &ParamMono) -> ParamMono {
        let mut r = *self;
        for (a, b) in r.0.iter_mut().zip(o.0.iter()) {
            *a += b;
        }
        r
    }

    pub fn divides(&self, o: &ParamMono) -> bool {
        self.0.iter().zip(o.0.iter()).all(|(a, b)| a <= b)
    }

    /// `o / self`, assuming `self.divides(o)`.
    fn quotient_of(&self, o: &ParamMono) -> ParamMono {
        let mut r = *o;
        for (a, b) in r.0.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        r
    }

    pub(crate) fn factors(&self) -> Vec<String> {
        Param::ALL
            .iter()
            .filter_map(|&p| match self.exp(p) {
                0 => None,
                1 => Some(p.name().to_string()),
                k => Some(format!("{}^{}", p.name(), k)),
            })
            .collect()
    }
}

/// Canonical sum of `Gq * ParamMono` terms; zero is the empty map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ParamScalar {
    terms: BTreeMap<ParamMono, Gq>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn one() -> Self {
        ParamScalar::from_gq(Gq::one())
    }

    pub fn i() -> Self {
        ParamScalar::from_gq(Gq::i())
    }

    pub fn int(n: i64) -> Self {
        ParamScalar::from_gq(Gq::int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        ParamScalar::from_gq(Gq::ratio(n, d))
    }

    pub fn from_gq(c: Gq) -> Self {
        ParamScalar::term(c, ParamMono::one())
    }

    pub fn term(c: Gq, m: ParamMono) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        ParamScalar { terms }
    }

    pub fn param(p: Param) -> Self {
        ParamScalar::term(Gq::one(), ParamMono::of(p, 1))
    }

    /// Parameter by name; unrecognized names are rejected.
    pub fn named(name: &str) -> Result<Self> {
        Ok(ParamScalar::param(name.parse()?))
    }

    pub fn hbar() -> Self {
        ParamScalar::param(Param::Hbar)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMono, &Gq)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the scalar has no parameter dependence.
    pub fn as_constant(&self) -> Option<Gq> {
        match self.terms.len() {
            0 => Some(Gq::zero()),
            1 => self.terms.get(&ParamMono::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    pub fn coefficient(&self, m: &ParamMono) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    fn add_term(&mut self, m: ParamMono, c: &Gq) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Gq::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Gq) -> ParamScalar {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> ParamScalar {
        let mut acc = ParamScalar::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient by a parameter monomial, if every term is divisible.
    pub fn div_mono(&self, d: &ParamMono) -> Option<ParamScalar> {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            if !d.divides(m) {
                return None;
            }
            out.terms.insert(d.quotient_of(m), c.clone());
        }
        Some(out)
    }

    /// Division by a nonzero literal.
    pub fn div_gq(&self, d: &Gq) -> Option<ParamScalar> {
        d.inv().map(|inv| self.scale(&inv))
    }

    /// Substitutes `p := value` everywhere, leaving other parameters formal.
    pub fn substitute(&self, p: Param, value: &ParamScalar) -> ParamScalar {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let k = m.exp(p);
            let mut rest = *m;
            rest.0[p.index()] = 0;
            let piece = &ParamScalar::term(c.clone(), rest) * &value.pow(k);
            out = &out + &piece;
        }
        out
    }

    pub fn params(&self) -> Vec<Param> {
        Param::ALL
            .iter()
            .copied()
            .filter(|&p| self.terms.keys().any(|m| m.exp(p) > 0))
            .collect()
    }

    pub fn eval(&self, bindings: &Bindings) -> Result<Value> {
        let mut acc = Value::Exact(Gq::zero());
        for (m, c) in &self.terms {
            let mut t = Value::Exact(c.clone());
            for p in Param::ALL {
                let k = m.exp(p);
                if k == 0 {
                    continue;
                }
                let v = bindings
                    .get(p)
                    .ok_or_else(|| Error::UnboundParameter(p.name().to_string()))?;
                for _ in 0..k {
                    t = t.mul(v);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    pub fn eval_c64(&self, bindings: &Bindings) -> Result<Complex64> {
        Ok(self.eval(bindings)?.to_c64())
    }

    /// Sorted by parameter degree, for printing.
    fn display_order(&self) -> Vec<(&ParamMono, &Gq)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(b.0.cmp(a.0)));
        v
    }

    pub(crate) fn signed_terms(&self, trailing: &[String]) -> Vec<(bool, String)> {
        self.display_order()
            .into_iter()
            .map(|(m, c)| {
                let mut f = m.factors();
                f.extend(trailing.iter().cloned());
                format_term(c, &f)
            })
            .collect()
    }
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join_terms(self.signed_terms(&[])))
    }
}

impl From<Gq> for ParamScalar {
    fn from(c: Gq) -> Self {
        ParamScalar::from_gq(c)
    }
}

impl From<Param> for ParamScalar {
    fn from(p: Param) -> Self {
        ParamScalar::param(p)
    }
}

impl Add for &ParamScalar {
    type Output = ParamScalar;
    fn add(self, o: &ParamScalar) -> ParamScalar {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(*m, c);
        }
        r
    }
}

impl Sub for &ParamScalar {
    type Output = ParamScalar;
    fn sub(self, o: &ParamScalar) -> ParamScalar {
        self + &(-o)
    }
}

impl Neg for &ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        ParamScalar {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &ParamScalar {
    type Output = ParamScalar;
    fn mul(self, o: &ParamScalar) -> ParamScalar {
        let mut r = ParamScalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        r
    }
}

impl Add for ParamScalar {
    type Output = ParamScalar;
    fn add(self, o: ParamScalar) -> ParamScalar {
        &self + &o
    }
}

impl Sub for ParamScalar {
    type Output = ParamScalar;
    fn sub(self, o: ParamScalar) -> ParamScalar {
        &self - &o
    }
}

impl Mul for ParamScalar {
    type Output = ParamScalar;
    fn mul(self, o: ParamScalar) -> ParamScalar {
        &self * &o
    }
}

impl Neg for ParamScalar {
    type Output = ParamScalar;
    fn neg(self) -> ParamScalar {
        -&self
    }
}

/// Either an exact Gaussian rational or a floating complex number.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Gq),
    Float(Complex64),
}

impl Value {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            Value::Exact(g) => g.to_c64(),
            Value::Float(z) => *z,
        }
    }

    pub fn exact(&self) -> Option<&Gq> {
        match self {
            Value::Exact(g) => Some(g),
            Value::Float(_) => None,
        }
    }

    fn add(&self, o: &Value) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a + b),
            _ => Value::Float(self.to_c64() + o.to_c64()),
        }
    }

    fn mul(&self, o: &Value) -> Value {
        match (self, o) {
            (Value::Exact(a), Value::Exact(b)) => Value::Exact(a * b),
            _ => Value::Float(self.to_c64() * o.to_c64()),
        }
    }
}

/// Parameter assignment used by [`ParamScalar::eval`].
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    values: BTreeMap<Param, Value>,
}

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn exact(mut self, p: Param, v: Gq) -> Self {
        self.values.insert(p, Value::Exact(v));
        self
    }

    pub fn float(mut self, p: Param, v: f64) -> Self {
        self.values.insert(p, Value::Float(Complex64::new(v, 0.0)));
        self
    }

    pub fn set(&mut self, p: Param, v: Value) {
        self.values.insert(p, v);
    }

    pub fn get(&self, p: Param) -> Option<&Value> {
        self.values.get(&p)
    }

    /// `pi` bound to its floating value, everything else untouched.
    pub fn with_pi(self) -> Self {
        self.float(Param::Pi, std::f64::consts::PI)
    }
}
