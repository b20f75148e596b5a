//! Exact polynomial arithmetic in `q^(1/2)` and in the pair `(p, q)`.
//!
//! [`QPoly`] is a Laurent polynomial in `t = q^(1/2)` with big-integer
//! coefficients; exponents are stored as integer counts of halves so that
//! `q^(3/2)` is the key `3`. [`PQPoly`] is an ordinary polynomial in two
//! variables. Both keep only nonzero coefficients, so derived equality is
//! mathematical equality.

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Laurent polynomial in `q^(1/2)` over the integers.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct QPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl QPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial_halves(1, 0)
    }

    /// `c * q^(halves/2)`.
    pub fn monomial_halves(c: impl Into<BigInt>, halves: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(halves, c.into());
        p
    }

    /// `q^k` for an integer exponent `k`.
    pub fn q_pow(k: i64) -> Self {
        Self::monomial_halves(1, 2 * k)
    }

    /// Polynomial `c0 + c1 q + c2 q^2 + ...` from integer coefficients.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * k as i64, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, halves: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(halves).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&halves);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `(exponent in halves, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff_halves(&self, halves: i64) -> BigInt {
        self.terms.get(&halves).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn min_halves(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_halves(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// True when every exponent is a whole power of `q`.
    pub fn is_integral(&self) -> bool {
        self.terms.keys().all(|e| e % 2 == 0)
    }

    /// Multiplies by `q^(halves/2)`.
    pub fn shift_halves(&self, halves: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + halves, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&e, c)| (e, c * k)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The integer `f(1)`.
    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Substitutes `q -> q^(num/den)`; `den` must be 1 or 2 and every
    /// resulting exponent must remain a multiple of one half.
    pub fn subst_q_power(&self, num: i64, den: i64) -> Result<Self> {
        if num == 0 || !(den == 1 || den == 2) {
            return Err(Error::Domain(format!(
                "substitution exponent {num}/{den} must be nonzero with denominator 1 or 2"
            )));
        }
        let mut out = Self::zero();
        for (&e, c) in &self.terms {
            let scaled = e * num;
            if scaled % den != 0 {
                return Err(Error::Domain(format!(
                    "q^({e}/2) -> q^({e}*{num}/(2*{den})) leaves the half-integer lattice"
                )));
            }
            out.add_term(scaled / den, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient in the Laurent ring; a nonzero remainder is an error.
    pub fn exact_div(&self, divisor: &QPoly) -> Result<QPoly> {
        let (Some(gmin), Some(gmax)) = (divisor.min_halves(), divisor.max_halves()) else {
            return Err(Error::Domain("division by the zero polynomial".into()));
        };
        let Some(fmin) = self.min_halves() else {
            return Ok(Self::zero());
        };
        let not_divisible = || Error::NotDivisible {
            dividend: self.to_string(),
            divisor: divisor.to_string(),
        };
        // Normalise both to ordinary polynomials in t with nonzero constant term.
        let mut rem: BTreeMap<i64, BigInt> =
            self.terms.iter().map(|(&e, c)| (e - fmin, c.clone())).collect();
        let gdeg = gmax - gmin;
        let glead = &divisor.terms[&gmax];
        let mut quot = Self::zero();
        while let Some((&rdeg, _)) = rem.iter().next_back() {
            if rdeg < gdeg {
                return Err(not_divisible());
            }
            let rlead = rem[&rdeg].clone();
            if !(&rlead % glead).is_zero() {
                return Err(not_divisible());
            }
            let factor = &rlead / glead;
            let shift = rdeg - gdeg;
            for (&e, c) in &divisor.terms {
                let key = e - gmin + shift;
                let slot = rem.entry(key).or_insert_with(BigInt::zero);
                *slot -= &factor * c;
                if slot.is_zero() {
                    rem.remove(&key);
                }
            }
            quot.add_term(shift, factor);
        }
        Ok(quot.shift_halves(fmin - gmin))
    }
}

fn fmt_exponent_halves(halves: i64) -> String {
    if halves % 2 == 0 {
        let k = halves / 2;
        if k < 0 {
            format!("^({k})")
        } else {
            format!("^{k}")
        }
    } else {
        format!("^({halves}/2)")
    }
}

fn write_signed_terms<I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, BigInt)>,
{
    let mut first = true;
    for (var, c) in terms {
        let mag = c.abs();
        let body = match (var.is_empty(), mag.is_one()) {
            (true, _) => mag.to_string(),
            (false, true) => var,
            (false, false) => format!("{mag}*{var}"),
        };
        match (first, c.is_negative()) {
            (true, false) => write!(f, "{body}")?,
            (true, true) => write!(f, "-{body}")?,
            (false, false) => write!(f, " + {body}")?,
            (false, true) => write!(f, " - {body}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for QPoly {
    /// Canonical rendering: ascending exponents, e.g. `1 + 2*q + q^(3/2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_signed_terms(
            f,
            self.terms.iter().map(|(&e, c)| {
                let var = match e {
                    0 => String::new(),
                    2 => "q".to_string(),
                    _ => format!("q{}", fmt_exponent_halves(e)),
                };
                (var, c.clone())
            }),
        )
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Add<&QPoly> for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&QPoly> for QPoly {
    fn add_assign(&mut self, rhs: &QPoly) {
        for (&e, c) in &rhs.terms {
            self.add_term(e, c.clone());
        }
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
}

impl Sub<&QPoly> for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul<&QPoly> for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        let mut out = QPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl AddAssign for $t {
            fn add_assign(&mut self, rhs: $t) {
                *self += &rhs;
            }
        }
        impl std::iter::Sum for $t {
            fn sum<I: Iterator<Item = $t>>(iter: I) -> $t {
                let mut acc = <$t>::zero();
                for x in iter {
                    acc += &x;
                }
                acc
            }
        }
    };
}

forward_owned_ops!(QPoly);
forward_owned_ops!(PQPoly);

/// Polynomial in `p` and `q` with integer coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct PQPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl PQPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * p^i * q^j`.
    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term((i, j), c.into());
        out
    }

    pub fn p() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Iterates `((p exponent, q exponent), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Exchanges the roles of `p` and `q`.
    pub fn swap_vars(&self) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), c)| ((j, i), c.clone()))
                .collect(),
        }
    }

    /// Maps to a [`QPoly`] by substituting polynomial values for `p` and `q`.
    pub fn subst_p_q(&self, p: &QPoly, q: &QPoly) -> QPoly {
        let mut p_pows: Vec<QPoly> = vec![QPoly::one()];
        let mut q_pows: Vec<QPoly> = vec![QPoly::one()];
        let mut out = QPoly::zero();
        for (&(i, j), c) in &self.terms {
            while p_pows.len() <= i as usize {
                let next = p_pows.last().unwrap() * p;
                p_pows.push(next);
            }
            while q_pows.len() <= j as usize {
                let next = q_pows.last().unwrap() * q;
                q_pows.push(next);
            }
            out += &(&p_pows[i as usize] * &q_pows[j as usize]).scale(c);
        }
        out
    }
}

impl fmt::Display for PQPoly {
    /// Graded order, higher `p` power first within a degree: `1 + p + q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by_key(|(&(i, j), _)| (i + j, Reverse(i)));
        write_signed_terms(
            f,
            keys.into_iter().map(|(&(i, j), c)| {
                let factor = |name: &str, e: u32| match e {
                    0 => None,
                    1 => Some(name.to_string()),
                    _ => Some(format!("{name}^{e}")),
                };
                let var = [factor("p", i), factor("q", j)]
                    .into_iter()
                    .flatten()
                    .collect::<Vec<_>>()
                    .join("*");
                (var, c.clone())
            }),
        )
    }
}

impl fmt::Debug for PQPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PQPoly({self})")
    }
}

impl Add<&PQPoly> for &PQPoly {
    type Output = PQPoly;
    fn add(self, rhs: &PQPoly) -> PQPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&PQPoly> for PQPoly {
    fn add_assign(&mut self, rhs: &PQPoly) {
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl Neg for &PQPoly {
    type Output = PQPoly;
    fn neg(self) -> PQPoly {
        PQPoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Sub<&PQPoly> for &PQPoly {
    type Output = PQPoly;
    fn sub(self, rhs: &PQPoly) -> PQPoly {
        let mut out = self.clone();
        for (&k, c) in &rhs.terms {
            out.add_term(k, -c);
        }
        out
    }
}

impl Mul<&PQPoly> for &PQPoly {
    type Output = PQPoly;
    fn mul(self, rhs: &PQPoly) -> PQPoly {
        let mut out = PQPoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term((i1 + i2, j1 + j2), c1 * c2);
            }
        }
        out
    }
}

// ---- q-analogs ----

/// `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn qint(n: u32) -> QPoly {
    let mut out = QPoly::zero();
    for i in 0..n as i64 {
        out.add_term(2 * i, BigInt::one());
    }
    out
}

/// `[n]_q! = [1][2]...[n]`.
pub fn qfact(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &qint(i))
}

/// Gaussian binomial, zero when `k` is outside `0..=n`.
///
/// Computed as an exact quotient of q-factorials; a remainder here would mean
/// the arithmetic itself is broken, so it panics rather than returning.
pub fn qbinom(n: u32, k: i64) -> QPoly {
    if k < 0 || k > n as i64 {
        return QPoly::zero();
    }
    let k = k as u32;
    let denom = &qfact(k) * &qfact(n - k);
    qfact(n)
        .exact_div(&denom)
        .expect("q-factorial quotient is always a polynomial")
}

/// q-multinomial `[n1+...+nk; n1,...,nk]`.
pub fn qmultinom(parts: &[u32]) -> QPoly {
    let n: u32 = parts.iter().sum();
    let denom = parts.iter().fold(QPoly::one(), |acc, &p| &acc * &qfact(p));
    qfact(n)
        .exact_div(&denom)
        .expect("q-multinomial quotient is always a polynomial")
}

/// `[2n-1]_q!! = [1][3]...[2n-1]`.
pub fn q_odd_double_fact(n: u32) -> QPoly {
    (1..=n).fold(QPoly::one(), |acc, i| &acc * &qint(2 * i - 1))
}

/// `[n]_{p,q} = p^(n-1) + p^(n-2) q + ... + q^(n-1)`.
pub fn pq_int(n: u32) -> PQPoly {
    let mut out = PQPoly::zero();
    for i in 0..n {
        out.add_term((n - 1 - i, i), BigInt::one());
    }
    out
}

/// Which q-analog [`q_basics`] should build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QBasic {
    QInt,
    QFact,
    QBinom,
    QMultinom,
    QOddDoubleFact,
    PqInt,
}

/// Either kind of polynomial; returned by selector-style entry points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Poly {
    Q(QPoly),
    PQ(PQPoly),
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poly::Q(p) => p.fmt(f),
            Poly::PQ(p) => p.fmt(f),
        }
    }
}

/// Validated front end to the q-analog constructors.
pub fn q_basics(kind: QBasic, args: &[i64]) -> Result<Poly> {
    if let Some(bad) = args.iter().find(|&&a| a < 0) {
        return Err(Error::Domain(format!("negative argument {bad} to {kind:?}")));
    }
    let arity = |k: usize| -> Result<()> {
        if args.len() == k {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "{kind:?} takes {k} argument(s), got {}",
                args.len()
            )))
        }
    };
    let arg = |i: usize| args[i] as u32;
    Ok(match kind {
        QBasic::QInt => {
            arity(1)?;
            Poly::Q(qint(arg(0)))
        }
        QBasic::QFact => {
            arity(1)?;
            Poly::Q(qfact(arg(0)))
        }
        QBasic::QBinom => {
            arity(2)?;
            Poly::Q(qbinom(arg(0), args[1]))
        }
        QBasic::QMultinom => {
            let parts: Vec<u32> = args.iter().map(|&a| a as u32).collect();
            Poly::Q(qmultinom(&parts))
        }
        QBasic::QOddDoubleFact => {
            arity(1)?;
            Poly::Q(q_odd_double_fact(arg(0)))
        }
        QBasic::PqInt => {
            arity(1)?;
            Poly::PQ(pq_int(arg(0)))
        }
    })
}

/// Ordinary binomial coefficient, zero outside `0..=n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(2n-1)!!`, the number of perfect matchings of `2n` points.
pub fn odd_double_factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(2 * i - 1))
}

/// The alternating-sum side of the Touchard-Riordan formula, divided exactly
/// by `(1-q)^n`.
pub fn touchard_riordan_rhs(n: u32) -> Result<QPoly> {
    let n64 = n as u64;
    let mut numer = QPoly::zero();
    for k in 0..=n as i64 {
        let c = binomial(2 * n64, n as i64 - k) - binomial(2 * n64, n as i64 - k - 1);
        let signed = if k % 2 == 0 { c } else { -c };
        numer += &QPoly::monomial_halves(signed, k * (k + 1));
    }
    let one_minus_q = QPoly::from_coeffs(&[1, -1]);
    numer
        .exact_div(&one_minus_q.pow(n))
        .map_err(|e| Error::Invariant(format!("Touchard-Riordan quotient: {e}")))
}

/// Checks `sum_i q^(i(m-k+i)) [m; k-i] [n; i] = [m+n; k]` exactly.
pub fn chu_vandermonde_check(m: u32, n: u32, k: u32) -> bool {
    let lhs: QPoly = (0..=k as i64)
        .map(|i| {
            let e = i * (m as i64 - k as i64 + i);
            &(&QPoly::q_pow(e) * &qbinom(m, k as i64 - i)) * &qbinom(n, i)
        })
        .sum();
    lhs == qbinom(m + n, k as i64)
}
