//! Exact arithmetic in ℚ and real quadratic fields ℚ(√d), together with
//! square-class tests and normalization.
//!
//! A square class is a nonzero field element taken modulo nonzero squares;
//! equality of classes is always decided by an exact squareness test of the
//! quotient, never by comparing representatives.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

/// Iteration budget for the Pollard-rho fallback in `squarefree_part`.
pub const DEFAULT_FACTOR_BUDGET: u64 = 1_000_000;

const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumFieldError {
    #[error("zero input: square classes and positivity are defined for nonzero elements only")]
    ZeroInput,
    #[error("factorization budget exceeded")]
    FactorizationBudget,
    #[error("field mismatch: operands live in different fields")]
    FieldMismatch,
    #[error("invalid field discriminant {0}: must be squarefree and not 0 or 1")]
    InvalidDiscriminant(i64),
    #[error("parse error: {0}")]
    Parse(String),
}

// ---------------------------------------------------------------------------
// integer factorization: trial division then Pollard rho (Brent)

fn is_probable_prime(n: &BigUint) -> bool {
    if *n < BigUint::from(2u32) {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let bp = BigUint::from(p);
        if *n == bp {
            return true;
        }
        if (n % &bp).is_zero() {
            return false;
        }
    }
    // Miller-Rabin with the fixed witness set above; deterministic for
    // n < 3.3·10^24, overwhelmingly reliable beyond.
    let one = BigUint::one();
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&BigUint::from(2u32), n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho. Returns a nontrivial factor or fails when the
/// iteration budget runs dry.
fn pollard_rho(n: &BigUint, budget: &mut u64) -> Result<BigUint, NumFieldError> {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if (n % &two).is_zero() {
        return Ok(two);
    }
    for c in 1u32..=20 {
        let cc = BigUint::from(c);
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        while d == one {
            if *budget == 0 {
                return Err(NumFieldError::FactorizationBudget);
            }
            *budget -= 1;
            x = (&x * &x + &cc) % n;
            y = (&y * &y + &cc) % n;
            y = (&y * &y + &cc) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break; // cycle without factor, retry with another constant
            }
            d = diff.gcd(n);
        }
        if d != one && &d != n {
            return Ok(d);
        }
    }
    Err(NumFieldError::FactorizationBudget)
}

/// Factor a positive integer into prime powers, trial dividing up to 10^6
/// and falling back to Pollard rho within the given iteration budget.
pub fn factor(n: &BigUint, budget: u64) -> Result<Vec<(BigUint, u32)>, NumFieldError> {
    assert!(!n.is_zero(), "factor requires a positive integer");
    let mut budget = budget;
    let mut m = n.clone();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    let push = |out: &mut Vec<(BigUint, u32)>, p: BigUint, e: u32| {
        if let Some(entry) = out.iter_mut().find(|(q, _)| *q == p) {
            entry.1 += e;
        } else {
            out.push((p, e));
        }
    };
    let mut d = 2u64;
    while d < TRIAL_DIVISION_LIMIT {
        let bd = BigUint::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0u32;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            push(&mut out, bd, e);
        }
        d = if d == 2 { 3 } else { d + 2 };
    }
    // whatever is left has no prime factor below the trial limit
    let mut stack = vec![(m, 1u32)];
    while let Some((v, mult)) = stack.pop() {
        if v.is_one() {
            continue;
        }
        if v < BigUint::from(TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT) || is_probable_prime(&v)
        {
            push(&mut out, v, mult);
            continue;
        }
        let r = v.sqrt();
        if &r * &r == v {
            stack.push((r, mult * 2));
            continue;
        }
        let f = pollard_rho(&v, &mut budget)?;
        let q = &v / &f;
        stack.push((f, mult));
        stack.push((q, mult));
    }
    out.sort();
    Ok(out)
}

fn squarefree_part_int(n: &BigInt, budget: u64) -> Result<BigInt, NumFieldError> {
    if n.is_zero() {
        return Err(NumFieldError::ZeroInput);
    }
    let mag = n.magnitude().clone();
    let mut s = BigUint::one();
    for (p, e) in factor(&mag, budget)? {
        if e % 2 == 1 {
            s *= p;
        }
    }
    let s = BigInt::from(s);
    Ok(if n.is_negative() { -s } else { s })
}

fn largest_square_divisor(n: &BigUint, budget: u64) -> Result<BigUint, NumFieldError> {
    let mut s = BigUint::one();
    for (p, e) in factor(n, budget)? {
        s *= p.pow(2 * (e / 2));
    }
    Ok(s)
}

/// The unique squarefree integer s with r/s a rational square; sign of s
/// equals the sign of r.
pub fn squarefree_part(r: &Rational) -> Result<BigInt, NumFieldError> {
    squarefree_part_with_budget(r, DEFAULT_FACTOR_BUDGET)
}

pub fn squarefree_part_with_budget(r: &Rational, budget: u64) -> Result<BigInt, NumFieldError> {
    if r.is_zero() {
        return Err(NumFieldError::ZeroInput);
    }
    // p/q and p·q differ by the square q², so share a squarefree part
    squarefree_part_int(&(r.numer() * r.denom()), budget)
}

fn rational_is_square(r: &Rational) -> bool {
    if r.is_zero() {
        return true;
    }
    if r.is_negative() {
        return false;
    }
    let nr = r.numer().magnitude().sqrt();
    let dr = r.denom().magnitude().sqrt();
    &nr * &nr == *r.numer().magnitude() && &dr * &dr == *r.denom().magnitude()
}

/// Exact square root of a nonnegative rational, when one exists.
fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let nr = r.numer().magnitude().sqrt();
    let dr = r.denom().magnitude().sqrt();
    if &nr * &nr == *r.numer().magnitude() && &dr * &dr == *r.denom().magnitude() {
        Some(Rational::new(BigInt::from(nr), BigInt::from(dr)))
    } else {
        None
    }
}

fn i64_is_squarefree(d: i64) -> bool {
    let mut m = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m % (p * p) == 0 {
            return false;
        }
        while m % p == 0 {
            m /= p;
        }
        p += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// field descriptors and elements

/// The base field: ℚ when `d` is absent, ℚ(√d) otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldDescriptor {
    d: Option<i64>,
}

impl FieldDescriptor {
    pub fn rational() -> Self {
        FieldDescriptor { d: None }
    }

    pub fn quadratic(d: i64) -> Result<Self, NumFieldError> {
        if d == 0 || d == 1 || !i64_is_squarefree(d) {
            return Err(NumFieldError::InvalidDiscriminant(d));
        }
        Ok(FieldDescriptor { d: Some(d) })
    }

    pub fn d(&self) -> Option<i64> {
        self.d
    }

    pub fn is_rational(&self) -> bool {
        self.d.is_none()
    }

    /// ℚ and real quadratic fields are totally real; ℚ(√d) with d < 0 is not.
    pub fn is_totally_real(&self) -> bool {
        self.d.map_or(true, |d| d > 0)
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            None => write!(f, "Q"),
            Some(d) => write!(f, "Q(sqrt({d}))"),
        }
    }
}

/// An exact element a + b√d of ℚ or ℚ(√d); b is pinned to 0 over ℚ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: Rational,
    b: Rational,
    field: FieldDescriptor,
}

impl FieldElement {
    pub fn new(a: Rational, b: Rational, field: FieldDescriptor) -> Self {
        if field.is_rational() {
            assert!(b.is_zero(), "nonzero sqrt coefficient over Q");
        }
        FieldElement { a, b, field }
    }

    pub fn from_rational(a: Rational) -> Self {
        FieldElement {
            a,
            b: Rational::zero(),
            field: FieldDescriptor::rational(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from(BigInt::from(n)))
    }

    pub fn zero(field: FieldDescriptor) -> Self {
        FieldElement {
            a: Rational::zero(),
            b: Rational::zero(),
            field,
        }
    }

    pub fn one(field: FieldDescriptor) -> Self {
        FieldElement {
            a: Rational::one(),
            b: Rational::zero(),
            field,
        }
    }

    pub fn integer(n: i64, field: FieldDescriptor) -> Self {
        FieldElement {
            a: Rational::from(BigInt::from(n)),
            b: Rational::zero(),
            field,
        }
    }

    /// √d as an element of ℚ(√d).
    pub fn sqrt_d(field: FieldDescriptor) -> Self {
        assert!(!field.is_rational(), "sqrt generator needs a quadratic field");
        FieldElement {
            a: Rational::zero(),
            b: Rational::one(),
            field,
        }
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn sqrt_part(&self) -> &Rational {
        &self.b
    }

    pub fn field(&self) -> FieldDescriptor {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    /// Reinterpret a rational element inside a quadratic field.
    pub fn promote(&self, field: FieldDescriptor) -> Result<FieldElement, NumFieldError> {
        if self.field == field {
            return Ok(self.clone());
        }
        if self.field.is_rational() {
            Ok(FieldElement::new(self.a.clone(), Rational::zero(), field))
        } else {
            Err(NumFieldError::FieldMismatch)
        }
    }

    /// As a rational, when the √d part vanishes.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.b.is_zero() {
            Some(self.a.clone())
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> FieldElement {
        FieldElement {
            a: self.a.clone(),
            b: -self.b.clone(),
            field: self.field,
        }
    }

    /// Field norm a² − d·b², a rational.
    pub fn norm(&self) -> Rational {
        match self.field.d {
            None => &self.a * &self.a,
            Some(d) => &self.a * &self.a - Rational::from(BigInt::from(d)) * &self.b * &self.b,
        }
    }

    pub fn inv(&self) -> Option<FieldElement> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        let c = self.conjugate();
        Some(FieldElement {
            a: &c.a / &n,
            b: &c.b / &n,
            field: self.field,
        })
    }

    pub fn pow(&self, e: u32) -> FieldElement {
        let mut r = FieldElement::one(self.field);
        for _ in 0..e {
            r = &r * self;
        }
        r
    }

    /// Sign of the image under the embedding √d ↦ ε·√d (ε = ±1); for ℚ the
    /// sign of the element. Exact, by comparing a² against d·b².
    fn embedding_sign(&self, eps: i64) -> i64 {
        let d = match self.field.d {
            None => return sign_of(&self.a),
            Some(d) => d,
        };
        debug_assert!(d > 0, "real embeddings need d > 0");
        let b = if eps >= 0 { self.b.clone() } else { -self.b.clone() };
        let sa = sign_of(&self.a);
        let sb = sign_of(&b);
        if sb == 0 {
            return sa;
        }
        if sa == 0 {
            return sb;
        }
        if sa == sb {
            return sa;
        }
        // opposite signs: compare a² with d·b²
        let lhs = &self.a * &self.a;
        let rhs = Rational::from(BigInt::from(d)) * &b * &b;
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sa,
            std::cmp::Ordering::Less => sb,
            std::cmp::Ordering::Equal => 0,
        }
    }
}

fn sign_of(r: &Rational) -> i64 {
    if r.is_zero() {
        0
    } else if r.is_negative() {
        -1
    } else {
        1
    }
}

fn assert_same_field(x: &FieldElement, y: &FieldElement) {
    assert_eq!(x.field, y.field, "field mismatch in arithmetic");
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        assert_same_field(self, rhs);
        FieldElement {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            field: self.field,
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        assert_same_field(self, rhs);
        FieldElement {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            field: self.field,
        }
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        assert_same_field(self, rhs);
        match self.field.d {
            None => FieldElement {
                a: &self.a * &rhs.a,
                b: Rational::zero(),
                field: self.field,
            },
            Some(d) => {
                let d = Rational::from(BigInt::from(d));
                FieldElement {
                    a: &self.a * &rhs.a + &d * &self.b * &rhs.b,
                    b: &self.a * &rhs.b + &self.b * &rhs.a,
                    field: self.field,
                }
            }
        }
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inv().expect("division by zero field element");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            a: -self.a.clone(),
            b: -self.b.clone(),
            field: self.field,
        }
    }
}

impl FieldElement {
    pub fn scale(&self, c: &Rational) -> FieldElement {
        FieldElement {
            a: &self.a * c,
            b: &self.b * c,
            field: self.field,
        }
    }
}

// ---------------------------------------------------------------------------
// squareness and positivity

/// Decides whether x is a square in its own field, exactly.
///
/// Over ℚ(√d) for x = u + v√d with v ≠ 0: x is a square iff the norm
/// u² − d·v² is a rational square q² and one of (u ± q)/2 is a rational
/// square. For v = 0: iff u or u/d is a rational square.
pub fn is_square(x: &FieldElement) -> bool {
    if x.is_zero() {
        return true;
    }
    let d = match x.field.d {
        None => return rational_is_square(&x.a),
        Some(d) => d,
    };
    let dr = Rational::from(BigInt::from(d));
    if x.b.is_zero() {
        return rational_is_square(&x.a) || rational_is_square(&(&x.a / &dr));
    }
    let q = match rational_sqrt(&x.norm()) {
        Some(q) => q,
        None => return false,
    };
    let two = Rational::from(BigInt::from(2));
    let s1 = (&x.a + &q) / &two;
    let s2 = (&x.a - &q) / &two;
    rational_is_square(&s1) || rational_is_square(&s2)
}

/// True iff x is positive under every real embedding of its field. For
/// d < 0 there are no real embeddings, so the test is vacuously true;
/// callers can consult `FieldDescriptor::is_totally_real` to warn.
pub fn is_totally_positive(x: &FieldElement) -> Result<bool, NumFieldError> {
    if x.is_zero() {
        return Err(NumFieldError::ZeroInput);
    }
    match x.field.d {
        None => Ok(x.a.is_positive()),
        Some(d) if d > 0 => Ok(x.embedding_sign(1) > 0 && x.embedding_sign(-1) > 0),
        Some(_) => Ok(true),
    }
}

// ---------------------------------------------------------------------------
// square classes

/// A nonzero field element standing for its coset modulo nonzero squares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareClass {
    representative: FieldElement,
}

impl SquareClass {
    pub fn new(representative: FieldElement) -> Result<Self, NumFieldError> {
        if representative.is_zero() {
            return Err(NumFieldError::ZeroInput);
        }
        Ok(SquareClass { representative })
    }

    pub fn representative(&self) -> &FieldElement {
        &self.representative
    }

    pub fn field(&self) -> FieldDescriptor {
        self.representative.field()
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative)
    }
}

/// Two classes over the same field are equal iff their quotient is a square.
pub fn same_class(x: &SquareClass, y: &SquareClass) -> Result<bool, NumFieldError> {
    if x.field() != y.field() {
        return Err(NumFieldError::FieldMismatch);
    }
    Ok(is_square(&(&x.representative / &y.representative)))
}

/// Canonical-ish representative: the squarefree part over ℚ; over ℚ(√d) an
/// integral u + v√d with the largest square divisor of gcd(u, v) removed.
/// The quadratic form is best-effort; equality stays with `same_class`.
pub fn normalize_class(x: &SquareClass) -> Result<SquareClass, NumFieldError> {
    normalize_class_with_budget(x, DEFAULT_FACTOR_BUDGET)
}

pub fn normalize_class_with_budget(
    x: &SquareClass,
    budget: u64,
) -> Result<SquareClass, NumFieldError> {
    let r = &x.representative;
    if r.field().is_rational() {
        let s = squarefree_part_with_budget(&r.a, budget)?;
        return SquareClass::new(FieldElement::from_rational(Rational::from(s)));
    }
    let l = r.a.denom().lcm(r.b.denom());
    let l2 = Rational::from(&l * &l);
    let u = (&r.a * &l2).to_integer();
    let v = (&r.b * &l2).to_integer();
    let g = u.gcd(&v); // gcd(u, 0) = |u| covers the v = 0 case
    let s = BigInt::from(largest_square_divisor(g.magnitude(), budget)?);
    let sr = Rational::from(s);
    SquareClass::new(FieldElement::new(
        Rational::from(u) / &sr,
        Rational::from(v) / &sr,
        r.field(),
    ))
}

// ---------------------------------------------------------------------------
// text form: "p/q" and "p/q+r/s*sqrt(d)"

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn rat(r: &Rational) -> String {
            if r.denom().is_one() {
                format!("{}", r.numer())
            } else {
                format!("{}/{}", r.numer(), r.denom())
            }
        }
        match self.field.d {
            None => write!(f, "{}", rat(&self.a)),
            Some(d) => {
                let sign = if self.b.is_negative() { "-" } else { "+" };
                write!(f, "{}{}{}*sqrt({})", rat(&self.a), sign, rat(&self.b.abs()), d)
            }
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational, NumFieldError> {
    let s = s.trim();
    let bad = || NumFieldError::Parse(format!("invalid rational {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        Ok(Rational::new(p, q))
    } else {
        let p: BigInt = s.parse().map_err(|_| bad())?;
        Ok(Rational::from(p))
    }
}

/// Parse the text form of a field element. Without a `sqrt` token the result
/// is rational unless `expected` forces a quadratic field.
pub fn parse_field_element(
    s: &str,
    expected: Option<FieldDescriptor>,
) -> Result<FieldElement, NumFieldError> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |m: &str| NumFieldError::Parse(format!("{m}: {s:?}"));

    let parsed = if let Some(pos) = compact.find("sqrt(") {
        let close = compact[pos..]
            .find(')')
            .map(|i| i + pos)
            .ok_or_else(|| bad("unclosed sqrt"))?;
        if close + 1 != compact.len() {
            return Err(bad("trailing characters after sqrt(..)"));
        }
        let d: i64 = compact[pos + 5..close]
            .parse()
            .map_err(|_| bad("invalid discriminant"))?;
        let field = FieldDescriptor::quadratic(d)?;
        // split "A±B*sqrt(d)" at the sign that starts the sqrt term
        let head = &compact[..pos];
        let head = head.strip_suffix('*').unwrap_or(head);
        // find the split: last '+'/'-' in head that is not leading and not after '/'
        let bytes = head.as_bytes();
        let mut split = None;
        for i in (1..head.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1].is_ascii_digit() {
                split = Some(i);
                break;
            }
        }
        let (a_str, b_str) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("0", head),
        };
        let a = parse_rational(a_str)?;
        let b = match b_str {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            t => {
                let t = t.strip_prefix('+').unwrap_or(t);
                parse_rational(t)?
            }
        };
        FieldElement::new(a, b, field)
    } else {
        FieldElement::from_rational(parse_rational(&compact)?)
    };

    match expected {
        None => Ok(parsed),
        Some(field) => parsed.promote(field),
    }
}

// ---------------------------------------------------------------------------
