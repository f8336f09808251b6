//! Dense univariate polynomials.
//!
//! Coefficients are stored lowest degree first with no trailing zeros, so
//! the zero polynomial has an empty coefficient vector. Arithmetic is
//! generic over any `num_traits::Num` ring; the gcd, pseudo-remainder and
//! square-free routines need an integer domain (`num_integer::Integer`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};
use thiserror::Error;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation undefined for the zero polynomial")]
    Zero,
    #[error("cannot parse polynomial term {0:?}")]
    Parse(String),
    #[error("interval does not bracket a sign change")]
    NoSignChange,
}

impl<T: Clone + Num> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c·x^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k];
        coeffs.push(c);
        Self::new(coeffs)
    }

    /// `x - root`
    pub fn linear_root(root: T) -> Self {
        Self::new(vec![T::zero() - root, T::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Exponent of the largest power of `x` dividing the polynomial.
    pub fn zero_root_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^k`.
    pub fn shift_down(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(T::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }
}

impl<T: Clone + Num + FromPrimitive> Polynomial<T> {
    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_usize(k).expect("degree fits the scalar type"))
                .collect(),
        )
    }
}

impl<T: Clone + Integer + Signed + FromPrimitive> Polynomial<T> {
    /// Positive gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |g, c| g.gcd(c))
    }

    /// Divides by the content and makes the leading coefficient positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() / c.clone()).collect())
    }

    /// `lc(d)^(deg self - deg d + 1) · self` reduced modulo `d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self, PolyError> {
        let dd = d.degree().ok_or(PolyError::Zero)?;
        let Some(deg) = self.degree() else {
            return Ok(Self::zero());
        };
        if deg < dd {
            return Ok(self.clone());
        }
        let lc = d.leading().expect("nonzero").clone();
        let mut r = self.clone();
        let mut steps = deg - dd + 1;
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let lr = r.leading().expect("nonzero").clone();
            let shifted = &Self::monomial(lr, rd - dd) * d;
            r = &r.scale(&lc) - &shifted;
            steps -= 1;
        }
        for _ in 0..steps {
            r = r.scale(&lc);
        }
        Ok(r)
    }

    /// Quotient when `d` divides `self` over the integers, otherwise `None`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        let lc = d.leading()?.clone();
        let mut r = self.clone();
        let Some(deg) = r.degree() else {
            return Some(Self::zero());
        };
        if deg < dd {
            return None;
        }
        let mut q = vec![T::zero(); deg - dd + 1];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (quot, rem) = r.leading().expect("nonzero").div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r = &r - &(&Self::monomial(quot.clone(), rd - dd) * d);
            q[rd - dd] = quot;
        }
        Some(Self::new(q))
    }

    /// Primitive gcd with positive leading coefficient, via the primitive remainder sequence.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.normalized();
        let mut b = other.normalized();
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("b is nonzero");
            a = b;
            b = r.normalized();
        }
        a
    }

    /// `self / gcd(self, self')`, normalized.
    pub fn square_free_part(&self) -> Result<Self, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        if self.degree() == Some(0) {
            return Ok(Self::constant(T::one()));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.normalized().div_exact(&g).expect("gcd divides").normalized())
    }

    /// Yun's decomposition: pairs `(f_i, i)` with `self = c · Π f_i^i`, each
    /// `f_i` square-free, normalized, pairwise coprime and nonconstant.
    pub fn square_free_decomposition(&self) -> Result<Vec<(Self, usize)>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::Zero);
        }
        let f = self.normalized();
        if f.degree() == Some(0) {
            return Ok(Vec::new());
        }
        let fp = f.derivative();
        let g = f.gcd(&fp);
        let mut c = f.div_exact(&g).expect("gcd divides f");
        let mut d = &fp.div_exact(&g).expect("gcd divides f'") - &c.derivative();
        let mut out = Vec::new();
        let mut i = 1;
        while c.degree().is_some_and(|k| k > 0) {
            let a = c.gcd(&d);
            c = c.div_exact(&a).expect("a divides c");
            d = &d.div_exact(&a).expect("a divides d") - &c.derivative();
            if a.degree().is_some_and(|k| k > 0) {
                out.push((a.normalized(), i));
            }
            i += 1;
        }
        Ok(out)
    }
}

/// Exact coefficient equality.
pub fn poly_equal<T: PartialEq>(p: &Polynomial<T>, q: &Polynomial<T>) -> bool {
    p == q
}

/// Whether `p` equals the expanded product `Π f^e`.
pub fn poly_equals_product<T: Clone + Num>(p: &Polynomial<T>, factors: &[(Polynomial<T>, u32)]) -> bool {
    let product = factors
        .iter()
        .fold(Polynomial::constant(T::one()), |acc, (f, e)| &acc * &f.pow(*e));
    *p == product
}

impl<T: Clone + Num> Add for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn add(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Clone + Num> Sub for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn sub(self, rhs: Self) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Clone + Num> Mul for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn mul(self, rhs: Self) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

impl<T: Clone + Num + Neg<Output = T>> Neg for &Polynomial<T> {
    type Output = Polynomial<T>;

    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().cloned().map(Neg::neg).collect())
    }
}

impl<T: Clone + Num + Signed + fmt::Display> Polynomial<T> {
    /// Descending powers with explicit signs, e.g. `λ^8 - 12λ^6 - 8λ^5 + 1`.
    pub fn to_text(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            if k == 0 || !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            match k {
                0 => {}
                1 => out.push_str(var),
                _ => out.push_str(&format!("{var}^{k}")),
            }
        }
        out
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text("λ"))
    }
}

impl<T: Clone + Num + Signed + fmt::Display> fmt::Debug for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self.to_text("x"))
    }
}

/// Parses sums of monomials in `λ` or `x`, such as `λ^5 − 16λ^3 + 32`.
impl<T: Clone + Num + FromStr> FromStr for Polynomial<T> {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, PolyError> {
        let cleaned: String = s
            .chars()
            .filter(|c| !c.is_whitespace() && *c != '*')
            .map(|c| match c {
                '−' => '-',
                'λ' => 'x',
                other => other,
            })
            .collect();
        if cleaned.is_empty() {
            return Err(PolyError::Parse(s.to_string()));
        }
        let mut terms: Vec<String> = Vec::new();
        let mut current = String::new();
        for (i, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !current.ends_with('^') {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);

        let mut coeffs: Vec<T> = Vec::new();
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term.as_str()),
            };
            let bad = || PolyError::Parse(term.clone());
            let (coef_text, power) = match body.find('x') {
                None => (body, 0usize),
                Some(pos) => {
                    let rest = &body[pos + 1..];
                    let power = if rest.is_empty() {
                        1
                    } else {
                        rest.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (&body[..pos], power)
                }
            };
            let mut coef = if coef_text.is_empty() {
                if power == 0 {
                    return Err(bad());
                }
                T::one()
            } else {
                coef_text.parse::<T>().map_err(|_| bad())?
            };
            if negative {
                coef = T::zero() - coef;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, T::zero());
            }
            coeffs[power] = coeffs[power].clone() + coef;
        }
        Ok(Polynomial::new(coeffs))
    }
}
