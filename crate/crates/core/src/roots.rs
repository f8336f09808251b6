//! Real-root isolation with Sturm sequences and exact dyadic sign evaluation.
//!
//! Zero roots and small integer roots are divided out first. The rest is
//! split by Yun's square-free decomposition; each factor's roots are then
//! isolated by bisection on the Cauchy bound, counting distinct roots in
//! `(a, b]` as `V(a) − V(b)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::dyadic::{Dyadic, DyadicInterval};
use crate::poly::{PolyError, Polynomial};

pub type IntPolynomial = Polynomial<BigInt>;

/// Integer candidates tried during deflation, per sign.
const INTEGER_ROOT_SEARCH: u64 = 4096;

/// Sign of `p(x)`, computed exactly as `Σ cᵢ mⁱ 2^(e(d−i))` for `x = m / 2^e`.
pub fn sign_at(p: &IntPolynomial, x: &Dyadic) -> i8 {
    let Some(d) = p.degree() else {
        return 0;
    };
    let m = x.mantissa();
    let e = x.exponent() as u64;
    let coeffs = p.coeffs();
    let mut acc = coeffs[d].clone();
    for i in (0..d).rev() {
        acc = acc * m + (&coeffs[i] << (e * (d - i) as u64));
    }
    match acc.sign() {
        num_bigint::Sign::Minus => -1,
        num_bigint::Sign::NoSign => 0,
        num_bigint::Sign::Plus => 1,
    }
}

/// Sturm sequence `p, p', −rem(p, p'), …` with positive scalings to keep integer coefficients.
pub fn sturm_chain(p: &IntPolynomial) -> Result<Vec<IntPolynomial>, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return Ok(chain);
    }
    chain.push(d);
    loop {
        let prev = &chain[chain.len() - 2];
        let last = &chain[chain.len() - 1];
        let mut r = prev.pseudo_rem(last)?;
        let delta = prev.degree().unwrap_or(0) - last.degree().unwrap_or(0) + 1;
        if last.leading().is_some_and(Signed::is_negative) && delta % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            break;
        }
        let c = r.content();
        let next = Polynomial::new(r.coeffs().iter().map(|a| -(a / &c)).collect());
        chain.push(next);
    }
    Ok(chain)
}

/// Sign variations of the chain at `x`, zeros dropped.
pub fn sign_changes(chain: &[IntPolynomial], x: &Dyadic) -> usize {
    let mut changes = 0;
    let mut last = 0i8;
    for s in chain.iter().map(|f| sign_at(f, x)) {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// A power of two strictly above every root's absolute value.
fn root_bound(p: &IntPolynomial) -> Dyadic {
    let lc = p.leading().expect("nonzero").abs();
    let max = p.coeffs().iter().map(Signed::abs).max().expect("nonzero");
    let bound = BigInt::one() + max.div_ceil(&lc);
    let bits = bound.bits();
    Dyadic::from_int(BigInt::one() << bits)
}

/// Narrows an interval holding a single root of `p` with a sign change at its endpoints.
///
/// An endpoint (or midpoint) that is an exact root collapses the result to that point.
pub fn refine_root(p: &IntPolynomial, interval: &DyadicInterval, target_width: &Dyadic) -> Result<DyadicInterval, PolyError> {
    if p.is_zero() {
        return Err(PolyError::Zero);
    }
    if interval.is_point() || interval.width() <= *target_width {
        return Ok(interval.clone());
    }
    let (mut lo, mut hi) = (interval.lo().clone(), interval.hi().clone());
    let sa = sign_at(p, &lo);
    let sb = sign_at(p, &hi);
    if sa == 0 {
        return Ok(DyadicInterval::point(lo));
    }
    if sb == 0 {
        return Ok(DyadicInterval::point(hi));
    }
    if sa == sb {
        return Err(PolyError::NoSignChange);
    }
    while &hi - &lo > *target_width {
        let mid = lo.midpoint(&hi);
        let sm = sign_at(p, &mid);
        if sm == 0 {
            return Ok(DyadicInterval::point(mid));
        }
        if sm == sa {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(DyadicInterval::new(lo, hi))
}

/// Isolating intervals for the distinct real roots of a square-free polynomial.
fn isolate_square_free(f: &IntPolynomial) -> Vec<DyadicInterval> {
    let chain = sturm_chain(f).expect("factor is nonzero");
    let b = root_bound(f);
    let a = -&b;
    let (va, vb) = (sign_changes(&chain, &a), sign_changes(&chain, &b));
    let mut out = Vec::new();
    let mut stack = vec![(a, va, b, vb)];
    while let Some((a, va, b, vb)) = stack.pop() {
        let count = va - vb;
        if count == 0 {
            continue;
        }
        if count == 1 {
            if sign_at(f, &b) == 0 {
                out.push(DyadicInterval::point(b));
                continue;
            }
            if sign_at(f, &a) != 0 {
                out.push(DyadicInterval::new(a, b));
                continue;
            }
        }
        let mid = a.midpoint(&b);
        let vm = sign_changes(&chain, &mid);
        stack.push((mid.clone(), vm, b, vb));
        stack.push((a, va, mid, vm));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsolatedRoot {
    pub interval: DyadicInterval,
    pub multiplicity: usize,
    /// Index into [`RootIsolation::factors`]; `None` for roots found exactly.
    pub factor: Option<usize>,
}

/// Distinct nonzero real roots in disjoint intervals, plus the multiplicity of zero.
#[derive(Clone, Debug)]
pub struct RootIsolation {
    degree: usize,
    zero_multiplicity: usize,
    integer_roots: Vec<(BigInt, usize)>,
    factors: Vec<(IntPolynomial, usize)>,
    roots: Vec<IsolatedRoot>,
}

impl RootIsolation {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.zero_multiplicity
    }

    /// Nonzero integer roots removed by deflation, with multiplicities.
    pub fn integer_roots(&self) -> &[(BigInt, usize)] {
        &self.integer_roots
    }

    /// Square-free factors of what remains after deflation, with multiplicities.
    pub fn factors(&self) -> &[(IntPolynomial, usize)] {
        &self.factors
    }

    /// Sorted by position on the real line.
    pub fn roots(&self) -> &[IsolatedRoot] {
        &self.roots
    }

    /// Zero multiplicity plus the multiplicities of all isolated roots.
    pub fn total_multiplicity(&self) -> usize {
        self.zero_multiplicity + self.roots.iter().map(|r| r.multiplicity).sum::<usize>()
    }

    /// Every root is exact (zero or found as a point).
    pub fn all_exact(&self) -> bool {
        self.roots.iter().all(|r| r.interval.is_point())
    }

    fn refine_one(&mut self, i: usize, target: &Dyadic) {
        let root = &self.roots[i];
        let Some(f) = root.factor else {
            return;
        };
        let refined = refine_root(&self.factors[f].0, &root.interval, target)
            .expect("isolating intervals bracket a sign change");
        self.roots[i].interval = refined;
    }

    /// Narrows every interval to width at most `target`.
    pub fn refine_all(&mut self, target: &Dyadic) {
        for i in 0..self.roots.len() {
            self.refine_one(i, target);
        }
    }

    fn separate(&mut self) {
        loop {
            self.roots.sort_by(|a, b| a.interval.lo().cmp(b.interval.lo()));
            let clash = (1..self.roots.len())
                .find(|&i| self.roots[i - 1].interval.overlaps(&self.roots[i].interval));
            let Some(i) = clash else {
                return;
            };
            for j in [i - 1, i] {
                let half = Dyadic::new(self.roots[j].interval.width().mantissa().clone(), self.roots[j].interval.width().exponent() + 1);
                self.refine_one(j, &half);
            }
        }
    }
}

fn deflate_integer_roots(q: &mut IntPolynomial) -> Vec<(BigInt, usize)> {
    let mut found = Vec::new();
    let bound = root_bound(q).mantissa().to_u64().unwrap_or(u64::MAX).min(INTEGER_ROOT_SEARCH);
    for k in 1..=bound {
        if q.degree().unwrap_or(0) == 0 {
            break;
        }
        if !q.coeff(0).is_multiple_of(&BigInt::from(k)) {
            continue;
        }
        for root in [BigInt::from(k), -BigInt::from(k)] {
            let mut mult = 0;
            while q.degree().unwrap_or(0) > 0 && q.eval(&root).is_zero() {
                *q = q.div_exact(&Polynomial::linear_root(root.clone())).expect("linear factor divides");
                mult += 1;
            }
            if mult > 0 {
                found.push((root, mult));
            }
        }
    }
    found
}

/// Isolates all real roots of `p` with multiplicities.
///
/// Only real roots are located; for characteristic polynomials of graphs
/// these account for the full degree.
pub fn isolate_real_roots(p: &IntPolynomial) -> Result<RootIsolation, PolyError> {
    let degree = p.degree().ok_or(PolyError::Zero)?;
    let zero_multiplicity = p.zero_root_multiplicity();
    let mut q = p.shift_down(zero_multiplicity);
    let integer_roots = deflate_integer_roots(&mut q);
    let mut roots: Vec<IsolatedRoot> = integer_roots
        .iter()
        .map(|(r, m)| IsolatedRoot {
            interval: DyadicInterval::point(Dyadic::from_int(r.clone())),
            multiplicity: *m,
            factor: None,
        })
        .collect();
    let factors = if q.degree().unwrap_or(0) > 0 { q.square_free_decomposition()? } else { Vec::new() };
    for (index, (f, mult)) in factors.iter().enumerate() {
        for interval in isolate_square_free(f) {
            let factor = (!interval.is_point()).then_some(index);
            roots.push(IsolatedRoot { interval, multiplicity: *mult, factor });
        }
    }
    let mut isolation = RootIsolation { degree, zero_multiplicity, integer_roots, factors, roots };
    isolation.separate();
    Ok(isolation)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> IntPolynomial {
        s.parse().unwrap()
    }

    fn pow10_neg(k: u32) -> Dyadic {
        // 2^-(ceil(k·log2 10)) <= 10^-k
        let bits = (k as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 1;
        Dyadic::new(BigInt::one(), bits)
    }

    #[test]
    fn sqrt_two_to_fifty_digits() {
        let f = p("x^2 - 2");
        let iso = isolate_real_roots(&f).unwrap();
        assert_eq!(iso.roots().len(), 2);
        assert_eq!(iso.zero_multiplicity(), 0);
        let target = pow10_neg(50);
        let pos = &iso.roots()[1];
        let refined = refine_root(&iso.factors()[pos.factor.unwrap()].0, &pos.interval, &target).unwrap();
        assert!(refined.width() <= target);
        // independent oracle: floor(sqrt(2·10^120)) / 10^60
        let scale = BigInt::from(10).pow(60);
        let s = (BigInt::from(2) * &scale * &scale).sqrt();
        let lo = refined.lo().to_rational();
        let hi = refined.hi().to_rational();
        let oracle_lo = num_rational::BigRational::new(s.clone(), scale.clone());
        let oracle_hi = num_rational::BigRational::new(s + 1, scale);
        assert!(lo <= oracle_hi && oracle_lo <= hi);
        assert!(refined.lo().floor_decimal(20).starts_with("1.41421356237309504880"));
    }

    #[test]
    fn integer_spectra_are_points() {
        let iso = isolate_real_roots(&p("x^4 - 4x^2")).unwrap();
        assert_eq!(iso.zero_multiplicity(), 2);
        let pts: Vec<_> = iso.roots().iter().map(|r| (r.interval.lo().to_f64(), r.multiplicity)).collect();
        assert_eq!(pts, vec![(-2.0, 1), (2.0, 1)]);
        assert!(iso.all_exact());

        let cube = isolate_real_roots(&p("x^3")).unwrap();
        assert_eq!(cube.zero_multiplicity(), 3);
        assert!(cube.roots().is_empty());
        assert!(isolate_real_roots(&IntPolynomial::zero()).is_err());
    }

    #[test]
    fn repeated_irrational_roots_and_multiplicities() {
        // (x^2 - 2)^2 (x^2 - 3)(x - 7)^3 (x + 1)
        let f = &(&p("x^2 - 2").pow(2) * &p("x^2 - 3")) * &(&p("x - 7").pow(3) * &p("x + 1"));
        let iso = isolate_real_roots(&f).unwrap();
        assert_eq!(iso.total_multiplicity(), f.degree().unwrap());
        let mults: Vec<usize> = iso.roots().iter().map(|r| r.multiplicity).collect();
        assert_eq!(mults, vec![1, 2, 1, 2, 1, 3]);
        for w in iso.roots().windows(2) {
            assert!(!w[0].interval.overlaps(&w[1].interval));
        }
    }

    #[test]
    fn close_roots_are_separated() {
        // roots 1/1000 apart: (1000x - 1)(1000x - 2)(x - 5) has rational roots, the
        // quadratic factor 10^6 x^2 - 3000x + 2 is square-free
        let f = &p("1000000x^2 - 3000x + 2") * &p("x - 5");
        let iso = isolate_real_roots(&f).unwrap();
        assert_eq!(iso.roots().len(), 3);
        let target = pow10_neg(12);
        let mut iso = iso;
        iso.refine_all(&target);
        let approx: Vec<f64> = iso.roots().iter().map(|r| r.interval.lo().to_f64()).collect();
        assert!((approx[0] - 0.001).abs() < 1e-11 && (approx[1] - 0.002).abs() < 1e-11);
    }

    #[test]
    fn sturm_counts_distinct_roots() {
        let f = p("x^3 - 3x + 1"); // three roots in (-2, 2)
        let chain = sturm_chain(&f).unwrap();
        let a = Dyadic::from_int(-2);
        let b = Dyadic::from_int(2);
        assert_eq!(sign_changes(&chain, &a) - sign_changes(&chain, &b), 3);
        assert_eq!(sign_at(&f, &Dyadic::new(BigInt::from(1), 1)), -1);
    }

    #[test]
    fn refine_root_errors_without_sign_change() {
        let f = p("x^2 + 1");
        let i = DyadicInterval::new(Dyadic::from_int(0), Dyadic::from_int(1));
        assert_eq!(refine_root(&f, &i, &Dyadic::new(BigInt::one(), 4)), Err(PolyError::NoSignChange));
    }
}
