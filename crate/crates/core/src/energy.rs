//! Graph energy: float estimates, certified enclosures, and equality verdicts.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::charpoly::char_poly;
use crate::dyadic::{Dyadic, DyadicInterval};
use crate::graph::Graph;
use crate::jacobi::{energy_float_in, FloatEnergyOf};
use crate::roots::{isolate_real_roots, IntPolynomial, RootIsolation};

pub type FloatEnergy = FloatEnergyOf<f64>;

/// Guard-digit doublings attempted before giving up on the requested width.
const MAX_GUARD_DOUBLINGS: u32 = 4;

pub fn energy_f64(g: &Graph) -> FloatEnergy {
    energy_float_in::<f64>(g)
}

/// Certified enclosure `lo ≤ E ≤ hi` of a graph energy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyInterval {
    interval: DyadicInterval,
    digits: u32,
    width_met: bool,
}

impl EnergyInterval {
    pub fn interval(&self) -> &DyadicInterval {
        &self.interval
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// False only if the guard-digit retries ran out before reaching `10^-digits`.
    pub fn width_met(&self) -> bool {
        self.width_met
    }

    /// Decimal places used for printing: one more than the certified digits.
    pub fn places(&self) -> u32 {
        self.digits + 1
    }

    pub fn lo_decimal(&self) -> String {
        self.interval.lo().floor_decimal(self.places())
    }

    pub fn hi_decimal(&self) -> String {
        self.interval.hi().ceil_decimal(self.places())
    }

    pub fn contains_rational(&self, x: &BigRational) -> bool {
        &self.interval.lo().to_rational() <= x && x <= &self.interval.hi().to_rational()
    }

    pub fn contains_f64(&self, x: f64) -> bool {
        Dyadic::from_f64(x).is_some_and(|d| self.interval.contains(&d))
    }

    pub fn midpoint_f64(&self) -> f64 {
        self.interval.lo().midpoint(self.interval.hi()).to_f64()
    }

    pub fn distance(&self, other: &EnergyInterval) -> Dyadic {
        self.interval.distance(&other.interval)
    }
}

impl fmt::Display for EnergyInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E ∈ [{}, {}] ({} digits)", self.lo_decimal(), self.hi_decimal(), self.digits)
    }
}

/// Smallest `k` with `2^-k ≤ 10^-places`.
fn bits_for_places(places: u32) -> u32 {
    BigInt::from(10).pow(places).bits() as u32
}

fn guard_digits(degree: usize) -> u32 {
    10 + (degree.max(1) as f64).log10().ceil() as u32
}

/// A characteristic polynomial and its root isolation, refined in place across calls.
#[derive(Clone, Debug)]
pub struct SpectralData {
    poly: IntPolynomial,
    isolation: RootIsolation,
}

impl SpectralData {
    pub fn of_graph(g: &Graph) -> Self {
        Self::of_poly(char_poly(g))
    }

    pub fn of_poly(poly: IntPolynomial) -> Self {
        let isolation = isolate_real_roots(&poly).expect("characteristic polynomials are monic");
        SpectralData { poly, isolation }
    }

    pub fn poly(&self) -> &IntPolynomial {
        &self.poly
    }

    pub fn isolation(&self) -> &RootIsolation {
        &self.isolation
    }

    fn enclosure(&self) -> DyadicInterval {
        let mut total = DyadicInterval::point(Dyadic::zero());
        for root in self.isolation.roots() {
            total = &total + &root.interval.abs().scale(root.multiplicity as u64);
        }
        total
    }

    /// Energy enclosure of width at most `10^-digits`.
    pub fn energy(&mut self, digits: u32) -> EnergyInterval {
        assert!(digits >= 1, "at least one digit is required");
        let degree = self.isolation.degree();
        // internal width 10^-(digits+1) leaves room for outward decimal rounding at digits+1 places
        let wanted = digits + 1;
        let mut guard = guard_digits(degree);
        for _ in 0..=MAX_GUARD_DOUBLINGS {
            let target = Dyadic::new(BigInt::one(), bits_for_places(digits + guard));
            self.isolation.refine_all(&target);
            let interval = self.enclosure();
            if interval.width().at_most_pow10_neg(wanted) {
                return EnergyInterval { interval, digits, width_met: true };
            }
            guard *= 2;
        }
        let interval = self.enclosure();
        EnergyInterval { interval, digits, width_met: false }
    }

    /// The polynomial as recovered by deflation and square-free splitting,
    /// e.g. `λ^2(λ - 9)(λ + 2)^12(λ^2 - 3λ - 2)`.
    pub fn factored_text(&self) -> String {
        fn power(base: String, m: usize) -> String {
            if m == 1 { base } else { format!("{base}^{m}") }
        }
        let iso = &self.isolation;
        let mut out = String::new();
        if iso.zero_multiplicity() > 0 {
            out.push_str(&power("λ".into(), iso.zero_multiplicity()));
        }
        let mut ints: Vec<_> = iso.integer_roots().to_vec();
        ints.sort_by(|a, b| b.0.cmp(&a.0));
        for (r, m) in ints {
            out.push_str(&power(format!("({})", IntPolynomial::linear_root(r)), m));
        }
        for (f, m) in iso.factors() {
            out.push_str(&power(format!("({f})"), *m));
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }

    /// Exact symbolic shape of the energy, when the factor structure allows it.
    pub fn closed_form(&self) -> EnergyForm {
        EnergyForm::from_isolation(&self.isolation)
    }
}

pub fn energy_certified(g: &Graph, digits: u32) -> EnergyInterval {
    SpectralData::of_graph(g).energy(digits)
}

/// Largest square dividing small factors of `d` pulled out: `d = s² · r`.
fn split_square(d: &BigInt) -> (BigInt, BigInt) {
    let mut s = BigInt::one();
    let mut r = d.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &p * &p <= r && p <= limit {
        let p2 = &p * &p;
        while (&r % &p2).is_zero() {
            r /= &p2;
            s *= &p;
        }
        p += 1;
    }
    let root = r.sqrt();
    if &root * &root == r {
        s *= root;
        r = BigInt::one();
    }
    (s, r)
}

/// Energy written as `q + Σ qᵢ√dᵢ + Σ mⱼ·E(fⱼ)`, with `E(f)` the sum of `|roots(f)|`.
///
/// Equal forms imply equal energies; unequal forms prove nothing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnergyForm {
    pub rational: BigRational,
    pub surds: BTreeMap<BigInt, BigRational>,
    pub other: BTreeMap<IntPolynomial, usize>,
}

impl EnergyForm {
    fn from_isolation(iso: &RootIsolation) -> Self {
        let mut rational = BigRational::zero();
        let mut surds: BTreeMap<BigInt, BigRational> = BTreeMap::new();
        let mut other: BTreeMap<IntPolynomial, usize> = BTreeMap::new();
        for (r, m) in iso.integer_roots() {
            rational += BigRational::from_integer(r.abs() * BigInt::from(*m));
        }
        for (f, m) in iso.factors() {
            let mult = BigRational::from_integer(BigInt::from(*m));
            let lc = f.leading().expect("factor is nonzero").abs();
            match f.degree() {
                None | Some(0) => {}
                Some(1) => rational += BigRational::new(f.coeff(0).abs(), lc) * mult,
                Some(2) => {
                    let (a, b, c) = (f.coeff(2), f.coeff(1), f.coeff(0));
                    if !(c.is_negative() ^ a.is_negative()) {
                        // both roots share a sign
                        rational += BigRational::new(b.abs(), lc) * mult;
                    } else {
                        let disc = &b * &b - BigInt::from(4) * &a * &c;
                        let (s, r) = split_square(&disc);
                        let coeff = BigRational::new(s, lc) * mult;
                        if r.is_one() {
                            rational += coeff;
                        } else {
                            *surds.entry(r).or_insert_with(BigRational::zero) += coeff;
                        }
                    }
                }
                _ => {
                    let key = if f.leading().is_some_and(Signed::is_negative) { -f } else { f.clone() };
                    *other.entry(key).or_insert(0) += m;
                }
            }
        }
        EnergyForm { rational, surds, other }
    }

    /// The energy is a rational number.
    pub fn as_rational(&self) -> Option<&BigRational> {
        (self.surds.is_empty() && self.other.is_empty()).then_some(&self.rational)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    EqualCertifiedExactly,
    EqualToDigits,
    Distinct,
}

impl Verdict {
    pub fn is_equal(self) -> bool {
        self != Verdict::Distinct
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::EqualCertifiedExactly => "EqualCertifiedExactly",
            Verdict::EqualToDigits => "EqualToDigits",
            Verdict::Distinct => "Distinct",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Verdict plus the enclosures it was based on.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub verdict: Verdict,
    pub cospectral: bool,
    pub a: EnergyInterval,
    pub b: EnergyInterval,
}

/// Compares two energies already held as spectral data at `digits`.
pub fn compare_spectral(a: &mut SpectralData, b: &mut SpectralData, digits: u32) -> Comparison {
    let ea = a.energy(digits);
    let eb = b.energy(digits);
    let cospectral = a.poly == b.poly;
    let verdict = if cospectral || a.closed_form() == b.closed_form() {
        Verdict::EqualCertifiedExactly
    } else if !ea.interval.overlaps(&eb.interval) {
        Verdict::Distinct
    } else {
        Verdict::EqualToDigits
    };
    Comparison { verdict, cospectral, a: ea, b: eb }
}

pub fn energies_equal(g: &Graph, h: &Graph, digits: u32) -> Verdict {
    compare_spectral(&mut SpectralData::of_graph(g), &mut SpectralData::of_graph(h), digits).verdict
}

pub fn is_cospectral(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order() && g.size() == h.size() && char_poly(g) == char_poly(h)
}

/// Integer `k` enclosed by the interval, if the interval pins one down.
pub fn enclosed_integer(e: &EnergyInterval) -> Option<i64> {
    let k = e.midpoint_f64().round();
    let r = BigRational::from_integer(BigInt::from(k.to_i64()?));
    e.contains_rational(&r).then_some(k as i64)
}
