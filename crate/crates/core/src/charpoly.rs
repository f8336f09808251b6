//! Characteristic polynomials det(λI − A) by the Faddeev–LeVerrier recurrence.
//!
//! M₁ = I, c_{n−k} = −tr(A·M_k)/k, M_{k+1} = A·M_k + c_{n−k}·I. Every
//! division is exact, and since A is a 0/1 matrix the product A·M only
//! needs row additions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed};

use crate::graph::Graph;
use crate::poly::Polynomial;

/// Characteristic polynomial over any integer type wide enough for the intermediates.
pub fn char_poly_in<T>(g: &Graph) -> Polynomial<T>
where
    T: Clone + Integer + Signed + FromPrimitive,
{
    let n = g.order();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    let mut m = vec![T::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = T::one();
    }
    let mut am = vec![T::zero(); n * n];
    for k in 1..=n {
        for i in 0..n {
            let row = &mut am[i * n..(i + 1) * n];
            row.iter_mut().for_each(|x| *x = T::zero());
            let mut nbrs = g.neighbors(i);
            while nbrs != 0 {
                let l = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                for (x, y) in row.iter_mut().zip(&m[l * n..(l + 1) * n]) {
                    *x = x.clone() + y.clone();
                }
            }
        }
        let trace = (0..n).fold(T::zero(), |acc, i| acc + am[i * n + i].clone());
        let divisor = T::from_usize(k).expect("order fits the scalar type");
        let c = T::zero() - trace / divisor;
        if k < n {
            std::mem::swap(&mut m, &mut am);
            for i in 0..n {
                m[i * n + i] = m[i * n + i].clone() + c.clone();
            }
        }
        coeffs[n - k] = c;
    }
    Polynomial::new(coeffs)
}

/// Exact characteristic polynomial with arbitrary-precision coefficients.
pub fn char_poly(g: &Graph) -> Polynomial<BigInt> {
    char_poly_in::<BigInt>(g)
}
