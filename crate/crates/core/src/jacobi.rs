//! Cyclic Jacobi eigenvalues for symmetric matrices, generic over the float type.

use num_traits::Float;

use crate::graph::Graph;

const MAX_SWEEPS: usize = 100;

/// Float energy estimate with an a-posteriori error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatEnergyOf<T> {
    pub estimate: T,
    pub error_bound: T,
}

/// Result of diagonalizing a dense symmetric matrix.
#[derive(Clone, Debug)]
pub struct JacobiResult<T> {
    /// Final diagonal, unsorted.
    pub eigenvalues: Vec<T>,
    /// Frobenius norm of the remaining off-diagonal part.
    pub off_norm: T,
    pub sweeps: usize,
}

fn off_norm<T: Float>(a: &[T], n: usize) -> T {
    let mut s = T::zero();
    for i in 0..n {
        for j in i + 1..n {
            s = s + a[i * n + j] * a[i * n + j];
        }
    }
    (s + s).sqrt()
}

/// Diagonalizes the row-major symmetric `n × n` matrix `a` in place.
///
/// Sweeps stop when the off-diagonal norm drops below
/// `n · max(1e-12, 8ε‖A‖_F)` or after a fixed sweep cap.
pub fn jacobi_eigenvalues<T: Float>(mut a: Vec<T>, n: usize) -> JacobiResult<T> {
    assert_eq!(a.len(), n * n, "matrix must be n × n");
    let frob = a.iter().fold(T::zero(), |s, &x| s + x * x).sqrt();
    let n_t = T::from(n.max(1)).expect("order fits the float type");
    let eight_eps = T::from(8.0).expect("small constant") * T::epsilon();
    let floor = T::from(1e-12).unwrap_or_else(T::epsilon);
    let tol = floor.max(eight_eps * frob) * n_t;
    let two = T::one() + T::one();
    let mut sweeps = 0;
    let mut off = off_norm(&a, n);
    while off >= tol && sweeps < MAX_SWEEPS {
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = T::zero();
                a[q * n + p] = T::zero();
            }
        }
        off = off_norm(&a, n);
    }
    let eigenvalues = (0..n).map(|i| a[i * n + i]).collect();
    JacobiResult { eigenvalues, off_norm: off, sweeps }
}

/// Energy of `g` in floating point.
///
/// Each diagonal entry is within the off-diagonal norm of an eigenvalue, so
/// the sum is off by at most `n · off` plus rounding, bounded by `n² ε ‖A‖_F`.
pub fn energy_float_in<T: Float>(g: &Graph) -> FloatEnergyOf<T> {
    let n = g.order();
    let a: Vec<T> = g.adjacency_matrix::<T>();
    let frob = T::from(2 * g.size()).expect("edge count fits").sqrt();
    let result = jacobi_eigenvalues(a, n);
    let estimate = result.eigenvalues.iter().fold(T::zero(), |s, x| s + x.abs());
    let n_t = T::from(n).expect("order fits the float type");
    let error_bound = n_t * result.off_norm + n_t * n_t * T::epsilon() * frob;
    FloatEnergyOf { estimate, error_bound }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, hypercube};

    #[test]
    fn known_energies() {
        let cases = [(cycle(4).unwrap(), 4.0), (complete(6).unwrap(), 10.0), (cycle(4).unwrap().complement(), 4.0), (hypercube(3).unwrap(), 12.0)];
        for (g, e) in cases {
            let fe = energy_float_in::<f64>(&g);
            assert!((fe.estimate - e).abs() <= fe.error_bound.max(1e-12), "{g:?}: {fe:?}");
            assert!(fe.error_bound < 1e-9);
        }
        assert_eq!(energy_float_in::<f64>(&Graph::empty(5)).estimate, 0.0);
    }

    #[test]
    fn single_precision_works() {
        let fe = energy_float_in::<f32>(&cycle(5).unwrap());
        // spectrum 2, 2cos(2π/5) ×2, 2cos(4π/5) ×2
        assert!((fe.estimate - 6.472136).abs() < 1e-4);
    }

    #[test]
    fn eigenvalues_of_a_dense_matrix() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let r = jacobi_eigenvalues(vec![2.0, 1.0, 1.0, 2.0], 2);
        let mut ev = r.eigenvalues;
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] - 3.0).abs() < 1e-14);
    }
}
