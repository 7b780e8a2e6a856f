//! Exact integer linear algebra and the level K-groups and Bowen–Franks groups.
//!
//! For level `l` with `M_l = I_l^t − A_l^t` (a map `Z^{m(l)} → Z^{m(l+1)}`):
//!
//! * `K0_l = coker M_l`, `K1_l = ker M_l`,
//! * `BF0_l = coker(I_l − A_l)`, `BF1_l = ker(I_l − A_l)`.
//!
//! When `ι` is the identity these are the usual `coker/ker (I − A^t)` and
//! `coker/ker (I − A)` of a single matrix. `x ↦ I_{l+1}^t x` induces the
//! connecting map `K0_l → K0_{l+1}` and `x ↦ I_l^t x` the map `K1_l → K1_{l+1}`.

mod group;
mod matrix;
mod report;

use num_traits::Zero;

pub use group::{groups_isomorphic, AbelianGroup};
pub use matrix::{determinant, invariant_factors, kernel_basis, smith_normal_form, solve, IntMatrix, SmithDecomposition};
pub use report::{
    connecting_map_check, invariant_report, level_groups, ConnectingMap, InvariantReport, LevelGroups,
};

/// `Z^rows / M·Z^cols`.
pub fn cokernel(m: &IntMatrix) -> AbelianGroup {
    cokernel_and_kernel(m).0
}

/// `ker M ⊆ Z^cols`, always free.
pub fn kernel_group(m: &IntMatrix) -> AbelianGroup {
    cokernel_and_kernel(m).1
}

/// Both groups from one elimination.
pub fn cokernel_and_kernel(m: &IntMatrix) -> (AbelianGroup, AbelianGroup) {
    let factors = invariant_factors(m);
    let rank = factors.iter().filter(|x| !x.is_zero()).count();
    (
        AbelianGroup::from_invariant_factors(factors, m.rows()),
        AbelianGroup::free(m.cols() - rank),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert!(cokernel(&m(&[vec![-1]])).is_trivial());
        assert_eq!(cokernel(&m(&[vec![-2]])), AbelianGroup::new(0, &[BigInt::from(2)]));
        assert_eq!(cokernel(&IntMatrix::zeros(2, 2)), AbelianGroup::free(2));
    }

    #[test]
    fn kernel_examples() {
        let gm = m(&[vec![0, -1], vec![-1, 1]]);
        assert!(kernel_group(&gm.transpose()).is_trivial());
        assert_eq!(kernel_group(&IntMatrix::zeros(2, 2)), AbelianGroup::free(2));
        assert_eq!(kernel_group(&m(&[vec![1, 1]])), AbelianGroup::free(1));
    }
}
