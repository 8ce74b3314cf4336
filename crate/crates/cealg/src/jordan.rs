//! Nilpotent Jordan normal form with an explicit change of basis.
//!
//! The chain basis is constructed deterministically from the kernel
//! filtration ker A, ker A^2, ..., picking chain tops in canonical
//! echelon order from the largest power downward, so repeated runs give
//! bit-identical output.

use crate::field::Scalar;
use crate::mat::{LinMap, LinalgError, Mat};
use crate::subspace::{solve_kernel, Echelon};

#[derive(Clone, Debug)]
pub struct JordanData {
    /// Change of basis with P^-1 A P = J.
    pub p: Mat,
    pub p_inv: Mat,
    /// Weakly decreasing Jordan block sizes summing to n.
    pub partition: Vec<usize>,
    /// The canonical nilpotent Jordan matrix of the partition.
    pub j: Mat,
}

/// The block-diagonal nilpotent Jordan matrix for a partition: each block
/// of size k is the upper shift with ones on the superdiagonal.
pub fn jordan_matrix(n: usize, partition: &[usize], field: crate::field::FieldSpec) -> Mat {
    assert_eq!(partition.iter().sum::<usize>(), n);
    let mut j = Mat::zero(n, field);
    let mut offset = 0;
    for &size in partition {
        for i in 0..size.saturating_sub(1) {
            j.set(offset + i, offset + i + 1, field.one());
        }
        offset += size;
    }
    j
}

/// Partition read off the kernel filtration alone: the number of blocks
/// of size >= k equals dim ker A^k - dim ker A^(k-1). This is the route
/// the chain construction is checked against.
pub fn partition_from_kernel_dims(kernel_dims: &[usize]) -> Vec<usize> {
    let mut jumps = Vec::new();
    let mut prev = 0;
    for &d in kernel_dims {
        jumps.push(d - prev);
        prev = d;
    }
    let blocks = jumps.first().copied().unwrap_or(0);
    (0..blocks)
        .map(|b| jumps.iter().filter(|&&c| c > b).count())
        .collect()
}

fn as_linmap(m: &Mat) -> LinMap {
    let n = m.n();
    let rows = (0..n)
        .map(|i| (0..n).map(|j| m.get(i, j).clone()).collect())
        .collect();
    LinMap::from_rows(m.field(), rows)
}

fn apply(m: &Mat, v: &[Scalar]) -> Vec<Scalar> {
    let n = m.n();
    (0..n)
        .map(|i| {
            let mut acc = m.field().zero();
            for (j, x) in v.iter().enumerate() {
                if !x.is_zero() && !m.get(i, j).is_zero() {
                    acc = acc.add(&m.get(i, j).mul(x));
                }
            }
            acc
        })
        .collect()
}

/// Jordan form of a nilpotent matrix. Nilpotency is verified by powering
/// (exact and field-agnostic); non-nilpotent input is an error.
pub fn nilpotent_jordan(a: &Mat) -> Result<JordanData, LinalgError> {
    let n = a.n();
    let field = a.field();

    let mut powers = vec![Mat::identity(n, field)];
    let mut index = None;
    for k in 1..=n {
        let next = powers.last().unwrap().mul(a);
        let is_zero = next.is_zero();
        powers.push(next);
        if is_zero {
            index = Some(k);
            break;
        }
    }
    let index = index.ok_or(LinalgError::NotNilpotent)?;

    // Kernel filtration ker A^1 subset ... subset ker A^index = F^n.
    let kernels: Vec<Echelon> = (1..=index)
        .map(|k| solve_kernel(&as_linmap(&powers[k])))
        .collect();
    let kernel_dims: Vec<usize> = kernels.iter().map(Echelon::dim).collect();
    debug_assert_eq!(*kernel_dims.last().unwrap(), n);

    // Chains stored deepest-first: chain[i] has height i + 1, the top is
    // last. At height k every previously built chain (length > k) blocks
    // with its height-k element chain[k - 1].
    let mut chains: Vec<Vec<Vec<Scalar>>> = Vec::new();
    for k in (1..=index).rev() {
        let mut blocked = if k >= 2 {
            kernels[k - 2].clone()
        } else {
            Echelon::new(n, field)
        };
        for chain in &chains {
            let grew = blocked.insert(chain[k - 1].clone());
            debug_assert!(grew, "chain images stay independent modulo the filtration");
        }
        let mut new_tops = Vec::new();
        for row in kernels[k - 1].rows() {
            if blocked.insert(row.clone()) {
                new_tops.push(row.clone());
            }
        }
        for top in new_tops {
            let mut chain = vec![top.clone()];
            let mut cur = top;
            for _ in 1..k {
                cur = apply(a, &cur);
                chain.push(cur.clone());
            }
            chain.reverse();
            chains.push(chain);
        }
    }

    let partition: Vec<usize> = chains.iter().map(Vec::len).collect();
    assert!(partition.windows(2).all(|w| w[0] >= w[1]));
    assert_eq!(partition, partition_from_kernel_dims(&kernel_dims));

    let mut p = Mat::zero(n, field);
    let mut col = 0;
    for chain in &chains {
        for vec in chain {
            for (i, x) in vec.iter().enumerate() {
                p.set(i, col, x.clone());
            }
            col += 1;
        }
    }
    let p_inv = p.inverse().ok_or(LinalgError::Singular)?;
    let j = p_inv.mul(a).mul(&p);
    assert_eq!(j, jordan_matrix(n, &partition, field), "chain basis must realize the Jordan matrix");
    Ok(JordanData { p, p_inv, partition, j })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn already_jordan_single_block() {
        let a = Mat::unit(3, f3(), 0, 1).add(&Mat::unit(3, f3(), 1, 2));
        let data = nilpotent_jordan(&a).unwrap();
        assert_eq!(data.partition, vec![3]);
        assert_eq!(data.j, a);
    }

    #[test]
    fn corner_unit_splits_into_two_blocks() {
        // rank 1 and square zero force the partition (2, 1)
        let a = Mat::unit(3, f3(), 0, 2);
        assert!(a.pow(2).is_zero());
        let data = nilpotent_jordan(&a).unwrap();
        assert_eq!(data.partition, vec![2, 1]);
        assert_eq!(data.p.mul(&data.j), a.mul(&data.p));
    }

    #[test]
    fn full_superdiagonal_is_one_block() {
        // strictly upper with nonzero superdiagonal: A^4 != 0 forces (5)
        let q = FieldSpec::Rationals;
        let a = Mat::from_int_rows(q, &[
            vec![0, 2, 5, -1, 3],
            vec![0, 0, 1, 4, -2],
            vec![0, 0, 0, 3, 1],
            vec![0, 0, 0, 0, 2],
            vec![0, 0, 0, 0, 0],
        ]);
        assert!(!a.pow(4).is_zero());
        let data = nilpotent_jordan(&a).unwrap();
        assert_eq!(data.partition, vec![5]);
        assert_eq!(data.p_inv.mul(&a).mul(&data.p), data.j);
    }

    #[test]
    fn rejects_non_nilpotent() {
        let m = Mat::identity(2, f3());
        assert_eq!(nilpotent_jordan(&m).err(), Some(LinalgError::NotNilpotent));
    }

    #[test]
    fn zero_matrix_gives_all_ones_partition() {
        let z = Mat::zero(4, f3());
        let data = nilpotent_jordan(&z).unwrap();
        assert_eq!(data.partition, vec![1, 1, 1, 1]);
        assert!(data.j.is_zero());
    }
}
