//! Integer and lattice arithmetic for Bohr–Sommerfeld covers: minimal index,
//! kernel sublattices of mod-k action homomorphisms, and the Bott degree
//! formula.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::{Error, Result};

/// Symplectic areas of a basis of relative 2-cycles, in units of π.
#[derive(Clone, Debug)]
pub struct ActionClass {
    pub values: Vec<BigRational>,
}

/// Smallest k ≥ 1 such that k·v is an integer for every value (least common
/// denominator).
pub fn minimal_bs_index(action: &ActionClass) -> Result<u64> {
    if action.values.is_empty() {
        return Err(Error::Schema("action class must be nonempty".into()));
    }
    let mut k = BigInt::from(1);
    for v in &action.values {
        k = k.lcm(v.denom());
    }
    k.to_u64()
        .ok_or_else(|| Error::Unsupported("Bohr–Sommerfeld index overflows".into()))
}

/// The kernel sublattice of σ̄: Z^n → Z_k, x ↦ Σ residues_i x_i (mod k).
#[derive(Clone, Debug)]
pub struct CoverData {
    pub k: u64,
    pub residues: Vec<i64>,
    /// Columns span ker σ̄; column-style Hermite normal form.
    pub kernel_basis: Vec<Vec<i64>>,
    pub index: u64,
}

/// Column-style Hermite normal form of an integer matrix given by columns:
/// lower-triangular with positive diagonal and off-diagonal entries reduced
/// into [0, diagonal).
fn hermite_columns(mut cols: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let n = cols[0].len();
    let mut result: Vec<Vec<i64>> = Vec::new();
    for row in 0..n {
        // Reduce all remaining columns against each other on this row.
        loop {
            cols.retain(|c| c.iter().any(|&x| x != 0));
            let mut nonzero: Vec<usize> = (0..cols.len())
                .filter(|&j| cols[j][row] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&j| cols[j][row].unsigned_abs());
            let (small, other) = (nonzero[0], nonzero[1]);
            let q = cols[other][row].div_euclid(cols[small][row]);
            for i in 0..n {
                cols[other][i] -= q * cols[small][i];
            }
        }
        if let Some(j) = (0..cols.len()).find(|&j| cols[j][row] != 0) {
            let mut pivot = cols.remove(j);
            if pivot[row] < 0 {
                for x in pivot.iter_mut() {
                    *x = -*x;
                }
            }
            // Reduce earlier pivots' entries in this row into [0, pivot).
            for prev in result.iter_mut() {
                let q = prev[row].div_euclid(pivot[row]);
                for i in 0..n {
                    prev[i] -= q * pivot[i];
                }
            }
            result.push(pivot);
        }
    }
    result
}

fn det_lower_triangular(cols: &[Vec<i64>], n: usize) -> i64 {
    // After HNF the j-th column's pivot sits at its first nonzero row; for a
    // full-rank lattice basis of Z^n the pivots are the diagonal.
    let mut det = 1i64;
    for (j, c) in cols.iter().enumerate() {
        if j >= n {
            break;
        }
        det *= c[j];
    }
    det
}

pub fn cover_lattice(residues: &[i64], k: u64) -> Result<CoverData> {
    if k == 0 {
        return Err(Error::Schema("cover index must be positive".into()));
    }
    let n = residues.len();
    if n == 0 {
        return Err(Error::Schema("need at least one homology generator".into()));
    }
    let ki = k as i64;
    // Surjectivity: gcd(residues, k) must be 1.
    let mut g = ki;
    for &r in residues {
        g = g.gcd(&r.rem_euclid(ki));
    }
    if g != 1 {
        return Err(Error::ModeMismatch(format!("cover not of index {k}")));
    }
    // Generators of the kernel: k·e_i for all i, and for each pair (0, i) the
    // combination canceling residues. A simple generating set: k·e_i and, for
    // each i, the vector r_i·e_j − r_j·e_i … we instead collect all vectors
    // e_i·k and e_i·s_i where s_i solves Σ r·x ≡ 0 via pairwise elimination.
    // Brute, correct generating set: k e_i, plus for every pair (i, j) the
    // vector r_j e_i − r_i e_j.
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = ki;
        gens.push(v);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let mut v = vec![0i64; n];
            v[i] = residues[j];
            v[j] = -residues[i];
            gens.push(v);
        }
    }
    let basis = hermite_columns(gens);
    if basis.len() != n {
        return Err(Error::Internal("kernel basis is not full rank".into()));
    }
    // Membership check.
    for col in &basis {
        let dot: i64 = col.iter().zip(residues).map(|(x, r)| x * r).sum();
        if dot.rem_euclid(ki) != 0 {
            return Err(Error::Internal("basis vector escapes the kernel".into()));
        }
    }
    let det = det_lower_triangular(&basis, n).unsigned_abs();
    if det != k {
        return Err(Error::Internal(format!(
            "kernel basis has index {det}, expected {k}"
        )));
    }
    Ok(CoverData {
        k,
        residues: residues.to_vec(),
        kernel_basis: basis,
        index: det,
    })
}

/// Brute-force oracle: index of the kernel as the number of residue classes
/// of Z^n/ker σ̄, enumerated on representatives {0,…,k−1}^n.
pub fn cover_index_oracle(residues: &[i64], k: u64) -> u64 {
    let ki = k as i64;
    let n = residues.len();
    let mut classes = std::collections::BTreeSet::new();
    let mut point = vec![0i64; n];
    loop {
        let r: i64 = point
            .iter()
            .zip(residues)
            .map(|(x, c)| x * c)
            .sum::<i64>()
            .rem_euclid(ki);
        classes.insert(r);
        // Increment the mixed-radix counter.
        let mut i = 0;
        loop {
            if i == n {
                return classes.len() as u64;
            }
            point[i] += 1;
            if point[i] < ki {
                break;
            }
            point[i] = 0;
            i += 1;
        }
    }
}

/// Bott degree 2·N_ω·l/k − 1 with integrality and positivity reporting.
#[derive(Clone, Copy, Debug)]
pub struct BottDegree {
    pub degree: i64,
    pub positive: bool,
}

pub fn bott_degree(n_omega: i64, k: i64, l: i64) -> Result<BottDegree> {
    if k <= 0 || l < 1 {
        return Err(Error::Schema("need k ≥ 1 and l ≥ 1".into()));
    }
    let num = 2 * n_omega * l;
    if num % k != 0 {
        return Err(Error::Schema(format!(
            "2·{n_omega}·{l} is not divisible by {k}"
        )));
    }
    let degree = num / k - 1;
    Ok(BottDegree {
        degree,
        positive: degree > 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn third() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(3))
    }

    #[test]
    fn minimal_index() {
        let a = ActionClass { values: vec![third(), third()] };
        assert_eq!(minimal_bs_index(&a).unwrap(), 3);
        let b = ActionClass {
            values: vec![
                BigRational::new(BigInt::from(1), BigInt::from(2)),
                BigRational::new(BigInt::from(1), BigInt::from(2)),
            ],
        };
        assert_eq!(minimal_bs_index(&b).unwrap(), 2);
        let c = ActionClass {
            values: vec![
                BigRational::from_integer(BigInt::from(1)),
                BigRational::from_integer(BigInt::from(2)),
            ],
        };
        assert_eq!(minimal_bs_index(&c).unwrap(), 1);
    }

    #[test]
    fn kernel_of_index_three() {
        let data = cover_lattice(&[1, 1], 3).unwrap();
        assert_eq!(data.index, 3);
        assert_eq!(cover_index_oracle(&[1, 1], 3), 3);
        // Every basis vector is in the kernel and the determinant is 3.
        assert_eq!(data.kernel_basis.len(), 2);
    }

    #[test]
    fn non_surjective_rejected() {
        assert!(cover_lattice(&[2, 2], 4).is_err());
        assert!(cover_lattice(&[0, 0], 1).is_ok());
    }

    #[test]
    fn bott_degrees() {
        assert_eq!(bott_degree(3, 3, 1).unwrap().degree, 1);
        assert_eq!(bott_degree(3, 3, 3).unwrap().degree, 5);
        assert_eq!(bott_degree(2, 2, 1).unwrap().degree, 1);
        // 2·3·1/2 = 3 is integral, so (3, 2, 1) is fine; (3, 4, 1) is not.
        assert_eq!(bott_degree(3, 2, 1).unwrap().degree, 2);
        assert!(bott_degree(3, 4, 1).is_err());
    }
}
