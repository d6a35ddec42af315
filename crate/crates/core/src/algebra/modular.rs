//! Rank modulo a large prime, used as a one-sided certificate: a matrix whose
//! reduction mod `p` has full rank has full rank over `Q`. A deficient result
//! proves nothing and callers fall back to exact elimination.

use num::{BigInt, Integer, ToPrimitive};

use super::matrix::Matrix;
use super::rational::Rational;

/// The Mersenne prime `2^61 − 1`.
pub const PRIME: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(PRIME)) as u64
}

fn add(a: u64, b: u64) -> u64 {
    (a + b) % PRIME
}

fn sub(a: u64, b: u64) -> u64 {
    (a + PRIME - b) % PRIME
}

fn pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

fn inv(a: u64) -> u64 {
    pow(a, PRIME - 2)
}

fn reduce_int(x: &BigInt) -> u64 {
    x.mod_floor(&BigInt::from(PRIME)).to_u64().expect("residue fits in u64")
}

/// Image of `x` in `F_p`, or `None` when `p` divides the denominator.
pub fn reduce(x: &Rational) -> Option<u64> {
    if x.is_integer() {
        return Some(reduce_int(x.numer()));
    }
    let d = reduce_int(x.denom());
    (d != 0).then(|| mul(reduce_int(x.numer()), inv(d)))
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

/// Image of an integer in `F_p`.
pub fn from_i64(x: i64) -> u64 {
    x.rem_euclid(PRIME as i64) as u64
}

/// `Σ c_j v_j` coordinatewise over `F_p`.
pub fn combine(terms: &[(i64, &[u64])]) -> Vec<u64> {
    let len = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![0; len];
    for &(c, v) in terms {
        let c = from_i64(c);
        for (o, &x) in out.iter_mut().zip(v) {
            *o = add(*o, mul(c, x));
        }
    }
    out
}

impl ModMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length");
        ModMatrix { rows, cols, data }
    }

    pub fn reduce(m: &Matrix<Rational>) -> Option<Self> {
        let data = m.entries().iter().map(reduce).collect::<Option<Vec<_>>>()?;
        Some(ModMatrix {
            rows: m.rows(),
            cols: m.cols(),
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn mul(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions");
        let mut data = vec![0; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cell = &mut data[i * other.cols + j];
                    *cell = add(*cell, mul(a, other.data[k * other.cols + j]));
                }
            }
        }
        ModMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &ModMatrix) -> ModMatrix {
        assert_eq!(self.rows, other.rows, "row counts");
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(&self.data[i * self.cols..(i + 1) * self.cols]);
            data.extend_from_slice(&other.data[i * other.cols..(i + 1) * other.cols]);
        }
        ModMatrix {
            rows: self.rows,
            cols,
            data,
        }
    }

    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
                continue;
            };
            for j in 0..cols {
                a.swap(rank * cols + j, p * cols + j);
            }
            let pivot_inv = inv(a[rank * cols + c]);
            for r in rank + 1..rows {
                let f = mul(a[r * cols + c], pivot_inv);
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    a[r * cols + j] = sub(a[r * cols + j], mul(f, a[rank * cols + j]));
                }
            }
            rank += 1;
            if rank == rows {
                break;
            }
        }
        rank
    }
}

/// `true` only if `m` provably has rank `target` over `Q`.
pub fn certifies_rank(m: &ModMatrix, target: usize) -> bool {
    m.rank() == target
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int_matrix, rational_rank};

    #[test]
    fn inverse_and_reduction() {
        for a in [1u64, 2, 12345, PRIME - 1] {
            assert_eq!(mul(a, inv(a)), 1);
        }
        assert_eq!(reduce(&Rational::new(-1, 1)), Some(PRIME - 1));
        let half = reduce(&Rational::new(1, 2)).unwrap();
        assert_eq!(mul(half, 2), 1);
    }

    #[test]
    fn ranks_agree_on_small_integers() {
        let cases = [
            int_matrix(&[&[1, 2], &[2, 4]]),
            int_matrix(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]),
            int_matrix(&[&[0, 0], &[0, 0]]),
            int_matrix(&[&[0, 1, 0], &[0, 0, 1]]),
        ];
        for m in cases {
            assert_eq!(ModMatrix::reduce(&m).unwrap().rank(), rational_rank(&m));
        }
    }

    #[test]
    fn combination() {
        let v = combine(&[(2, &[1, 0]), (-1, &[3, 5])]);
        assert_eq!(v, vec![PRIME - 1, PRIME - 5]);
    }

    #[test]
    fn multiple_of_prime_vanishes() {
        let p = Rational::from_bigint(BigInt::from(PRIME));
        assert_eq!(reduce(&p), Some(0));
        assert_eq!(reduce(&p.recip().unwrap()), None);
    }
}
