//! Star-shaped DAG model: `k` parent columns regressed onto one child column.
//!
//! The group `GL_k × C^×` acts on the right through `(A, t) ↦ diag(A, t⁻¹)`,
//! so under a diagonal 1-PS parent column `i` has weight `w_i` and the child
//! column has weight `−s`, where `s` is the torus weight.

use serde::{Deserialize, Serialize};

use crate::algebra::modular::{certifies_rank, ModMatrix};
use crate::algebra::{rational_rank, DiagonalOnePs, GroupSpec, Rational, RationalMatrix, Scalar, WeightData};
use crate::error::{Error, Result};

use super::status::{Evidence, NotStableReason, StabilityStatus, Verdict};

/// `n` observations of `k` parents and one child.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDagSpec")]
pub struct DagSpec {
    pub n: usize,
    pub k: usize,
}

#[derive(Deserialize)]
struct RawDagSpec {
    n: usize,
    k: usize,
}

impl TryFrom<RawDagSpec> for DagSpec {
    type Error = Error;

    fn try_from(raw: RawDagSpec) -> Result<Self> {
        DagSpec::new(raw.n, raw.k)
    }
}

impl DagSpec {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n == 0 || k == 0 {
            return Err(Error::Domain(format!(
                "DAG family needs n >= 1 samples and k >= 1 parents, got n = {n}, k = {k}"
            )));
        }
        Ok(DagSpec { n, k })
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::new(vec![self.k], 1).expect("k >= 1")
    }

    fn column_weights(&self, lambda: &DiagonalOnePs) -> Result<Vec<i64>> {
        lambda.check_shape(&self.group())?;
        let mut w = lambda.gl_weights[0].clone();
        w.push(-lambda.torus_weights[0]);
        Ok(w)
    }

    pub fn negative_weight_dim(&self, lambda: &DiagonalOnePs) -> Result<usize> {
        Ok(self.column_weights(lambda)?.iter().filter(|&&w| w < 0).count() * self.n)
    }

    /// Weight −1 on the first `j` parent columns, torus weight `−j` so the
    /// child column carries `−Σ w_i = j`.
    pub fn redundant_columns_one_ps(&self, j: usize) -> DiagonalOnePs {
        let mut w = vec![-1; j.min(self.k)];
        w.resize(self.k, 0);
        DiagonalOnePs::new(vec![w], vec![-(j.min(self.k) as i64)])
    }
}

/// Sample matrix `Y = [X | y]` of size `n × (k+1)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawDagInstance")]
pub struct DagInstance {
    y: RationalMatrix,
}

#[derive(Deserialize)]
struct RawDagInstance {
    y: RationalMatrix,
}

impl TryFrom<RawDagInstance> for DagInstance {
    type Error = Error;

    fn try_from(raw: RawDagInstance) -> Result<Self> {
        let k = raw
            .y
            .cols()
            .checked_sub(1)
            .ok_or_else(|| Error::Shape("sample matrix has no columns".into()))?;
        DagInstance::new(raw.y, k)
    }
}

impl DagInstance {
    pub fn new(y: RationalMatrix, k: usize) -> Result<Self> {
        if y.cols() != k + 1 {
            return Err(Error::Shape(format!(
                "sample matrix has {} columns, expected k + 1 = {}",
                y.cols(),
                k + 1
            )));
        }
        DagSpec::new(y.rows(), k)?;
        Ok(DagInstance { y })
    }

    /// Build from a parent block and a child column.
    pub fn from_parts(x: &RationalMatrix, child: &[Rational]) -> Result<Self> {
        let col = RationalMatrix::from_columns(x.rows(), &[child.to_vec()])?;
        DagInstance::new(x.hstack(&col)?, x.cols())
    }

    pub fn spec(&self) -> DagSpec {
        DagSpec {
            n: self.y.rows(),
            k: self.y.cols() - 1,
        }
    }

    pub fn samples(&self) -> &RationalMatrix {
        &self.y
    }

    pub fn parent_block(&self) -> RationalMatrix {
        let k = self.spec().k;
        self.y.select_columns(&(0..k).collect::<Vec<_>>())
    }

    pub fn child_column(&self) -> Vec<Rational> {
        self.y.column(self.spec().k)
    }

    pub(crate) fn coordinate_weights(&self, lambda: &DiagonalOnePs) -> Result<Vec<i64>> {
        let w = self.spec().column_weights(lambda)?;
        Ok((0..self.y.rows()).flat_map(|_| w.iter().copied()).collect())
    }

    pub(crate) fn with_flat(&self, flat: Vec<Rational>) -> Self {
        DagInstance {
            y: RationalMatrix::new(self.y.rows(), self.y.cols(), flat).expect("same shape"),
        }
    }

    /// `Y ↦ Y · diag(A, t⁻¹)`.
    pub fn act(&self, a: &RationalMatrix, t: &Rational) -> Result<Self> {
        let k = self.spec().k;
        if a.shape() != (k, k) {
            return Err(Error::Shape(format!("group element must be {k}x{k}")));
        }
        let t_inv = t
            .recip()
            .ok_or_else(|| Error::Precondition("torus coordinate must be nonzero".into()))?;
        let x = self.parent_block().mul(a)?;
        let child: Vec<Rational> = self.child_column().iter().map(|v| v * &t_inv).collect();
        DagInstance::from_parts(&x, &child)
    }
}

/// Stable iff the parent block has full column rank.
pub fn dag_status(d: &DagInstance) -> StabilityStatus {
    let x = d.parent_block();
    let k = d.spec().k;
    let certified = ModMatrix::reduce(&x).is_some_and(|m| certifies_rank(&m, k));
    let r = if certified { k } else { rational_rank(&x) };
    let verdict = if r == k {
        Verdict::Stable
    } else {
        Verdict::NotStable(NotStableReason::ParentRankDeficient)
    };
    StabilityStatus {
        verdict,
        evidence: Evidence::Dag { parent_rank: r },
    }
}

/// Unique `β` with `Xᵀ(y − Xβ) = 0`.
pub fn dag_solve_mle(d: &DagInstance) -> Result<Vec<Rational>> {
    if !dag_status(d).is_stable() {
        return Err(Error::Precondition(
            "parent block is rank-deficient: the normal equations have infinitely many solutions".into(),
        ));
    }
    let x = d.parent_block();
    let xt = x.transpose();
    let gram = xt.mul(&x)?;
    let y = RationalMatrix::from_columns(x.rows(), &[d.child_column()])?;
    let rhs = xt.mul(&y)?.column(0);
    gram.solve(&rhs)
}

/// Complete a rank-deficient parent block to full column rank.
///
/// Each parent column outside a maximal independent set gets `ε` times a
/// vector from an orthogonal basis of `col(X)^⊥` added to it. The child column
/// is left alone. Stable input is returned unchanged.
pub fn dag_stabilize(d: &DagInstance, epsilon: &Rational) -> Result<DagInstance> {
    if epsilon.is_zero() {
        return Err(Error::Precondition("epsilon must be nonzero".into()));
    }
    let DagSpec { n, k } = d.spec();
    if n < k {
        return Err(Error::Impossible(format!("no {n}x{k} matrix has column rank {k}")));
    }
    if dag_status(d).is_stable() {
        return Ok(d.clone());
    }
    let x = d.parent_block();
    let (_, pivots) = x.rref();
    let deficient: Vec<usize> = (0..k).filter(|c| !pivots.contains(c)).collect();
    let complement = gram_schmidt(x.transpose().null_space(), deficient.len());
    debug_assert!(complement.len() >= deficient.len());
    let mut cols: Vec<Vec<Rational>> = (0..k).map(|j| x.column(j)).collect();
    for (&j, u) in deficient.iter().zip(&complement) {
        for (xi, ui) in cols[j].iter_mut().zip(u) {
            *xi = &*xi + &(epsilon * ui);
        }
    }
    let x_new = RationalMatrix::from_columns(n, &cols)?;
    DagInstance::from_parts(&x_new, &d.child_column())
}

/// First `limit` vectors of the Gram-Schmidt orthogonalization (unnormalized) over `Q`.
fn gram_schmidt(vectors: Vec<Vec<Rational>>, limit: usize) -> Vec<Vec<Rational>> {
    let dot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut out: Vec<Vec<Rational>> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v;
        for u in &out {
            let c = &dot(&w, u) / &dot(u, u);
            for (wi, ui) in w.iter_mut().zip(u) {
                *wi = &*wi - &(&c * ui);
            }
        }
        if w.iter().any(|x| !Scalar::is_zero(x)) {
            out.push(w);
            if out.len() == limit {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int_matrix;

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn status_examples() {
        let d = DagInstance::from_parts(&int_matrix(&[&[1, 0], &[0, 1], &[0, 0]]), &ints(&[5, 7, 9])).unwrap();
        assert!(dag_status(&d).is_stable());
        let z = DagInstance::from_parts(&RationalMatrix::zeros(3, 2), &ints(&[1, 2, 3])).unwrap();
        let st = dag_status(&z);
        assert_eq!(st.verdict, Verdict::NotStable(NotStableReason::ParentRankDeficient));
        assert_eq!(st.evidence, Evidence::Dag { parent_rank: 0 });
    }

    #[test]
    fn mle_examples() {
        let x = int_matrix(&[&[1, 0], &[0, 1], &[0, 0]]);
        let d = DagInstance::from_parts(&x, &ints(&[5, 7, 9])).unwrap();
        assert_eq!(dag_solve_mle(&d).unwrap(), ints(&[5, 7]));
        let d0 = DagInstance::from_parts(&x, &ints(&[0, 0, 0])).unwrap();
        assert_eq!(dag_solve_mle(&d0).unwrap(), ints(&[0, 0]));

        let x = int_matrix(&[&[1, 2], &[3, -1], &[0, 4], &[2, 2]]);
        let y = x.mul(&int_matrix(&[&[2], &[-3]])).unwrap().column(0);
        let d = DagInstance::from_parts(&x, &y).unwrap();
        assert_eq!(dag_solve_mle(&d).unwrap(), ints(&[2, -3]));

        let z = DagInstance::from_parts(&RationalMatrix::zeros(3, 2), &ints(&[1, 2, 3])).unwrap();
        assert!(matches!(dag_solve_mle(&z), Err(Error::Precondition(_))));
    }

    #[test]
    fn stabilize_zero_block() {
        let z = DagInstance::from_parts(&RationalMatrix::zeros(3, 2), &ints(&[1, 2, 3])).unwrap();
        let eps = Rational::new(1, 100);
        let s = dag_stabilize(&z, &eps).unwrap();
        assert!(dag_status(&s).is_stable());
        let x = s.parent_block();
        let gram = x.transpose().mul(&x).unwrap();
        assert!(gram.get(0, 1).is_zero());
        assert_eq!(x.column(0), vec![eps.clone(), Rational::zero(), Rational::zero()]);
        assert_eq!(s.child_column(), ints(&[1, 2, 3]));
    }

    #[test]
    fn stabilize_fixed_point_and_errors() {
        let d = DagInstance::from_parts(&int_matrix(&[&[1, 0], &[0, 1], &[0, 0]]), &ints(&[5, 7, 9])).unwrap();
        assert_eq!(dag_stabilize(&d, &Rational::new(3, 7)).unwrap(), d);
        assert!(dag_stabilize(&d, &Rational::zero()).is_err());
        let wide = DagInstance::from_parts(&int_matrix(&[&[1, 2, 3], &[2, 4, 6]]), &ints(&[1, 1])).unwrap();
        assert!(matches!(
            dag_stabilize(&wide, &Rational::one()),
            Err(Error::Impossible(_))
        ));
    }

    #[test]
    fn stabilize_partial_rank() {
        // columns 2 and 3 are multiples of column 1
        let x = int_matrix(&[&[1, 2, -1], &[1, 2, -1], &[0, 0, 0], &[3, 6, -3]]);
        let d = DagInstance::from_parts(&x, &ints(&[1, 0, 0, 0])).unwrap();
        let s = dag_stabilize(&d, &Rational::new(1, 1000)).unwrap();
        assert_eq!(dag_status(&s).evidence, Evidence::Dag { parent_rank: 3 });
    }

    #[test]
    fn negative_dim_lambda_one() {
        for n in 1..8 {
            for k in 1..5 {
                let spec = DagSpec::new(n, k).unwrap();
                assert_eq!(spec.negative_weight_dim(&spec.redundant_columns_one_ps(1)).unwrap(), n);
            }
        }
    }
}
