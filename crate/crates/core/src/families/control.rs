//! Linear control systems `ẋ = Ax + Bu` under `g·(A, B) = (gAg⁻¹, gB)`.

use serde::{Deserialize, Serialize};

use crate::algebra::modular::{certifies_rank, ModMatrix};
use crate::algebra::{rational_rank, DiagonalOnePs, GroupSpec, Rational, RationalMatrix, WeightData};
use crate::error::{Error, Result};

use super::status::{Evidence, StabilityStatus, Verdict};

/// State dimension `n` and input dimension `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawControlSpec")]
pub struct ControlSpec {
    pub n: usize,
    pub m: usize,
}

#[derive(Deserialize)]
struct RawControlSpec {
    n: usize,
    m: usize,
}

impl TryFrom<RawControlSpec> for ControlSpec {
    type Error = Error;

    fn try_from(raw: RawControlSpec) -> Result<Self> {
        ControlSpec::new(raw.n, raw.m)
    }
}

impl ControlSpec {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Domain(format!(
                "control family needs n >= 1 and m >= 1, got n = {n}, m = {m}"
            )));
        }
        Ok(ControlSpec { n, m })
    }

    pub fn group(&self) -> GroupSpec {
        GroupSpec::gl(self.n)
    }

    fn weights<'a>(&self, lambda: &'a DiagonalOnePs) -> Result<&'a [i64]> {
        lambda.check_shape(&self.group())?;
        Ok(&lambda.gl_weights[0])
    }

    pub fn negative_weight_dim(&self, lambda: &DiagonalOnePs) -> Result<usize> {
        let w = self.weights(lambda)?;
        let a_part = w
            .iter()
            .flat_map(|wb| w.iter().map(move |wa| wb - wa))
            .filter(|&x| x < 0)
            .count();
        let b_part = w.iter().filter(|&&wb| wb < 0).count() * self.m;
        Ok(a_part + b_part)
    }

    /// `diag(1^r, ζ^{-1 (n−r)})`, the 1-PS destabilizing pairs with an
    /// invariant `r`-dimensional subspace spanned by the first `r` basis vectors.
    pub fn flag_one_ps(&self, r: usize) -> DiagonalOnePs {
        let mut w = vec![0; r.min(self.n)];
        w.resize(self.n, -1);
        DiagonalOnePs::new(vec![w], vec![])
    }
}

/// A pair `(A, B)` with `A` of size `n×n` and `B` of size `n×m`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawControlInstance")]
pub struct ControlInstance {
    a: RationalMatrix,
    b: RationalMatrix,
}

#[derive(Deserialize)]
struct RawControlInstance {
    a: RationalMatrix,
    b: RationalMatrix,
}

impl TryFrom<RawControlInstance> for ControlInstance {
    type Error = Error;

    fn try_from(raw: RawControlInstance) -> Result<Self> {
        ControlInstance::new(raw.a, raw.b)
    }
}

impl ControlInstance {
    pub fn new(a: RationalMatrix, b: RationalMatrix) -> Result<Self> {
        let n = a.rows();
        if a.cols() != n || b.rows() != n {
            return Err(Error::Shape(format!(
                "A is {}x{} and B is {}x{}; need n x n and n x m",
                a.rows(),
                a.cols(),
                b.rows(),
                b.cols()
            )));
        }
        ControlSpec::new(n, b.cols())?;
        Ok(ControlInstance { a, b })
    }

    pub fn spec(&self) -> ControlSpec {
        ControlSpec {
            n: self.a.rows(),
            m: self.b.cols(),
        }
    }

    pub fn a(&self) -> &RationalMatrix {
        &self.a
    }

    pub fn b(&self) -> &RationalMatrix {
        &self.b
    }

    /// Coordinates are `A` row-major followed by `B` row-major.
    pub(crate) fn flatten(&self) -> Vec<Rational> {
        self.a.entries().iter().chain(self.b.entries()).cloned().collect()
    }

    pub(crate) fn with_flat(&self, flat: Vec<Rational>) -> Self {
        let n = self.a.rows();
        let mut flat = flat;
        let b = flat.split_off(n * n);
        ControlInstance {
            a: RationalMatrix::new(n, n, flat).expect("A block"),
            b: RationalMatrix::new(n, self.b.cols(), b).expect("B block"),
        }
    }

    pub(crate) fn coordinate_weights(&self, lambda: &DiagonalOnePs) -> Result<Vec<i64>> {
        let spec = self.spec();
        let w = spec.weights(lambda)?;
        let mut out = Vec::with_capacity(spec.n * (spec.n + spec.m));
        for &wb in w {
            for &wa in w {
                out.push(wb - wa);
            }
        }
        for &wb in w {
            out.extend(std::iter::repeat_n(wb, spec.m));
        }
        Ok(out)
    }

    /// `(gAg⁻¹, gB)`.
    pub fn act(&self, g: &RationalMatrix, g_inv: &RationalMatrix) -> Result<Self> {
        let a = g.mul(&self.a)?.mul(g_inv)?;
        let b = g.mul(&self.b)?;
        ControlInstance::new(a, b)
    }
}

/// `[B, AB, A²B, …, A^{n−1}B]`.
pub fn controllability_matrix(c: &ControlInstance) -> RationalMatrix {
    let n = c.a.rows();
    let mut block = c.b.clone();
    let mut out = block.clone();
    for _ in 1..n {
        block = c.a.mul(&block).expect("square A");
        out = out.hstack(&block).expect("same row count");
    }
    out
}

/// Full rank of the controllability matrix mod a large prime, which proves
/// full rank over `Q`.
pub(crate) fn certify_controllable(a: &ModMatrix, b: &ModMatrix) -> bool {
    let mut block = b.clone();
    let mut k = b.clone();
    for _ in 1..a.rows() {
        block = a.mul(&block);
        k = k.hstack(&block);
    }
    certifies_rank(&k, a.rows())
}

fn controllable_mod_p(c: &ControlInstance) -> bool {
    match (ModMatrix::reduce(&c.a), ModMatrix::reduce(&c.b)) {
        (Some(a), Some(b)) => certify_controllable(&a, &b),
        _ => false,
    }
}

/// Stable iff controllable. Otherwise unstable, with the rank of the
/// controllability matrix as the dimension of the minimal invariant subspace.
pub fn control_status(c: &ControlInstance) -> StabilityStatus {
    let r = if controllable_mod_p(c) {
        c.spec().n
    } else {
        rational_rank(&controllability_matrix(c))
    };
    let verdict = if r == c.spec().n {
        Verdict::Stable
    } else {
        Verdict::Unstable
    };
    StabilityStatus {
        verdict,
        evidence: Evidence::Control {
            invariant_subspace_dim: r,
        },
    }
}
