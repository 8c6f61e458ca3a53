//! Middle Hodge numbers of smooth hypersurfaces from Jacobian-ring dimensions.
//!
//! For `Z = {F = 0}` in `P^N` of degree `d` and dimension `n = N - 1`,
//! `h^{n-q,q}_prim = dim R_{(q+1)d - N - 1}`. Off the middle row the Hodge
//! numbers agree with projective space.
//!
//! Quadrics (`d = 2`) and curves (`n <= 1`) are flagged `degenerate`: the
//! formula still holds there but most of the graded pieces it reads are zero
//! or sit at the boundary of the socle range.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::jacobian::JacobianRing;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub n: usize,
    /// `h^{n-q,q}_prim` for `q = 0..=n`.
    pub middle_primitive: Vec<usize>,
    /// Primitive numbers plus the hyperplane-power class at `q = n/2` for even `n`.
    pub middle_full: Vec<usize>,
    pub degenerate: bool,
}

impl HodgeDiamond {
    pub fn primitive_betti(&self) -> usize {
        self.middle_primitive.iter().sum()
    }

    pub fn middle_betti(&self) -> usize {
        self.middle_full.iter().sum()
    }

    /// Full `h^{p,q}` with `p + q` arbitrary in `0..=2n`.
    pub fn hodge_number(&self, p: usize, q: usize) -> usize {
        if p > self.n || q > self.n {
            return 0;
        }
        if p + q == self.n {
            self.middle_full[q]
        } else if p == q {
            1
        } else {
            0
        }
    }

    pub fn is_symmetric(&self) -> bool {
        let v = &self.middle_full;
        (0..v.len()).all(|i| v[i] == v[v.len() - 1 - i])
    }
}

/// Requires a smooth hypersurface.
pub fn primitive_hodge_numbers(ring: &JacobianRing) -> Result<HodgeDiamond> {
    ring.require_smooth()?;
    let h = ring.hypersurface();
    let n = h.dim();
    let d = h.degree() as i64;
    let big_n = h.ambient_dim() as i64;
    let middle_primitive = (0..=n)
        .map(|q| ring.dim((q as i64 + 1) * d - big_n - 1))
        .collect::<Result<Vec<_>>>()?;
    let mut middle_full = middle_primitive.clone();
    if n % 2 == 0 {
        middle_full[n / 2] += 1;
    }
    Ok(HodgeDiamond { n, middle_primitive, middle_full, degenerate: d == 2 || n <= 1 })
}

pub fn middle_betti(ring: &JacobianRing) -> Result<usize> {
    Ok(primitive_hodge_numbers(ring)?.middle_betti())
}
