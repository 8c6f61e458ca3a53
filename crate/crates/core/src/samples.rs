//! Built-in inputs and seeded random families.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::monomial::mono_basis;
use crate::exact::polynomial::{fermat, Polynomial};
use crate::exact::rational::rat;
use crate::jacobian::JacobianRing;

/// Names accepted by [`builtin`].
pub const BUILTINS: &[&str] = &["fermat-cubic-7", "fermat-quintic-5", "fermat-quadric-4", "fermat-cubic-6"];

/// A named built-in form. `fermat-<kind>-<k>` is the Fermat form in `k` variables.
pub fn builtin(name: &str) -> Result<Polynomial> {
    let (n, d) = match name {
        "fermat-cubic-7" => (7, 3),
        "fermat-cubic-6" => (6, 3),
        "fermat-quintic-5" => (5, 5),
        "fermat-quadric-4" => (4, 2),
        _ => return Err(Error::Precondition(format!("unknown built-in '{name}'; known: {}", BUILTINS.join(", ")))),
    };
    Ok(fermat(n, d))
}

/// Fermat cubic plus a few random non-cube monomials with small nonzero
/// integer coefficients, resampled until the result is smooth.
pub fn random_smooth_cubic(n_vars: usize, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<_> = mono_basis(n_vars, 3)
        .into_iter()
        .filter(|m| m.exponents().iter().all(|&e| e < 3))
        .collect();
    loop {
        let mut f = fermat(n_vars, 3);
        let extra = rng.gen_range(2..=4);
        for m in candidates.choose_multiple(&mut rng, extra) {
            let mut c = rng.gen_range(1..=3i64);
            if rng.gen_bool(0.5) {
                c = -c;
            }
            f.add_term(m.clone(), rat(c));
        }
        let smooth = JacobianRing::from_polynomial(f.clone())
            .and_then(|r| r.is_smooth())
            .unwrap_or(false);
        if smooth {
            return f;
        }
    }
}

/// A random smooth cubic whose section by `x_{n_vars-1} = 0` is also smooth.
pub fn random_smooth_cubic_pair(n_vars: usize, seed: u64) -> Polynomial {
    (0..)
        .map(|i| random_smooth_cubic(n_vars, seed.wrapping_mul(7919).wrapping_add(i)))
        .find(|f| crate::mhs::HypersurfacePair::new(f.clone()).is_ok())
        .unwrap()
}

/// Nonzero quadrics with a few random monomials and small integer coefficients.
pub fn random_quadrics(n_vars: usize, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monos = mono_basis(n_vars, 2);
    (0..count)
        .map(|_| {
            let mut q = Polynomial::zero(n_vars);
            while q.is_zero() {
                let k = rng.gen_range(1..=4);
                let picked: Vec<_> = monos.choose_multiple(&mut rng, k).cloned().collect();
                for m in picked {
                    q.add_term(m, rat(rng.gen_range(-4..=4)));
                }
            }
            q
        })
        .collect()
}
