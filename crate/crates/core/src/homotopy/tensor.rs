//! The nonabelian tensor square `π ⊗ π` and `J_2(π) = Ker κ`.

use std::sync::Arc;

use super::{HomotopyResult, Method};
use crate::config::Bounds;
use crate::error::{Error, Result};
use crate::fp_group::presentation::free_reduce;
use crate::fp_group::{
    abelian_invariants, invariants_of_matrix, normal_closure_finite, todd_coxeter, AbelianInvariants, FiniteGroup,
    Homomorphism, Letter, Presentation, Word,
};

/// Largest group order accepted by the coset enumeration.
pub const MAX_TENSOR_ORDER: usize = 8;

/// `π ⊗ π` presented on the symbols `g ⊗ h`, with `κ(g ⊗ h) = [g, h]`.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    pub pi: Arc<FiniteGroup>,
    pub presentation: Arc<Presentation>,
    pub kappa: Homomorphism,
}

impl TensorSquare {
    /// Generator index of `g ⊗ h`.
    pub fn symbol(&self, g: u32, h: u32) -> usize {
        g as usize * self.pi.order() + h as usize
    }
}

pub fn tensor_square(pi: Arc<FiniteGroup>) -> Result<TensorSquare> {
    let q = pi.order();
    let sym = |g: u32, h: u32| g as usize * q + h as usize;
    let names = (0..q)
        .flat_map(|g| (0..q).map(move |h| (g, h)))
        .map(|(g, h)| format!("t{g}_{h}"))
        .collect();
    let mut relators: Vec<Word> = Vec::new();
    let mut push = |r: Word| {
        let r = free_reduce(&r);
        if !r.is_empty() && !relators.contains(&r) {
            relators.push(r);
        }
    };
    for a in 0..q as u32 {
        for b in 0..q as u32 {
            for c in 0..q as u32 {
                let (au, bu, cu) = (a as usize, b as usize, c as usize);
                // a b ⊗ c = (^a b ⊗ ^a c)(a ⊗ c)
                push(vec![
                    Letter::gen(sym(pi.conjugate(au, bu), pi.conjugate(au, cu))),
                    Letter::gen(sym(a, c)),
                    Letter::inv(sym(pi.mul(au, bu), c)),
                ]);
                // a ⊗ b c = (a ⊗ b)(^b a ⊗ ^b c)
                push(vec![
                    Letter::gen(sym(a, b)),
                    Letter::gen(sym(pi.conjugate(bu, au), pi.conjugate(bu, cu))),
                    Letter::inv(sym(a, pi.mul(bu, cu))),
                ]);
            }
        }
    }
    let presentation = Arc::new(Presentation::new(names, relators)?);
    let images = (0..q).flat_map(|g| (0..q).map(move |h| (g, h))).map(|(g, h)| pi.commutator(g, h)).collect();
    let kappa = Homomorphism::from_presentation(presentation.clone(), pi.clone(), images)?;
    Ok(TensorSquare { pi, presentation, kappa })
}

/// `π ⊗_Z π` for abelian `π`, from the bilinear relations alone.
pub fn bilinear_invariants(pi: &FiniteGroup) -> Result<AbelianInvariants> {
    if !pi.is_abelian() {
        return Err(Error::Unsupported("bilinear presentation needs an abelian group".into()));
    }
    let q = pi.order();
    let mut rows = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let mut left = vec![0i128; q * q];
                left[pi.mul(a, b) as usize * q + c] += 1;
                left[a * q + c] -= 1;
                left[b * q + c] -= 1;
                let mut right = vec![0i128; q * q];
                right[a * q + pi.mul(b, c) as usize] += 1;
                right[a * q + b] -= 1;
                right[a * q + c] -= 1;
                rows.push(left);
                rows.push(right);
            }
        }
    }
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows.sort();
    rows.dedup();
    invariants_of_matrix(rows, q * q)
}

/// `J_2(π)`. The order comes from coset enumeration; for abelian `π` the
/// invariants are those of the abelianized presentation, accepted only when
/// its order matches the enumerated one.
pub fn j2(pi: Arc<FiniteGroup>, bounds: &Bounds) -> Result<HomotopyResult> {
    if pi.order() > MAX_TENSOR_ORDER {
        return Err(Error::resource("group order for the tensor square", MAX_TENSOR_ORDER as u128));
    }
    let ts = tensor_square(pi.clone())?;
    let table = todd_coxeter(&ts.presentation, &[], bounds.max_elements)?;
    let tensor_order = table.index() as u128;
    let comms: Vec<u32> = ts.kappa.images().to_vec();
    let derived = normal_closure_finite(&comms, &pi, bounds.max_elements)?.len() as u128;
    let order = tensor_order / derived;
    let invariants = if pi.is_abelian() {
        let ab = abelian_invariants(&ts.presentation)?;
        (ab.order() == Some(tensor_order)).then_some(ab)
    } else {
        None
    };
    Ok(HomotopyResult { degree: 2, invariants, order: Some(order), method: Method::ToddCoxeter, bound: None, stable: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp_group::GroupOps;

    fn group(name: &str) -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::by_name(name).unwrap())
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn kappa_is_well_defined() {
        for name in ["z2", "z3", "s3", "k4", "q8"] {
            let ts = tensor_square(group(name)).unwrap();
            let images = ts.kappa.images();
            for r in ts.presentation.relators() {
                assert_eq!(ts.pi.eval_word(images, r), ts.pi.identity());
            }
        }
    }

    #[test]
    fn abelian_tensor_squares_agree_with_bilinear_oracle() {
        let b = Bounds::default();
        for name in ["z2", "z3", "z4", "k4", "z6"] {
            let pi = group(name);
            let r = j2(pi.clone(), &b).unwrap();
            let bil = bilinear_invariants(&pi).unwrap();
            assert_eq!(r.order, bil.order(), "{name}");
            assert_eq!(r.invariants.as_ref(), Some(&bil));
            // Z/m ⊗ Z/n = Z/gcd(m, n), summed over factor pairs
            let own = abelian_invariants(&pi.presentation("g").0).unwrap();
            let expect: u64 = own.torsion.iter().flat_map(|&m| own.torsion.iter().map(move |&n| gcd(m, n))).product();
            assert_eq!(bil.order(), Some(expect as u128));
        }
    }

    #[test]
    fn nonabelian_order_only() {
        let r = j2(group("s3"), &Bounds::default()).unwrap();
        assert!(r.invariants.is_none());
        // |S3 ⊗ S3| = 6 and [S3, S3] = A3
        assert_eq!(r.order, Some(2));
    }
}
