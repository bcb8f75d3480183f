use super::field::{Fe, Field};
use super::poly::{roots, Poly};
use crate::error::{Error, Result};

/// Field embedding GF(p^k) -> GF(p^(k m)), fixed by sending the generator of
/// the small field to the least (by code) root of its modulus in the big one.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    // image of x^i, i < k
    powers: Vec<Fe>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Embedding> {
        if source.p() != target.p() || target.k() % source.k() != 0 {
            return Err(Error::NoEmbedding {
                p: source.p(),
                from: source.k(),
                to: target.k(),
            });
        }
        let k = source.k() as usize;
        let powers = if source == target {
            (0..k)
                .map(|i| {
                    let mut c = vec![0u32; k];
                    c[i] = 1;
                    target.from_coeffs(&c).expect("valid basis element")
                })
                .collect()
        } else {
            let modulus = Poly::new(
                target,
                source.modulus().iter().map(|&c| target.from_int(c as i64)).collect(),
            );
            let alpha = *roots(&modulus)?
                .first()
                .expect("modulus splits in an extension of its own degree");
            let mut powers = Vec::with_capacity(k);
            let mut x = Fe::ONE;
            for _ in 0..k {
                powers.push(x);
                x = target.mul(x, alpha);
            }
            powers
        };
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: Fe) -> Fe {
        let t = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .zip(&self.powers)
            .fold(Fe::ZERO, |acc, (&c, &w)| {
                t.add(acc, t.mul(t.from_int(c as i64), w))
            })
    }
}
