use num_bigint::BigInt;

use crate::error::Result;

use super::class::MotiveClass;
use super::poly::Poly;

/// Betti and Hodge data of smooth projective atoms.
pub trait Realization {
    /// `Σ b_n t^n`.
    fn poincare(&self, atom: &str) -> Result<Poly<u32>>;
    /// `Σ h^{p,q} u^p v^q`.
    fn hodge(&self, atom: &str) -> Result<Poly<(u32, u32)>>;
}

/// The ring morphism `L -> t^2`, atom -> its Poincaré polynomial; the
/// coefficient of `t^n` is the virtual Betti number `h^n`.
pub fn virtual_poincare(c: &MotiveClass, data: &impl Realization) -> Result<Poly<u32>> {
    let mut out = Poly::zero();
    for (m, coeff) in c.poly().terms() {
        let mut term = Poly::term(2 * m.lefschetz, coeff.clone());
        for (atom, &e) in &m.atoms {
            term = &term * &data.poincare(atom)?.pow(e);
        }
        out = &out + &term;
    }
    Ok(out)
}

/// The ring morphism `L -> uv`, atom -> its Hodge polynomial.
pub fn virtual_hodge(c: &MotiveClass, data: &impl Realization) -> Result<Poly<(u32, u32)>> {
    let mut out = Poly::zero();
    for (m, coeff) in c.poly().terms() {
        let mut term = Poly::uv(m.lefschetz, m.lefschetz, coeff.clone());
        for (atom, &e) in &m.atoms {
            term = &term * &data.hodge(atom)?.pow(e);
        }
        out = &out + &term;
    }
    Ok(out)
}

/// `P(-1)`.
pub fn euler_char(c: &MotiveClass, data: &impl Realization) -> Result<BigInt> {
    Ok(virtual_poincare(c, data)?.eval(&BigInt::from(-1)))
}
