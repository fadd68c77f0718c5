use super::algebra::EtaleAlgebra;
use crate::error::{Error, Result};
use crate::exactpoly::RationalPoly;
use crate::kummerh1::{c4_add, c4_decode, c4_encode, CoclassC4};

/// The algebra obtained by translating the C4 Kummer datum of f by `(-4, 2)`.
pub fn mirror_algebra(f: &RationalPoly) -> Result<EtaleAlgebra> {
    let l = EtaleAlgebra::from_poly(f)?;
    if l.degree() != 4 {
        return Err(Error::InvalidInput(format!("expected a quartic, got degree {}", l.degree())));
    }
    let dec = c4_decode(&l)?;
    let m = c4_add(&dec.coclass, &CoclassC4::mirror_datum(dec.coclass.d.clone()))?;
    c4_encode(&m)
}

/// A defining quartic of the mirror algebra.
pub fn mirror_quartic(f: &RationalPoly) -> Result<RationalPoly> {
    Ok(mirror_algebra(f)?.presentation())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RationalPoly {
        RationalPoly::parse(s).unwrap()
    }

    #[test]
    fn mirror_of_d4_example() {
        let m = mirror_quartic(&p("7,0,-6,0,1")).unwrap();
        assert_eq!(m, p("8,0,-12,0,1"));
        let a = EtaleAlgebra::from_poly(&m).unwrap();
        // theta^2 = 6 + 2 sqrt 7
        let b = EtaleAlgebra::from_poly(&p("-28,0,1").compose(&p("-6,0,1"))).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
    }

    #[test]
    fn mirror_twice_is_identity() {
        for f in ["7,0,-6,0,1", "1,1,1,1,1", "-1,0,-4,0,1"] {
            let f = p(f);
            let back = mirror_algebra(&mirror_quartic(&f).unwrap()).unwrap();
            assert!(back.is_isomorphic(&EtaleAlgebra::from_poly(&f).unwrap()).unwrap());
        }
    }

    #[test]
    fn split_input_goes_to_l0() {
        // Q[sqrt 2] x Q[sqrt 2] presented as (x^2 - 2)(x^2 - 8)
        let m = mirror_algebra(&p("16,0,-10,0,1")).unwrap();
        assert_eq!(m.factor_degrees(), vec![1, 1, 2]);
    }

    #[test]
    fn s4_has_no_mirror() {
        assert!(mirror_quartic(&p("1,1,0,0,1")).unwrap_err().is_unsupported());
    }
}
