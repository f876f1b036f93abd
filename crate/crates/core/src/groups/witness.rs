use serde::{Deserialize, Serialize};

use super::oddfield::{is_prime, OddField};
use super::spec::mobius;
use super::sylow::{dihedral_frame, sylow2};
use super::{FiniteGroup, GroupError, Permutation};

/// Outcome of checking that a Sylow 2-subgroup of the subfield group
/// PSL₂(r) is Sylow in PSL₂(r^m) and is centralised by the Frobenius map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub r: u64,
    pub m: u32,
    pub q: u64,
    pub subfield_sylow_order: usize,
    pub full_two_part: u64,
    pub is_sylow: bool,
    pub frobenius_centralises: bool,
    pub holds: bool,
}

fn two_part(x: u64) -> u64 {
    1 << x.trailing_zeros()
}

pub fn frobenius_sylow_witness(r: u64, m: u32) -> Result<WitnessReport, GroupError> {
    if r % 2 == 0 || !is_prime(r) {
        return Err(GroupError::UnsupportedParameter(format!("r = {r} is not an odd prime")));
    }
    if m % 2 == 0 {
        return Err(GroupError::UnsupportedParameter(format!("m = {m} is even")));
    }
    let q = r.checked_pow(m).ok_or_else(|| GroupError::UnsupportedParameter("r^m overflows".into()))?;
    let full_two_part = two_part(q * (q * q - 1) / 2);
    if full_two_part < 8 {
        return Err(GroupError::DefectTooSmall(full_two_part));
    }
    let big = OddField::new(q)?;
    // PSL₂(r) acting on the projective line over F_q. Prime-field labels
    // agree in both fields, so the generators can be written down directly.
    let small = OddField::new(r)?;
    let w = small.primitive();
    let lambda = small.mul(w, w);
    let gens = vec![
        mobius(&big, 1, 1, 0, 1),
        mobius(&big, lambda, 0, 0, 1),
        mobius(&big, 0, big.neg(1), 1, 0),
    ];
    let h = FiniteGroup::new(format!("PSL2({r}) on P1(F_{q})"), q as usize + 1, gens)?;
    let p = sylow2(&h)?;
    let frame = dihedral_frame(&p, false)?;
    let frob = Permutation::from_images(
        std::iter::once(0)
            .chain((0..q as u32).map(|x| 1 + big.frobenius(x) as usize))
            .collect(),
    )?;
    let frobenius_centralises = [&frame.s, &frame.t].iter().all(|x| x.commutes_with(&frob));
    let is_sylow = frame.order() as u64 == full_two_part;
    Ok(WitnessReport {
        r,
        m,
        q,
        subfield_sylow_order: frame.order(),
        full_two_part,
        is_sylow,
        frobenius_centralises,
        holds: is_sylow && frobenius_centralises,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seven_cubed_is_a_witness() {
        let w = frobenius_sylow_witness(7, 3).unwrap();
        assert_eq!(w.q, 343);
        assert_eq!(w.subfield_sylow_order, 8);
        assert_eq!(w.full_two_part, 8);
        assert!(w.holds);
    }

    #[test]
    fn trivial_frobenius_holds() {
        let w = frobenius_sylow_witness(7, 1).unwrap();
        assert!(w.holds);
    }

    #[test]
    fn small_defect_is_rejected() {
        assert_eq!(frobenius_sylow_witness(5, 3), Err(GroupError::DefectTooSmall(4)));
        assert_eq!(frobenius_sylow_witness(3, 1), Err(GroupError::DefectTooSmall(4)));
        assert!(frobenius_sylow_witness(9, 1).is_err());
        assert!(frobenius_sylow_witness(3, 2).is_err());
    }
}
