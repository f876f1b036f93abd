use serde::Serialize;

use super::cyclotomic::euler_phi;
use super::{CharError, CharacterTable, Cyclotomic, Result};
use crate::gf2::{FieldSpec, Poly};

/// Rows of a character table lying in the principal 2-block, with heights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrincipalBlock {
    pub rows: Vec<usize>,
    pub heights: Vec<u32>,
    /// `ν₂(|G|)`, the defect of the principal block.
    pub defect: u32,
}

impl PrincipalBlock {
    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn height_zero_count(&self) -> usize {
        self.heights.iter().filter(|&&h| h == 0).count()
    }
}

/// Reduction `ℤ[ζ_N] → F_2[X]/(g)`, `ζ_N ↦ X`, where `g` is the least
/// irreducible factor of `Φ_N` modulo 2. Its kernel is a fixed prime above 2.
struct ResidueMap {
    g: Poly,
}

impl ResidueMap {
    fn new(n: u32) -> Self {
        let odd = n >> n.trailing_zeros();
        let phi = super::cyclotomic::cyclotomic_polynomial(odd);
        let bits: Vec<u8> = phi.iter().map(|c| c.rem_euclid(2) as u8).collect();
        let poly = Poly::new(FieldSpec::GF2, bits);
        let mut factors: Vec<Poly> = poly.factor().into_iter().map(|(f, _)| f).collect();
        factors.sort();
        ResidueMap {
            g: factors.into_iter().next().expect("Φ has a factor"),
        }
    }

    fn vanishes(&self, x: &Cyclotomic) -> bool {
        let bits: Vec<u8> = x.coeffs().iter().map(|c| c.rem_euclid(2) as u8).collect();
        Poly::new(FieldSpec::GF2, bits).rem(&self.g).is_zero()
    }
}

fn nu2(x: i64) -> u32 {
    x.unsigned_abs().trailing_zeros()
}

/// Central character `ω_χ(C) = |C| χ(g) / χ(1)` as an algebraic integer.
fn central_value(table: &CharacterTable, row: usize, class: usize) -> Result<Cyclotomic> {
    let size = table.classes()[class].size as i64;
    let deg = table.degree(row);
    let scaled = table.value(row, class).scale(size);
    let mut terms = Vec::with_capacity(scaled.coeffs().len());
    for (k, &c) in scaled.coeffs().iter().enumerate() {
        if c % deg != 0 {
            return Err(CharError::NonIntegralCentralCharacter { row, class });
        }
        terms.push((k as u32, c / deg));
    }
    Cyclotomic::from_powers(table.exponent(), &terms)
}

/// Principal 2-block by the central-character criterion:
/// `χ ∈ B₀` iff `ω_χ(C) ≡ |C|` modulo the prime above 2 for every class `C`.
/// Heights are `ν₂(χ(1))`, since the defect group of `B₀` is a Sylow subgroup.
pub fn principal_block(table: &CharacterTable) -> Result<PrincipalBlock> {
    let map = ResidueMap::new(table.exponent());
    debug_assert_eq!(
        table.value(0, 0).coeffs().len(),
        euler_phi(table.exponent()) as usize
    );
    let mut rows = Vec::new();
    for row in 0..table.chars().len() {
        let mut inside = true;
        for class in 0..table.num_classes() {
            let size = Cyclotomic::from_int(table.exponent(), table.classes()[class].size as i64)?;
            let diff = &central_value(table, row, class)? - &size;
            if !map.vanishes(&diff) {
                inside = false;
                break;
            }
        }
        if inside {
            rows.push(row);
        }
    }
    let heights = rows.iter().map(|&r| nu2(table.degree(r))).collect();
    Ok(PrincipalBlock {
        rows,
        heights,
        defect: nu2(table.group().order() as i64),
    })
}
