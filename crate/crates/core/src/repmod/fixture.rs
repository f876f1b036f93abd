//! Module fixtures: a header `group-spec e dim`, then one matrix per group
//! generator in the matrix text format.

use std::sync::Arc;

use super::{GModule, RepError, Result};
use crate::gf2::{matrix_from_lines, matrix_to_text, FieldSpec};
use crate::groups::{construct, GroupSpec};

pub fn module_to_text(m: &GModule) -> Result<String> {
    let spec = m
        .group()
        .spec()
        .ok_or_else(|| RepError::Parse(format!("group {} has no spec", m.group().name())))?;
    let mut out = format!("{spec} {} {}\n", m.field().degree(), m.dim());
    for g in m.generators() {
        out.push_str(&matrix_to_text(g));
    }
    Ok(out)
}

/// Parses a fixture, building the group from its spec and checking that
/// the matrices define a representation.
pub fn module_from_text(text: &str) -> Result<GModule> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| RepError::Parse("empty fixture".into()))?;
    let parts: Vec<&str> = header.split_whitespace().collect();
    let [spec, e, dim] = parts[..] else {
        return Err(RepError::Parse(format!("header needs 3 fields, got {header:?}")));
    };
    let spec: GroupSpec = spec.parse()?;
    let e: u8 = e.parse().map_err(|_| RepError::Parse(format!("bad field degree {e:?}")))?;
    let dim: usize = dim.parse().map_err(|_| RepError::Parse(format!("bad dimension {dim:?}")))?;
    let field = FieldSpec::new(e)?;
    let group = Arc::new(construct(&spec)?);
    let gens = (0..group.generators().len())
        .map(|_| matrix_from_lines(&mut lines).map_err(RepError::from))
        .collect::<Result<Vec<_>>>()?;
    GModule::new_checked(group, field, dim, gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::construct_str;

    #[test]
    fn roundtrip_natural_module() {
        let g = Arc::new(construct_str("psl2:7").unwrap());
        let m = GModule::natural(g, FieldSpec::GF4).unwrap();
        let text = module_to_text(&m).unwrap();
        assert!(text.starts_with("psl2:7 2 8\n"));
        let back = module_from_text(&text).unwrap();
        assert_eq!(back.generators(), m.generators());
    }

    #[test]
    fn malformed_fixtures_are_rejected() {
        assert!(module_from_text("").is_err());
        assert!(module_from_text("psl2:7 1").is_err());
        assert!(module_from_text("psl2:7 1 2\n2 2 1\n8\n4\n").is_err());
    }
}
