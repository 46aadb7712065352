//! Named pairs and nets.
//!
//! `paper-n4`: `F_4` with `E = F = (ω, 1)` (so `w = ω`) and the all-zero
//! ray choice. This is the reference net for the `N = 4` Wigner tables.

use crate::error::{Error, Result};
use crate::gf::{make_field, FieldBasis};
use crate::net::{build_net, QuantumNet, RayChoice};
use crate::weylops::BasisPair;

pub const PRESETS: &[&str] = &["paper-n4"];

pub fn paper_n4_pair() -> BasisPair {
    let f = make_field(2, 2).expect("F_4");
    let e = FieldBasis::new(vec![f.element(2), f.one()]).expect("(w, 1) is a basis");
    BasisPair::new(e.clone(), e).expect("(w,1) is self-dual up to w")
}

pub fn pair(name: &str) -> Result<BasisPair> {
    match name {
        "paper-n4" => Ok(paper_n4_pair()),
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

pub fn net(name: &str) -> Result<QuantumNet> {
    match name {
        "paper-n4" => {
            let p = paper_n4_pair();
            let f = p.field();
            build_net(&p, RayChoice::zeros(f))
        }
        _ => Err(Error::UnknownPreset(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_and_unknown() {
        let p = pair("paper-n4").unwrap();
        assert_eq!(p.w().unwrap(), p.field().element(2));
        assert!(net("paper-n4").is_ok());
        assert_eq!(pair("nope").unwrap_err(), Error::UnknownPreset("nope".into()));
    }
}
