//! Text renderings of the reference tables, diffed against the fixtures
//! bundled in `fixtures/`.
//!
//! Every artifact is deterministic: fixed nets, fixed enumeration order,
//! numbers rounded to 4 decimals with `-0` printed as `0`.

use std::fmt::Write;

use crate::classify::{
    discriminant_d, find_gamma_00, gamma_00, gamma_sl2_invariance, generator_unitary, default_z, special_gamma_deviation,
    similarity_orbits, special_net_odd_prime, tensor_product_nets_n4, unitary_for_linear, w_variant_census, gamma,
    Generator,
};
use crate::error::Result;
use crate::geometry::LinearMap;
use crate::gf::{make_field, operation_tables};
use crate::io::element_strings;
use crate::linalg::{CMatrix, C64, ONE, ZERO};
use crate::mub::{mub_family, verify_mub};
use crate::net::{build_net, enumerate_representatives, RayChoice};
use crate::presets;
use crate::weylops::BasisPair;
use crate::wigner::{phase_point_operators, wigner_transform, DensityMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Artifact {
    pub name: &'static str,
    pub text: String,
}

pub const ARTIFACTS: &[&str] =
    &["f4-tables", "f4-bases", "f4-wigner", "gamma", "orbits", "census", "discriminant", "unitaries", "special-nets"];

/// The bundled expected text for an artifact.
pub fn golden(name: &str) -> Option<&'static str> {
    Some(match name {
        "f4-tables" => include_str!("../fixtures/f4-tables.txt"),
        "f4-bases" => include_str!("../fixtures/f4-bases.txt"),
        "f4-wigner" => include_str!("../fixtures/f4-wigner.txt"),
        "gamma" => include_str!("../fixtures/gamma.txt"),
        "orbits" => include_str!("../fixtures/orbits.txt"),
        "census" => include_str!("../fixtures/census.txt"),
        "discriminant" => include_str!("../fixtures/discriminant.txt"),
        "unitaries" => include_str!("../fixtures/unitaries.txt"),
        "special-nets" => include_str!("../fixtures/special-nets.txt"),
        _ => return None,
    })
}

fn num(x: f64) -> String {
    let x = (x * 1e4).round() / 1e4;
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.4}")
}

fn cnum(z: C64) -> String {
    format!("{}{}{}i", num(z.re), if z.im < -5e-5 { "-" } else { "+" }, num(z.im.abs()))
}

fn matrix_text(m: &CMatrix) -> String {
    m.rows().map(|r| r.iter().map(|&z| format!("{:>17}", cnum(z))).collect::<String>() + "\n").collect()
}

fn choice_text(c: &RayChoice) -> String {
    format!("({})", element_strings(c.labels()).join(","))
}

/// Reference `Γ_{00γ}` arrays, top row first, scaled by `1/denominator`.
pub struct GammaReference {
    pub name: &'static str,
    pub r: u32,
    pub n: u32,
    pub denominator: f64,
    pub rows: &'static [&'static [i32]],
}

pub const GAMMA_REFERENCES: &[GammaReference] = &[
    GammaReference { name: "n2", r: 2, n: 1, denominator: 4.0, rows: &[&[1, 1], &[5, 1]] },
    GammaReference { name: "n3-simple", r: 3, n: 1, denominator: 3.0, rows: &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]] },
    GammaReference { name: "n3-zeros", r: 3, n: 1, denominator: 3.0, rows: &[&[0, 1, 1], &[1, 1, 0], &[4, 0, 1]] },
    GammaReference {
        name: "n4-d0",
        r: 2,
        n: 2,
        denominator: 16.0,
        rows: &[&[1, 1, 1, 1], &[5, 1, 5, 1], &[5, 5, 1, 1], &[25, 5, 5, 1]],
    },
    GammaReference {
        name: "n4-d1",
        r: 2,
        n: 2,
        denominator: 16.0,
        rows: &[&[5, 5, 5, 5], &[1, 5, 1, 5], &[1, 1, 5, 5], &[13, 1, 1, 5]],
    },
    GammaReference {
        name: "n4-dw",
        r: 2,
        n: 2,
        denominator: 16.0,
        rows: &[&[7, 3, 7, 3], &[-1, -1, 7, 7], &[3, -1, -1, 3], &[19, 3, -1, 7]],
    },
    GammaReference {
        name: "n4-dwbar",
        r: 2,
        n: 2,
        denominator: 16.0,
        rows: &[&[-1, 3, -1, 3], &[7, 7, -1, -1], &[3, 7, 7, 3], &[19, 3, 7, -1]],
    },
];

impl GammaReference {
    pub fn target(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(|r| r.iter().map(|&x| x as f64 / self.denominator).collect()).collect()
    }

    /// The pair the search runs on: `E = F = (ω, 1)` for `N = 4`.
    pub fn pair(&self) -> Result<BasisPair> {
        let f = make_field(self.r, self.n)?;
        Ok(if f.order() == 4 { presets::paper_n4_pair() } else { BasisPair::standard(f) })
    }

    pub fn find(&self) -> Result<Option<RayChoice>> {
        find_gamma_00(&self.pair()?, &self.target())
    }
}

fn f4_tables() -> Result<String> {
    Ok(operation_tables(make_field(2, 2)?))
}

fn f4_bases() -> Result<String> {
    let fam = mub_family(&presets::paper_n4_pair());
    let mut out = String::new();
    for b in &fam.bases {
        let _ = writeln!(out, "striation {} direction {}", b.striation, b.direction);
        for (l, v) in b.labels.iter().zip(&b.vectors) {
            let amps: Vec<String> = v.iter().map(|&z| cnum(z * 2.0)).collect();
            let _ = writeln!(out, "  {:<5} (1/2)[{}]", l.to_string(), amps.join(", "));
        }
    }
    let _ = writeln!(out, "max |<u|v>|^2 - 1/N: {}", num(verify_mub(&fam).max_deviation));
    Ok(out)
}

pub fn reference_states() -> [(&'static str, Vec<C64>); 3] {
    let s = 0.5f64.sqrt();
    let c = |x: f64| C64::new(x, 0.0);
    [
        ("up-up", vec![ONE, ZERO, ZERO, ZERO]),
        ("up-right", vec![c(s), c(s), ZERO, ZERO]),
        ("singlet", vec![ZERO, c(s), c(-s), ZERO]),
    ]
}

fn f4_wigner() -> Result<String> {
    let net = presets::net("paper-n4")?;
    let ops = phase_point_operators(&net);
    let mut out = String::new();
    for (name, psi) in reference_states() {
        let w = wigner_transform(&DensityMatrix::pure(&psi)?, &ops)?;
        let _ = writeln!(out, "{name}\n{}", w.heatmap());
    }
    Ok(out)
}

fn gamma_text() -> Result<String> {
    let mut out = String::new();
    for g in GAMMA_REFERENCES {
        let pair = g.pair()?;
        match g.find()? {
            Some(c) => {
                let grid = gamma_00(&build_net(&pair, c.clone())?);
                let d = if pair.field().order() == 4 { format!(" D={}", discriminant_d(&c)?) } else { String::new() };
                let _ = writeln!(out, "{} net {}{d}  (x 1/{})", g.name, choice_text(&c), g.denominator);
                for row in grid.iter().rev() {
                    let cells: Vec<String> = row.iter().map(|z| format!("{:>8}", num(z.re * g.denominator))).collect();
                    let _ = writeln!(out, "  {}", cells.join(""));
                }
            }
            None => {
                let _ = writeln!(out, "{} net not found", g.name);
            }
        }
    }
    Ok(out)
}

fn orbits_text() -> Result<String> {
    let mut out = String::new();
    for (r, n) in [(2, 1), (3, 1), (5, 1)] {
        out.push_str(&similarity_orbits(&BasisPair::standard(make_field(r, n)?))?.table());
    }
    out.push_str(&similarity_orbits(&presets::paper_n4_pair())?.table());
    Ok(out)
}

fn census_text() -> Result<String> {
    let mut out = String::new();
    for (r, n) in [(2, 1), (3, 1), (2, 2)] {
        out.push_str(&w_variant_census(make_field(r, n)?)?.table());
    }
    Ok(out)
}

fn discriminant_text() -> Result<String> {
    let f = make_field(2, 2)?;
    let mut out = String::new();
    for d in f.elements() {
        let count = enumerate_representatives(f)?.filter(|c| discriminant_d(c).map(|x| x == d).unwrap_or(false)).count();
        let _ = writeln!(out, "D = {:<5} {count} classes", d.to_string());
    }
    let (a, b) = tensor_product_nets_n4()?;
    for (name, net) in [("tensor A x conj(A)", &a), ("tensor conj(A) x A", &b)] {
        let _ = writeln!(out, "{name}: {} D={}", choice_text(net.choice()), discriminant_d(net.choice())?);
    }
    Ok(out)
}

fn unitaries_text() -> Result<String> {
    let mut out = String::new();
    let f2 = make_field(2, 1)?;
    let swap = LinearMap::new(f2.zero(), f2.one(), f2.one(), f2.zero());
    let _ = writeln!(out, "N=2 [[0,1],[1,0]]\n{}", matrix_text(&unitary_for_linear(&swap, &BasisPair::standard(f2))?));
    let pair = presets::paper_n4_pair();
    let z = default_z(pair.field());
    for g in [Generator::L1, Generator::L2, Generator::L3] {
        let _ = writeln!(out, "N=4 {g:?}\n{}", matrix_text(&generator_unitary(g, &pair, z)?));
    }
    Ok(out)
}

fn special_text() -> Result<String> {
    let mut out = String::new();
    for r in [3, 5, 7] {
        let f = make_field(r, 1)?;
        let net = special_net_odd_prime(f)?;
        let g = gamma(&net);
        let _ = writeln!(
            out,
            "N={r} net {} w={} formula {} sl2 {}",
            choice_text(net.choice()),
            net.pair().w().map(|w| w.to_string()).unwrap_or_default(),
            if special_gamma_deviation(&g) < 1e-8 { "ok" } else { "MISMATCH" },
            if gamma_sl2_invariance(&g) < 1e-8 { "ok" } else { "BROKEN" },
        );
    }
    Ok(out)
}

pub fn render(name: &str) -> Result<Option<Artifact>> {
    let (name, text) = match name {
        "f4-tables" => ("f4-tables", f4_tables()?),
        "f4-bases" => ("f4-bases", f4_bases()?),
        "f4-wigner" => ("f4-wigner", f4_wigner()?),
        "gamma" => ("gamma", gamma_text()?),
        "orbits" => ("orbits", orbits_text()?),
        "census" => ("census", census_text()?),
        "discriminant" => ("discriminant", discriminant_text()?),
        "unitaries" => ("unitaries", unitaries_text()?),
        "special-nets" => ("special-nets", special_text()?),
        _ => return Ok(None),
    };
    Ok(Some(Artifact { name, text }))
}

pub fn render_all() -> Result<Vec<Artifact>> {
    ARTIFACTS.iter().map(|n| Ok(render(n)?.expect("listed artifact"))).collect()
}

/// First differing line of each artifact that does not match its fixture.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub name: &'static str,
    pub line: usize,
    pub expected: String,
    pub got: String,
}

pub fn diff(a: &Artifact) -> Option<Mismatch> {
    let want = golden(a.name).unwrap_or("");
    if want == a.text {
        return None;
    }
    let (mut w, mut g) = (want.lines(), a.text.lines());
    let mut line = 1;
    loop {
        match (w.next(), g.next()) {
            (Some(x), Some(y)) if x == y => line += 1,
            (x, y) => {
                return Some(Mismatch {
                    name: a.name,
                    line,
                    expected: x.unwrap_or("<end>").to_string(),
                    got: y.unwrap_or("<end>").to_string(),
                })
            }
        }
    }
}
