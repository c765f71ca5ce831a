//! Built-in recursion systems.
//!
//! `adding_machine_<d>` and `chebyshev_<d>` are available for every degree;
//! [`list`] names the instances shipped by default.

use crate::dsl;
use crate::error::{Error, Result};
use crate::system::RecursionSystem;

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    pub system: RecursionSystem,
    pub notes: String,
}

const BASILICA: &str = "\
degree 2
gen a = (0 1) [b, 1]
gen b = [a, 1]
rel b^-1*a^-1*b^-1*a*b*a^-1*b*a
";

// g is the change of generators; ap = g.(a.b).g^-1 and bp = g.a.g^-1.
const RATIONAL_R: &str = "\
degree 2
gen a = (0 1) [b, 1]
gen b = [a, b^-1*a^-1]
gen g = [g*a, g]
gen ap = (0 1) [1, 1]
gen bp = (0 1) [ap, bp^-1]
";

const RATIONAL_R_PRIMED: &str = "\
degree 2
gen a = (0 1) [1, 1]
gen b = (0 1) [a, b^-1]
";

const RATIONAL_F: &str = "\
degree 2
gen a = (0 1) [1, a^-1*b^-1]
gen b = [a, 1]
";

const CHEBYSHEV2_C2: &str = "\
degree 2
gen a = (0 1) [1, 1]
gen b = [b, a]
";

const HANOI: &str = "\
degree 3
gen a = (1 2) [a, 1, 1]
gen b = (0 1) [1, 1, b]
gen c = (0 2) [1, c, 1]
";

// a, b, c generate the Sierpinski gasket group; ap, bp, cp are the Hanoi
// generators, conjugate via ap = g.a.g^-1, bp = g.c.g^-1, cp = g.b.g^-1.
const SIERPINSKI_H: &str = "\
degree 3
gen a = (1 2) [a, 1, 1]
gen b = (0 1) [1, 1, c]
gen c = (0 2) [1, b, 1]
gen g = (1 2) [h, h, h]
gen h = [g, g, g]
gen ap = (1 2) [ap, 1, 1]
gen bp = (0 1) [1, 1, bp]
gen cp = (0 2) [1, cp, 1]
";

const WITTNER: &str = "\
degree 2
gen a0 = [a3, 1]
gen a1 = (0 1) [b2*a0, b2^-1]
gen a2 = [1, a1]
gen a3 = [1, a2]
gen b0 = [b2, 1]
gen b1 = (0 1) [a3^-1, b0*a3]
gen b2 = [1, b1]
rel b2*a0*a2*b1*a1*b0*a3
";

/// Names returned by [`list`].
pub const DEFAULT_NAMES: &[&str] = &[
    "adding_machine_2",
    "adding_machine_3",
    "adding_machine_4",
    "basilica",
    "chebyshev_2",
    "chebyshev_3",
    "chebyshev_4",
    "rational_R",
    "rational_R_primed",
    "rational_F",
    "chebyshev2_C2",
    "hanoi",
    "sierpinski_H",
    "wittner",
];

pub fn list() -> Vec<&'static str> {
    DEFAULT_NAMES.to_vec()
}

/// `g = (0 1 .. d-1) [1, .., 1, g]`.
pub fn adding_machine_text(d: usize) -> String {
    let cycle: Vec<String> = (0..d).map(|i| i.to_string()).collect();
    let mut sections = vec!["1"; d];
    sections[d - 1] = "g";
    format!(
        "degree {d}\ngen g = ({}) [{}]\n",
        cycle.join(" "),
        sections.join(", ")
    )
}

/// `σ_a = (0 1)(2 3)..`, `σ_b = (1 2)(3 4)..`. For even `d` the last section
/// of `b` is `a`; for odd `d` the last section of `a` is `a`. The first
/// section of `b` is always `b`.
pub fn chebyshev_text(d: usize) -> String {
    let pairs = |start: usize| -> String {
        (start..d.saturating_sub(1))
            .step_by(2)
            .map(|i| format!("({} {})", i, i + 1))
            .collect()
    };
    let sigma_a = pairs(0);
    let sigma_b = pairs(1);
    let mut a_sections = vec!["1"; d];
    let mut b_sections = vec!["1"; d];
    b_sections[0] = "b";
    if d.is_multiple_of(2) {
        b_sections[d - 1] = "a";
    } else {
        a_sections[d - 1] = "a";
    }
    let gen = |name: &str, sigma: &str, sections: &[&str]| {
        if sigma.is_empty() {
            format!("gen {name} = [{}]\n", sections.join(", "))
        } else {
            format!("gen {name} = {sigma} [{}]\n", sections.join(", "))
        }
    };
    format!(
        "degree {d}\n{}{}",
        gen("a", &sigma_a, &a_sections),
        gen("b", &sigma_b, &b_sections)
    )
}

fn parametric(name: &str, prefix: &str) -> Option<usize> {
    let d: usize = name.strip_prefix(prefix)?.parse().ok()?;
    (2..=64).contains(&d).then_some(d)
}

fn source(name: &str) -> Option<(String, &'static str)> {
    if let Some(d) = parametric(name, "adding_machine_") {
        return Some((
            adding_machine_text(d),
            "adding machine g = σ[1, .., 1, g], σ the d-cycle",
        ));
    }
    if let Some(d) = parametric(name, "chebyshev_") {
        return Some((
            chebyshev_text(d),
            "IMG of the degree-d Chebyshev polynomial (infinite dihedral group)",
        ));
    }
    let (text, notes) = match name {
        "basilica" => (BASILICA, "IMG of z^2 - 1, the Basilica group"),
        "rational_R" => (
            RATIONAL_R,
            "IMG of ((z-1)/(z+1))^2 with conjugator g = [g.a, g] and the primed pair",
        ),
        "rational_R_primed" => (
            RATIONAL_R_PRIMED,
            "IMG of ((z-1)/(z+1))^2, nicer generators",
        ),
        "rational_F" => (RATIONAL_F, "IMG of 1 - 1/z^2"),
        "chebyshev2_C2" => (CHEBYSHEV2_C2, "IMG of 2z^2 - 1 (or z^2 - 2)"),
        "hanoi" => (HANOI, "Hanoi Towers group"),
        "sierpinski_H" => (
            SIERPINSKI_H,
            "IMG of z^2 - 16/(27z) with conjugators g, h into the Hanoi Towers group",
        ),
        "wittner" => (WITTNER, "IMG of the Wittner non-mating quadratic map"),
        _ => return None,
    };
    Some((text.to_string(), notes))
}

pub fn get(name: &str) -> Result<CatalogEntry> {
    let (text, notes) = source(name).ok_or_else(|| Error::UnknownCatalogEntry(name.to_string()))?;
    let system = dsl::parse(&text)?;
    Ok(CatalogEntry {
        name: name.to_string(),
        degree: system.degree(),
        system,
        notes: notes.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_entry_loads() {
        for name in list() {
            let e = get(name).unwrap_or_else(|err| panic!("{name}: {err}"));
            assert_eq!(e.degree, e.system.degree());
        }
        assert_eq!(get("basilica").unwrap().degree, 2);
        assert_eq!(get("hanoi").unwrap().degree, 3);
        assert!(matches!(
            get("grigorchuk"),
            Err(Error::UnknownCatalogEntry(_))
        ));
        assert!(get("adding_machine_1").is_err());
    }

    #[test]
    fn adding_machine_serialization() {
        let e = get("adding_machine_3").unwrap();
        assert_eq!(
            dsl::serialize(&e.system),
            "degree 3\ngen g = (0 1 2) [1, 1, g]\n"
        );
        assert_eq!(get("adding_machine_7").unwrap().degree, 7);
    }

    #[test]
    fn chebyshev_parity_rule() {
        assert_eq!(
            chebyshev_text(2),
            "degree 2\ngen a = (0 1) [1, 1]\ngen b = [b, a]\n"
        );
        assert_eq!(
            chebyshev_text(3),
            "degree 3\ngen a = (0 1) [1, 1, a]\ngen b = (1 2) [b, 1, 1]\n"
        );
        assert_eq!(
            chebyshev_text(4),
            "degree 4\ngen a = (0 1)(2 3) [1, 1, 1, 1]\ngen b = (1 2) [b, 1, 1, a]\n"
        );
        assert_eq!(
            chebyshev_text(5),
            "degree 5\ngen a = (0 1)(2 3) [1, 1, 1, 1, a]\ngen b = (1 2)(3 4) [b, 1, 1, 1, 1]\n"
        );
        assert_eq!(
            get("chebyshev_2").unwrap().system,
            get("chebyshev2_C2").unwrap().system
        );
    }

    #[test]
    fn round_trip_through_dsl() {
        for name in list() {
            let sys = get(name).unwrap().system;
            let text = dsl::serialize(&sys);
            assert_eq!(dsl::parse(&text).unwrap(), sys, "{name}");
        }
    }
}
