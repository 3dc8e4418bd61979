//! Fixtures for the Kleinian singularities (parametrized A and D families
//! plus E6, E7, E8) and the simply elliptic ICIS, with cross-validation
//! against the computing modules.

use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::frameshape::FrameShape;
use crate::mckay::{KleinianData, RootLabel};
use crate::monodromy::{self, IcisInput};
use crate::poly::IntPoly;
use crate::seifert::{self, PoincareBundle, WeightSystem};

const FIXTURES: &str = include_str!("../data/catalog.json");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    /// `C<n>`, `D<n>`, `T`, `O`, `I` for the binary polyhedral groups.
    pub group: Option<String>,
    pub weights: Vec<u64>,
    pub degrees: Vec<u64>,
    /// As tabulated; orbits with `alpha = 1` may appear (the `A_1` row).
    pub alphas: Vec<u64>,
    pub g: u64,
    pub b: Option<i64>,
    #[serde(rename = "R")]
    pub r: i64,
    #[serde(rename = "pi_A", with = "shape_text")]
    pub pi_a: FrameShape,
    #[serde(rename = "pi_M", with = "opt_shape_text")]
    pub pi_m: Option<FrameShape>,
    pub w: Option<Vec<u64>>,
}

mod shape_text {
    use super::*;

    pub fn serialize<S: Serializer>(v: &FrameShape, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<FrameShape, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

mod opt_shape_text {
    use super::*;

    pub fn serialize<S: Serializer>(v: &Option<FrameShape>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match v {
            Some(shape) => s.collect_str(shape),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<FrameShape>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(serde::de::Error::custom))
            .transpose()
    }
}

impl CatalogEntry {
    pub fn weight_system(&self) -> Result<WeightSystem> {
        WeightSystem::new(self.weights.clone(), self.degrees.clone())
    }

    pub fn hypersurface(&self) -> Option<([u64; 3], u64)> {
        match (self.weights.as_slice(), self.degrees.as_slice()) {
            (&[a, b, c], &[d]) => Some(([a, b, c], d)),
            _ => None,
        }
    }

    /// Exceptional orbits only.
    pub fn exceptional_alphas(&self) -> Vec<u64> {
        self.alphas.iter().copied().filter(|&a| a > 1).collect()
    }

    pub fn is_kleinian(&self) -> bool {
        self.r < 0
    }

    pub fn root_label(&self) -> Option<RootLabel> {
        if self.is_kleinian() {
            self.name.parse().ok()
        } else {
            None
        }
    }

    /// The Poincaré bundle `p, psi, phi, phi~` from the weights and the
    /// fixture orbit data.
    pub fn bundle(&self) -> Result<PoincareBundle> {
        let p = self.weight_system()?.poincare_series();
        Ok(PoincareBundle::assemble(p, &self.exceptional_alphas(), self.g))
    }

    pub fn kleinian_data(&self) -> Result<KleinianData> {
        let (weights, degree) = self
            .hypersurface()
            .filter(|_| self.is_kleinian())
            .ok_or_else(|| Error::UnknownEntry(format!("{} is not Kleinian", self.name)))?;
        let bundle = self.bundle()?;
        Ok(KleinianData {
            weights,
            degree,
            p: bundle.p,
            psi: bundle.psi,
            phi: bundle.phi,
        })
    }
}

fn fixtures() -> &'static [CatalogEntry] {
    static CELL: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CELL.get_or_init(|| serde_json::from_str(FIXTURES).expect("shipped catalog fixture is valid"))
}

/// `A_{2n-1}`: weights `1, n, n / 2n`, orbits `0; n, n`, `pi_A = 2n/1`.
pub fn a_odd(n: u64) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::UnknownEntry("A_{2n-1} needs n >= 1".into()));
    }
    Ok(CatalogEntry {
        name: format!("A{}", 2 * n - 1),
        group: Some(format!("C{}", 2 * n)),
        weights: vec![1, n, n],
        degrees: vec![2 * n],
        alphas: vec![n, n],
        g: 0,
        b: None,
        r: -1,
        pi_a: FrameShape::from_pairs([(2 * n, 1), (1, -1)]),
        pi_m: None,
        w: None,
    })
}

/// `A_{2n}`: weights `2, 2n+1, 2n+1 / 4n+2`, orbits `0; 2n+1, 2n+1`,
/// `pi_A = 4n+2/2`.
pub fn a_even(n: u64) -> Result<CatalogEntry> {
    if n == 0 {
        return Err(Error::UnknownEntry("A_{2n} needs n >= 1".into()));
    }
    let m = 2 * n + 1;
    Ok(CatalogEntry {
        name: format!("A{}", 2 * n),
        group: Some(format!("C{m}")),
        weights: vec![2, m, m],
        degrees: vec![2 * m],
        alphas: vec![m, m],
        g: 0,
        b: None,
        r: -2,
        pi_a: FrameShape::from_pairs([(2 * m, 1), (2, -1)]),
        pi_m: None,
        w: None,
    })
}

/// `D_l`: weights `2, l-2, l-1 / 2(l-1)`, orbits `0; 2, 2, l-2`,
/// `pi_A = 2*2(l-1)/1*(l-1)`.
pub fn d_family(l: u64) -> Result<CatalogEntry> {
    if l < 4 {
        return Err(Error::UnknownEntry("D_l needs l >= 4".into()));
    }
    Ok(CatalogEntry {
        name: format!("D{l}"),
        group: Some(format!("D{}", l - 2)),
        weights: vec![2, l - 2, l - 1],
        degrees: vec![2 * (l - 1)],
        alphas: vec![2, 2, l - 2],
        g: 0,
        b: None,
        r: -1,
        pi_a: FrameShape::from_pairs([(2, 1), (2 * (l - 1), 1), (1, -1), (l - 1, -1)]),
        pi_m: None,
        w: None,
    })
}

fn canonical_name(name: &str) -> String {
    let n: String = name.chars().filter(|c| !matches!(c, '_' | ' ' | '{' | '}')).collect();
    // tilde spellings of the elliptic names
    n.replace("\u{303}", "~")
        .replace("Ẽ", "E~")
        .replace("Et", "E~")
        .replace("Dt", "D~")
}

/// Looks up a named entry (`"E7"`, `"Ẽ6"` or `"E~6"`, `"A5"`, `"D5"`), or a
/// family (`"A_{2n-1}"`, `"A_{2n}"`, `"D_l"`) with its parameter.
pub fn lookup(name: &str, param: Option<u64>) -> Result<CatalogEntry> {
    let unknown = || Error::UnknownEntry(name.to_string());
    let key = canonical_name(name);
    match (key.as_str(), param) {
        ("A2n-1", Some(n)) => return a_odd(n),
        ("A2n", Some(n)) => return a_even(n),
        ("Dl", Some(l)) => return d_family(l),
        ("A2n-1" | "A2n" | "Dl", None) => return Err(unknown()),
        _ => {}
    }
    if param.is_some() {
        return Err(unknown());
    }
    if let Some(entry) = fixtures().iter().find(|e| canonical_name(&e.name) == key) {
        return Ok(entry.clone());
    }
    match key.parse::<RootLabel>().map_err(|_| unknown())? {
        RootLabel::A(l) if l % 2 == 1 => a_odd((l as u64).div_ceil(2)),
        RootLabel::A(l) => a_even(l as u64 / 2),
        RootLabel::D(l) => d_family(l as u64),
        _ => Err(unknown()),
    }
}

/// `A_1 .. A_k`, `D_4 .. D_k`, `E6, E7, E8`.
pub fn kleinian(max_index: u64) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for l in 1..=max_index {
        out.push(if l % 2 == 1 { a_odd(l.div_ceil(2)) } else { a_even(l / 2) }.expect("l >= 1"));
    }
    for l in 4..=max_index {
        out.push(d_family(l).expect("l >= 4"));
    }
    out.extend(fixtures().iter().filter(|e| e.is_kleinian()).cloned());
    out
}

/// The four simply elliptic entries.
pub fn simply_elliptic() -> Vec<CatalogEntry> {
    fixtures().iter().filter(|e| e.r == 0).cloned().collect()
}

/// The shipped fixtures together with the families instantiated up to
/// `max_index`.
pub fn all_entries(max_index: u64) -> Vec<CatalogEntry> {
    let mut out = kleinian(max_index);
    out.extend(simply_elliptic());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diff {
    pub entry: String,
    pub field: String,
    pub expected: String,
    pub computed: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entries: usize,
    pub checks: usize,
    pub diffs: Vec<Diff>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.diffs.is_empty()
    }

    fn check<T: PartialEq + std::fmt::Debug>(&mut self, entry: &str, field: &str, expected: T, computed: Result<T>) {
        self.checks += 1;
        let computed = match computed {
            Ok(c) if c == expected => return,
            Ok(c) => format!("{c:?}"),
            Err(e) => format!("error: {e}"),
        };
        self.diffs.push(Diff {
            entry: entry.to_string(),
            field: field.to_string(),
            expected: format!("{expected:?}"),
            computed,
        });
    }
}

/// `1 + (b-2) t + t^2`
pub fn rotation_polynomial(b: i64) -> IntPoly {
    IntPoly::from_i64(&[1, b - 2, 1])
}

/// Recomputes every computable fixture field.
pub fn validate_entries(entries: &[CatalogEntry]) -> ValidationReport {
    let mut rep = ValidationReport::default();
    for e in entries {
        rep.entries += 1;
        let name = e.name.as_str();
        let ws = match e.weight_system() {
            Ok(ws) => ws,
            Err(err) => {
                rep.check(name, "weights", e.weights.clone(), Err(err));
                continue;
            }
        };
        rep.check(name, "R", e.r, Ok(ws.exponent()));
        // orbit data is recomputed for hypersurfaces, taken from the fixture otherwise
        let bundle = match e.hypersurface() {
            Some((q, d)) => seifert::bundle(q, d),
            None => e.bundle(),
        };
        rep.check(name, "pi_A", e.pi_a.clone(), bundle.map(|b| b.phi));

        if let Some((q, d)) = e.hypersurface() {
            let alphas = seifert::orbit_invariants(q, d);
            rep.check(name, "alphas", e.exceptional_alphas(), alphas.clone());
            rep.check(name, "g", e.g, alphas.and_then(|a| seifert::genus(q, d, &a)));
            // phi_M is the dual of phi~_A; for the Kleinian rows other than
            // A_{2n} phi_A is self-dual, so pi_A is the monodromy itself
            let expected_m = match &e.pi_m {
                Some(m) => Some(m.clone()),
                None if e.r == -2 => e.pi_a.saito_dual(d).ok(),
                None => Some(e.pi_a.clone()),
            };
            if let Some(m) = expected_m {
                rep.check(name, "pi_M", m.clone(), monodromy::charpoly_hypersurface(q, d).map(|r| r.charpoly));
                rep.check(name, "pi_M (oracle)", m, monodromy::charpoly_oracle(q, d).map(|o| o.result.charpoly));
            }
        } else if let (&[a, b, c, dd], &[d1, d2], Some(m)) = (e.weights.as_slice(), e.degrees.as_slice(), &e.pi_m) {
            let input = IcisInput {
                weights: [a, b, c, dd],
                degrees: [d1, d2],
                phi_m: m.clone(),
                genus: e.g,
                alphas: e.exceptional_alphas(),
            };
            let report = monodromy::theorem4a_verify(&input, None);
            rep.check(name, "pi_M (flat dual)", true, report.map(|r| r.holds));
        }

        if let Some(w) = &e.w {
            let d = *e.degrees.iter().max().expect("degrees nonempty");
            let computed: Vec<u64> = e.weights.iter().rev().map(|q| d / q).collect();
            rep.check(name, "w", w.clone(), Ok(computed));
        }
        if let Some(b) = e.b {
            if e.r == 0 {
                rep.check(name, "phi_A = 1+(b-2)t+t^2", rotation_polynomial(b), e.pi_a.to_polynomial());
            }
        }
        if e.r != 0 {
            if let Some((q, d)) = e.hypersurface() {
                let data = seifert::hypersurface_seifert(q, d);
                if let Some(b) = e.b {
                    rep.check(name, "b", Some(b), data.map(|s| s.b));
                } else {
                    // b must at least be derivable
                    rep.check(name, "b derivable", true, data.map(|s| s.b.is_some()));
                }
            }
        }
    }
    rep
}

/// Validates the shipped fixtures and the families up to `max_index`.
pub fn validate_all(max_index: u64) -> ValidationReport {
    validate_entries(&all_entries(max_index))
}

pub fn fixtures_json() -> &'static str {
    FIXTURES
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fs(s: &str) -> FrameShape {
        s.parse().unwrap()
    }

    #[test]
    fn lookup_examples() {
        let e7 = lookup("E7", None).unwrap();
        assert_eq!(e7.weights, vec![4, 6, 9]);
        assert_eq!(e7.degrees, vec![18]);
        assert_eq!(e7.alphas, vec![2, 3, 4]);
        assert_eq!(e7.pi_a, fs("2*3*18/1*6*9"));

        let d5 = lookup("D_l", Some(5)).unwrap();
        assert_eq!(d5.weights, vec![2, 3, 4]);
        assert_eq!(d5.degrees, vec![8]);
        assert_eq!((d5.g, d5.alphas.clone()), (0, vec![2, 2, 3]));
        assert_eq!(lookup("D5", None).unwrap(), d5);

        let e6t = lookup("Ẽ6", None).unwrap();
        assert_eq!(e6t.weights, vec![1, 1, 1]);
        assert_eq!(e6t.degrees, vec![3]);
        assert_eq!(e6t.b, Some(3));
        assert_eq!(e6t.pi_m, Some(fs("3^3/1")));
        assert_eq!(e6t.pi_a, fs("3/1"));
        assert_eq!(lookup("E~6", None).unwrap(), e6t);
    }

    #[test]
    fn lookup_families() {
        assert_eq!(lookup("A_{2n-1}", Some(3)).unwrap().weights, vec![1, 3, 3]);
        assert_eq!(lookup("A_{2n}", Some(2)).unwrap().pi_a, fs("10/2"));
        assert_eq!(lookup("A4", None).unwrap().name, "A4");
        assert_eq!(lookup("A1", None).unwrap().pi_a, fs("2/1"));
    }

    #[test]
    fn lookup_errors() {
        for (name, param) in [("D_l", Some(3)), ("A_{2n}", Some(0)), ("F4", None), ("E9", None), ("D_l", None), ("E8", Some(2))] {
            assert!(matches!(lookup(name, param), Err(Error::UnknownEntry(_))), "{name} {param:?}");
        }
    }

    #[test]
    fn fixture_roundtrip() {
        for e in fixtures() {
            let json = serde_json::to_string(e).unwrap();
            let back: CatalogEntry = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, e);
        }
        assert_eq!(fixtures().len(), 7);
    }

    #[test]
    fn table1_zero_diffs() {
        let rep = validate_entries(&kleinian(8));
        assert!(rep.ok(), "{:#?}", rep.diffs);
        assert_eq!(rep.entries, 8 + 5 + 3);
    }

    #[test]
    fn table2_zero_diffs() {
        let rep = validate_entries(&simply_elliptic());
        assert!(rep.ok(), "{:#?}", rep.diffs);
        assert_eq!(rep.entries, 4);
    }

    #[test]
    fn example1_rotation() {
        let expect = [("Ẽ8", "1 - t + t^2"), ("Ẽ7", "1 + t^2"), ("Ẽ6", "1 + t + t^2"), ("D̃5", "1 + 2*t + t^2")];
        for (name, poly) in expect {
            let e = lookup(name, None).unwrap();
            assert_eq!(e.pi_a.to_polynomial().unwrap().to_string(), poly);
            assert_eq!(rotation_polynomial(e.b.unwrap()).to_string(), poly);
        }
    }

    #[test]
    fn corrupted_fixture_gives_one_diff() {
        let mut entries = vec![lookup("E7", None).unwrap()];
        entries[0].alphas = vec![2, 3, 5];
        let rep = validate_entries(&entries);
        assert_eq!(rep.diffs.len(), 1, "{:#?}", rep.diffs);
        assert_eq!(rep.diffs[0].field, "alphas");

        let mut entries = vec![lookup("Ẽ7", None).unwrap()];
        entries[0].b = Some(3);
        let rep = validate_entries(&entries);
        assert_eq!(rep.diffs.len(), 1, "{:#?}", rep.diffs);
    }

    #[test]
    fn monodromy_is_coxeter_for_table1() {
        for e in kleinian(8).iter().filter(|e| e.r == -1) {
            let (q, d) = e.hypersurface().unwrap();
            assert_eq!(monodromy::charpoly_hypersurface(q, d).unwrap().charpoly, e.pi_a, "{}", e.name);
        }
    }

    #[test]
    fn root_labels() {
        assert_eq!(lookup("E8", None).unwrap().root_label(), Some(RootLabel::E8));
        assert_eq!(lookup("A4", None).unwrap().root_label(), Some(RootLabel::A(4)));
        assert_eq!(lookup("Ẽ8", None).unwrap().root_label(), None);
    }
}
