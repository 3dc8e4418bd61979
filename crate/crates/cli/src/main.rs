use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use singmon_core::catalog;
use singmon_core::mckay::{self, RootLabel};
use singmon_core::monodromy;
use singmon_core::seifert::{self, residue_exact, wagreich3_check, ResidueFormula, WeightSystem};
use singmon_core::verify::{self, Suite, VerifyOptions};
use singmon_core::{FrameShape, IntPoly};

#[derive(Parser)]
#[command(name = "singmon", version, about = "Poincaré series, orbit invariants and monodromy of quasihomogeneous surface singularities")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Hypersurface {
    /// Three weights, comma separated.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    weights: Vec<u64>,
    #[arg(long)]
    degree: u64,
}

impl Hypersurface {
    fn get(&self) -> Result<([u64; 3], u64), Failure> {
        match self.weights.as_slice() {
            &[a, b, c] => Ok(([a, b, c], self.degree)),
            w => Err(Failure::Invalid(format!("expected 3 weights, got {}", w.len()))),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum McKayWhat {
    Coxeter,
    Affine,
    Series,
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Kleinian,
    Elliptic,
    Theorem1,
    Theorem4,
    Mckay,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Kleinian => Suite::Kleinian,
            SuiteArg::Elliptic => Suite::Elliptic,
            SuiteArg::Theorem1 => Suite::Theorem1,
            SuiteArg::Theorem4 => Suite::Theorem4,
            SuiteArg::Mckay => Suite::Mckay,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Poincaré series p_A of a weight system (and psi, phi, phi~ for hypersurfaces).
    Poincare {
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        weights: Vec<u64>,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        degrees: Vec<u64>,
        /// Print the Taylor coefficients up to t^N.
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Orbit invariants and Seifert data of a hypersurface.
    Orbit(Hypersurface),
    /// Characteristic polynomial of the monodromy of a hypersurface.
    Monodromy {
        #[command(flatten)]
        h: Hypersurface,
        /// Use the expansion of Phi(T) instead of the Lambda_k product formula.
        #[arg(long)]
        oracle: bool,
    },
    /// Saito dual of a frame shape at level h.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        shape: String,
        #[arg(long)]
        level: u64,
    },
    /// Factor an integer polynomial into cyclotomic factors.
    Factor {
        /// Coefficients c0,c1,... in ascending degree.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_hyphen_values = true)]
        coeffs: Vec<i64>,
    },
    /// Characteristic polynomial of the p-fold suspension.
    Suspension {
        #[arg(long, allow_hyphen_values = true)]
        phi: String,
        #[arg(long = "phi-prime", allow_hyphen_values = true)]
        phi_prime: String,
        #[arg(long)]
        p: u64,
    },
    /// Root systems, Coxeter polynomials and the McKay series.
    Mckay {
        /// A<l>, D<l>, E6, E7 or E8.
        #[arg(long)]
        root: String,
        #[arg(long, value_enum)]
        what: McKayWhat,
        #[arg(long)]
        terms: Option<usize>,
    },
    /// Residue of p_A at exp(2 pi i / alpha).
    Residue {
        #[command(flatten)]
        h: Hypersurface,
        #[arg(long)]
        alpha: u64,
    },
    /// Check the conditions relating weights, degree and orbit data.
    Wagreich3(Hypersurface),
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long = "max-index", default_value_t = 8)]
        max_index: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Built-in tables.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// List all entries (families up to --max-index).
    List {
        #[arg(long = "max-index", default_value_t = 8)]
        max_index: u64,
    },
    /// Show one entry, e.g. `E7`, `Ẽ6`, or `D_l --param 5`.
    Show {
        name: String,
        #[arg(long)]
        param: Option<u64>,
    },
    /// Recompute every fixture field and report differences.
    Validate {
        #[arg(long = "max-index", default_value_t = 8)]
        max_index: u64,
    },
}

enum Failure {
    /// Bad input: exit 2.
    Invalid(String),
}

impl From<singmon_core::Error> for Failure {
    fn from(e: singmon_core::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

/// Text and JSON renderings plus whether the verification (if any) passed.
struct Output {
    text: String,
    json: Value,
    ok: bool,
}

impl Output {
    fn ok(text: impl Into<String>, json: Value) -> Self {
        Output { text: text.into(), json, ok: true }
    }
}

fn shape(s: &str) -> Result<FrameShape, Failure> {
    s.parse().map_err(|e: singmon_core::Error| Failure::Invalid(format!("shape {s:?}: {e}")))
}

/// `{"shape": "<text>", "chi": [[m, chi_m], ...]}`
fn shape_json(s: &FrameShape) -> Value {
    let mut v = s.to_json();
    v["shape"] = json!(s.to_string());
    v
}

fn series_text(coeffs: &[impl ToString]) -> String {
    coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Poincare { weights, degrees, terms } => {
            let ws = WeightSystem::new(weights, degrees)?;
            let p = ws.poincare_series();
            let mut text = format!("p_A = {p}");
            let mut json = shape_json(&p);
            if let Some((q, d)) = ws.as_hypersurface() {
                let b = seifert::bundle(q, d)?;
                text += &format!("\npsi_A = {}\nphi_A = {}\nphi~_A = {}", b.psi, b.phi, b.phi_tilde);
                json["psi_A"] = json!(b.psi.to_string());
                json["phi_A"] = json!(b.phi.to_string());
                json["phi_tilde_A"] = json!(b.phi_tilde.to_string());
            }
            if let Some(n) = terms {
                let s = p.expand_series(n);
                text += &format!("\nseries = {}", series_text(s.coeffs()));
                json["series"] = serde_json::to_value(&s).expect("series serializes");
            }
            Ok(Output::ok(text, json))
        }
        Command::Orbit(h) => {
            let (q, d) = h.get()?;
            let data = seifert::hypersurface_seifert(q, d)?;
            let pairs: Vec<String> = data
                .pairs
                .iter()
                .map(|p| match p.beta {
                    Some(b) => format!("({},{})", p.alpha, b),
                    None => format!("({},?)", p.alpha),
                })
                .collect();
            let b = data.b.map_or("?".to_string(), |b| b.to_string());
            let mut text = format!(
                "g = {}\nR = {}\nalphas = {}\nb = {b}\npairs = {}",
                data.genus,
                data.exponent,
                series_text(&data.alphas()),
                pairs.join(" ")
            );
            let vdeg = data.vdeg().map(|v| v.to_string());
            if let Some(v) = &vdeg {
                text += &format!("\nvdeg = {v}");
            }
            let mut json = serde_json::to_value(&data).expect("seifert data serializes");
            json["vdeg"] = json!(vdeg);
            Ok(Output::ok(text, json))
        }
        Command::Monodromy { h, oracle } => {
            let (q, d) = h.get()?;
            let (result, exponents) = if oracle {
                let o = monodromy::charpoly_oracle(q, d)?;
                (o.result, Some(o.exponents))
            } else {
                (monodromy::charpoly_hypersurface(q, d)?, None)
            };
            let mut json = shape_json(&result.charpoly);
            json["mu"] = json!(result.mu);
            json["lambdas"] = json!(result.lambdas);
            if let Some(e) = exponents {
                json["exponents"] = json!(e);
            }
            Ok(Output::ok(result.charpoly.to_string(), json))
        }
        Command::Dual { shape: s, level } => {
            let dual = shape(&s)?.saito_dual(level)?;
            Ok(Output::ok(dual.to_string(), {
                let mut v = shape_json(&dual);
                v["level"] = json!(level);
                v
            }))
        }
        Command::Factor { coeffs } => {
            let p = IntPoly::from_i64(&coeffs);
            let f = FrameShape::factor_cyclotomic(&p)?;
            let sign = if f.to_polynomial()? == p { 1 } else { -1 };
            let text = if sign == 1 { f.to_string() } else { format!("{f}\nsign = -1") };
            Ok(Output::ok(text, {
                let mut v = shape_json(&f);
                v["sign"] = json!(sign);
                v
            }))
        }
        Command::Suspension { phi, phi_prime, p } => {
            if p < 2 {
                return Err(Failure::Invalid(format!("p must be at least 2, got {p}")));
            }
            let s = monodromy::suspension(&shape(&phi)?, &shape(&phi_prime)?, p);
            Ok(Output::ok(s.to_string(), shape_json(&s)))
        }
        Command::Mckay { root, what, terms } => {
            let label: RootLabel = root.parse()?;
            let spec = mckay::build_root_system(label)?;
            match what {
                McKayWhat::Coxeter => {
                    let c = mckay::coxeter_charpoly(&spec)?;
                    Ok(Output::ok(c.to_string(), shape_json(&c)))
                }
                McKayWhat::Affine => {
                    let c = mckay::affine_coxeter_charpoly(&spec)?;
                    Ok(Output::ok(c.to_string(), shape_json(&c)))
                }
                McKayWhat::Series => {
                    let v = mckay::pg_series(&spec, terms.unwrap_or(20));
                    let head: Vec<i64> = v.iter().map(|x| x[0]).collect();
                    Ok(Output::ok(series_text(&head), json!({ "root": label, "series": head, "vectors": v })))
                }
                McKayWhat::Verify => {
                    let entry = catalog::lookup(&label.to_string(), None)?;
                    let rep = mckay::mckay_verify(&spec, &entry.kleinian_data()?, terms.unwrap_or(200))?;
                    let flag = |b: Option<bool>| b.map_or("n/a".to_string(), |b| b.to_string());
                    let text = format!(
                        "{label}: nu = {}, order = {}\nclosed form = recursion: {}\nrecursion = p_A(t^nu): {}\ncoxeter = phi_A: {}\naffine = psi_A: {}\nquotient = p_A: {}\nphi_A not self-dual: {}\n{}",
                        rep.nu,
                        rep.order,
                        rep.closed_form_matches_recursion,
                        rep.recursion_matches_poincare,
                        flag(rep.coxeter_is_phi),
                        flag(rep.affine_is_psi),
                        flag(rep.quotient_is_p),
                        flag(rep.phi_not_self_dual),
                        if rep.holds() { "PASS" } else { "FAIL" }
                    );
                    let mut json = serde_json::to_value(&rep).expect("report serializes");
                    json["holds"] = json!(rep.holds());
                    Ok(Output { text, json, ok: rep.holds() })
                }
            }
        }
        Command::Residue { h, alpha } => {
            let (q, d) = h.get()?;
            let p = WeightSystem::hypersurface(q, d)?.poincare_series();
            let r = residue_exact(&p, alpha)?;
            let text = format!("{:.12} {:+.12}i", r.value.re, r.value.im);
            Ok(Output::ok(text, serde_json::to_value(&r).expect("residue serializes")))
        }
        Command::Wagreich3(h) => {
            let (q, d) = h.get()?;
            let data = seifert::hypersurface_seifert(q, d)?;
            let rep = wagreich3_check(q, d, &data, ResidueFormula::Printed);
            let mut lines = vec![
                format!("a: {}", rep.a),
                format!("b: {}", rep.b),
                format!("d: {}", rep.d),
                format!("e: {}", rep.e),
            ];
            for c in &rep.c {
                lines.push(format!("c (alpha = {}): {}", c.alpha, c.holds));
            }
            lines.push(if rep.all_hold() { "PASS" } else { "FAIL" }.into());
            let mut json = serde_json::to_value(&rep).expect("report serializes");
            json["holds"] = json!(rep.all_hold());
            Ok(Output { text: lines.join("\n"), json, ok: rep.all_hold() })
        }
        Command::Verify { suite, max_index, seed } => {
            let opts = VerifyOptions { max_index, seed, ..VerifyOptions::default() };
            let rep = verify::run_suite(suite.into(), &opts);
            let mut lines: Vec<String> = rep
                .cases
                .iter()
                .map(|c| {
                    if c.passed {
                        format!("PASS {} {}", c.suite, c.case)
                    } else {
                        format!("FAIL {} {}: {}", c.suite, c.case, c.detail)
                    }
                })
                .collect();
            let failed = rep.failures().count();
            lines.push(format!("{} passed, {failed} failed", rep.cases.len() - failed));
            let mut json = serde_json::to_value(&rep).expect("report serializes");
            json["passed"] = json!(rep.passed());
            Ok(Output { text: lines.join("\n"), json, ok: rep.passed() })
        }
        Command::Catalog { action } => match action {
            CatalogAction::List { max_index } => {
                let entries = catalog::all_entries(max_index);
                let text = entries
                    .iter()
                    .map(|e| {
                        let w = series_text(&e.weights);
                        let d = series_text(&e.degrees);
                        let m = e.pi_m.as_ref().map_or(String::new(), |m| format!("  pi_M {m}"));
                        // pad by characters: combining tildes take no column
                        let pad = " ".repeat(5usize.saturating_sub(e.name.chars().filter(|c| *c != '\u{303}').count()));
                        format!("{}{pad}{w}/{d}  g {}  R {}  pi_A {}{m}", e.name, e.g, e.r, e.pi_a)
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                Ok(Output::ok(text, serde_json::to_value(&entries).expect("entries serialize")))
            }
            CatalogAction::Show { name, param } => {
                let e = catalog::lookup(&name, param)?;
                let json = serde_json::to_value(&e).expect("entry serializes");
                let text = serde_json::to_string_pretty(&json).expect("json renders");
                Ok(Output::ok(text, json))
            }
            CatalogAction::Validate { max_index } => {
                let rep = catalog::validate_all(max_index);
                let mut lines: Vec<String> = rep
                    .diffs
                    .iter()
                    .map(|d| format!("DIFF {} {}: expected {}, computed {}", d.entry, d.field, d.expected, d.computed))
                    .collect();
                lines.push(format!("{} entries, {} checks, {} diffs", rep.entries, rep.checks, rep.diffs.len()));
                let ok = rep.ok();
                Ok(Output { text: lines.join("\n"), json: serde_json::to_value(&rep).expect("report serializes"), ok })
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&out.json).expect("json renders"));
            } else {
                println!("{}", out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
