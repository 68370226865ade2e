//! The `stl` command-line front end.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::charfun::{fock_character, fock_character_formula, verify_factorization, verma_character, VermaKind};
use crate::error::{Error, Result};
use crate::exactlin::{Scalar, SparseVector};
use crate::fockrep::{
    build_fock, cyclicity_spot_check, verify_c_relations, verify_highest_weight, verify_lift_identities,
    verify_whittaker_covariance, FockModule, ModVec,
};
use crate::report::Report;
use crate::superalg::json::{element_to_value, named_elements_from_value, AlgebraJson};
use crate::superalg::{
    build_gl_with_parities, centralizer_dim, principal_odd_data, subalgebra_from_span, verify_algebra, weyl_vector,
    Parity, RootDatum, SuperAlgebra, Weight,
};
use crate::takiff::{build_takiff, verify_takiff, TakiffAlgebra};
use crate::wfinite::{
    appendix_pairing_check, graded_nilradical, hat_eta, nilchar_from_e, regularity_check, solve_dual_elements,
    verify_skryabin_conditions, whittaker_vectors, zeta_from_chi, GelfandGraev, GradedNilradical, NilCharacter,
    WhittakerSpace,
};

pub const DEFAULT_MAX_TRUNC: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "stl", version, about = "Exact Takiff superalgebra, Fock space and Whittaker computations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Construct an algebra and write it as JSON.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Run a verification suite; exits 0 iff every check passes.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Solve for Whittaker vectors up to a PBW/Fock degree.
    Whittaker {
        #[arg(long, value_enum, default_value_t = ModuleKind::Fock)]
        module: ModuleKind,
        #[command(flatten)]
        cfg: RunConfig,
    },
    /// Emit a truncated formal character.
    Character {
        #[arg(long, value_enum, default_value_t = CharKind::Fock)]
        kind: CharKind,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        cfg: RunConfig,
    },
}

#[derive(Debug, Subcommand)]
pub enum BuildKind {
    /// gl(m|n) with its standard root datum and supertrace form.
    Gl {
        #[arg(long, default_value_t = 0)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        n: usize,
        /// Comma-separated parities of the basis vectors, e.g. `1,0,1`; overrides --m/--n.
        #[arg(long)]
        parities: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The central extension of the Takiff superalgebra of a base algebra file.
    Takiff {
        #[arg(long)]
        of: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The subalgebra generated by the elements of a file.
    Span {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Principal odd data `e, h, f, E, F` of a gl file with alternating parities.
    Principal {
        #[arg(long)]
        alg: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Algebra,
    Takiff,
    FockLift,
    HighestWeight,
    WhittakerCovariance,
    Factorization,
    Skryabin,
    Appendix,
    Regularity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModuleKind {
    Fock,
    GelfandGraev,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CharKind {
    /// Weight census of the Fock space.
    Fock,
    /// Product formula for the Fock space.
    FockFormula,
    Verma,
    BaseVerma,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Debug, Default, Args)]
pub struct RunConfig {
    /// Algebra JSON: a base algebra with root datum, or a takiff file.
    #[arg(long)]
    pub alg: Option<PathBuf>,
    /// Odd element file (`{"e": {...}, "h": {...}}` or a bare element) in base labels.
    #[arg(long)]
    pub e: Option<PathBuf>,
    /// Nilcharacter JSON on the extended algebra.
    #[arg(long)]
    pub chi: Option<PathBuf>,
    /// Twisting nilcharacter JSON on the barred odd positive root vectors.
    #[arg(long)]
    pub eta: Option<PathBuf>,
    /// Level `c`.
    #[arg(long, value_parser = parse_scalar, allow_hyphen_values = true)]
    pub c: Option<Scalar>,
    #[arg(long)]
    pub deg: Option<usize>,
    #[arg(long)]
    pub trunc: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Weight for character suites, comma-separated coordinates; defaults to `ρ`.
    #[arg(long)]
    pub lam: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_scalar(s: &str) -> std::result::Result<Scalar, String> {
    Scalar::parse(s).map_err(|e| e.to_string())
}

/// Text to emit and whether the run counts as a pass.
#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    pub pass: bool,
}

impl Outcome {
    fn json<T: Serialize>(v: &T, pass: bool) -> Self {
        let mut text = serde_json::to_string_pretty(v).expect("output serializes");
        text.push('\n');
        Outcome { text, pass }
    }

    fn report(r: Report) -> Self {
        let pass = r.pass;
        let mut text = r.to_json();
        text.push('\n');
        Outcome { text, pass }
    }
}

/// `STL_MAX_TRUNC`, or the default cap.
pub fn max_trunc() -> usize {
    std::env::var("STL_MAX_TRUNC").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_MAX_TRUNC)
}

impl RunConfig {
    fn capped(&self, v: Option<usize>, default: usize, flag: &str) -> Result<usize> {
        let v = v.unwrap_or(default);
        let cap = max_trunc();
        if v > cap {
            return Err(Error::Contract(format!("--{flag} {v} exceeds the cap {cap} (set STL_MAX_TRUNC to raise it)")));
        }
        Ok(v)
    }

    /// Rejects `--trunc`/`--deg` above the cap even when the command ignores them.
    fn validate(&self) -> Result<()> {
        self.capped(self.trunc, 0, "trunc")?;
        self.capped(self.deg, 0, "deg")?;
        Ok(())
    }

    fn trunc(&self, default: usize) -> Result<usize> {
        self.capped(self.trunc, default, "trunc")
    }

    fn deg(&self, default: usize) -> Result<usize> {
        self.capped(self.deg, default, "deg")
    }

    fn level(&self) -> Result<Scalar> {
        let c = self.c.clone().unwrap_or_else(Scalar::one);
        if c.is_zero() {
            return Err(Error::Contract("--c must be non-zero".into()));
        }
        Ok(c)
    }

    fn alg_path(&self) -> Result<&Path> {
        self.alg.as_deref().ok_or_else(|| Error::Contract("--alg is required".into()))
    }

    fn lambda(&self, rd: &RootDatum, c: &Scalar) -> Result<Weight> {
        match &self.lam {
            None => Ok(weyl_vector(rd).with_level(c.clone())),
            Some(s) => {
                let values = s.split(',').map(|x| Scalar::parse(x.trim())).collect::<Result<Vec<_>>>()?;
                if values.len() != rd.rank() {
                    return Err(Error::Contract(format!("--lam needs {} coordinates", rd.rank())));
                }
                Ok(Weight::new(values, c.clone()))
            }
        }
    }
}

/// A loaded algebra file: either a base algebra or a takiff extension.
struct Loaded {
    json: AlgebraJson,
    base: SuperAlgebra,
    rd: Option<RootDatum>,
    takiff: Option<TakiffAlgebra>,
}

impl Loaded {
    fn read(path: &Path) -> Result<Self> {
        let json = AlgebraJson::parse(&read(path)?)?;
        if json.layout.is_some() {
            let (t, rd) = TakiffAlgebra::from_json_with_root_datum(&json)?;
            Ok(Loaded { json, base: t.base().clone(), rd, takiff: Some(t) })
        } else {
            let (base, rd) = json.to_algebra()?;
            Ok(Loaded { json, base, rd, takiff: None })
        }
    }

    fn root_datum(&self) -> Result<&RootDatum> {
        self.rd.as_ref().ok_or_else(|| Error::Contract(format!("{} records no root datum", self.base.name())))
    }

    /// The extension, built from the base when the file holds only the base.
    fn takiff(&self) -> Result<(TakiffAlgebra, RootDatum)> {
        let rd = self.root_datum()?.clone();
        let t = match &self.takiff {
            Some(t) => t.clone(),
            None => build_takiff(&self.base, &rd)?.0,
        };
        Ok((t, rd))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Contract(format!("cannot read {}: {e}", path.display())))
}

fn read_value(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&read(path)?)?)
}

/// `(e, h)` from `--e` (with `h` optional in the file), or the principal odd data.
fn odd_element(cfg: &RunConfig, base: &SuperAlgebra, rd: &RootDatum) -> Result<(SparseVector, SparseVector)> {
    let principal = || principal_odd_data(base, rd);
    match &cfg.e {
        None => {
            let pd = principal()?;
            Ok((pd.e, pd.h))
        }
        Some(p) => {
            let mut els = named_elements_from_value(base, &read_value(p)?)?;
            let e = els.remove("e").ok_or_else(|| Error::Parse("element file has no \"e\"".into()))?;
            let h = match els.remove("h") {
                Some(h) => h,
                None => principal()?.h,
            };
            Ok((e, h))
        }
    }
}

fn nilchar(path: &Path, alg: &SuperAlgebra) -> Result<NilCharacter> {
    NilCharacter::from_json(alg, &read(path)?)
}

/// The nilradical of the `h`-grading with `χ^e`, or `--chi` when given.
fn graded_data(cfg: &RunConfig, t: &TakiffAlgebra, rd: &RootDatum) -> Result<(GradedNilradical, NilCharacter, SparseVector)> {
    let (e, h) = odd_element(cfg, t.base(), rd)?;
    let g = graded_nilradical(t, &h)?;
    let phi = match &cfg.chi {
        Some(p) => nilchar(p, t.total())?,
        None => nilchar_from_e(t, &g, &e)?,
    };
    Ok((g, phi, e))
}

fn fock_module(cfg: &RunConfig, t: &TakiffAlgebra, rd: &RootDatum) -> Result<FockModule> {
    let eta = cfg.eta.as_deref().map(|p| nilchar(p, t.total())).transpose()?;
    build_fock(t, rd, cfg.level()?, eta)
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    if let Command::Verify { cfg, .. } | Command::Whittaker { cfg, .. } | Command::Character { cfg, .. } = &cli.command {
        cfg.validate()?;
    }
    match &cli.command {
        Command::Build { kind } => build(kind),
        Command::Verify { suite, cfg } => verify(*suite, cfg).map(Outcome::report),
        Command::Whittaker { module, cfg } => whittaker(*module, cfg),
        Command::Character { kind, format, cfg } => character(*kind, *format, cfg),
    }
}

fn build(kind: &BuildKind) -> Result<Outcome> {
    match kind {
        BuildKind::Gl { m, n, parities, .. } => {
            let p: Vec<Parity> = match parities {
                Some(s) => s
                    .split(',')
                    .map(|x| match x.trim() {
                        "0" => Ok(Parity::Even),
                        "1" => Ok(Parity::Odd),
                        o => Err(Error::Parse(format!("parity must be 0 or 1, got '{o}'"))),
                    })
                    .collect::<Result<_>>()?,
                None => std::iter::repeat_n(Parity::Even, *m).chain(std::iter::repeat_n(Parity::Odd, *n)).collect(),
            };
            if p.is_empty() {
                return Err(Error::Contract("gl needs m + n >= 1".into()));
            }
            let (g, rd) = build_gl_with_parities(&p)?;
            Ok(Outcome::json(&AlgebraJson::from_algebra(&g, Some(&rd)), true))
        }
        BuildKind::Takiff { of, .. } => {
            let l = Loaded::read(of)?;
            if l.takiff.is_some() {
                return Err(Error::Contract(format!("{} is already a takiff extension", of.display())));
            }
            let (t, rd) = l.takiff()?;
            let j = t.to_json_with(Some(&rd));
            if j.dim != 2 * l.base.dim() + 1 {
                return Err(Error::Algebra(format!("extension has dim {}, expected {}", j.dim, 2 * l.base.dim() + 1)));
            }
            Ok(Outcome::json(&j, true))
        }
        BuildKind::Span { input, gens, .. } => {
            let l = Loaded::read(input)?;
            let alg = l.takiff.as_ref().map(|t| t.total().clone()).unwrap_or(l.base);
            let els = named_elements_from_value(&alg, &read_value(gens)?)?;
            let gens: Vec<SparseVector> = els.into_values().collect();
            let sub = subalgebra_from_span(&alg, &gens)?;
            let name = format!("span in {}", alg.name());
            Ok(Outcome::json(&AlgebraJson::from_algebra(&sub.algebra.with_name(name), None), true))
        }
        BuildKind::Principal { alg, .. } => {
            let l = Loaded::read(alg)?;
            let pd = principal_odd_data(&l.base, l.root_datum()?)?;
            let mut m = serde_json::Map::new();
            for (k, v) in [("E", &pd.big_e), ("F", &pd.big_f), ("e", &pd.e), ("f", &pd.f), ("h", &pd.h)] {
                m.insert(k.to_string(), element_to_value(&l.base, v));
            }
            Ok(Outcome::json(&Value::Object(m), true))
        }
    }
}

pub fn verify(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    let l = Loaded::read(cfg.alg_path()?)?;
    match suite {
        Suite::Algebra => {
            let (alg, _) = l.json.to_algebra()?;
            Ok(verify_algebra(&alg))
        }
        Suite::Takiff => {
            let (t, rd) = l.takiff()?;
            let (_, hat) = build_takiff(t.base(), &rd)?;
            Ok(verify_takiff(&t, &hat, &rd))
        }
        Suite::FockLift => {
            let (t, rd) = l.takiff()?;
            let f = fock_module(cfg, &t, &rd)?;
            let deg = cfg.deg(2)?;
            let mut r = Report::new("fock-lift");
            r.absorb(verify_c_relations(&f, deg));
            r.absorb(verify_lift_identities(&f, deg));
            Ok(r)
        }
        Suite::HighestWeight => {
            let (t, rd) = l.takiff()?;
            let f = fock_module(cfg, &t, &rd)?;
            let mut r = Report::new("highest-weight").with_seed(cfg.seed);
            r.absorb(verify_highest_weight(&f)?);
            r.absorb(cyclicity_spot_check(&f, 20, cfg.deg(2)?, 3, cfg.seed));
            Ok(r)
        }
        Suite::WhittakerCovariance => {
            let (t, rd) = l.takiff()?;
            let eta_path = cfg.eta.as_deref().ok_or_else(|| Error::Contract("--eta is required".into()))?;
            let eta = nilchar(eta_path, t.total())?;
            let c = cfg.level()?;
            let chi_hat = hat_eta(&t, &rd, &eta, &c)?;
            let f = build_fock(&t, &rd, c.clone(), Some(eta))?;
            let mut r = Report::new("whittaker-covariance");
            r.absorb(verify_whittaker_covariance(&f, &chi_hat, cfg.deg(2)?, 4)?);
            let zeta = zeta_from_chi(&t, &rd, &chi_hat, &c)?;
            let nonzero: Vec<String> =
                zeta.values().iter().map(|(k, v)| format!("{} -> {v}", t.total().label(*k))).collect();
            r.record(
                "zeta of eta-hat vanishes",
                zeta.is_zero(),
                format!("{} even positive root vectors", zeta.domain().len()),
                (!nonzero.is_empty()).then(|| nonzero.join(", ")),
            );
            Ok(r)
        }
        Suite::Factorization => {
            let rd = l.root_datum()?;
            let c = cfg.level()?;
            let lam = cfg.lambda(rd, &c)?;
            verify_factorization(&l.base, rd, &lam, cfg.trunc(4)?)
        }
        Suite::Skryabin => {
            let (t, rd) = l.takiff()?;
            let (g, phi, e) = graded_data(cfg, &t, &rd)?;
            let xs = solve_dual_elements(&t, &g, &e)?;
            let g = g.with_duals(xs);
            let mut r = verify_skryabin_conditions(t.total(), &g, &phi)?;
            let cd = centralizer_dim(t.base(), &e);
            r.record(
                "centralizer dim = rank",
                cd == rd.rank(),
                format!("dim ker ad e = {cd}, rank = {}", rd.rank()),
                None,
            );
            Ok(r)
        }
        Suite::Appendix => {
            let (t, rd) = l.takiff()?;
            let (g, phi, e) = graded_data(cfg, &t, &rd)?;
            let xs = solve_dual_elements(&t, &g, &e)?;
            let g = g.with_duals(xs);
            let q = GelfandGraev::new(t.total(), &g, &phi, Some((t.z(), cfg.level()?)))?;
            appendix_pairing_check(&q, &g, &phi, &q.vacuum_vec(), cfg.deg(3)? as u64)
        }
        Suite::Regularity => {
            let (t, rd) = l.takiff()?;
            let chi = match &cfg.chi {
                Some(p) => nilchar(p, t.total())?,
                None => graded_data(cfg, &t, &rd)?.1,
            };
            let zeta = zeta_from_chi(&t, &rd, &chi, &cfg.level()?)?;
            regularity_check(&t, &rd, &zeta)
        }
    }
}

#[derive(Serialize)]
struct WhittakerJson<T> {
    module: String,
    truncation: usize,
    dim: usize,
    previous_dim: Option<usize>,
    stable: bool,
    full_check: bool,
    vectors: Vec<Vec<T>>,
}

#[derive(Serialize)]
struct PbwTermJson {
    monomial: String,
    coeff: Scalar,
}

fn whittaker_json<I: Ord, T>(module: String, ws: &WhittakerSpace<I>, term: impl Fn(&ModVec<I>) -> Vec<T>) -> WhittakerJson<T> {
    WhittakerJson {
        module,
        truncation: ws.truncation,
        dim: ws.dim(),
        previous_dim: ws.previous_dim,
        stable: ws.stable,
        full_check: ws.full_check,
        vectors: ws.vectors.iter().map(term).collect(),
    }
}

fn whittaker(module: ModuleKind, cfg: &RunConfig) -> Result<Outcome> {
    let l = Loaded::read(cfg.alg_path()?)?;
    let (t, rd) = l.takiff()?;
    let trunc = cfg.trunc(3)?;
    match module {
        ModuleKind::Fock => {
            let f = fock_module(cfg, &t, &rd)?;
            let phi = match &cfg.chi {
                Some(p) => nilchar(p, t.total())?,
                None => graded_data(cfg, &t, &rd)?.1,
            };
            let ws = whittaker_vectors(&f, &phi, trunc);
            let name = format!("fock{} over {}", if f.eta().is_some() { " (twisted)" } else { "" }, t.base().name());
            Ok(Outcome::json(&whittaker_json(name, &ws, |v| f.vector_to_json(v)), ws.full_check))
        }
        ModuleKind::GelfandGraev => {
            let (g, phi, _) = graded_data(cfg, &t, &rd)?;
            let q = GelfandGraev::new(t.total(), &g, &phi, Some((t.z(), cfg.level()?)))?;
            let ws = whittaker_vectors(&q, &phi, trunc);
            let name = format!("gelfand-graev over {}", t.base().name());
            let json = whittaker_json(name, &ws, |v| {
                v.iter().map(|(m, c)| PbwTermJson { monomial: q.show(m), coeff: c.clone() }).collect()
            });
            Ok(Outcome::json(&json, ws.full_check))
        }
    }
}

fn character(kind: CharKind, format: Format, cfg: &RunConfig) -> Result<Outcome> {
    let l = Loaded::read(cfg.alg_path()?)?;
    let rd = l.root_datum()?;
    let trunc = cfg.trunc(4)?;
    let c = cfg.level()?;
    let ch = match kind {
        CharKind::Fock => {
            let (t, rd) = l.takiff()?;
            fock_character(&build_fock(&t, &rd, c, None)?, trunc)?
        }
        CharKind::FockFormula => fock_character_formula(rd, &c, trunc),
        CharKind::Verma => verma_character(rd, &cfg.lambda(rd, &c)?, trunc, VermaKind::Hatted)?,
        CharKind::BaseVerma => {
            let lam = cfg.lambda(rd, &c)?.with_level(Scalar::zero());
            verma_character(rd, &lam, trunc, VermaKind::Base)?
        }
    };
    let mut text = match format {
        Format::Json => ch.to_json(),
        Format::Tsv => ch.to_tsv(rd),
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    Ok(Outcome { text, pass: true })
}

fn out_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Build { kind } => match kind {
            BuildKind::Gl { out, .. }
            | BuildKind::Takiff { out, .. }
            | BuildKind::Span { out, .. }
            | BuildKind::Principal { out, .. } => out.as_deref(),
        },
        Command::Verify { cfg, .. } | Command::Whittaker { cfg, .. } | Command::Character { cfg, .. } => cfg.out.as_deref(),
    }
}

/// Parses arguments, runs, writes the output and returns the exit code:
/// 0 on pass, 1 when a check fails, 2 on usage or input errors.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let written = match out_path(&cli) {
                Some(p) => std::fs::write(p, &o.text),
                None => {
                    print!("{}", o.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write output: {e}");
                return 2;
            }
            if o.pass { 0 } else { 1 }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
