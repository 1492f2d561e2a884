use std::fs;
use std::process::ExitCode;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use maslov_kit::angle::{parse_angle, parse_angle_list, Angle};
use maslov_kit::bordism::{g_singular_bordism, split_check, weak_bordism_group, BettiVector, BordismLabel, UnorientedBordismTable};
use maslov_kit::error::Error;
use maslov_kit::io;
use maslov_kit::jet::{
    jet_dim, lagrangian_pde_dims, legendrian_pde_dims, max_isotropic, max_isotropic_dim, singularity_condition,
    spencer_sequence_audit, symbol_layer_dim, JetSignature, ModelFiber,
};
use maslov_kit::linalg::{q, DynMatrix, QMatrix, SymmetricForm, DEFAULT_TOL};
use maslov_kit::maslov::{
    arnold_index_pair, arnold_index_single, arnold_index_triple, kashiwara_space, leray_m, leray_sum, tuple_reduce,
    wall_space, LagrangianTuple, QuadraticSpace,
};
use maslov_kit::metaplectic::{default_image_lift, mp1_central_check, mp1_inverse, mp1_mul, mp2_member, mp_class, Mp1Context};
use maslov_kit::scan::{check_lagrangian, check_legendrian, corank_profile, loop_maslov, reeb_field, SampledImmersion};
use maslov_kit::selftest::{run_selftest, DEFAULT_SEED};
use maslov_kit::symplectic::{lagrangian_from_angles, LagrangianFrame, SymplecticSpace};
use maslov_kit::witt::{i2_mod_i3, ideal_power_member_real, witt_of_form_complex, witt_of_form_real, WittReal};

const SCAN_TOL: f64 = 1e-6;
const EXIT_VALIDATION: u8 = 2;
const EXIT_AUDIT: u8 = 3;
const EXIT_USAGE: u8 = 64;

/// Maslov indices, metaplectic cocycles, jet calculus, sampled-manifold scans
/// and bordism arithmetic.
#[derive(Parser, Debug)]
#[command(name = "maslov-kit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Relative tolerance (default 1e-9 for algebra, 1e-6 for scans)
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Exact rational arithmetic (default for algebraic indices)
    #[arg(long, global = true, conflicts_with = "approx")]
    exact: bool,
    /// Float arithmetic
    #[arg(long, global = true)]
    approx: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// JSON output (default)
    #[arg(long, global = true, conflicts_with = "table")]
    json: bool,
    /// One `path<TAB>value` line per scalar
    #[arg(long, global = true)]
    table: bool,
    /// Reduced instance counts
    #[arg(long, global = true)]
    quick: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Lagrangian indices
    #[command(subcommand)]
    Maslov(MaslovCmd),
    /// The group Mp₁ and its refinements
    #[command(subcommand)]
    Mp1(Mp1Cmd),
    /// Jet-space dimension audits
    #[command(subcommand)]
    Jet(JetCmd),
    /// Checks on sampled submanifolds
    #[command(subcommand)]
    Scan(ScanCmd),
    /// Bordism group arithmetic
    #[command(subcommand)]
    Bordism(BordismCmd),
    /// Witt classes of symmetric forms
    #[command(subcommand)]
    Witt(WittCmd),
    /// Seeded invariant suite
    Selftest,
}

#[derive(Args, Debug)]
struct TupleInput {
    /// Ambient space, `std:n`
    #[arg(long)]
    space: Option<String>,
    /// JSON tuple file
    #[arg(long, conflicts_with = "angles")]
    tuple: Option<String>,
    /// Angles: `a,b,c` gives lines; `a1,a2;b1,b2;…` gives split Lagrangians
    #[arg(long)]
    angles: Option<String>,
}

#[derive(Subcommand, Debug)]
enum MaslovCmd {
    /// Kashiwara index τ(L₁, …, L_r)
    Kashiwara(TupleInput),
    /// Wall's invariant of a triple
    Wall(TupleInput),
    /// Sum of Kashiwara indices of the fan τ(L₁, Lⱼ, Lⱼ₊₁)
    Reduce(TupleInput),
    /// Arnold's index of one, two or three split Lagrangians
    Arnold(TupleInput),
    /// Leray function of two lifts, or its cyclic sum over more
    Leray {
        #[arg(long)]
        lifts: String,
    },
}

#[derive(Args, Debug)]
struct Mp1Input {
    /// Context file `{"n", "omega"?, "base"}`
    #[arg(long)]
    context: String,
    /// Element file `{"w", "g"}`
    #[arg(long)]
    a: String,
}

#[derive(Subcommand, Debug)]
enum Mp1Cmd {
    Mul {
        #[command(flatten)]
        input: Mp1Input,
        #[arg(long)]
        b: String,
    },
    Inverse(Mp1Input),
    /// Whether (w, 1) commutes with the element
    Central {
        #[command(flatten)]
        input: Mp1Input,
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
    },
    /// Membership in Mp₂ (n = 1) for chosen lifts
    Mp2 {
        #[command(flatten)]
        input: Mp1Input,
        #[arg(long, allow_hyphen_values = true)]
        base_lift: String,
        /// Defaults to the lift in [base, base + π)
        #[arg(long, allow_hyphen_values = true)]
        image_lift: Option<String>,
    },
    /// Class of w in I²/I³
    Class {
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
    },
}

#[derive(Args, Debug)]
struct SigArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand, Debug)]
enum JetCmd {
    Dims(SigArgs),
    SpencerAudit(SigArgs),
    LagrangianPde {
        #[arg(long)]
        n: usize,
        /// Number of random points
        #[arg(long, default_value_t = 20)]
        points: usize,
    },
    LegendrianPde {
        #[arg(long)]
        n: usize,
    },
    MaxIsotropic {
        #[command(flatten)]
        sig: SigArgs,
        #[arg(long)]
        p: usize,
        /// `n × p` covector frame; defaults to dx¹…dxᵖ
        #[arg(long)]
        xi: Option<String>,
    },
}

#[derive(Args, Debug)]
struct SampleInput {
    /// CSV or JSON sample file
    #[arg(long)]
    samples: String,
    /// `line`, `loop` or `grid:AxB[:periodic=b,b]`; overrides the file
    #[arg(long)]
    topology: Option<String>,
}

#[derive(Subcommand, Debug)]
enum ScanCmd {
    Lagrangian {
        #[arg(long)]
        space: String,
        #[command(flatten)]
        input: SampleInput,
    },
    Corank {
        #[command(flatten)]
        input: SampleInput,
        /// Coordinates of the base projection, 0-based; defaults to the first n
        #[arg(long, value_delimiter = ',')]
        projection: Option<Vec<usize>>,
    },
    LoopMaslov {
        #[arg(long)]
        space: String,
        #[command(flatten)]
        input: SampleInput,
    },
    Legendrian {
        /// `std:n` or a JSON file `{"c0", "a"}`
        #[arg(long)]
        contact: String,
        #[command(flatten)]
        input: SampleInput,
    },
    Reeb {
        #[arg(long)]
        contact: String,
        /// JSON array of points
        #[arg(long)]
        points: String,
    },
}

#[derive(Subcommand, Debug)]
enum BordismCmd {
    Weak {
        #[arg(long)]
        betti: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        omega_table: Option<String>,
        #[arg(long, default_value = "lagrangian")]
        label: String,
    },
    GSingular {
        /// Comma list such as `Z2,0,Z2^2`, or a file holding a JSON array
        #[arg(long)]
        homology: String,
        #[arg(long)]
        degree: usize,
    },
    Split {
        #[arg(long)]
        closed: u64,
        #[arg(long)]
        bor: u64,
        #[arg(long)]
        cyc: u64,
    },
}

#[derive(Subcommand, Debug)]
enum WittCmd {
    /// Witt classes of a symmetric Gram matrix
    Form {
        #[arg(long)]
        gram: String,
    },
    /// Whether w ∈ Iᵏ
    Ideal {
        #[arg(long, allow_hyphen_values = true)]
        w: i64,
        #[arg(long)]
        k: u32,
    },
}

enum Failure {
    Validation(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e.to_string())
    }
}

type Res<T> = Result<T, Failure>;

/// A report and whether its property checks held.
struct Outcome {
    value: Value,
    ok: bool,
}

impl Outcome {
    fn of<T: Serialize>(v: &T) -> Res<Self> {
        Self::checked(v, true)
    }

    fn checked<T: Serialize>(v: &T, ok: bool) -> Res<Self> {
        let value = serde_json::to_value(v).map_err(|e| Failure::Validation(e.to_string()))?;
        Ok(Self { value, ok })
    }
}

fn read(path: &str) -> Res<String> {
    fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {path}: {e}")))
}

/// Inline `std:n` or a file path.
fn inline_or_file(arg: &str) -> Res<String> {
    if arg.trim_start().starts_with("std:") {
        Ok(arg.to_string())
    } else {
        read(arg)
    }
}

impl Global {
    fn algebra_tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    fn scan_tol(&self) -> Res<f64> {
        if self.exact {
            return Err(Error::ModeMix("sampled manifolds are scanned in float mode".into()).into());
        }
        Ok(self.tol.unwrap_or(SCAN_TOL))
    }

    fn exact_only(&self, what: &str) -> Res<()> {
        if self.approx {
            return Err(Error::ModeMix(format!("{what} is computed in exact arithmetic only")).into());
        }
        Ok(())
    }

    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }
}

fn angle_groups(s: &str) -> Res<Vec<Vec<Angle>>> {
    if s.contains(';') {
        s.split(';').map(|g| parse_angle_list(g).map_err(Failure::from)).collect()
    } else {
        Ok(parse_angle_list(s)?.into_iter().map(|a| vec![a]).collect())
    }
}

fn load_tuple(input: &TupleInput, g: &Global) -> Res<LagrangianTuple> {
    let space = input.space.as_deref().map(io::parse_space_spec).transpose()?;
    match (&input.tuple, &input.angles) {
        (Some(path), None) => Ok(io::parse_tuple(&read(path)?, space.as_ref(), g.algebra_tol())?),
        (None, Some(angles)) => {
            let frames: Vec<LagrangianFrame> =
                angle_groups(angles)?.iter().map(|a| lagrangian_from_angles(a)).collect::<Result<_, _>>()?;
            if let (Some(s), Some(f)) = (&space, frames.first()) {
                if s != f.space() {
                    return Err(Error::DimensionMismatch("angles do not fit the given space".into()).into());
                }
            }
            Ok(LagrangianTuple::new(frames)?)
        }
        _ => Err(Failure::Usage("give exactly one of --tuple and --angles".into())),
    }
}

fn quadratic_report(s: &QuadraticSpace) -> Value {
    json!({"index": s.index().0, "t_dim": s.dim(), "signature": s.signature.as_array()})
}

fn maslov(cmd: &MaslovCmd, g: &Global) -> Res<Outcome> {
    match cmd {
        MaslovCmd::Kashiwara(t) => {
            g.exact_only("the Kashiwara index")?;
            Ok(Outcome { value: quadratic_report(&kashiwara_space(&load_tuple(t, g)?)?), ok: true })
        }
        MaslovCmd::Wall(t) => {
            g.exact_only("Wall's invariant")?;
            Ok(Outcome { value: quadratic_report(&wall_space(&load_tuple(t, g)?)?), ok: true })
        }
        MaslovCmd::Reduce(t) => {
            g.exact_only("the reduction")?;
            Ok(Outcome { value: json!({"index": tuple_reduce(&load_tuple(t, g)?)?.0}), ok: true })
        }
        MaslovCmd::Arnold(t) => {
            let tuple = load_tuple(t, g)?;
            let e = tuple.entries();
            let value = match e {
                [a] => json!({"index": arnold_index_single(a)?}),
                [a, b] => json!({"index": arnold_index_pair(a, b)?}),
                [a, b, c] => json!({"index": arnold_index_triple(a, b, c)?}),
                _ => return Err(Error::Invalid("Arnold's index takes one, two or three Lagrangians".into()).into()),
            };
            Ok(Outcome { value, ok: true })
        }
        MaslovCmd::Leray { lifts } => {
            let l = parse_angle_list(lifts)?;
            let value = match l.as_slice() {
                [a, b] => json!({"m": leray_m(a, b)}),
                [_, _, _, ..] => json!({"cyclic_sum": leray_sum(&l)}),
                _ => return Err(Error::Invalid("Leray needs at least two lifts".into()).into()),
            };
            Ok(Outcome { value, ok: true })
        }
    }
}

fn mp1(cmd: &Mp1Cmd, g: &Global) -> Res<Outcome> {
    let load = |i: &Mp1Input| -> Res<(Arc<Mp1Context>, _)> {
        g.exact_only("the metaplectic group")?;
        let ctx = io::parse_mp1_context(&read(&i.context)?, g.algebra_tol())?;
        let a = io::parse_mp1_element(&read(&i.a)?, &ctx)?;
        Ok((ctx, a))
    };
    let value = match cmd {
        Mp1Cmd::Mul { input, b } => {
            let (ctx, a) = load(input)?;
            let b = io::parse_mp1_element(&read(b)?, &ctx)?;
            io::mp1_element_to_value(&mp1_mul(&a, &b)?)
        }
        Mp1Cmd::Inverse(input) => io::mp1_element_to_value(&mp1_inverse(&load(input)?.1)?),
        Mp1Cmd::Central { input, w } => json!({"central": mp1_central_check(WittReal(*w), &load(input)?.1)?}),
        Mp1Cmd::Mp2 { input, base_lift, image_lift } => {
            let a = load(input)?.1;
            let base = parse_angle(base_lift)?;
            let image = match image_lift {
                Some(s) => parse_angle(s)?,
                None => default_image_lift(&a, &base)?,
            };
            json!({"member": mp2_member(&a, &base, &image)?, "base_lift": base.to_string(), "image_lift": image.to_string()})
        }
        Mp1Cmd::Class { w } => json!({"w": w, "class": mp_class(WittReal(*w))}),
    };
    Ok(Outcome { value, ok: true })
}

fn sig(s: &SigArgs) -> Res<JetSignature> {
    Ok(JetSignature::new(s.n, s.m, s.k)?)
}

fn jet(cmd: &JetCmd, g: &Global) -> Res<Outcome> {
    g.exact_only("jet calculus")?;
    match cmd {
        JetCmd::Dims(a) => {
            let s = sig(a)?;
            Outcome::of(&json!({
                "n": s.n, "m": s.m, "k": s.k,
                "jet_dim": jet_dim(&s),
                "symbol_layer_dim": symbol_layer_dim(&s),
                "fiber_dim": s.n + symbol_layer_dim(&s),
            }))
        }
        JetCmd::SpencerAudit(a) => {
            let r = spencer_sequence_audit(&sig(a)?)?;
            Outcome::checked(&r, r.exact)
        }
        JetCmd::LagrangianPde { n, points } => {
            let r = lagrangian_pde_dims(*n, *points, g.seed())?;
            Outcome::checked(&r, r.closed_additive && r.ranks_match_closed && r.surjective)
        }
        JetCmd::LegendrianPde { n } => {
            let r = legendrian_pde_dims(*n)?;
            let ok = r.closed_additive && r.involutive && r.cascade_rank == r.cascade_closed && r.ranks_match_closed && r.surjective;
            Outcome::checked(&r, ok)
        }
        JetCmd::MaxIsotropic { sig: a, p, xi } => {
            let s = sig(a)?;
            let xi = match xi {
                Some(path) => io::parse_xi(&read(path)?)?,
                None => QMatrix::from_fn(s.n, *p, |i, j| if i == j { q(1) } else { q(0) }),
            };
            let model = max_isotropic(&s, *p, &xi)?;
            let isotropic = ModelFiber::new(s)?.is_isotropic(&model.frame)?;
            let (horizontal, vertical) = model.splitting();
            Outcome::checked(
                &json!({
                    "dim": model.dim(),
                    "expected_dim": max_isotropic_dim(&s, *p),
                    "horizontal": horizontal,
                    "vertical": vertical,
                    "isotropic": isotropic,
                    "singular_type": singularity_condition(&s, *p)?,
                    "frame": io::matrix_to_value(&DynMatrix::Exact(model.frame.clone())),
                }),
                isotropic,
            )
        }
    }
}

fn samples(i: &SampleInput) -> Res<SampledImmersion> {
    let topology = i.topology.as_deref().map(io::parse_topology).transpose()?;
    Ok(io::parse_samples(&read(&i.samples)?, topology)?)
}

fn scan(cmd: &ScanCmd, g: &Global) -> Res<Outcome> {
    let tol = g.scan_tol()?;
    match cmd {
        ScanCmd::Lagrangian { space, input } => {
            let r = check_lagrangian(&samples(input)?, &io::parse_space_spec(space)?, tol)?;
            Outcome::checked(&r, r.pass)
        }
        ScanCmd::Corank { input, projection } => Outcome::of(&corank_profile(&samples(input)?, projection.as_deref(), tol)?),
        ScanCmd::LoopMaslov { space, input } => {
            let space: SymplecticSpace = io::parse_space_spec(space)?;
            Outcome::of(&json!({"maslov": loop_maslov(&samples(input)?, &space, tol)?}))
        }
        ScanCmd::Legendrian { contact, input } => {
            let chi = io::parse_contact(&inline_or_file(contact)?)?;
            let r = check_legendrian(&samples(input)?, &chi, tol)?;
            Outcome::checked(&r, r.pass)
        }
        ScanCmd::Reeb { contact, points } => {
            let chi = io::parse_contact(&inline_or_file(contact)?)?;
            Outcome::of(&json!({"fields": reeb_field(&chi, &io::parse_points(&read(points)?)?)?}))
        }
    }
}

fn bordism(cmd: &BordismCmd) -> Res<Outcome> {
    match cmd {
        BordismCmd::Weak { betti, n, omega_table, label } => {
            let table = match omega_table {
                Some(path) => io::parse_omega_table(&read(path)?)?,
                None => UnorientedBordismTable::builtin(),
            };
            let label: BordismLabel = label.parse()?;
            Outcome::of(&weak_bordism_group(&betti.parse::<BettiVector>()?, *n, &table, label)?)
        }
        BordismCmd::GSingular { homology, degree } => {
            let text = if homology.ends_with(".json") { read(homology)? } else { homology.clone() };
            Outcome::of(&g_singular_bordism(&io::parse_homology(&text)?, *degree)?)
        }
        BordismCmd::Split { closed, bor, cyc } => {
            let ok = split_check(*closed, *bor, *cyc);
            Outcome::checked(&json!({"closed": closed, "bor": bor, "cyc": cyc, "split": ok}), ok)
        }
    }
}

fn witt(cmd: &WittCmd, g: &Global) -> Res<Outcome> {
    let value = match cmd {
        WittCmd::Form { gram } => {
            let m = io::parse_matrix(&read(gram)?)?;
            if !m.is_exact() && !g.approx {
                return Err(Error::ModeMix("float Gram matrix needs --approx".into()).into());
            }
            let form = SymmetricForm::new(m, g.algebra_tol())?;
            let w = witt_of_form_real(&form, g.algebra_tol());
            json!({
                "witt_real": w.0,
                "witt_complex": witt_of_form_complex(&form, g.algebra_tol()).0,
                "in_i2": ideal_power_member_real(w, 2),
                "i2_mod_i3": i2_mod_i3(w),
            })
        }
        WittCmd::Ideal { w, k } => json!({"w": w, "k": k, "member": ideal_power_member_real(WittReal(*w), *k)}),
    };
    Ok(Outcome { value, ok: true })
}

fn run(cli: &Cli) -> Res<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Maslov(c) => maslov(c, g),
        Command::Mp1(c) => mp1(c, g),
        Command::Jet(c) => jet(c, g),
        Command::Scan(c) => scan(c, g),
        Command::Bordism(c) => bordism(c),
        Command::Witt(c) => witt(c, g),
        Command::Selftest => {
            let r = run_selftest(g.seed(), g.quick);
            Outcome::checked(&r, r.pass)
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let key = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(m) => m.iter().for_each(|(k, x)| flatten(&key(k), x, out)),
        Value::Array(a) if !a.is_empty() => a.iter().enumerate().for_each(|(i, x)| flatten(&key(&i.to_string()), x, out)),
        Value::String(s) => out.push(format!("{prefix}\t{s}")),
        other => out.push(format!("{prefix}\t{other}")),
    }
}

fn render(v: &Value, table: bool) -> String {
    if table {
        let mut lines = Vec::new();
        flatten("", v, &mut lines);
        lines.join("\n")
    } else {
        serde_json::to_string_pretty(v).expect("JSON values serialize")
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            println!("{}", render(&out.value, cli.global.table));
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_AUDIT)
            }
        }
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
