use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use gbr_core::algebra::{GradedAlgebra, Subspace};
use gbr_core::clifford::clifford;
use gbr_core::groups::{AbGroup, GroupValue};
use gbr_core::invariants::{bw_class, calibration, q2_class_of_square};
use gbr_core::json::{AnyAlgebra, AnyForm};
use gbr_core::selftest;
use gbr_core::space::{self, InvariantReport, SpaceDescriptor};
use gbr_core::{Error, FieldTag, PointField};

/// Exact invariants of graded algebras and Brauer groups of spaces with involution.
#[derive(Parser, Debug)]
#[command(name = "gbr", version, arg_required_else_help = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Clifford algebra of a diagonal form, as algebra JSON.
    Clifford(FormArgs),
    /// Graded tensor product of two algebra JSON files.
    Tensor { left: String, right: String },
    /// Parity, Q2 class, ungraded class and Brauer-Wall class.
    Invariants(InputArgs),
    /// Whether the algebra is graded Azumaya.
    Azumaya(InputArgs),
    /// Graded centralizer of a degree part, and the quadratic algebra Ẑ.
    Centralizer {
        #[command(flatten)]
        input: InputArgs,
        /// Which homogeneous part to centralize.
        #[arg(long, value_enum, default_value_t = Part::Even)]
        of: Part,
    },
    /// GBR, RBr, Q2 and WR of a G-space.
    Space(SpaceArgs),
    /// Report for a real or complex variety, including Br, BW and W.
    Variety(SpaceArgs),
    /// A named golden table: circles, rp2, curves, surfaces, exe, s50, calibration.
    Table { name: String },
    /// Runs the built-in consistency checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
struct FormArgs {
    /// Comma-separated nonzero entries, e.g. "1,1,-1" or "1/2,1+1 i".
    #[arg(long, allow_hyphen_values = true)]
    form: String,
    #[arg(long, value_enum, default_value_t = PointArg::R)]
    field: PointArg,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false, id = "source")]
struct SourceArgs {
    /// Comma-separated diagonal form; its Clifford algebra is used.
    #[arg(long, allow_hyphen_values = true, group = "source")]
    form: Option<String>,
    /// Path to an algebra JSON file.
    #[arg(long, group = "source")]
    algebra: Option<String>,
}

#[derive(Args, Debug)]
struct InputArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Point field; must agree with the file when --algebra is given.
    #[arg(long, value_enum)]
    field: Option<PointArg>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PointArg {
    #[value(name = "R", alias = "r")]
    R,
    #[value(name = "C", alias = "c")]
    C,
}

impl From<PointArg> for FieldTag {
    fn from(p: PointArg) -> Self {
        match p {
            PointArg::R => FieldTag::RealPoint,
            PointArg::C => FieldTag::ComplexPoint,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Part {
    Even,
    Odd,
    All,
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct SpaceArgs {
    #[command(subcommand)]
    variant: Option<Variant>,
    /// Print a golden table instead of computing one descriptor.
    #[arg(long)]
    table: Option<String>,
    /// Path to a descriptor JSON file.
    #[arg(long)]
    descriptor: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Variant {
    #[command(name = "trivial_action")]
    TrivialAction {
        #[arg(long, default_value_t = 1)]
        components: u32,
        #[arg(long)]
        b1: u32,
        #[arg(long)]
        b2: u32,
        #[arg(long, default_value_t = 0)]
        bockstein_rank: u32,
    },
    #[command(name = "free_product")]
    FreeProduct {
        #[arg(long, default_value_t = 1)]
        h0: u32,
        #[arg(long)]
        h1: u32,
        /// Torsion orders of H3(Y, Z), comma-separated.
        #[arg(long, value_parser = parse_orders, default_value = "")]
        h3tors: Orders,
    },
    #[command(name = "graph")]
    Graph {
        #[arg(long)]
        nu: u32,
        #[arg(long)]
        h1quot: u32,
    },
    #[command(name = "surface_with_involution")]
    SurfaceWithInvolution {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        nu: u32,
    },
    #[command(name = "real_curve")]
    RealCurve {
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        nu: u32,
    },
    #[command(name = "complex_curve")]
    ComplexCurve {
        #[arg(long)]
        h1: u32,
    },
    #[command(name = "free_four_dim")]
    FreeFourDim {
        #[arg(long)]
        h1quot: u32,
        #[arg(long)]
        h1quot_reduced: u32,
        #[arg(long)]
        two_tors_h3: u32,
        #[arg(long)]
        h3tors_exponent_le_2: bool,
        #[arg(long, value_parser = parse_orders)]
        h3tors: Option<Orders>,
    },
    #[command(name = "complex_projective")]
    ComplexProjective {
        #[arg(long)]
        rho: u32,
        #[arg(long)]
        h1: u32,
        #[arg(long, default_value_t = 1)]
        h0: u32,
        #[arg(long, value_parser = parse_orders, default_value = "")]
        h3tors: Orders,
    },
    #[command(name = "real_projective")]
    RealProjective {
        #[arg(long)]
        rho0: u32,
        /// Torsion orders of RBr, comma-separated.
        #[arg(long, value_parser = parse_orders, default_value = "")]
        rbr: Orders,
        #[arg(long)]
        h1g: u32,
    },
    #[command(name = "complex_surface_witt")]
    ComplexSurfaceWitt {
        #[arg(long)]
        rho: u32,
        #[arg(long)]
        h1: u32,
        #[arg(long)]
        two_tors_h3: u32,
        #[arg(long, value_parser = parse_orders)]
        h3tors: Option<Orders>,
    },
    #[command(name = "real_surface_no_points")]
    RealSurfaceNoPoints {
        #[arg(long)]
        rho0: u32,
        #[arg(long)]
        two_tors_br: u32,
        #[arg(long)]
        h1quot_reduced: u32,
        #[arg(long, value_parser = parse_orders)]
        h3tors: Option<Orders>,
    },
}

/// Comma-separated cyclic orders; the empty string is the trivial group.
#[derive(Clone, Debug)]
struct Orders(Vec<u64>);

fn parse_orders(text: &str) -> Result<Orders, String> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(Orders)
}

impl Variant {
    fn descriptor(self) -> Result<SpaceDescriptor, Error> {
        use SpaceDescriptor as D;
        Ok(match self {
            Variant::TrivialAction { components, b1, b2, bockstein_rank } => {
                D::TrivialAction { components, b1, b2, bockstein_rank }
            }
            Variant::FreeProduct { h0, h1, h3tors } => D::FreeProduct { h0, h1, h3tors: h3tors.0 },
            Variant::Graph { nu, h1quot } => D::Graph { nu, h1quot },
            Variant::SurfaceWithInvolution { genus, nu } => D::SurfaceWithInvolution { genus, nu },
            Variant::RealCurve { genus, nu } => D::RealCurve { genus, nu },
            Variant::ComplexCurve { h1 } => D::ComplexCurve { h1 },
            Variant::FreeFourDim { h1quot, h1quot_reduced, two_tors_h3, h3tors_exponent_le_2, h3tors } => {
                D::FreeFourDim { h1quot, h1quot_reduced, two_tors_h3, h3tors_exponent_le_2, h3tors: h3tors.map(|o| o.0) }
            }
            Variant::ComplexProjective { rho, h1, h0, h3tors } => D::ComplexProjective { rho, h1, h0, h3tors: h3tors.0 },
            Variant::RealProjective { rho0, rbr, h1g } => {
                D::RealProjective { rho0, rbr: AbGroup::new(&rbr.0, 0, 0)?, h1g }
            }
            Variant::ComplexSurfaceWitt { rho, h1, two_tors_h3, h3tors } => {
                D::ComplexSurfaceWitt { rho, h1, two_tors_h3, h3tors: h3tors.map(|o| o.0) }
            }
            Variant::RealSurfaceNoPoints { rho0, two_tors_br, h1quot_reduced, h3tors } => {
                D::RealSurfaceNoPoints { rho0, two_tors_br, h1quot_reduced, h3tors: h3tors.map(|o| o.0) }
            }
        })
    }
}

/// Outcome of a command: the JSON document and whether it reports success.
struct Output {
    value: Value,
    ok: bool,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Output { value, ok: true }
    }
}

fn read(path: &str) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))
}

fn load_algebra(path: &str) -> Result<AnyAlgebra, Error> {
    let a = AnyAlgebra::from_json(&read(path)?)?;
    a.validate()?;
    Ok(a)
}

fn input_algebra(input: &InputArgs) -> Result<AnyAlgebra, Error> {
    if let Some(form) = &input.source.form {
        let field = input.field.map_or(FieldTag::RealPoint, FieldTag::from);
        return Ok(match AnyForm::parse(form, field)? {
            AnyForm::Real(f) => clifford(&f)?.into(),
            AnyForm::Complex(f) => clifford(&f)?.into(),
        });
    }
    let path = input.source.algebra.as_deref().expect("clap requires one source");
    let a = load_algebra(path)?;
    if let Some(field) = input.field.map(FieldTag::from) {
        if field != a.field() {
            return Err(Error::FieldMismatch(format!("--field {field} but {path} is over {}", a.field())));
        }
    }
    Ok(a)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn invariants<F: PointField>(a: &GradedAlgebra<F>) -> Result<Value, Error> {
    let bw = bw_class(a)?;
    Ok(json!({
        "parity": bw.witnesses.parity,
        "q2": bw.witnesses.q2,
        "ungraded": bw.witnesses.ungraded,
        "bw": bw.value,
    }))
}

fn scalars<F: PointField>(v: &[F]) -> Vec<String> {
    v.iter().map(PointField::format_scalar).collect()
}

fn centralizer<F: PointField>(a: &GradedAlgebra<F>, of: Part) -> Result<Value, Error> {
    let s = match of {
        Part::Even => Subspace::degree_part(a, 0),
        Part::Odd => Subspace::degree_part(a, 1),
        Part::All => Subspace::whole(a),
    };
    let c = a.graded_centralizer(&s)?;
    let hat = match a.hat_center() {
        Ok(z) => {
            let q2 = q2_class_of_square(z.parity, &z.square)?;
            json!({
                "parity": z.parity,
                "square": z.square.format_scalar(),
                "generator": scalars(&z.generator),
                "twisted": z.twisted,
                "q2": q2.value,
            })
        }
        Err(e) if e.is_input_error() => json!({ "error": e.to_string() }),
        Err(e) => return Err(e),
    };
    Ok(json!({
        "dim": c.dim(),
        "basis": c.vectors().iter().map(|v| scalars(v)).collect::<Vec<_>>(),
        "parities": c.parities(),
        "hat_center": hat,
    }))
}

fn display(g: &Option<GroupValue>) -> Value {
    match g {
        None => Value::Null,
        Some(GroupValue::Resolved(g)) => Value::String(g.to_string()),
        Some(GroupValue::Extension(e)) => match &e.resolved {
            Some(g) => Value::String(g.to_string()),
            None => Value::String(format!("extension of {} by {}", e.quotient, e.sub)),
        },
    }
}

fn report_value(r: &InvariantReport) -> Value {
    let plain = |g: &Option<AbGroup>| g.as_ref().map_or(Value::Null, |g| Value::String(g.to_string()));
    let mut v = to_value(r);
    v["display"] = json!({
        "q2": r.q2.to_string(),
        "rbr": plain(&r.rbr),
        "gbr": display(&r.gbr),
        "wr": display(&r.wr),
        "br": plain(&r.br),
        "bw": display(&r.bw),
        "w": display(&r.w),
    });
    v
}

fn table(name: &str) -> Result<Output, Error> {
    if name == "calibration" {
        return Ok(to_value(calibration()?).into());
    }
    let rows = space::golden_table(name)?;
    let ok = rows.iter().all(|r| r.mismatches().is_empty());
    let rows: Vec<Value> = rows
        .iter()
        .map(|row| {
            json!({
                "name": row.name,
                "source": row.source,
                "report": report_value(&row.report),
                "expected": row.expected,
                "mismatches": row.mismatches(),
            })
        })
        .collect();
    Ok(Output { value: json!({ "table": name, "rows": rows }), ok })
}

fn space_command(args: SpaceArgs, variety: bool) -> Result<Output, Error> {
    if let Some(name) = args.table {
        return table(&name);
    }
    let d = match (args.variant, args.descriptor) {
        (Some(v), None) => v.descriptor()?,
        (None, Some(path)) => serde_json::from_str(&read(&path)?).map_err(|e| Error::Parse(e.to_string()))?,
        _ => return Err(Error::Parse("give exactly one of a variant, --descriptor or --table".into())),
    };
    let r = if variety {
        match d {
            SpaceDescriptor::RealCurve { .. } | SpaceDescriptor::ComplexCurve { .. } => space::report(&d)?,
            _ => space::compute_variety(&d)?,
        }
    } else {
        space::report(&d)?
    };
    Ok(report_value(&r).into())
}

fn execute(command: Command) -> Result<Output, Error> {
    Ok(match command {
        Command::Clifford(args) => match AnyForm::parse(&args.form, args.field.into())? {
            AnyForm::Real(f) => AnyAlgebra::from(clifford(&f)?).to_value().into(),
            AnyForm::Complex(f) => AnyAlgebra::from(clifford(&f)?).to_value().into(),
        },
        Command::Tensor { left, right } => {
            load_algebra(&left)?.graded_tensor(&load_algebra(&right)?)?.to_value().into()
        }
        Command::Invariants(input) => match input_algebra(&input)? {
            AnyAlgebra::Real(a) => invariants(&a)?.into(),
            AnyAlgebra::Complex(a) => invariants(&a)?.into(),
        },
        Command::Azumaya(input) => {
            let azumaya = match input_algebra(&input)? {
                AnyAlgebra::Real(a) => a.is_azumaya(),
                AnyAlgebra::Complex(a) => a.is_azumaya(),
            };
            json!({ "azumaya": azumaya }).into()
        }
        Command::Centralizer { input, of } => match input_algebra(&input)? {
            AnyAlgebra::Real(a) => centralizer(&a, of)?.into(),
            AnyAlgebra::Complex(a) => centralizer(&a, of)?.into(),
        },
        Command::Space(args) => space_command(args, false)?,
        Command::Variety(args) => space_command(args, true)?,
        Command::Table { name } => table(&name)?,
        Command::Selftest { seed } => {
            let report = selftest::run(seed);
            for item in &report.items {
                eprintln!("[{}] {}: {}", if item.passed { "PASS" } else { "FAIL" }, item.name, item.detail);
            }
            Output { value: to_value(&report), ok: report.passed }
        }
    })
}

fn print(value: &Value) {
    let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    // A closed pipe downstream is not our failure.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn run<I: IntoIterator<Item = OsString>>(args: I) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    eprint!("{}", e.render());
                    2
                }
                _ => {
                    print(&json!({ "error": { "kind": "usage", "message": e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ") } }));
                    eprint!("{}", e.render());
                    2
                }
            };
        }
    };
    match execute(cli.command) {
        Ok(out) => {
            print(&out.value);
            if out.ok {
                0
            } else {
                eprintln!("gbr: some checks failed");
                1
            }
        }
        Err(e) => {
            print(&json!({ "error": { "kind": e.kind(), "message": e.to_string() } }));
            eprintln!("gbr: {e}");
            if e.is_input_error() {
                2
            } else {
                1
            }
        }
    }
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
