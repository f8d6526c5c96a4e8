//! Command-line front end. Exit codes: 0 success, 1 domain error (bad
//! expression, wrong codimension), 64 usage error. `verify` instead exits
//! with its report status: 0 all match, 3 benign discrepancies only, 1 any
//! failure, 2 reserved for internal errors.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use conics::bb::{self, Space};
use conics::chow::{ChowClass, ChowRing};
use conics::cone::PairingContext;
use conics::linalg::{format_rat, format_vec, primitive_ray, primitive_signed, Rat};
use conics::verify::{Verifier, SECTIONS};
use num_traits::Zero;
use serde_json::json;

/// Exact intersection theory on the space of complete conics.
#[derive(Parser)]
#[command(name = "conics", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Chow-ring arithmetic on the blowup.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Torus fixed points and cell tables.
    Bb {
        #[command(subcommand)]
        command: BbCommand,
    },
    /// Effective and nef cones through the intersection pairing.
    Cones {
        #[command(subcommand)]
        command: ConeCommand,
    },
    /// Recompute every displayed value and report agreement.
    Verify {
        /// Restrict to the named sections, comma separated.
        #[arg(long, value_delimiter = ',')]
        sections: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Intersection number of a degree-five expression.
    Number {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Expand an expression into monomial coefficients.
    Expand {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Pairing of two classes of complementary codimension.
    Pair {
        #[arg(allow_hyphen_values = true)]
        left: String,
        #[arg(allow_hyphen_values = true)]
        right: String,
    },
}

#[derive(Subcommand)]
enum BbCommand {
    /// Cell dimensions and counts for one space.
    Cells {
        /// One of p5, m, e1.
        #[arg(long)]
        space: Space,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ConeCommand {
    /// Dual cone of the given generators under the intersection pairing.
    Dual {
        /// Generator expressions, semicolon separated.
        #[arg(
            long,
            value_delimiter = ';',
            required = true,
            allow_hyphen_values = true
        )]
        gens: Vec<String>,
        /// Codimension of the generators (1 through 4).
        #[arg(long)]
        codim: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Affine cross-section of one of the standard cones.
    CrossSection {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Which {
    /// Effective 2-cycles (codimension 3).
    Eff2,
    /// Effective 3-cycles (codimension 2).
    Eff3,
    /// Nef classes of codimension 2.
    Nef2,
    /// Nef classes of codimension 3.
    Nef3,
}

impl Which {
    fn name(self) -> &'static str {
        match self {
            Which::Eff2 => "eff2",
            Which::Eff3 => "eff3",
            Which::Nef2 => "nef2",
            Which::Nef3 => "nef3",
        }
    }

    fn codim(self) -> usize {
        match self {
            Which::Eff2 | Which::Nef3 => 3,
            Which::Eff3 | Which::Nef2 => 2,
        }
    }

    fn generators(self) -> &'static [&'static str] {
        match self {
            Which::Eff2 => &["H1^2*E1", "H2^2*E2", "H1*E1*E2", "H2*E1*E2"],
            Which::Eff3 => &["H1*E1", "H2*E2", "E1*E2"],
            Which::Nef2 => &["H1^2", "H1*H2", "H2^2", "H1^2 - H1*H2 + H2^2"],
            Which::Nef3 => &["H1^3", "H2^3", "(H1+H2)*E1*E2"],
        }
    }
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

type CliResult = Result<i32, Box<dyn std::error::Error>>;

/// Print to stdout, exiting quietly when the consumer closes the pipe.
fn emit(text: &str) {
    use std::io::{ErrorKind, Write};
    let mut out = std::io::stdout().lock();
    let result = out.write_all(text.as_bytes()).and_then(|_| out.flush());
    if let Err(e) = result {
        if e.kind() == ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format_args!($($arg)*)))
    };
}

fn dispatch(cli: Cli) -> CliResult {
    let ring = ChowRing::new();
    match cli.command {
        Command::Ring { command } => ring_command(&ring, command),
        Command::Bb { command } => bb_command(command),
        Command::Cones { command } => cone_command(&ring, command),
        Command::Verify { sections, format } => verify_command(&sections, format),
    }
}

fn print_json(v: &serde_json::Value) {
    outln!(
        "{}",
        serde_json::to_string_pretty(v).expect("serialization cannot fail")
    );
}

fn monomial_label(k: usize, i: usize) -> String {
    let mut parts = Vec::new();
    let a = k - i;
    if a == 1 {
        parts.push("H1".to_string());
    } else if a > 1 {
        parts.push(format!("H1^{a}"));
    }
    if i == 1 {
        parts.push("H2".to_string());
    } else if i > 1 {
        parts.push(format!("H2^{i}"));
    }
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join("*")
    }
}

fn ring_command(ring: &ChowRing, cmd: RingCommand) -> CliResult {
    match cmd {
        RingCommand::Number { expr } => {
            let c = ring.class(&expr)?;
            outln!("{}", format_rat(&ring.intersection_number(&c)?));
        }
        RingCommand::Expand { expr, format } => {
            let c = ring.class(&expr)?;
            match format {
                Format::Table => outln!("{}", c.to_expression_string()),
                Format::Json => {
                    let monomials: Vec<String> = (0..=c.codim())
                        .map(|i| monomial_label(c.codim(), i))
                        .collect();
                    let coefficients: Vec<String> = c.coeffs().iter().map(format_rat).collect();
                    print_json(&json!({
                        "codim": c.codim(),
                        "coefficients": coefficients,
                        "monomials": monomials,
                        "text": c.to_expression_string(),
                    }));
                }
            }
        }
        RingCommand::Pair { left, right } => {
            let a = ring.class(&left)?;
            let b = ring.class(&right)?;
            outln!("{}", format_rat(&ring.pair(&a, &b)?));
        }
    }
    Ok(0)
}

fn bb_command(cmd: BbCommand) -> CliResult {
    let BbCommand::Cells { space, format } = cmd;
    let table = match space {
        Space::P5 => bb::p5_cell_dimensions()?,
        Space::M => bb::m_cell_dimensions()?,
        Space::E1 => bb::e1_cell_dimensions()?,
    };
    let betti = bb::betti_vector(space)?;
    match format {
        Format::Table => {
            let width = table
                .cells
                .iter()
                .map(|(l, _)| l.len())
                .max()
                .unwrap_or(0)
                .max("point".len());
            outln!("{:width$}  dim", "point");
            for (label, dim) in &table.cells {
                outln!("{label:width$}  {dim}");
            }
            let counts: Vec<String> = betti.iter().map(|n| n.to_string()).collect();
            outln!("");
            outln!("cells by dimension: ({})", counts.join(", "));
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = table
                .cells
                .iter()
                .map(|(label, dim)| json!({ "dimension": dim, "label": label }))
                .collect();
            print_json(&json!({
                "betti": betti,
                "rows": rows,
                "space": space.name(),
            }));
        }
    }
    Ok(0)
}

/// Express a vector given in `ech` coordinates in the rendering basis,
/// normalized by `scale` (primitive ray or primitive signed vector).
fn rendered_coords(
    ring: &ChowRing,
    vector: &[Rat],
    ech: &[ChowClass],
    rend_classes: &[ChowClass],
    scale: fn(&[Rat]) -> Option<Vec<Rat>>,
) -> Result<Vec<Rat>, Box<dyn std::error::Error>> {
    let k = ech[0].codim();
    let mut class = ChowClass::zero(k)?;
    for (coef, b) in vector.iter().zip(ech) {
        class = class.add(&b.scale(coef))?;
    }
    let coords = ring.coordinates_in_basis(&class, rend_classes)?;
    Ok(scale(&coords).ok_or("a dual vector is numerically zero")?)
}

fn combination(
    coords: &[Rat],
    rend: &[(String, ChowClass)],
) -> Result<ChowClass, Box<dyn std::error::Error>> {
    let mut class = ChowClass::zero(rend[0].1.codim())?;
    for (c, (_, b)) in coords.iter().zip(rend) {
        class = class.add(&b.scale(c))?;
    }
    Ok(class)
}

fn cone_command(ring: &ChowRing, cmd: ConeCommand) -> CliResult {
    match cmd {
        ConeCommand::Dual {
            gens,
            codim,
            format,
        } => {
            if !(1..=4).contains(&codim) {
                return Err(format!("codimension must be between 1 and 4, got {codim}").into());
            }
            let exprs: Vec<String> = gens
                .iter()
                .map(|g| g.trim().to_string())
                .filter(|g| !g.is_empty())
                .collect();
            if exprs.is_empty() {
                return Err("no generators given".into());
            }
            let mut classes = Vec::new();
            for e in &exprs {
                let c = ring.class(e)?;
                if c.codim() != codim {
                    return Err(format!(
                        "generator `{e}` has codimension {}, expected {codim}",
                        c.codim()
                    )
                    .into());
                }
                classes.push(c);
            }
            let ech_src = ring.echelon_basis(codim)?;
            let coords: Vec<Vec<Rat>> = classes
                .iter()
                .map(|c| ring.coordinates_in_basis(c, &ech_src))
                .collect::<Result<_, _>>()?;
            let ech_dst = ring.echelon_basis(5 - codim)?;
            let ctx = PairingContext::new(ring.pairing_matrix(&ech_src, &ech_dst)?)?;
            let dd = ctx.dual_description(&coords)?;

            let rend = ring.rendering_basis(5 - codim)?;
            let rend_classes: Vec<ChowClass> = rend.iter().map(|(_, c)| c.clone()).collect();
            let mut rays: Vec<Vec<Rat>> = dd
                .rays
                .iter()
                .map(|v| rendered_coords(ring, v, &ech_dst, &rend_classes, primitive_ray))
                .collect::<Result<_, _>>()?;
            rays.sort();
            let mut lineality: Vec<Vec<Rat>> = dd
                .lineality
                .iter()
                .map(|v| rendered_coords(ring, v, &ech_dst, &rend_classes, primitive_signed))
                .collect::<Result<_, _>>()?;
            lineality.sort();

            let labels: Vec<&str> = rend.iter().map(|(l, _)| l.as_str()).collect();
            match format {
                Format::Table => {
                    outln!(
                        "dual cone in codimension {}, basis {{{}}}",
                        5 - codim,
                        labels.join(", ")
                    );
                    for v in &lineality {
                        outln!(
                            "lineality {} = {}",
                            format_vec(v),
                            combination(v, &rend)?.to_expression_string()
                        );
                    }
                    for v in &rays {
                        outln!(
                            "ray {} = {}",
                            format_vec(v),
                            combination(v, &rend)?.to_expression_string()
                        );
                    }
                }
                Format::Json => {
                    let entry =
                        |v: &Vec<Rat>| -> Result<serde_json::Value, Box<dyn std::error::Error>> {
                            Ok(json!({
                                "class": combination(v, &rend)?.to_expression_string(),
                                "coords": v.iter().map(format_rat).collect::<Vec<_>>(),
                            }))
                        };
                    let rays_json: Vec<serde_json::Value> =
                        rays.iter().map(entry).collect::<Result<_, _>>()?;
                    let lineality_json: Vec<serde_json::Value> =
                        lineality.iter().map(entry).collect::<Result<_, _>>()?;
                    print_json(&json!({
                        "codim": codim,
                        "dual_basis": labels,
                        "dual_codim": 5 - codim,
                        "generators": classes
                            .iter()
                            .map(ChowClass::to_expression_string)
                            .collect::<Vec<_>>(),
                        "lineality": lineality_json,
                        "rays": rays_json,
                    }));
                }
            }
            Ok(0)
        }
        ConeCommand::CrossSection { which, format } => {
            let k = which.codim();
            let rend = ring.rendering_basis(k)?;
            let rend_classes: Vec<ChowClass> = rend.iter().map(|(_, c)| c.clone()).collect();
            let labels: Vec<&str> = rend.iter().map(|(l, _)| l.as_str()).collect();
            let mut vertices: Vec<(String, Vec<Rat>)> = Vec::new();
            for g in which.generators() {
                let c = ring.class(g)?;
                let coords = ring.coordinates_in_basis(&c, &rend_classes)?;
                let sum = coords.iter().fold(Rat::zero(), |acc, x| acc + x);
                if sum <= Rat::zero() {
                    return Err(format!("generator `{g}` does not meet the affine chart").into());
                }
                let point: Vec<Rat> = coords.iter().map(|x| x / &sum).collect();
                vertices.push((g.to_string(), point));
            }
            match format {
                Format::Table => {
                    outln!(
                        "cross-section of {} in codimension {k}, basis {{{}}}, chart: coordinate sum 1",
                        which.name(),
                        labels.join(", ")
                    );
                    let width = vertices.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
                    for (label, point) in &vertices {
                        outln!(
                            "{label:width$}  point {}  chart ({}, {})",
                            format_vec(point),
                            format_rat(&point[0]),
                            format_rat(&point[1])
                        );
                    }
                }
                Format::Json => {
                    let vertices_json: Vec<serde_json::Value> = vertices
                        .iter()
                        .map(|(label, point)| {
                            json!({
                                "label": label,
                                "point": point.iter().map(format_rat).collect::<Vec<_>>(),
                                "xy": [format_rat(&point[0]), format_rat(&point[1])],
                            })
                        })
                        .collect();
                    print_json(&json!({
                        "basis": labels,
                        "codim": k,
                        "vertices": vertices_json,
                        "which": which.name(),
                    }));
                }
            }
            Ok(0)
        }
    }
}

fn verify_command(sections: &[String], format: Format) -> CliResult {
    let verifier = Verifier::default();
    let report = if sections.is_empty() {
        verifier.run_all()
    } else {
        match verifier.run_sections(sections) {
            Ok(r) => r,
            Err(e) => {
                eprintln!("error: {e}; available sections: {}", SECTIONS.join(", "));
                return Ok(64);
            }
        }
    };
    match format {
        Format::Table => emit(&report.render_table()),
        Format::Json => emit(&report.render_json()),
    }
    Ok(report.exit_code())
}
