//! The `polyiso` command line.
//!
//! Exit codes: 0 for a positive decision (or a successful conversion), 1 for
//! a negative decision, 2 for usage and input errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use polyiso_core::geometry::{affine_iso, congruent, AffineMapCertificate, PointSet};
use polyiso_core::oracle::{oracle_incidence_iso, DEFAULT_INCIDENCE_CAP};
use polyiso_core::rational::Rational;
use polyiso_core::reduction::{lambda_coordinates, lambda_incidence};
use polyiso_core::{
    graph, iso_up_to_duality, isomorphic, self_dual, simple_isomorphism, simplicial_isomorphism,
    DualityIso, Error, FaceLattice, IncidenceMatrix, IsoCertificate, LambdaConfig,
};
use thiserror::Error;

use crate::formats::{self, FormatError};

#[derive(Parser, Debug)]
#[command(name = "polyiso", version, about = "Combinatorial, affine and congruence isomorphism of polytopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide combinatorial isomorphism of two VFI files.
    Iso {
        a: PathBuf,
        b: PathBuf,
        /// Use the simple (or simplicial) polytope algorithm; fail otherwise.
        #[arg(long, conflicts_with = "flag")]
        simple: bool,
        /// Use the flag-graph algorithm even for simple inputs.
        #[arg(long)]
        flag: bool,
        /// Also accept an isomorphism onto the dual of B.
        #[arg(long, conflicts_with = "simple")]
        up_to_duality: bool,
        /// Check a previously printed certificate instead of searching.
        #[arg(long, value_name = "CERT")]
        verify: Option<PathBuf>,
    },
    /// Decide whether a polytope is combinatorially isomorphic to its dual.
    Selfdual { p: PathBuf },
    /// Print the dual (transposed) incidences.
    Dual { p: PathBuf },
    /// Print the graph of a polytope.
    Graph { p: PathBuf },
    /// Print dimension, f-vector, face and flag counts.
    Lattice {
        p: PathBuf,
        /// Print only the f-vector.
        #[arg(long)]
        fvector: bool,
        /// Also list every flag.
        #[arg(long)]
        flags: bool,
    },
    /// Build the polytope of a graph and write PREFIX.{vfi,dual.vfi,vrep,hrep}.
    Reduce {
        graph: PathBuf,
        #[arg(long, value_name = "PREFIX")]
        out: PathBuf,
        #[arg(long, value_parser = parse_rational)]
        eps: Option<Rational>,
        #[arg(long, value_parser = parse_rational)]
        delta: Option<Rational>,
    },
    /// Decide affine isomorphism of two VREP files.
    Affine {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "CERT")]
        verify: Option<PathBuf>,
    },
    /// Decide congruence of two VREP files.
    Congruent {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_name = "CERT")]
        verify: Option<PathBuf>,
    },
    /// Brute-force isomorphism test (for cross-checking).
    Oracle {
        a: PathBuf,
        b: PathBuf,
        /// Refuse inputs with more than this many vertices plus facets.
        #[arg(long, default_value_t = DEFAULT_INCIDENCE_CAP)]
        oracle_cap: usize,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    Rational::from_str(s).map_err(|_| format!("`{s}` is not a rational p/q"))
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Format { path: PathBuf, source: FormatError },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{}: {source}", path.display())]
    Input { path: PathBuf, source: Error },
    #[error("{0}")]
    Usage(String),
}

/// Standard output text and exit code of a successful command.
struct Outcome {
    text: String,
    code: i32,
}

impl Outcome {
    fn decided(yes: bool, text: String) -> Self {
        Self {
            text,
            code: if yes { 0 } else { 1 },
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match dispatch(cli.command, stderr) {
        Ok(out) => {
            if stdout.write_all(out.text.as_bytes()).is_err() {
                return 2;
            }
            out.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "polyiso: {e}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

fn format_err(path: &Path) -> impl FnOnce(FormatError) -> CliError + '_ {
    move |source| CliError::Format {
        path: path.into(),
        source,
    }
}

/// Reads a VFI file and checks the lattice conditions.
fn load_polytope(path: &Path) -> Result<IncidenceMatrix, CliError> {
    let p = formats::parse_vfi(&read(path)?).map_err(format_err(path))?;
    p.validate_polytopal().map_err(|e| CliError::Input {
        path: path.into(),
        source: e.into(),
    })?;
    Ok(p)
}

fn load_points(path: &Path) -> Result<PointSet, CliError> {
    formats::parse_vrep(&read(path)?).map_err(format_err(path))
}

fn load_certificate(path: &Path) -> Result<formats::PrintedCertificate, CliError> {
    formats::parse_certificate(&read(path)?).map_err(format_err(path))
}

fn iso_text(status: &str, cert: Option<&IsoCertificate>) -> String {
    let mut s = format!("{status}\n");
    if let Some(c) = cert {
        s.push_str(&formats::write_map(&c.vertex_map));
    }
    s
}

fn dispatch(command: Command, stderr: &mut dyn Write) -> Result<Outcome, CliError> {
    match command {
        Command::Iso {
            a,
            b,
            simple,
            flag,
            up_to_duality,
            verify,
        } => {
            let p = load_polytope(&a)?;
            let q = load_polytope(&b)?;
            if let Some(cert) = verify {
                return verify_iso(&p, &q, &load_certificate(&cert)?);
            }
            if up_to_duality {
                let _ = writeln!(stderr, "algorithm: flag");
                return Ok(match iso_up_to_duality(&p, &q)? {
                    DualityIso::Direct(c) => Outcome::decided(true, iso_text("ISO direct", Some(&c))),
                    DualityIso::Dual(c) => Outcome::decided(true, iso_text("ISO dual", Some(&c))),
                    DualityIso::Neither => Outcome::decided(false, iso_text("ISO no", None)),
                });
            }
            let (algorithm, found) = decide_iso(&p, &q, simple, flag)?;
            let _ = writeln!(stderr, "algorithm: {algorithm}");
            Ok(match found {
                Some(c) => Outcome::decided(true, iso_text("ISO yes", Some(&c))),
                None => Outcome::decided(false, iso_text("ISO no", None)),
            })
        }
        Command::Selfdual { p } => {
            let p = load_polytope(&p)?;
            Ok(match self_dual(&p)? {
                Some(c) => Outcome::decided(true, iso_text("SELFDUAL yes", Some(&c))),
                None => Outcome::decided(false, iso_text("SELFDUAL no", None)),
            })
        }
        Command::Dual { p } => {
            let p = load_polytope(&p)?;
            Ok(Outcome::decided(true, formats::write_vfi(&p.dual())))
        }
        Command::Graph { p } => {
            let p = load_polytope(&p)?;
            let g = graph::polytope_graph(&p)?;
            Ok(Outcome::decided(true, formats::write_graph(&g)))
        }
        Command::Lattice { p, fvector, flags } => {
            let p = load_polytope(&p)?;
            let l = FaceLattice::build(&p).map_err(Error::from)?;
            Ok(Outcome::decided(true, lattice_text(&l, fvector, flags)))
        }
        Command::Reduce {
            graph,
            out,
            eps,
            delta,
        } => reduce(&graph, &out, eps, delta),
        Command::Affine { a, b, verify } => geometric(&a, &b, verify.as_deref(), false),
        Command::Congruent { a, b, verify } => geometric(&a, &b, verify.as_deref(), true),
        Command::Oracle { a, b, oracle_cap } => {
            let p = load_polytope(&a)?;
            let q = load_polytope(&b)?;
            let _ = writeln!(stderr, "algorithm: oracle");
            Ok(match oracle_incidence_iso(&p, &q, oracle_cap)? {
                Some(c) => Outcome::decided(true, iso_text("ISO yes", Some(&c))),
                None => Outcome::decided(false, iso_text("ISO no", None)),
            })
        }
    }
}

/// Simple first, then simplicial, then flags, unless forced.
fn decide_iso(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
    simple: bool,
    flag: bool,
) -> Result<(&'static str, Option<IsoCertificate>), CliError> {
    if !flag {
        match simple_isomorphism(p, q) {
            Ok(found) => return Ok(("simple", found)),
            Err(Error::NotSimple) => {}
            Err(e) => return Err(e.into()),
        }
        match simplicial_isomorphism(p, q) {
            Ok(found) => return Ok(("simplicial", found)),
            Err(Error::NotSimplicial) => {}
            Err(e) => return Err(e.into()),
        }
        if simple {
            return Err(CliError::Usage(
                "--simple needs two simple or two simplicial polytopes".into(),
            ));
        }
    }
    Ok(("flag", isomorphic(p, q)?))
}

fn verify_iso(
    p: &IncidenceMatrix,
    q: &IncidenceMatrix,
    cert: &formats::PrintedCertificate,
) -> Result<Outcome, CliError> {
    let target = match (cert.kind.as_str(), cert.verdict.as_str()) {
        ("ISO", "yes" | "direct") => q.clone(),
        ("ISO", "dual") | ("SELFDUAL", "yes") => q.dual(),
        (kind, verdict) => {
            return Err(CliError::Usage(format!(
                "`{kind} {verdict}` does not carry an isomorphism certificate"
            )))
        }
    };
    let ok = IsoCertificate::from_vertex_map(p, &target, cert.map.clone()).is_some();
    Ok(Outcome::decided(ok, verify_text(ok)))
}

fn verify_text(ok: bool) -> String {
    if ok { "VERIFY ok\n" } else { "VERIFY failed\n" }.to_owned()
}

fn lattice_text(l: &FaceLattice, fvector_only: bool, flags: bool) -> String {
    let f: Vec<String> = l.f_vector().iter().map(ToString::to_string).collect();
    let f_line = format!("f=({})\n", f.join(","));
    if fvector_only && !flags {
        return f_line;
    }
    let mut s = format!("d={}\n", l.dimension());
    s.push_str(&f_line);
    writeln!(s, "phi={}", l.face_count()).unwrap();
    writeln!(s, "flags={}", l.flag_count()).unwrap();
    if flags {
        for flag in l.enumerate_flags().iter() {
            let faces: Vec<String> = flag
                .iter()
                .map(|&id| {
                    let vs: Vec<String> =
                        l.face(id as usize).vertices.iter().map(ToString::to_string).collect();
                    format!("{{{}}}", vs.join(","))
                })
                .collect();
            writeln!(s, "{}", faces.join(" ")).unwrap();
        }
    }
    s
}

fn reduce(
    graph_path: &Path,
    out: &Path,
    eps: Option<Rational>,
    delta: Option<Rational>,
) -> Result<Outcome, CliError> {
    let g = formats::parse_graph(&read(graph_path)?).map_err(format_err(graph_path))?;
    let cfg = match (eps, delta) {
        (None, None) => LambdaConfig::default(),
        (eps, delta) => {
            let d = LambdaConfig::default();
            LambdaConfig::new(
                eps.unwrap_or_else(|| d.eps().clone()),
                delta.unwrap_or_else(|| d.delta().clone()),
            )?
        }
    };
    let p = lambda_incidence(&g)?;
    let (points, h) = lambda_coordinates(&g, &cfg)?;
    let prefix = out.as_os_str().to_owned();
    let with = |ext: &str| {
        let mut s = prefix.clone();
        s.push(ext);
        PathBuf::from(s)
    };
    let files = [
        (with(".vfi"), formats::write_vfi(&p)),
        (with(".dual.vfi"), formats::write_vfi(&p.dual())),
        (with(".vrep"), formats::write_vrep(&points)),
        (with(".hrep"), formats::write_hrep(&h)),
    ];
    let mut listing = String::new();
    for (path, text) in &files {
        write_file(path, text)?;
        writeln!(listing, "{}", path.display()).unwrap();
    }
    Ok(Outcome::decided(true, listing))
}

fn geometric(a: &Path, b: &Path, verify: Option<&Path>, congruence: bool) -> Result<Outcome, CliError> {
    let vp = load_points(a)?;
    let vq = load_points(b)?;
    let kind = if congruence { "CONGRUENT" } else { "AFFINE" };
    if let Some(path) = verify {
        let printed = load_certificate(path)?;
        if printed.kind != kind || printed.verdict != "yes" {
            return Err(CliError::Usage(format!(
                "`{} {}` is not a `{kind} yes` certificate",
                printed.kind, printed.verdict
            )));
        }
        let cert = AffineMapCertificate {
            linear: printed.linear,
            translation: printed.translation,
            vertex_map: printed.map,
        };
        let ok = if congruence {
            cert.verify_congruence(&vp, &vq)
        } else {
            cert.verify(&vp, &vq)
        };
        return Ok(Outcome::decided(ok, verify_text(ok)));
    }
    let found = if congruence {
        congruent(&vp, &vq)?
    } else {
        affine_iso(&vp, &vq)?
    };
    Ok(match found {
        Some(c) => Outcome::decided(true, format!("{kind} yes\n{}", formats::write_affine(&c))),
        None => Outcome::decided(false, format!("{kind} no\n")),
    })
}
