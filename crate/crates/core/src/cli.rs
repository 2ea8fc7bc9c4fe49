//! Command-line front end. `run` returns the exit code and the full text
//! output so that tests can drive it in-process.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::certificate::{Certificate, Check, Source};
use crate::codeforge::build_golay;
use crate::error::Error;
use crate::io;
use crate::latticeforge::build_leech;
use crate::orthogroup::{
    canonicalize_s, commuting_involutions, group_order, stab_s_generators, unipotent_rank, DEFAULT_CLOSURE_CAP,
};
use crate::quadspace::{build_s, check_cond1, hyperbolic_space, standard_phi, standard_psi, QuadraticSpace};
use crate::verify::{self, VerifyOptions, DEFAULT_SEED};
use crate::voashadow::analogy_table;

pub const CLOSURE_ENV: &str = "TURYN_MAX_CLOSURE";

/// Largest `m` for which `stab-order` runs the BFS closure.
const BFS_MAX_M: usize = 3;

#[derive(Parser, Debug)]
#[command(name = "turyn", version, about = "Quadratic spaces over F2 and the Golay, Leech and weight-2 constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit quadratic space files.
    Qspace {
        #[command(subcommand)]
        action: QspaceAction,
    },
    /// Emit a random subspace with w^3 >= 4 off zero: the standard S(Φ, Ψ; 3) moved by a seeded wreath element.
    RandomS {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Canonicalize a subspace of R^3 and verify S·g = S(Φ, Ψ; 3).
    Canon {
        #[arg(long = "in")]
        input: PathBuf,
        /// Space R (defaults to the hyperbolic space of matching dimension).
        #[arg(long)]
        qspace: Option<PathBuf>,
    },
    /// Build the length-24 code and certify it.
    Golay {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the rank-24 lattice and certify it.
    Leech {
        /// Also count norms by direct rank-24 enumeration (slow).
        #[arg(long)]
        full_enum: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight-2 dimension of the glued module and its breakdown.
    MoonshineDim,
    /// Stabilizer generators of S(Φ, Ψ; k) and, for small m, the BFS order.
    StabOrder {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        k: usize,
    },
    /// The three decompositions side by side.
    Analogy {
        #[arg(long)]
        csv: bool,
    },
    /// Run every numbered check.
    VerifyAll {
        #[arg(long)]
        full_enum: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum QspaceAction {
    /// The hyperbolic space of dimension 2m, or its k-fold orthogonal sum.
    Gen {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: Option<usize>,
    },
}

/// Failure modes, mapped to exit codes 1 and 2.
enum Failure {
    Check(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(format!("error: {e}")),
            _ => Failure::Check(format!("error: {e}")),
        }
    }
}

type Outcome = std::result::Result<(bool, String), Failure>;

/// Runs the CLI on `argv` (including the program name).
pub fn run<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok((true, out)) => (0, out),
        Ok((false, out)) => (1, out),
        Err(Failure::Check(msg)) => (1, msg + "\n"),
        Err(Failure::Usage(msg)) => (2, msg + "\n"),
    }
}

fn closure_cap() -> std::result::Result<usize, Failure> {
    match std::env::var(CLOSURE_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("error: {CLOSURE_ENV}=`{v}` is not a positive integer"))),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("error: cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Check(format!("error: cannot write {}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Qspace {
            action: QspaceAction::Gen { m, k },
        } => {
            let sp = hyperbolic_space(m)?;
            let sp = match k {
                Some(0) => return Err(Failure::Usage("error: --k must be positive".into())),
                Some(k) => sp.direct_sum(k),
                None => sp,
            };
            Ok((true, io::write_qspace(&sp)))
        }
        Command::RandomS { m, seed } => {
            let sp = hyperbolic_space(m)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let s = verify::random_s(&sp, &mut rng)?;
            Ok((true, format!("# random-s m={m} seed={seed}\n{}", io::write_subspace(&s))))
        }
        Command::Canon { input, qspace } => canon(&input, qspace.as_deref()),
        Command::Golay { out } => {
            let b = build_golay()?;
            let text = io::write_code(&b.code);
            let mut cert = verify::golay_certificate(&b)?;
            cert.checks.extend(verify::octad_certificate(&b)?.checks);
            emit_object(out.as_deref(), &text, &cert)
        }
        Command::Leech { full_enum, out } => {
            let b = build_leech()?;
            let text = io::write_gram2(&b.glued.lattice);
            let mut cert = verify::leech_certificate(&b, full_enum)?;
            cert.checks.extend(verify::minimal_vector_certificate(&b)?.checks);
            emit_object(out.as_deref(), &text, &cert)
        }
        Command::MoonshineDim => {
            let cert = verify::weight2_certificate()?;
            Ok((cert.passed(), cert.render()))
        }
        Command::StabOrder { m, k } => stab_order(m, k, closure_cap()?),
        Command::Analogy { csv } => {
            let table = analogy_table(shape_checks(closure_cap()?)?)?;
            let mut out = table.to_text();
            if csv {
                out.push('\n');
                out.push_str(&table.to_csv());
            }
            Ok((true, out))
        }
        Command::VerifyAll { full_enum, seed } => {
            let opts = VerifyOptions {
                closure_cap: closure_cap()?,
                seed,
                full_enum,
            };
            let certs = verify::run_all(&opts);
            let mut out = String::new();
            for (i, c) in certs.iter().enumerate() {
                out.push_str(&format!(
                    "[{:>2}] {}: {}\n",
                    i + 1,
                    verify::title(i + 1),
                    if c.passed() { "PASS" } else { "FAIL" }
                ));
                for line in c.render().lines() {
                    out.push_str("     ");
                    out.push_str(line);
                    out.push('\n');
                }
            }
            let failed = certs.iter().filter(|c| !c.passed()).count();
            out.push_str(&format!("summary: {}/{} passed\n", certs.len() - failed, certs.len()));
            Ok((failed == 0, out))
        }
    }
}

fn emit_object(out: Option<&Path>, text: &str, cert: &Certificate) -> Outcome {
    let mut s = String::new();
    match out {
        Some(p) => {
            write(p, text)?;
            s.push_str(&format!("wrote: {}\n", p.display()));
        }
        None => s.push_str(text),
    }
    s.push_str(&cert.render());
    Ok((cert.passed(), s))
}

fn canon(input: &Path, qspace: Option<&Path>) -> Outcome {
    let s = io::parse_subspace(&read(input)?)?;
    let sp: QuadraticSpace = match qspace {
        Some(p) => io::parse_qspace(&read(p)?)?,
        None => {
            let n = s.ambient();
            if n % 6 != 0 || n == 0 {
                return Err(Failure::Check(format!(
                    "error: ambient dimension {n} is not 3·2m; pass --qspace"
                )));
            }
            hyperbolic_space(n / 6)?
        }
    };
    if s.ambient() != 3 * sp.dim() {
        return Err(Failure::Check(format!(
            "error: subspace lives in dimension {}, expected 3·{}",
            s.ambient(),
            sp.dim()
        )));
    }
    if let Err(v) = check_cond1(&sp, 3, &s) {
        return Err(Failure::Check(format!("error: S has a non-zero vector with w^3 < 4: {v}")));
    }
    let can = canonicalize_s(&sp, &s)?;
    let target = build_s(&sp, &can.phi, &can.psi, 3)?;
    let ok = can.g.apply_subspace(&s) == target;
    let mut out = String::from("# g\n");
    out.push_str(&io::write_wreath(&can.g));
    out.push_str("# phi\n");
    out.push_str(&io::write_subspace(&can.phi));
    out.push_str("# psi\n");
    out.push_str(&io::write_subspace(&can.psi));
    out.push_str(&format!("verified: S·g = S(Φ, Ψ; 3): {}\n", if ok { "PASS" } else { "FAIL" }));
    Ok((ok, out))
}

fn stab_order(m: usize, k: usize, cap: usize) -> Outcome {
    let sp = hyperbolic_space(m)?;
    let gens = stab_s_generators(&sp, &standard_phi(m), &standard_psi(m), k)?;
    let mut out = format!(
        "generators: {} (unipotent {}, levi {}, permutations {})\n",
        gens.len(),
        gens.o2.len(),
        gens.levi.len(),
        gens.perms.len()
    );
    let kinds = gens
        .o2
        .iter()
        .map(|g| ("unipotent", g))
        .chain(gens.levi.iter().map(|g| ("levi", g)))
        .chain(gens.perms.iter().map(|g| ("permutation", g)));
    for (i, (kind, g)) in kinds.enumerate() {
        out.push_str(&format!("# generator {} ({kind})\n", i + 1));
        out.push_str(&io::write_wreath(g));
    }
    let mut cert = Certificate::new(&format!("stabilizer (m,k) = ({m},{k})"));
    let shape = verify::stabilizer_shape_order(m as u32, k as u32);
    if m <= BFS_MAX_M {
        let n = sp.dim() * k;
        let order = group_order(n, &gens.matrices(), cap)?;
        cert.push(Check::eq("BFS order vs shape formula", shape, order, Source::Derived));
    } else {
        cert.push(Check::holds(
            "unipotent generators commute, square to 1",
            commuting_involutions(&gens.o2),
            Source::Derived,
        ));
        cert.push(Check::eq(
            "unipotent rank",
            (k - 1) * m * (m - 1) / 2,
            unipotent_rank(&gens.o2),
            Source::Derived,
        ));
        cert.note(format!("BFS skipped for m > {BFS_MAX_M}; shape formula gives {shape}"));
    }
    out.push_str(&cert.render());
    Ok((cert.passed(), out))
}

/// One-line summaries of what is checked about each stabilizer shape.
fn shape_checks(cap: usize) -> std::result::Result<[String; 3], Failure> {
    let mut lines = Vec::new();
    for m in 3..=5usize {
        let sp = hyperbolic_space(m)?;
        let gens = stab_s_generators(&sp, &standard_phi(m), &standard_psi(m), 3)?;
        let rank = unipotent_rank(&gens.o2);
        let line = if m <= BFS_MAX_M {
            let order = group_order(sp.dim() * 3, &gens.matrices(), cap)?;
            format!("BFS order {order}, unipotent rank {rank}")
        } else {
            format!(
                "unipotent rank {rank}, commuting involutions {}",
                commuting_involutions(&gens.o2)
            )
        };
        lines.push(line);
    }
    let dual_bits = crate::voashadow::standard_s(&crate::voashadow::rv_space())?.dim();
    lines[2].push_str(&format!(", |S| = 2^{dual_bits}"));
    Ok([lines.remove(0), lines.remove(0), lines.remove(0)])
}
