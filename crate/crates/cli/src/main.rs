use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use bv_core::calculus::{check_master_equation, check_nilpotence, check_quantum_condition, CheckReport};
use bv_core::dsl::{parse_expr, parse_model};
use bv_core::homology::{
    bracket_identity_check, cohomology_window, filtration_check, fk_probe, functional_class_test, is_coboundary,
    is_cocycle, Space, SpaceVariant, Window,
};
use bv_core::models::{
    alpha_tilde, beta_tilde, builtin_model, check_homotopy, named_cocycle, transgress, verify_covariance, CocycleKind,
    ModelSpec,
};
use bv_core::superpoly::{Coeff, Polynomial};
use bv_core::{Error, Exec};

/// Exact checks for BV models of the spinning particle.
#[derive(Parser, Debug)]
#[command(name = "bvcheck", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct ModelArg {
    /// `builtin:free:d=N`, `builtin:sugra:d=N[:metric=SIGNS]` or a model file.
    #[arg(long)]
    model: String,
}

/// An element given either as an expression or as a named cocycle.
#[derive(Args, Debug)]
struct ElementArg {
    #[arg(long)]
    expr: Option<String>,
    /// Named cocycle: alpha, beta, A, B, alpha_tilde, beta_tilde.
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    /// Apply the transgression g to the element.
    #[arg(long)]
    transgress: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural identities of a model.
    Check {
        what: CheckKind,
        #[command(flatten)]
        model: ModelArg,
    },
    /// Windowed cohomology in one ghost degree.
    Cohomology {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true)]
        ghost: i32,
        /// Caps `D,L,X,G`.
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 2)]
        margin: u32,
        /// A, A_localized, A_mod_I, F, F_localized, F_mod_I.
        #[arg(long, default_value = "A")]
        space: String,
    },
    /// Closedness and exactness of a single element.
    Cocycle {
        what: CocycleMode,
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        element: ElementArg,
        #[arg(long, default_value_t = 2)]
        margin: u32,
    },
    /// {F, G} = R modulo s-exact and ∂-exact terms.
    Bracket {
        #[command(flatten)]
        model: ModelArg,
        /// The two bracket arguments.
        #[arg(long, num_args = 1, required = true)]
        expr: Vec<String>,
        #[arg(long, default_value = "0")]
        rhs: String,
        #[arg(long, default_value_t = 2)]
        margin: u32,
    },
    /// Windowed H^{-k}(A/(dA+I)) and H^{-k}(F) for the given k.
    FkProbe {
        #[command(flatten)]
        model: ModelArg,
        /// Comma-separated positive degrees.
        #[arg(long, default_value = "1,2,3")]
        k: String,
        #[arg(long)]
        window: String,
        #[arg(long, default_value_t = 2)]
        margin: u32,
    },
    /// Filtration degrees of the terms of s.
    Filtration {
        #[command(flatten)]
        model: ModelArg,
        #[arg(long, allow_negative_numbers = true, default_value = "1/2")]
        sigma: String,
    },
    /// Canonical form, grading and s-image of an element.
    Eval {
        #[command(flatten)]
        model: ModelArg,
        #[command(flatten)]
        element: ElementArg,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CheckKind {
    Master,
    Nilpotent,
    Quantum,
    Covariance,
    Homotopy,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CocycleMode {
    Closed,
    Coboundary,
    Functional,
}

/// Text plus exit status: 0 pass, 1 check failed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn new(text: String, passed: bool) -> Self {
        Outcome { text, passed }
    }

    fn report(r: &CheckReport, model: &ModelSpec) -> Self {
        Outcome::new(r.render(&model.roster), r.passed)
    }
}

fn load_model(spec: &str) -> Result<ModelSpec, Error> {
    if spec.starts_with("builtin:") {
        return builtin_model(spec);
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Error::InvalidArgument(format!("cannot read model file `{spec}`: {e}")))?;
    parse_model(&text)
}

fn parse_rational(s: &str) -> Result<Coeff, Error> {
    s.trim().parse::<Coeff>().map_err(|_| Error::InvalidArgument(format!("bad rational `{s}`")))
}

fn element(model: &ModelSpec, arg: &ElementArg) -> Result<Polynomial, Error> {
    let base = match (&arg.expr, &arg.kind) {
        (Some(e), None) => parse_expr(&model.roster, e)?,
        (None, Some(kind)) => {
            let k = arg.k.ok_or_else(|| Error::InvalidArgument("--kind needs --k".into()))?;
            match kind.as_str() {
                "alpha_tilde" => alpha_tilde(model, k)?,
                "beta_tilde" => beta_tilde(model, k)?,
                other => named_cocycle(model, other.parse::<CocycleKind>()?, k)?,
            }
        }
        _ => return Err(Error::InvalidArgument("give exactly one of --expr and --kind".into())),
    };
    if arg.transgress {
        transgress(model, &base)
    } else {
        Ok(base)
    }
}

fn a_space<'m>(model: &'m ModelSpec, a: &Polynomial) -> Result<Space<'m>, Error> {
    let variant = if a.has_negative_exponents() { SpaceVariant::ALocalized } else { SpaceVariant::A };
    Space::with_exec(model, variant, Exec::default())
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    match cli.command {
        Command::Check { what, model } => {
            let m = load_model(&model.model)?;
            let r = match what {
                CheckKind::Master => check_master_equation(&m.roster, &m.action)?,
                CheckKind::Nilpotent => check_nilpotence(&m.roster, m.s(), Exec::default()),
                CheckKind::Quantum => check_quantum_condition(&m.roster, &m.action),
                CheckKind::Covariance => {
                    let r = verify_covariance(&m)?;
                    return Ok(Outcome::report(&r, &m.with_aux_xi()?));
                }
                CheckKind::Homotopy => check_homotopy(&m)?,
            };
            Ok(Outcome::report(&r, &m))
        }
        Command::Cohomology { model, ghost, window, margin, space } => {
            let m = load_model(&model.model)?;
            let sp = Space::new(&m, space.parse::<SpaceVariant>()?)?;
            let r = cohomology_window(&sp, ghost, &Window::parse(&window)?, margin)?;
            Ok(Outcome::new(r.render(&m.roster), r.stabilized))
        }
        Command::Cocycle { what, model, element: el, margin } => {
            let m = load_model(&model.model)?;
            let a = element(&m, &el)?;
            let sp = a_space(&m, &a)?;
            let mut text = format!("element: {}\n", m.render(&a));
            match what {
                CocycleMode::Closed => {
                    sp.check_member(&a)?;
                    let closed = is_cocycle(&sp, &a)?;
                    let _ = writeln!(text, "s(element): {}", m.render(&sp.apply_s(&a)));
                    let _ = writeln!(text, "closed: {closed}");
                    Ok(Outcome::new(text, closed))
                }
                CocycleMode::Coboundary => {
                    let r = is_coboundary(&sp, &a, margin)?;
                    text.push_str(&r.render(&sp));
                    Ok(Outcome::new(text, r.witness.is_some()))
                }
                CocycleMode::Functional => {
                    let r = functional_class_test(&sp, &a, margin)?;
                    text.push_str(&r.render(&sp));
                    Ok(Outcome::new(text, r.closed))
                }
            }
        }
        Command::Bracket { model, expr, rhs, margin } => {
            let m = load_model(&model.model)?;
            if expr.len() != 2 {
                return Err(Error::InvalidArgument(format!("bracket needs two --expr arguments, got {}", expr.len())));
            }
            let f = parse_expr(&m.roster, &expr[0])?;
            let g = parse_expr(&m.roster, &expr[1])?;
            let r = parse_expr(&m.roster, &rhs)?;
            let sp = a_space(&m, &(&(&f + &g) + &r))?;
            let rep = bracket_identity_check(&sp, (&f, &g), &r, margin)?;
            Ok(Outcome::report(&rep, &m))
        }
        Command::FkProbe { model, k, window, margin } => {
            let m = load_model(&model.model)?;
            let ks = k
                .split(',')
                .map(|s| s.trim().parse::<i32>().map_err(|_| Error::InvalidArgument(format!("bad degree `{s}`"))))
                .collect::<Result<Vec<_>, _>>()?;
            let r = fk_probe(&m, &ks, &Window::parse(&window)?, margin)?;
            let stable = r.entries.iter().all(|e| e.quotient.stabilized && e.functional.stabilized);
            Ok(Outcome::new(r.render(&m), stable))
        }
        Command::Filtration { model, sigma } => {
            let m = load_model(&model.model)?;
            let r = filtration_check(&m, &parse_rational(&sigma)?)?;
            Ok(Outcome::report(&r, &m))
        }
        Command::Eval { model, element: el } => {
            let m = load_model(&model.model)?;
            let a = element(&m, &el)?;
            let mut text = String::new();
            let _ = writeln!(text, "canonical: {}", m.render(&a));
            match m.roster.grading(&a)? {
                Some(g) => {
                    let _ = writeln!(text, "ghost: {}\nparity: {}", g.ghost, g.parity);
                }
                None => text.push_str("ghost: none (zero)\n"),
            }
            let _ = writeln!(text, "s: {}", m.render(&m.s().apply(&a)));
            Ok(Outcome::new(text, true))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Error::Precondition(msg)) => {
            eprintln!("precondition violated: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
