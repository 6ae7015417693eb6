//! `triperm`: triangular polynomial maps and their induced permutation groups
//! over finite commutative rings.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails, 2 for
//! malformed input, 3 when an enumeration cap is exceeded.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use triperm_core::dual::{dual_eval, embed_phi, embed_psi, is_perm_dual, DualPoly};
use triperm_core::funcspace::{
    enumerate_poly_functions, enumerate_poly_permutations, order_report, ratio_report, tr_vs_mt_report, Components,
    Report, SpaceOptions,
};
use triperm_core::poly::{func_equiv, parse_point, split_tuple, DEFAULT_DOMAIN_CAP};
use triperm_core::structure::{group_props, verify_decomposition, DecompositionLevel};
use triperm_core::tri::{compose_tri, invert_tri, is_unit_tri, TriElem, VecPoly};
use triperm_core::verify::{criteria, ring_bundle, Check};
use triperm_core::{Error, Ring};

#[derive(Parser)]
#[command(name = "triperm", version, about = "Triangular polynomial permutations over finite rings")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Enumeration cap for domains, function spaces and groups.
    #[arg(long, global = true)]
    cap: Option<u64>,
    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct RingN {
    /// Ring spec, e.g. Z4, F3, F2^2:t^2+t+1, F2[t]/t^2, Z4[a1]dual, Z4xF3.
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = 2)]
    n: usize,
}

#[derive(Args)]
struct RingK {
    #[arg(long)]
    ring: String,
    #[arg(long, default_value_t = 1)]
    k: usize,
}

#[derive(Args)]
struct OneVec {
    #[command(flatten)]
    rn: RingN,
    /// Vector-polynomial `(p1, .., pn)` in x1..xn.
    #[arg(long)]
    vec: String,
}

#[derive(Args)]
struct TwoVec {
    #[command(flatten)]
    rn: RingN,
    /// Two vector-polynomials; the first is applied last.
    #[arg(long, num_args = 2, required = true)]
    vec: Vec<String>,
}

#[derive(Args)]
struct VecPoint {
    #[command(flatten)]
    rn: RingN,
    #[arg(long)]
    vec: String,
    /// Point `(a1, .., an)`.
    #[arg(long)]
    point: String,
}

#[derive(Args)]
struct DualArgs {
    /// Base ring.
    #[arg(long)]
    ring: String,
    /// Number of dual generators.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Components `(f0, f1, .., fn)`, each in one variable.
    #[arg(long)]
    poly: Vec<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Composition `f o g` of two triangular elements.
    Compose(TwoVec),
    /// Inverse of a unit of `MT_n`.
    Invert(OneVec),
    /// Value at a point.
    Apply(VecPoint),
    /// The unique preimage of a point.
    Solve(VecPoint),
    /// Whether a vector-polynomial lies in `MT_n`.
    Member(OneVec),
    /// Whether an element of `MT_n` is a unit.
    Unit(OneVec),
    /// Whether two vector-polynomials induce the same map.
    Equiv(TwoVec),
    /// Sizes of the polynomial function spaces on `R^k`.
    CountFunctions(RingK),
    /// Order of the induced group `pi_n(MT_n)` from the product formula.
    InducedOrder(RingN),
    /// Unit-valued and permutation ratios.
    VerifyRatios(RingK),
    /// Materialized induced group order against the formula.
    VerifyOrder(RingN),
    /// `pi_n(TR_n)` against `pi_n(MT_n)`.
    TrVsMt(RingN),
    /// Split-extension maps for `MT_n` over `MT_(n-1)`.
    VerifyDecomposition {
        #[command(flatten)]
        rn: RingN,
        #[arg(long, default_value = "induced")]
        level: String,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Abelian, solvable and nilpotent tests for `pi_n(MT_n)`.
    GroupProps(RingN),
    /// `f(g)` for dual polynomials; pass `--poly` twice.
    DualEval(DualArgs),
    /// Whether a dual polynomial permutes `R[a1..an]`.
    DualPerm(DualArgs),
    /// The triangular image of a dual permutation polynomial.
    Embed(DualArgs),
    /// Every check for one ring, or the full desk-scale list without `--ring`.
    VerifyAll {
        #[arg(long)]
        ring: Option<String>,
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
}

struct Outcome {
    ok: bool,
    text: String,
    json: Value,
}

impl Outcome {
    fn ok(text: impl Into<String>, json: Value) -> Outcome {
        Outcome { ok: true, text: text.into(), json }
    }
}

fn options(cli: &Cli) -> SpaceOptions {
    let mut o = SpaceOptions::default();
    if let Some(c) = cli.cap {
        o.domain_cap = c as u128;
        o.size_cap = c as usize;
        o.group_cap = c as usize;
    }
    o
}

fn tri(rn: &RingN, text: &str) -> Result<TriElem, Error> {
    let r = Ring::parse(&rn.ring)?;
    TriElem::from_vecpoly(&VecPoly::parse(&r, rn.n, text)?)
}

fn dual(args: &DualArgs, text: &str) -> Result<DualPoly, Error> {
    let r = Ring::parse(&args.ring)?;
    let parts = split_tuple(text)?;
    if parts.len() != args.n + 1 {
        return Err(Error::ArityMismatch { expected: args.n + 1, found: parts.len() });
    }
    DualPoly::parse(&r, &parts)
}

fn dual_args(args: &DualArgs, count: usize) -> Result<Vec<DualPoly>, Error> {
    if args.poly.len() != count {
        return Err(Error::Parse(format!("expected {count} --poly value(s), got {}", args.poly.len())));
    }
    args.poly.iter().map(|p| dual(args, p)).collect()
}

fn elems(r: &Ring, v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|&a| r.format_elem(a)).collect();
    format!("({})", parts.join(", "))
}

fn report(rep: Report) -> Outcome {
    let mut lines = vec![format!("ring {} n/k {}", rep.ring, rep.n_or_k)];
    lines.extend(rep.counts.iter().map(|(k, v)| format!("  {k} = {v}")));
    lines.extend(rep.formula.iter().map(|(k, v)| format!("  formula {k} = {v}")));
    lines.extend(rep.witnesses.iter().map(|w| format!("  witness {w}")));
    lines.push(format!("match: {}", rep.matched));
    Outcome { ok: rep.matched, text: lines.join("\n"), json: serde_json::to_value(&rep).unwrap() }
}

fn checks(list: Vec<Check>) -> Outcome {
    let ok = list.iter().all(|c| c.passed);
    let text = list.iter().map(|c| c.line()).collect::<Vec<_>>().join("\n");
    Outcome { ok, text, json: json!({"passed": ok, "checks": list}) }
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let opts = options(cli);
    let fcap = cli.cap.map(|c| c as u128).or(Some(DEFAULT_DOMAIN_CAP as u128));
    Ok(match &cli.cmd {
        Cmd::Compose(a) => {
            let (f, g) = (tri(&a.rn, &a.vec[0])?, tri(&a.rn, &a.vec[1])?);
            let h = compose_tri(&f, &g)?;
            Outcome::ok(h.to_vecpoly().to_string(), json!({"vec": h.to_vecpoly().to_string(), "tri": h.to_json()}))
        }
        Cmd::Invert(a) => {
            let t = tri(&a.rn, &a.vec)?;
            match invert_tri(&t) {
                Ok(inv) => Outcome::ok(inv.to_vecpoly().to_string(), json!({"vec": inv.to_vecpoly().to_string(), "tri": inv.to_json()})),
                Err(Error::NotAUnit(m)) => Outcome { ok: false, text: format!("not a unit: {m}"), json: json!({"unit": false, "reason": m}) },
                Err(e) => return Err(e),
            }
        }
        Cmd::Apply(a) | Cmd::Solve(a) => {
            let t = tri(&a.rn, &a.vec)?;
            let p = parse_point(t.ring(), a.rn.n, &a.point)?;
            let out = if matches!(cli.cmd, Cmd::Apply(_)) { t.apply(&p)? } else { t.solve_preimage(&p)? };
            let shown = elems(t.ring(), &out);
            Outcome::ok(shown.clone(), json!({"point": shown, "indices": out}))
        }
        Cmd::Member(a) => {
            let r = Ring::parse(&a.rn.ring)?;
            let v = VecPoly::parse(&r, a.rn.n, &a.vec)?;
            match TriElem::from_vecpoly(&v) {
                Ok(t) => Outcome::ok("accepted", json!({"member": true, "tri": t.to_json()})),
                Err(e @ (Error::NotTriangular(_) | Error::MembershipViolation { .. })) => Outcome {
                    ok: false,
                    text: format!("rejected: {e}"),
                    json: json!({"member": false, "reason": e.to_string()}),
                },
                Err(e) => return Err(e),
            }
        }
        Cmd::Unit(a) => {
            let u = is_unit_tri(&tri(&a.rn, &a.vec)?);
            Outcome::ok(u.to_string(), json!({"unit": u}))
        }
        Cmd::Equiv(a) => {
            let r = Ring::parse(&a.rn.ring)?;
            let f = VecPoly::parse(&r, a.rn.n, &a.vec[0])?;
            let g = VecPoly::parse(&r, a.rn.n, &a.vec[1])?;
            let mut same = true;
            for (p, q) in f.components().iter().zip(g.components()) {
                same &= func_equiv(p, q, fcap)?;
            }
            Outcome::ok(same.to_string(), json!({"equivalent": same}))
        }
        Cmd::CountFunctions(a) => {
            let r = Ring::parse(&a.ring)?;
            let f = enumerate_poly_functions(&r, a.k, &opts)?;
            let fu = f.unit_valued().len();
            let p = if a.k == 1 { Some(enumerate_poly_permutations(&r, &opts)?.len()) } else { None };
            let mut text = format!("F = {}\nFU = {fu}", f.len());
            if let Some(p) = p {
                text.push_str(&format!("\nP = {p}"));
            }
            Outcome::ok(text, json!({"ring": r.name(), "k": a.k, "F": f.len(), "FU": fu, "P": p}))
        }
        Cmd::InducedOrder(a) => {
            let r = Ring::parse(&a.ring)?;
            let order = Components::mt(&r, a.n, &opts)?.order();
            Outcome::ok(order.to_string(), json!({"ring": r.name(), "n": a.n, "order": order.to_string()}))
        }
        Cmd::VerifyRatios(a) => report(ratio_report(&Ring::parse(&a.ring)?, a.k, &opts)?),
        Cmd::VerifyOrder(a) => report(order_report(&Ring::parse(&a.ring)?, a.n, &opts)?),
        Cmd::TrVsMt(a) => report(tr_vs_mt_report(&Ring::parse(&a.ring)?, a.n, &opts)?),
        Cmd::VerifyDecomposition { rn, level, samples } => {
            let level: DecompositionLevel = level.parse()?;
            let rep = verify_decomposition(&Ring::parse(&rn.ring)?, rn.n, level, &opts, *samples, cli.seed)?;
            let text = format!(
                "{} over {}: orders {} = {}, bijective {}, homomorphic {}",
                rep.claim, rep.instance, rep.lhs_order, rep.rhs_order, rep.map_bijective, rep.map_homomorphic
            );
            Outcome { ok: rep.ok(), text, json: serde_json::to_value(&rep).unwrap() }
        }
        Cmd::GroupProps(a) => {
            let p = group_props(&Ring::parse(&a.ring)?, a.n, &opts)?;
            let text = format!(
                "order {}\nabelian {}\nsolvable {}\nnilpotent {}\nderived {:?}\nlower central {:?}",
                p.order, p.abelian, p.solvable, p.nilpotent, p.derived_orders, p.lower_central_orders
            );
            Outcome::ok(text, serde_json::to_value(&p).unwrap())
        }
        Cmd::DualEval(a) => {
            let fg = dual_args(a, 2)?;
            let h = dual_eval(&fg[0], &fg[1])?;
            Outcome::ok(h.to_string(), serde_json::to_value(h.to_json()).unwrap())
        }
        Cmd::DualPerm(a) => {
            let f = &dual_args(a, 1)?[0];
            let p = is_perm_dual(f)?;
            Outcome::ok(p.to_string(), json!({"permutation": p, "poly": f.to_json()}))
        }
        Cmd::Embed(a) => {
            let f = &dual_args(a, 1)?[0];
            let t = embed_psi(f)?;
            let table = embed_phi(f)?;
            Outcome::ok(
                t.to_vecpoly().to_string(),
                json!({"vec": t.to_vecpoly().to_string(), "tri": t.to_json(), "table": table.images()}),
            )
        }
        Cmd::VerifyAll { ring: None, .. } => checks(criteria(&opts, cli.seed)),
        Cmd::VerifyAll { ring: Some(r), n } => checks(ring_bundle(&Ring::parse(r)?, *n, &opts, cli.seed)),
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } => 3,
        Error::Parse(_) | Error::InvalidSpec(_) | Error::ReducibleModulus(_) | Error::ArityMismatch { .. } => 2,
        _ => 1,
    }
}

// a closed pipe (e.g. `| head`) is not an error worth a panic
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().ok();
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => {
                    emit(&out.text);
                    if !out.ok {
                        emit(&serde_json::to_string_pretty(&out.json).unwrap());
                    }
                }
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).unwrap()),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => emit(&serde_json::to_string_pretty(&json!({"error": e.to_string()})).unwrap()),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
