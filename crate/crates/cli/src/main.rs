use std::process::ExitCode;

use affine_pbw::checks::{run_all, CheckConfig};
use affine_pbw::imroots::{
    classical_lambda, family_e, family_edot, family_edot_angle, family_edot_bracket, family_ehat, ImPoly,
};
use affine_pbw::pairing::{
    delta_closed, delta_det, delta_sign, first_admissible, gram_imaginary, m_matrix_and_dual, pair_monomials,
    GramMatrix,
};
use affine_pbw::pbw::{basis_toral, toral_regularity_report, ExpEntry, ExpVec, Normalization, ToralIndexSet};
use affine_pbw::qlaurent::{parse_ratfunc, RatFunc};
use affine_pbw::rootsys::{
    build_iota, enumerate_ordered_roots, validate_iota, CartanData, CartanType, IotaWord, OrderedRoots, RootKind,
    TypeLabel,
};
use affine_pbw::series::{phi_transform, psi_transform, SeriesVec};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "affine-pbw", version, about = "Exact computations for PBW bases of quantum affine algebras")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// Type letter (A..G) or full label such as `E6`.
    #[arg(long = "type", global = true, env = "AFFINE_PBW_TYPE", default_value = "A")]
    type_label: String,
    #[arg(long, global = true, env = "AFFINE_PBW_RANK")]
    rank: Option<usize>,
    /// Truncation order T of series and families.
    #[arg(long = "order", short = 'T', global = true, env = "AFFINE_PBW_ORDER", default_value_t = 6)]
    order: usize,
    /// δ-level bound N.
    #[arg(long, short = 'N', global = true, env = "AFFINE_PBW_LEVEL", default_value_t = 6)]
    level: i64,
    /// Root-of-unity orders to sample; defaults to the first three admissible ones.
    #[arg(long = "ell", global = true, env = "AFFINE_PBW_ELL", value_delimiter = ',')]
    ell: Vec<u64>,
    #[arg(long, global = true, env = "AFFINE_PBW_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Override for the ι word, as `pos;nonpos` with comma-separated indices.
    #[arg(long, global = true, env = "AFFINE_PBW_IOTA")]
    iota: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    E,
    Edot,
    Ehat,
    Bracket,
    Angle,
    Lambda,
}

#[derive(Clone, Copy, ValueEnum)]
enum Norm {
    Bare,
    Divided,
    Rescaled,
}

#[derive(Clone, Copy, ValueEnum)]
enum IndexSet {
    Finite,
    Affine,
    Extended,
}

#[derive(Subcommand)]
enum Command {
    /// Positive roots up to the δ-level bound, in order.
    Roots,
    /// Closed form and determinant of Δ_r.
    Delta {
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// The matrix of pairings between imaginary root vectors of degrees rδ and sδ.
    Gram {
        #[arg(long, default_value_t = 1)]
        r: u32,
        #[arg(long)]
        s: Option<u32>,
    },
    /// M_r, its inverse and the orthonormality verdict.
    Dual {
        #[arg(long, default_value_t = 1)]
        r: u32,
    },
    /// Ψ or Φ on a comma-separated coefficient list starting at index 0.
    Bell {
        #[arg(long, conflicts_with = "phi", required_unless_present = "phi", allow_hyphen_values = true)]
        psi: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        phi: Option<String>,
    },
    /// An imaginary root-vector family up to order T.
    Imroots {
        #[arg(long, value_enum, default_value_t = Family::E)]
        family: Family,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Pairing of two monomials given as `position:exponent` lists over the ordered roots.
    Pair {
        #[arg(long, default_value = "")]
        n: String,
        #[arg(long, default_value = "")]
        m: String,
        #[arg(long, value_enum, default_value_t = Norm::Divided)]
        left: Norm,
        #[arg(long, value_enum, default_value_t = Norm::Rescaled)]
        right: Norm,
    },
    /// Toral basis elements and their regularity at the sampled orders.
    Toral {
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, default_value_t = 6)]
        t_max: u32,
        #[arg(long, value_enum, default_value_t = IndexSet::Affine)]
        index_set: IndexSet,
    },
    /// Every acceptance check, one line per item.
    CheckAll,
}

enum Failure {
    Usage(String),
    Check(String),
}

type Outcome = Result<(Value, String), Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

impl Config {
    fn cartan(&self) -> Result<CartanData, Failure> {
        let label = self.type_label.trim();
        let ct: CartanType = if label.chars().any(|c| c.is_ascii_digit()) {
            label.parse().map_err(usage)?
        } else {
            let rank = match self.rank {
                Some(r) => r,
                None => [2, 4, 6, 7, 8]
                    .into_iter()
                    .find_map(|r| TypeLabel::from_parts(label, r).ok().and_then(|t| t.fixed_rank()))
                    .filter(|_| !label.eq_ignore_ascii_case("E"))
                    .ok_or_else(|| Failure::Usage(format!("--rank is required for type {label}")))?,
            };
            CartanType::new(TypeLabel::from_parts(label, rank).map_err(usage)?, rank).map_err(usage)?
        };
        CartanData::new(ct).map_err(usage)
    }

    fn ells(&self, data: &CartanData) -> Vec<u64> {
        if self.ell.is_empty() {
            first_admissible(data, 3)
        } else {
            self.ell.clone()
        }
    }

    fn iota(&self, data: &CartanData) -> Result<IotaWord, Failure> {
        let level = self.level.max(1);
        match &self.iota {
            None => build_iota(data, level).map_err(usage),
            Some(s) => {
                let (pos, nonpos) = s
                    .split_once(';')
                    .ok_or_else(|| Failure::Usage("--iota expects `pos;nonpos`".into()))?;
                let parse = |part: &str| -> Result<Vec<usize>, Failure> {
                    part.split(',').map(|x| x.trim().parse::<usize>().map_err(usage)).collect()
                };
                let word = IotaWord {
                    period_pos: parse(pos)?,
                    period_nonpos: parse(nonpos)?,
                };
                validate_iota(data, &word, level).map_err(usage)?;
                Ok(word)
            }
        }
    }

    fn ordered(&self, data: &CartanData) -> Result<OrderedRoots, Failure> {
        Ok(enumerate_ordered_roots(data, &self.iota(data)?, self.level))
    }
}

fn matrix_text(m: &GramMatrix) -> String {
    m.entries
        .iter()
        .map(|row| row.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("  |  "))
        .collect::<Vec<_>>()
        .join("\n")
}

fn roots(cfg: &Config) -> Outcome {
    let data = cfg.cartan()?;
    let order = cfg.ordered(&data)?;
    let mut text = String::new();
    let mut items = Vec::new();
    for (pos, (key, root)) in order.entries.iter().enumerate() {
        text.push_str(&format!("{pos:>4}  {key:?}  {:?}  {:?}\n", root.kind, root.coords));
        items.push(json!({"position": pos, "key": key, "root": root}));
    }
    let real = order.roots().filter(|r| r.kind == RootKind::Real).count();
    text.push_str(&format!("{real} real, {} imaginary", order.len() - real));
    Ok((json!({"type": data.cartan_type.to_string(), "level": cfg.level, "roots": items}), text))
}

fn delta(cfg: &Config, r: u32) -> Outcome {
    let data = cfg.cartan()?;
    let closed = delta_closed(&data, r);
    let det = delta_det(&data, r);
    let sign = delta_sign(&data, r);
    let v = json!({"type": data.cartan_type.to_string(), "r": r, "closed_form": closed, "determinant": det,
        "match": sign.is_some(), "sign": sign});
    let text = format!(
        "closed form: {closed}\ndeterminant: {det}\nmatch: {}",
        sign.map_or("false".to_string(), |s| format!("true (sign {s:+})"))
    );
    match sign {
        Some(_) => Ok((v, text)),
        None => Err(Failure::Check(format!("delta: {} r={r} closed form differs from determinant\n{text}", data.cartan_type))),
    }
}

fn gram(cfg: &Config, r: u32, s: Option<u32>) -> Outcome {
    let data = cfg.cartan()?;
    let g = gram_imaginary(&data, r, s.unwrap_or(r));
    Ok((serde_json::to_value(&g).expect("serializable"), matrix_text(&g)))
}

fn dual(cfg: &Config, r: u32) -> Outcome {
    let data = cfg.cartan()?;
    let ells = cfg.ells(&data);
    let rep = m_matrix_and_dual(&data, r, &ells).map_err(|e| Failure::Check(format!("dual: {e}")))?;
    let text = format!(
        "M_{r}:\n{}\nmu:\n{}\ndet: {}\northonormal: {}\nregular at {:?}: {}",
        matrix_text(&rep.m),
        matrix_text(&rep.mu),
        rep.det,
        rep.orthonormal,
        ells,
        rep.irregular_orders.is_empty()
    );
    let ok = rep.orthonormal && rep.irregular_orders.is_empty();
    let v = serde_json::to_value(&rep).expect("serializable");
    if ok {
        Ok((v, text))
    } else {
        Err(Failure::Check(format!("dual: r={r} failed\n{text}")))
    }
}

fn parse_list(s: &str) -> Result<Vec<RatFunc>, Failure> {
    s.split(',').map(|x| parse_ratfunc(x).map_err(usage)).collect()
}

fn bell(psi: Option<String>, phi: Option<String>) -> Outcome {
    let (list, forward) = match (psi, phi) {
        (Some(p), _) => (p, true),
        (None, Some(p)) => (p, false),
        (None, None) => return Err(Failure::Usage("one of --psi, --phi is required".into())),
    };
    let mut coeffs = parse_list(&list)?;
    if forward {
        // the index-0 slot of X carries no information; 0 and 1 are both accepted
        if !(coeffs[0].is_zero() || coeffs[0].is_one()) {
            return Err(Failure::Usage("--psi: entry 0 must be 0 or 1".into()));
        }
        coeffs[0] = RatFunc::one();
    } else if !coeffs[0].is_one() {
        return Err(Failure::Usage("--phi: entry 0 must be 1".into()));
    }
    let s = SeriesVec::new(coeffs);
    let out = if forward { psi_transform(&s) } else { phi_transform(&s) }.map_err(usage)?;
    let mut out = out.into_coeffs();
    if !forward {
        out[0] = RatFunc::zero();
    }
    let name = if forward { "Y" } else { "X" };
    let text = format!("{name} = {}", out.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(", "));
    Ok((json!({ name: out }), text))
}

fn family_text<T: std::fmt::Display>(name: &str, fam: &[T]) -> String {
    fam.iter()
        .enumerate()
        .skip(1)
        .map(|(r, p)| format!("{name}_{r} = {p}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn imroots(cfg: &Config, family: Family, d: u32, k: u32) -> Outcome {
    if d == 0 || k == 0 {
        return Err(Failure::Usage("--d and --k must be positive".into()));
    }
    let t = cfg.order;
    let fam: Vec<ImPoly> = match family {
        Family::E => family_e(d, t),
        Family::Edot => family_edot(d, t),
        Family::Ehat => family_ehat(d, t),
        Family::Bracket => family_edot_bracket(d, k, t),
        Family::Angle => family_edot_angle(d, k, t),
        Family::Lambda => {
            let lam = classical_lambda(k, t);
            return Ok((json!({"family": "lambda", "k": k, "terms": lam}), family_text("Lambda", &lam)));
        }
    };
    let name = family_name(family);
    Ok((json!({"family": name, "d": d, "k": k, "terms": fam}), family_text(name, &fam)))
}

fn family_name(f: Family) -> &'static str {
    match f {
        Family::E => "E",
        Family::Edot => "Edot",
        Family::Ehat => "Ehat",
        Family::Bracket => "Edot_bracket",
        Family::Angle => "Edot_angle",
        Family::Lambda => "Lambda",
    }
}

fn exp_vec(order: &OrderedRoots, list: &str, norm: Norm) -> Result<ExpVec, Failure> {
    let mut entries = Vec::new();
    for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (pos, exp) = item
            .split_once(':')
            .ok_or_else(|| Failure::Usage(format!("expected position:exponent, got {item:?}")))?;
        let pos: usize = pos.parse().map_err(usage)?;
        let exp: u32 = exp.parse().map_err(usage)?;
        let (_, root) = order
            .entries
            .get(pos)
            .ok_or_else(|| Failure::Usage(format!("position {pos} is beyond the {} enumerated roots", order.len())))?;
        let normalization = match (norm, root.kind) {
            (Norm::Bare, _) | (Norm::Rescaled, RootKind::Imaginary) => Normalization::Bare,
            (Norm::Divided, _) => Normalization::divided_for(root),
            (Norm::Rescaled, RootKind::Real) => Normalization::Rescaled,
        };
        entries.push(ExpEntry {
            root: root.clone(),
            exp,
            normalization,
        });
    }
    ExpVec::ordered(order, entries).map_err(usage)
}

fn pair(cfg: &Config, n: &str, m: &str, left: Norm, right: Norm) -> Outcome {
    let data = cfg.cartan()?;
    let order = cfg.ordered(&data)?;
    let nv = exp_vec(&order, n, left)?;
    let mv = exp_vec(&order, m, right)?;
    let v = pair_monomials(&data, &nv, &mv, &|_, _| RatFunc::one());
    Ok((json!({"n": nv, "m": mv, "value": v}), v.to_string()))
}

fn toral(cfg: &Config, index: Option<usize>, t_max: u32, set: IndexSet) -> Outcome {
    let data = cfg.cartan()?;
    let ells = cfg.ells(&data);
    let set = match set {
        IndexSet::Finite => ToralIndexSet::Finite,
        IndexSet::Affine => ToralIndexSet::Affine,
        IndexSet::Extended => ToralIndexSet::Extended,
    };
    let indices: Vec<(usize, u32)> = set
        .indices(&data)
        .into_iter()
        .filter(|(i, _)| index.map_or(true, |j| *i == j))
        .collect();
    if indices.is_empty() {
        return Err(Failure::Usage("no toral index selected".into()));
    }
    let mut text = String::new();
    let mut items = Vec::new();
    let mut bad = Vec::new();
    for (i, d) in indices {
        for t in 0..=t_max {
            let b = basis_toral(i, t, d);
            let terms: Vec<String> = b.terms.iter().map(|(e, c)| format!("({c}) K{i}^{e}")).collect();
            text.push_str(&format!("i={i} t={t}: {}\n", terms.join(" + ")));
        }
        let rep = toral_regularity_report(i, t_max, d, &ells);
        text.push_str(&format!("i={i} regular at {ells:?}: {}", rep.regular));
        if let Some((t, deg, l)) = rep.first_pole {
            text.push_str(&format!(" (pole in the K^{deg} coefficient for t={t} at ell={l})"));
            bad.push(i);
        }
        text.push('\n');
        items.push(rep);
    }
    let v = json!({"reports": items});
    if bad.is_empty() {
        Ok((v, text.trim_end().to_string()))
    } else {
        Err(Failure::Check(format!("toral: indices {bad:?} not regular\n{}", text.trim_end())))
    }
}

fn check_all(cfg: &Config) -> Outcome {
    let cc = CheckConfig {
        order: cfg.order,
        level: cfg.level,
        ..CheckConfig::default()
    };
    let results = run_all(&cc);
    let mut text = String::new();
    for r in &results {
        text.push_str(&format!(
            "{} {:>2} {} ({})\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.summary
        ));
        for d in &r.diagnostics {
            text.push_str(&format!("     {d}\n"));
        }
    }
    let failed: Vec<u32> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    let text = text.trim_end().to_string();
    if failed.is_empty() {
        Ok((json!({"results": results}), text))
    } else {
        Err(Failure::Check(format!("check-all: failing criteria {failed:?}\n{text}")))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let outcome = match cli.command {
        Command::Roots => roots(cfg),
        Command::Delta { r } => delta(cfg, r),
        Command::Gram { r, s } => gram(cfg, r, s),
        Command::Dual { r } => dual(cfg, r),
        Command::Bell { psi, phi } => bell(psi, phi),
        Command::Imroots { family, d, k } => imroots(cfg, family, d, k),
        Command::Pair { n, m, left, right } => pair(cfg, &n, &m, left, right),
        Command::Toral { index, t_max, index_set } => toral(cfg, index, t_max, index_set),
        Command::CheckAll => check_all(cfg),
    };
    match outcome {
        Ok((v, text)) => {
            match cfg.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&v).expect("serializable")),
                Format::Text => println!("{text}"),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Check(msg)) => {
            println!("{msg}");
            eprintln!("{}", msg.lines().next().unwrap_or(""));
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
