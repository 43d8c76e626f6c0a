use clap::Args;
use trilie::algebra::{algebra_from_json, build_l_full_rank, build_t, invariant_count, LieAlgebra};
use trilie::catalog::{
    l4_algebra, l4_families, lemma_invariants, nilpotent_invariants, prop1_invariants, prop2_invariants, CatalogEntry,
    Family, Params,
};
use trilie::error::CatalogError;
use trilie::symbolic::rational::parse_q;

/// Named parameters of the `L(4,f)` families.
#[derive(Args, Debug, Default, Clone)]
pub struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a12: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a23: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a34: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b12: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b23: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b34: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma12: Option<String>,
    /// Comma separated `a12,a23,...,a(M-1)M` for `diag M`.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    pub diag: Vec<String>,
}

impl ParamArgs {
    fn params(&self) -> Result<Params, String> {
        let pairs = [
            ("a12", &self.a12),
            ("a23", &self.a23),
            ("a34", &self.a34),
            ("b12", &self.b12),
            ("b23", &self.b23),
            ("b34", &self.b34),
            ("lambda1", &self.lambda1),
            ("lambda2", &self.lambda2),
            ("lambda3", &self.lambda3),
            ("sigma12", &self.sigma12),
        ];
        let mut out = Params::new();
        for (name, value) in pairs {
            if let Some(v) = value {
                out.insert(name.to_string(), parse_q(v).map_err(|e| format!("--{name}: {e}"))?);
            }
        }
        Ok(out)
    }
}

/// An algebra selector from the positional words.
#[derive(Debug, Clone)]
pub enum Target {
    T(usize),
    FullRank(usize),
    SpecFile { m: usize, f: usize, path: String },
    L4 { f: usize, params: Params },
    Lemma { family: Family, params: Params },
    Diagonal { m: usize, diag: Vec<trilie::symbolic::Q> },
}

fn parse_usize(word: Option<&String>, what: &str) -> Result<usize, String> {
    let word = word.ok_or_else(|| format!("missing {what}"))?;
    word.parse().map_err(|_| format!("{what} must be a nonnegative integer, got `{word}`"))
}

impl Target {
    pub fn parse(words: &[String], args: &ParamArgs) -> Result<Target, String> {
        let head = words.first().ok_or("missing target (T M | full-rank M | L M f spec-file | L41 | L42 | L43 | diag M | lemma id)")?;
        let params = args.params()?;
        let expect_len = |n: usize| -> Result<(), String> {
            if words.len() == n {
                Ok(())
            } else {
                Err(format!("target `{head}` takes {} argument(s), got {}", n - 1, words.len() - 1))
            }
        };
        let no_params = |t: Target| -> Result<Target, String> {
            if params.is_empty() && args.diag.is_empty() {
                Ok(t)
            } else {
                Err(format!("target `{head}` takes no parameters"))
            }
        };
        let target = match head.as_str() {
            "T" => {
                expect_len(2)?;
                no_params(Target::T(parse_usize(words.get(1), "M")?))?
            }
            "full-rank" => {
                expect_len(2)?;
                no_params(Target::FullRank(parse_usize(words.get(1), "M")?))?
            }
            "L" => {
                expect_len(4)?;
                let m = parse_usize(words.get(1), "M")?;
                let f = parse_usize(words.get(2), "f")?;
                no_params(Target::SpecFile { m, f, path: words[3].clone() })?
            }
            "L41" | "L42" => {
                expect_len(1)?;
                if !args.diag.is_empty() {
                    return Err("--diag applies to the diag target".into());
                }
                Target::L4 { f: if head == "L41" { 1 } else { 2 }, params }
            }
            "L43" => {
                expect_len(1)?;
                no_params(Target::Lemma { family: Family::L43, params: Params::new() })?
            }
            "diag" => {
                expect_len(2)?;
                let m = parse_usize(words.get(1), "M")?;
                if !params.is_empty() {
                    return Err("diag takes only --diag".into());
                }
                let diag = args.diag.iter().map(|s| parse_q(s).map_err(|e| format!("--diag: {e}"))).collect::<Result<_, _>>()?;
                Target::Diagonal { m, diag }
            }
            id => match Family::from_id(id).filter(|f| Family::lemma_families().contains(f)) {
                Some(family) => {
                    expect_len(1)?;
                    Target::Lemma { family, params }
                }
                None => return Err(format!("unknown target `{id}`")),
            },
        };
        Ok(target)
    }

    pub fn algebra(&self) -> Result<LieAlgebra, String> {
        let alg = match self {
            Target::T(m) => build_t(*m).map_err(|e| e.to_string())?,
            Target::FullRank(m) => build_l_full_rank(*m).map_err(|e| e.to_string())?,
            Target::SpecFile { m, f, path } => {
                let alg = read_algebra(path)?;
                if (alg.m(), alg.f()) != (*m, *f) {
                    return Err(format!("{path} describes L({},{}), not L({m},{f})", alg.m(), alg.f()));
                }
                alg
            }
            Target::L4 { f, params } => l4_algebra(*f, params).map_err(|e| e.to_string())?,
            Target::Lemma { .. } | Target::Diagonal { .. } => self.entry()?.algebra,
        };
        Ok(alg)
    }

    /// The catalog entry whose conditions the target satisfies.
    pub fn entry(&self) -> Result<CatalogEntry, String> {
        let result = match self {
            Target::T(m) => nilpotent_invariants(*m),
            Target::FullRank(m) => prop1_invariants(*m),
            Target::Lemma { family, params } => lemma_invariants(*family, params),
            Target::Diagonal { m, diag } => prop2_invariants(*m, diag),
            Target::L4 { f, params } => {
                // every parameter is explicit so family defaults never leak in
                let names = Family::L41Case1.parameter_names();
                let names = if *f == 1 { names } else { Family::L42Case1.parameter_names() };
                let mut full: Params = names.iter().map(|n| (n.to_string(), Default::default())).collect();
                full.extend(params.clone());
                let mut last = None;
                for family in l4_families(*f) {
                    match lemma_invariants(*family, &full) {
                        Ok(e) => return Ok(e),
                        Err(e) => last = Some(e),
                    }
                }
                let alg = l4_algebra(*f, params).map_err(|e| e.to_string())?;
                let count = invariant_count(&alg, 5, 0).count;
                return Err(match (count, last) {
                    (0, _) => format!("{} has no invariants", alg.name()),
                    (_, Some(e)) => format!("no catalog family matches these parameters: {e}"),
                    _ => "no catalog family".into(),
                });
            }
            Target::SpecFile { m, f, path } => {
                let alg = self.algebra()?;
                match alg.spec() {
                    Some(spec) if *f == 1 && spec.is_diagonal() => {
                        let diag: Vec<_> = (1..*m).map(|i| spec.diag_entry(1, i, i + 1)).collect();
                        prop2_invariants(*m, &diag)
                    }
                    _ => Err(CatalogError::ConditionViolated(format!("{path}: only diagonal L(M,1) files have catalog invariants"))),
                }
            }
        };
        result.map_err(|e| e.to_string())
    }
}

pub fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

pub fn read_algebra(path: &str) -> Result<LieAlgebra, String> {
    algebra_from_json(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}
