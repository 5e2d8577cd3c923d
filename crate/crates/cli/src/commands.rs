use serde_json::{json, Value};

use rvequiv::equiv::{
    decide_rv_equiv, forward_invariance_check, saito_membership, verify_transport, DecideOptions,
    EquivStatus,
};
use rvequiv::logder::{lie0_ambient, theta_piece, TangentBasis};
use rvequiv::oracle::crosscheck;
use rvequiv::pencil::{mather_verdict, PencilVerdict};
use rvequiv::qpoly::{euler_apply, infer_weights, quasi_degree, Polynomial, WeightSystem};
use rvequiv::rational::to_text;
use rvequiv::relmilnor::{hilbert_fingerprint, ideal_equal_up_to};
use rvequiv::VERSION;

use crate::problem::Problem;
use crate::{Cli, Command, Failure, AFFIRMATIVE, NEGATIVE, UNKNOWN};

fn verdict(ok: bool) -> u8 {
    if ok {
        AFFIRMATIVE
    } else {
        NEGATIVE
    }
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

/// `2 deg f + deg Φ`, the default truncation.
fn default_truncation(f: &Polynomial, phi: &Polynomial, w: &WeightSystem) -> Result<i64, Failure> {
    let df = quasi_degree(f, w)?
        .ok_or_else(|| Failure::Data("f is not quasihomogeneous for the weights".into()))?;
    let dp = quasi_degree(phi, w)?
        .ok_or_else(|| Failure::Data("phi is not quasihomogeneous for the weights".into()))?;
    Ok(2 * df + dp)
}

struct Ctx<'a> {
    problem: Option<Problem>,
    seed: u64,
    truncation: Option<i64>,
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn problem(&self) -> Result<&Problem, Failure> {
        self.problem
            .as_ref()
            .ok_or_else(|| Failure::Usage("this command needs --problem FILE".into()))
    }

    fn truncation(&mut self, flag: Option<i64>) -> Result<i64, Failure> {
        let p = self.problem()?;
        let d = match flag.map(Some).unwrap_or(p.truncation()?) {
            Some(d) => d,
            None => default_truncation(&p.f()?, &p.phi()?, p.weights()?)?,
        };
        if d < 0 {
            return Err(Failure::Usage(format!("negative truncation {d}")));
        }
        self.truncation = Some(d);
        Ok(d)
    }
}

fn fields_json(b: &TangentBasis) -> Value {
    json!({
        "degree": b.degree.to_string(),
        "dimension": b.dim(),
        "vanish_at_origin": b.vanish_at_origin,
        "fields": strings(&b.fields),
        "cofactors": strings(&b.cofactors),
    })
}

pub fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let problem = cli.problem.as_deref().map(Problem::load).transpose()?;
    let seed = cli
        .seed
        .or_else(|| problem.as_ref().and_then(|p| p.file.seed))
        .unwrap_or(0);
    let mut ctx = Ctx {
        problem,
        seed,
        truncation: None,
        cli,
    };
    let (name, result, code) = dispatch(&mut ctx)?;
    let weights = ctx
        .problem
        .as_ref()
        .and_then(|p| p.weights().ok())
        .map(|w| w.weights().to_vec());
    let report = json!({
        "command": name,
        "version": VERSION,
        "seed": ctx.seed,
        "truncation": ctx.truncation.map(|d| d.to_string()),
        "variables": ctx.problem.as_ref().map(|p| p.ring.names().to_vec()),
        "weights": weights,
        "result": result,
    });
    Ok((report, code))
}

fn dispatch(ctx: &mut Ctx) -> Result<(&'static str, Value, u8), Failure> {
    Ok(match &ctx.cli.command {
        Command::CheckQh => {
            let p = ctx.problem()?;
            let (f, w) = (p.f()?, p.weights()?);
            let degree = quasi_degree(&f, w)?;
            let euler = degree.map(|d| euler_apply(&f, w).map(|e| e == f.scale(&rvequiv::rational::int(d))));
            let euler = euler.transpose()?.unwrap_or(false);
            let ok = degree.is_some() && euler;
            let result = json!({
                "quasihomogeneous": degree.is_some(),
                "degree": degree.map(|d| d.to_string()),
                "euler_verified": euler,
            });
            ("check-qh", result, verdict(ok))
        }
        Command::InferWeights => {
            let f = ctx.problem()?.f()?;
            let sol = infer_weights(&f)?;
            let basis: Vec<Vec<String>> = sol.basis.iter().map(|v| v.iter().map(to_text).collect()).collect();
            let result = json!({
                "dimension": sol.dimension,
                "basis": basis,
                "weights": sol.canonical.as_ref().map(|(w, _)| w.weights().to_vec()),
                "degree": sol.canonical.as_ref().map(|(_, d)| d.to_string()),
                "search_bound": sol.search_bound,
            });
            ("infer-weights", result, verdict(sol.canonical.is_some()))
        }
        Command::Theta { degree, all } => {
            let p = ctx.problem()?;
            let basis = theta_piece(&p.phi()?, p.weights()?, *degree, !all)?;
            ("theta", fields_json(&basis), AFFIRMATIVE)
        }
        Command::Lie0 => {
            let p = ctx.problem()?;
            let fields = lie0_ambient(&p.ring, p.weights()?)?;
            let result = json!({ "dimension": fields.len(), "fields": strings(&fields) });
            ("lie0", result, AFFIRMATIVE)
        }
        Command::Fingerprint { max_degree } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let fp = hilbert_fingerprint(&p.f()?, &p.phi()?, p.weights()?, d)?;
            ("fingerprint", serde_json::to_value(&fp).expect("json"), AFFIRMATIVE)
        }
        Command::IdealEqual { max_degree } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let cmp = ideal_equal_up_to(&p.f()?, &p.g()?, &p.phi()?, p.weights()?, d)?;
            let code = verdict(cmp.equal);
            ("ideal-equal", serde_json::to_value(&cmp).expect("json"), code)
        }
        Command::Pencil { max_degree } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let rep = mather_verdict(&p.f()?, &p.g()?, &p.phi()?, p.weights()?, d)?;
            let code = verdict(rep.verdict == PencilVerdict::Equivalent);
            ("pencil", serde_json::to_value(&rep).expect("json"), code)
        }
        Command::Decide {
            max_degree,
            search,
            draws,
            height,
            subst,
        } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let substitution = if subst.is_empty() && p.file.subst.is_none() {
                None
            } else {
                Some(p.substitution(Some(subst))?)
            };
            let opts = DecideOptions {
                substitution,
                search: *search,
                draws: *draws,
                height: *height,
                seed: ctx.seed,
            };
            let v = decide_rv_equiv(&p.f()?, &p.g()?, &p.phi()?, p.weights()?, d, &opts)?;
            let code = match v.status {
                EquivStatus::Equivalent => AFFIRMATIVE,
                EquivStatus::NotEquivalent => NEGATIVE,
                EquivStatus::Unknown => UNKNOWN,
            };
            ("decide", serde_json::to_value(&v).expect("json"), code)
        }
        Command::Transport { subst, max_degree } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let u = p.substitution(Some(subst))?;
            let t = verify_transport(&u, &p.f()?, &p.g()?, &p.phi()?, p.weights()?, d)?;
            let result = json!({
                "holds": t.holds(),
                "substitution": u,
                "image": t.image.to_string(),
                "comparison": t.comparison,
            });
            ("transport", result, verdict(t.holds()))
        }
        Command::Forward { subst, max_degree } => {
            let d = ctx.truncation(*max_degree)?;
            let p = ctx.problem()?;
            let psi = p.substitution(Some(subst))?;
            let c = forward_invariance_check(&psi, &p.f()?, &p.phi()?, p.weights()?, d)?;
            let result = json!({
                "agree": c.agree,
                "substitution": psi,
                "image": c.image.to_string(),
                "mismatch_degree": c.mismatch_degree.map(|e| e.to_string()),
            });
            ("forward", result, verdict(c.agree))
        }
        Command::Crosscheck { instances, max_degree } => {
            if *max_degree < 0 {
                return Err(Failure::Usage("negative --max-degree".into()));
            }
            ctx.truncation = Some(*max_degree);
            let report = crosscheck(*instances, ctx.seed, *max_degree)?;
            let code = verdict(report.all_agree);
            ("crosscheck", serde_json::to_value(&report).expect("json"), code)
        }
        Command::SaitoMembership => {
            let f = ctx.problem()?.f()?;
            let red = saito_membership(&f)?;
            let result = json!({
                "is_member": red.is_member,
                "remainder": red.remainder.to_string(),
                "generators": strings(&f.gradient()),
            });
            ("saito-membership", result, verdict(red.is_member))
        }
    })
}
