//! Shared generator dispatch for `generate` and `sweep`.

use std::path::Path;

use serde_json::json;
use swapnet_core::constructions::{
    build_equilibrium_alg1, gen_avg_path, gen_circle_lb, gen_cycling_instance, gen_general_poa,
    gen_poa_lb, GeneratedInstance,
};
use swapnet_core::random::seeded_interests;
use swapnet_core::{GameInstance, Graph};

use crate::cli::{Alg1Args, Family, GenerateArgs};
use crate::error::{CliError, CliResult};
use crate::instance_file::{InstanceFile, Metadata};

/// Builds one member of `family`. `param` is D, C or n as the family
/// requires. Certificates are re-checked before returning.
pub fn build(
    family: Family,
    param: Option<usize>,
    alg1: &Alg1Args,
    from: Option<&Path>,
) -> CliResult<(GameInstance, Metadata)> {
    let need = |flag: &str| {
        param.ok_or_else(|| CliError::invalid(format!("{} needs --{flag}", family.name())))
    };
    let certified = |g: GeneratedInstance| -> CliResult<GameInstance> {
        g.verify()?;
        Ok(g.instance)
    };
    let name = family.name();
    Ok(match family {
        Family::CircleLb => {
            let d = need("D")?;
            (
                certified(gen_circle_lb(d)?)?,
                Metadata::new(name, [("D", json!(d))]),
            )
        }
        Family::PoaLb => {
            let c = need("C")?;
            (
                certified(gen_poa_lb(c)?)?,
                Metadata::new(name, [("C", json!(c))]),
            )
        }
        Family::GeneralPoa => {
            let n = need("n")?;
            (
                certified(gen_general_poa(n)?)?,
                Metadata::new(name, [("n", json!(n))]),
            )
        }
        Family::AvgPath => {
            let n = need("n")?;
            (
                certified(gen_avg_path(n)?)?,
                Metadata::new(name, [("n", json!(n))]),
            )
        }
        Family::Cycling => {
            if param.is_some() {
                return Err(CliError::invalid("cycling takes no parameters"));
            }
            let (inst, sched) = gen_cycling_instance()?;
            (
                inst,
                Metadata::new(name, [("scheduler", json!(sched.to_string()))]),
            )
        }
        Family::Alg1 => {
            if let Some(path) = from {
                let file = InstanceFile::read(path)?;
                let interests =
                    Graph::new(file.n, file.interest_edges.iter().map(|&[u, v]| (u, v)))?;
                let meta = Metadata::new(name, [("from", json!(path.display().to_string()))]);
                (build_equilibrium_alg1(&interests)?, meta)
            } else {
                let n = need("n")?;
                if alg1.complete {
                    let meta = Metadata::new(name, [("n", json!(n)), ("complete", json!(true))]);
                    (build_equilibrium_alg1(&Graph::complete(n))?, meta)
                } else {
                    if !(0.0..=1.0).contains(&alg1.p) {
                        return Err(CliError::invalid(format!(
                            "--p must lie in [0, 1], got {}",
                            alg1.p
                        )));
                    }
                    if n < 2 {
                        return Err(CliError::invalid(format!("alg1 needs n >= 2, got {n}")));
                    }
                    let interests = Graph::new(n, seeded_interests(n, alg1.p, alg1.seed))?;
                    let meta = Metadata::new(
                        name,
                        [
                            ("n", json!(n)),
                            ("p", json!(alg1.p)),
                            ("seed", json!(alg1.seed)),
                        ],
                    );
                    (build_equilibrium_alg1(&interests)?, meta)
                }
            }
        }
    })
}

pub fn run(args: &GenerateArgs) -> CliResult<InstanceFile> {
    let param = match args.family {
        Family::CircleLb => args.d,
        Family::PoaLb => args.c,
        Family::GeneralPoa | Family::AvgPath | Family::Alg1 => args.n,
        Family::Cycling => None,
    };
    let (inst, meta) = build(args.family, param, &args.alg1, args.from.as_deref())?;
    Ok(InstanceFile::from_instance(&inst, Some(meta)))
}
