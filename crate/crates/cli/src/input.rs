use std::fs;
use std::path::Path;

use serde_json::Value;
use ybd_core::classical_limit::ClassicalParams;
use ybd_core::deformations::{DeformationSpec, Side};
use ybd_core::esoteric::EsotericSpec;
use ybd_core::scalars::parse_scalar;
use ybd_core::{Cyc, PairOp, ParamSet};

use crate::cli::{EsotericArgs, SpecArgs};

/// Failure with the process exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub msg: String,
}

impl Failure {
    pub fn input(msg: impl Into<String>) -> Self {
        Failure { code: 2, msg: msg.into() }
    }
}

impl From<ybd_core::Error> for Failure {
    fn from(e: ybd_core::Error) -> Self {
        Failure::input(e.to_string())
    }
}

pub type Res<T> = std::result::Result<T, Failure>;

pub fn read_json(path: &Path) -> Res<Value> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("{}:{}:{}: {e}", path.display(), e.line(), e.column())))
}

fn located<T>(path: &Path, r: ybd_core::Result<T>) -> Res<T> {
    r.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn params(path: &Path) -> Res<ParamSet> {
    located(path, ParamSet::from_json(&read_json(path)?))
}

pub fn operator(path: &Path) -> Res<PairOp> {
    located(path, PairOp::from_json(&read_json(path)?))
}

pub fn classical(path: &Path) -> Res<ClassicalParams> {
    located(path, ClassicalParams::from_json(&read_json(path)?))
}

pub fn scalar(flag: &str, s: &str) -> Res<Cyc> {
    parse_scalar(s).map_err(|e| Failure::input(format!("--{flag} {s:?}: {e}")))
}

fn need<T: Copy>(flag: &str, v: Option<T>) -> Res<T> {
    v.ok_or_else(|| Failure::input(format!("missing --{flag}")))
}

pub fn spec(a: &SpecArgs) -> Res<DeformationSpec> {
    if let Some(path) = &a.file {
        return located(path, DeformationSpec::from_json(&read_json(path)?));
    }
    let spec = if a.principal {
        DeformationSpec::principal(need("case", a.case)?, need("i", a.i)?, need("j", a.j)?)
    } else if a.exceptional {
        let side = match a.side.as_deref() {
            Some("lower") => Side::Lower,
            Some(_) => Side::Upper,
            None => return Err(Failure::input("missing --side")),
        };
        DeformationSpec::exceptional(side, need("i", a.i)?, need("k", a.k)?)
    } else {
        return Err(Failure::input("give --spec FILE, --principal or --exceptional"));
    };
    Ok(match &a.amplitude {
        Some(s) => spec.with_amplitude(scalar("amplitude", s)?),
        None => spec,
    })
}

pub fn esoteric(a: &EsotericArgs) -> Res<EsotericSpec> {
    if let Some(path) = &a.spec {
        return located(path, EsotericSpec::from_json(&read_json(path)?));
    }
    let n = need("n", a.n)?;
    let q = scalar("q", a.q.as_deref().ok_or_else(|| Failure::input("missing --q"))?)?;
    let mu = a.mu.iter().map(|m| scalar("mu", m)).collect::<Res<Vec<_>>>()?;
    Ok(EsotericSpec::new(n, q, mu)?)
}
