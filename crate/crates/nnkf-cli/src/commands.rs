//! Dispatch of subcommands to the library and assembly of result files.

use nnkf::arith::{format_rat, Int, IVec, Rat};
use nnkf::asymptotic::AsymptoticRecord;
use nnkf::critical::{local_daughters, solve_critical, StratumClass};
use nnkf::io::{Instance, InstanceFile, ResultFile, ResultRecord, VerificationBlock};
use nnkf::newton::{newton_number, NewtonPolyhedron};
use nnkf::nonneg::{
    build_h, enumerate_is, evaluate, first_jump, monotonicity_report, reduce_support, split_levels, FormulaOptions,
    Mechanism,
};
use nnkf::polytope::mixed_volume_of_points;
use nnkf::semi::{
    analyze, coordinate_daughters, make_daughter, mv_polarization, suture_table, Daughter, SupportedPolytope,
};
use nnkf::system::{difference_volume, solve_system, solve_system_generalized};
use nnkf::Error;
use std::collections::BTreeMap;

pub struct Settings {
    pub verify: bool,
    pub keep_support: bool,
    pub max_dim: usize,
}

/// Failure of a run, mapped to an exit status.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    OutOfScope(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Input(_) => 1,
            Failure::OutOfScope(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::OutOfScope(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotConvenient | Error::NotConvenientProjection { .. } | Error::NotSemiInterlaced => {
                Failure::OutOfScope(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn input<T>(msg: &str) -> Outcome<T> {
    Err(Failure::Input(msg.to_string()))
}

fn ints(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn rats(v: &[Rat]) -> Vec<String> {
    v.iter().map(format_rat).collect()
}

fn values(pairs: &[(&str, String)]) -> BTreeMap<String, String> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn tuple(p: &[Int]) -> String {
    format!("({})", ints(p).join(","))
}

fn coordinate_set(idx: &[usize]) -> String {
    let s: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", s.join(","))
}

fn nu(support: &[IVec]) -> Outcome<Int> {
    Ok(newton_number(&NewtonPolyhedron::new(support, false)?)?)
}

fn pair(inst: &Instance) -> Outcome<(Vec<IVec>, Vec<IVec>)> {
    match inst {
        Instance::Pair { fs, gs } => Ok((fs.clone(), gs.clone())),
        Instance::Lifted { hs } => match split_levels(hs) {
            Some(p) => Ok(p),
            None => input("h-points must use deformation exponents 0 and 1 for this command"),
        },
        _ => input("this command needs f-points/g-points or h-points"),
    }
}

fn lifted(inst: &Instance) -> Outcome<Vec<IVec>> {
    match inst {
        Instance::Pair { fs, gs } => Ok(build_h(fs, gs)?),
        Instance::Lifted { hs } => Ok(hs.clone()),
        _ => input("this command needs f-points/g-points or h-points"),
    }
}

fn classical_block(hs: &[IVec], computed: &Int) -> Outcome<VerificationBlock> {
    let Some((fs, gs)) = split_levels(hs) else {
        return input("verification needs h-points with deformation exponents 0 and 1");
    };
    let (nu_f, nu_g) = (nu(&fs)?, nu(&gs)?);
    let difference = &nu_f - &nu_g;
    Ok(VerificationBlock {
        nu_f: Some(nu_f.to_string()),
        nu_g: Some(nu_g.to_string()),
        matched: difference == *computed,
        difference: difference.to_string(),
        computed: computed.to_string(),
    })
}

fn asymptotic_rows(recs: &[AsymptoticRecord]) -> Vec<ResultRecord> {
    recs.iter()
        .map(|r| {
            let mut vals = vec![("multiplicity", r.multiplicity.to_string())];
            if let Some(b) = &r.base {
                let s: Vec<String> = b.iter().map(|e| e.to_string()).collect();
                vals.push(("base", format!("({})", s.join(","))));
            }
            ResultRecord {
                covector: Some(r.covector.iter().map(|e| e.to_string()).collect()),
                class: Some(r.class.to_string()),
                subspace: Some(r.subspace.clone()),
                values: values(&vals),
                ..Default::default()
            }
        })
        .collect()
}

fn daughters_of(parent: &SupportedPolytope, spec: &Option<Vec<Vec<Vec<IVec>>>>) -> Outcome<Vec<Daughter>> {
    match spec {
        None => Ok(coordinate_daughters(parent)?),
        Some(list) => list
            .iter()
            .map(|faces| {
                let thrown: Vec<usize> =
                    faces.iter().map(|f| parent.polytope.face_of_points(f)).collect::<nnkf::Result<_>>()?;
                Ok(make_daughter(parent, &thrown)?)
            })
            .collect(),
    }
}

fn command_echo(name: &str, s: &Settings) -> String {
    let mut c = name.to_string();
    if s.verify {
        c.push_str(" --verify");
    }
    if s.keep_support {
        c.push_str(" --keep-support");
    }
    c
}

/// Parses the instance text and runs the named subcommand.
pub fn run(name: &str, text: &str, s: &Settings) -> Outcome<ResultFile> {
    let (file, inst) = InstanceFile::parse(text)?;
    if file.dim > s.max_dim {
        return Err(Failure::OutOfScope(format!("dimension {} exceeds --max-dim {}", file.dim, s.max_dim)));
    }
    let mut out = ResultFile::new(command_echo(name, s));
    match name {
        "newton-number" => newton_numbers(&inst, &mut out)?,
        "mixed-volume" => mixed_volume(&inst, file.dim, &mut out)?,
        "system-asymptotics" => system_asymptotics(&inst, s, &mut out)?,
        "critical-asymptotics" => critical_asymptotics(&inst, s, &mut out)?,
        "nonneg-formula" => nonneg(&inst, s, &mut out)?,
        "semi-interlaced-mv" => semi_interlaced(&inst, s, &mut out)?,
        "first-jump" => jump(&inst, s, &mut out)?,
        "monotonic-check" => monotonic(&inst, s, &mut out)?,
        _ => return input(&format!("unknown subcommand {name}")),
    }
    Ok(out)
}

fn newton_numbers(inst: &Instance, out: &mut ResultFile) -> Outcome<()> {
    if let Instance::Points { points, .. } = inst {
        out.totals.insert("nu".into(), nu(points)?.to_string());
        return Ok(());
    }
    let (fs, gs) = pair(inst)?;
    let (nf, ng) = (nu(&fs)?, nu(&gs)?);
    out.totals.insert("difference".into(), (&nf - &ng).to_string());
    out.totals.insert("nu-f".into(), nf.to_string());
    out.totals.insert("nu-g".into(), ng.to_string());
    Ok(())
}

fn mixed_volume(inst: &Instance, dim: usize, out: &mut ResultFile) -> Outcome<()> {
    let mv = match inst {
        Instance::Polytopes { sets } => {
            if sets.len() != dim {
                return input(&format!("mixed-volume needs {dim} polytopes, found {}", sets.len()));
            }
            mixed_volume_of_points(sets, dim)?
        }
        Instance::Points { points, daughters } => {
            let parent = SupportedPolytope::new(points)?;
            mv_polarization(&daughters_of(&parent, daughters)?)?
        }
        _ => return input("mixed-volume needs polytopes or points"),
    };
    out.totals.insert("mixed-volume".into(), mv.to_string());
    Ok(())
}

fn system_asymptotics(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    let (recs, fg) = match inst {
        Instance::Lifted { hs } if split_levels(hs).is_none() => (solve_system_generalized(hs)?, None),
        _ => {
            let (fs, gs) = pair(inst)?;
            (solve_system(&fs, &gs)?, Some((fs, gs)))
        }
    };
    let total: Int = recs.iter().map(|r| r.multiplicity.clone()).sum();
    out.records = asymptotic_rows(&recs);
    out.totals.insert("total".into(), total.to_string());
    if s.verify {
        let Some((fs, gs)) = fg else {
            return input("verification needs deformation exponents 0 and 1");
        };
        let v = difference_volume(&fs, &gs)?;
        out.verification = Some(VerificationBlock {
            nu_f: None,
            nu_g: None,
            matched: v == total,
            difference: v.to_string(),
            computed: total.to_string(),
        });
    }
    Ok(())
}

fn critical_asymptotics(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    let hs = lifted(inst)?;
    let work = if s.keep_support { hs.clone() } else { reduce_support(&hs)? };
    let recs = solve_critical(&work)?;
    let total: Int = recs.iter().map(|r| r.multiplicity.clone()).sum();
    out.records = asymptotic_rows(&recs);
    out.totals.insert("total".into(), total.to_string());
    if s.verify {
        out.verification = Some(classical_block(&hs, &total)?);
    }
    Ok(())
}

fn nonneg(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    let hs = lifted(inst)?;
    let res = evaluate(&hs, &FormulaOptions { keep_support: s.keep_support, ..Default::default() })?;
    for sm in &res.summands {
        out.records.push(ResultRecord {
            covector: Some(rats(&sm.index.padded(res.n))),
            class: Some(nnkf::asymptotic::AsymptoticClass::from(sm.index.class).to_string()),
            subspace: Some(sm.index.subspace.clone()),
            values: values(&[
                ("multiplicity", sm.index.multiplicity.to_string()),
                ("nu", sm.nu.to_string()),
                ("contribution", sm.contribution.to_string()),
            ]),
            ..Default::default()
        });
    }
    out.totals.insert("total".into(), res.total.to_string());
    if s.verify {
        out.verification = Some(classical_block(&hs, &res.total)?);
    }
    Ok(())
}

fn semi_interlaced(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    if let Instance::Points { points, daughters } = inst {
        let parent = SupportedPolytope::new(points)?;
        let ds = daughters_of(&parent, daughters)?;
        let analysis = analyze(&parent, &ds)?;
        let table = suture_table(&parent, &analysis)?;
        for i in 0..table.sutures.len() {
            let label: Vec<String> = table.suture_vertices[i].iter().map(|p| tuple(p)).collect();
            out.records.push(ResultRecord {
                label: Some(label.join(" ")),
                values: values(&[
                    ("volume", table.volumes[i].to_string()),
                    ("restricted-mv", table.tilde_v[i].to_string()),
                    ("recursive", table.tilde_v_recursive[i].to_string()),
                ]),
                ..Default::default()
            });
        }
        let mv = table.tilde_v[0].clone();
        out.totals.insert("mixed-volume".into(), mv.to_string());
        out.totals.insert("sutures".into(), table.sutures.len().to_string());
        if s.verify {
            let p = mv_polarization(&ds)?;
            out.verification =
                Some(VerificationBlock { nu_f: None, nu_g: None, matched: p == mv, difference: p.to_string(), computed: mv.to_string() });
        }
        return Ok(());
    }
    let hs = lifted(inst)?;
    let work = if s.keep_support { hs.clone() } else { reduce_support(&hs)? };
    let n = hs[0].len() - 1;
    let mut total = Int::from(0);
    let mut polar = Int::from(0);
    for ix in enumerate_is(&work)? {
        if ix.subspace.len() != n || ix.class != StratumClass::SemiInternal {
            continue;
        }
        let (parent, ds) = local_daughters(&work, &ix.subspace, &ix.covector)?;
        let table = suture_table(&parent, &analyze(&parent, &ds)?)?;
        let p = mv_polarization(&ds)?;
        out.records.push(ResultRecord {
            covector: Some(rats(&ix.covector)),
            values: values(&[("mixed-volume", table.tilde_v[0].to_string()), ("sutures", table.sutures.len().to_string())]),
            ..Default::default()
        });
        total += &table.tilde_v[0];
        polar += p;
    }
    out.totals.insert("total".into(), total.to_string());
    if s.verify {
        out.verification = Some(VerificationBlock {
            nu_f: None,
            nu_g: None,
            matched: polar == total,
            difference: polar.to_string(),
            computed: total.to_string(),
        });
    }
    Ok(())
}

fn jump(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    let fs = match inst {
        Instance::Points { points, .. } => points.clone(),
        Instance::Pair { fs, .. } => fs.clone(),
        _ => return input("first-jump needs points or f-points"),
    };
    let rep = first_jump(&fs)?;
    for p in &rep.minimizers {
        out.records.push(ResultRecord {
            point: Some(ints(p)),
            values: values(&[("difference", rep.difference.to_string())]),
            ..Default::default()
        });
    }
    out.totals.insert("base".into(), rep.base.to_string());
    out.totals.insert("jump".into(), rep.difference.to_string());
    out.totals.insert("candidates".into(), rep.candidates.len().to_string());
    if s.verify {
        let mut all_agree = true;
        let mut best: Option<Int> = None;
        for (p, d) in &rep.candidates {
            let mut gs = fs.clone();
            gs.push(p.clone());
            let classical = &rep.base - nu(&gs)?;
            all_agree &= classical == *d;
            if classical > Int::from(0) && best.as_ref().is_none_or(|b| classical < *b) {
                best = Some(classical);
            }
        }
        let best = best.unwrap_or_default();
        out.verification = Some(VerificationBlock {
            nu_f: Some(rep.base.to_string()),
            nu_g: Some((&rep.base - &best).to_string()),
            matched: all_agree && best == rep.difference,
            difference: best.to_string(),
            computed: rep.difference.to_string(),
        });
    }
    Ok(())
}

fn mechanism_values(m: &Mechanism) -> Vec<(&'static str, String)> {
    match m {
        Mechanism::Positive => vec![("mechanism", "positive".into())],
        Mechanism::ZeroNewtonNumber => vec![("mechanism", "zero-newton-number".into())],
        Mechanism::DependentLocalPolytopes { daughters, span, parallel_segments } => vec![
            ("mechanism", if *parallel_segments { "parallel-segments" } else { "dependent-local-polytopes" }.into()),
            ("daughters", coordinate_set(daughters)),
            ("span", span.to_string()),
        ],
        Mechanism::ZeroMixedVolume => vec![("mechanism", "zero-mixed-volume".into())],
    }
}

fn monotonic(inst: &Instance, s: &Settings, out: &mut ResultFile) -> Outcome<()> {
    let (fs, gs) = pair(inst)?;
    let rep = monotonicity_report(&fs, &gs)?;
    for ev in &rep.evidence {
        let sm = &ev.summand;
        let mut vals = vec![
            ("multiplicity", sm.index.multiplicity.to_string()),
            ("nu", sm.nu.to_string()),
            ("contribution", sm.contribution.to_string()),
        ];
        vals.extend(mechanism_values(&ev.mechanism));
        out.records.push(ResultRecord {
            covector: Some(rats(&sm.index.padded(fs[0].len()))),
            class: Some(nnkf::asymptotic::AsymptoticClass::from(sm.index.class).to_string()),
            subspace: Some(sm.index.subspace.clone()),
            values: values(&vals),
            ..Default::default()
        });
    }
    out.totals.insert("total".into(), rep.total.to_string());
    out.totals.insert("verdict".into(), if rep.equal { "equal" } else { "strictly-larger" }.into());
    if s.verify {
        out.verification = Some(classical_block(&build_h(&fs, &gs)?, &rep.total)?);
    }
    Ok(())
}
