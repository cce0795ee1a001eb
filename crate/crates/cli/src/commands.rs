use hyperlattice_core::cone::WallSystem;
use hyperlattice_core::enumerate::{enumerate_negative, find_isotropic, lambda_n_mod_ell, EnumerationQuery};
use hyperlattice_core::isometry::{
    adapted_basis, build_isometry, gamma_generators, orbit_projective_limit, AdaptedBasis, GammaVector,
};
use hyperlattice_core::rank::{aut_rank, rank_upper_bound, shioda_tate_rank};
use hyperlattice_core::sublattice::{orthogonal_complement, quotient_mod_isotropic, saturate, SublatticeBasis};
use hyperlattice_core::{Int, LatticeVector};
use serde_json::Value;

use crate::args::{Command, Input, Walls};
use crate::error::{CliError, CliResult};
use crate::file::{read_lattice_file, LatticeFile};
use crate::json;

pub fn run(command: &Command) -> CliResult<Value> {
    match command {
        Command::Info(input) => info(&load(input)?),
        Command::Complement { input, sub } => {
            let f = load(input)?;
            let sub = sublattice(&f, sub)?;
            Ok(basis_json(&orthogonal_complement(&f.lattice, &sub)?.normalized()))
        }
        Command::Saturate { input, sub } => {
            let f = load(input)?;
            let sub = sublattice(&f, sub)?;
            Ok(basis_json(&saturate(&f.lattice, &sub)?.normalized()))
        }
        Command::Quotient { input, ell } => quotient(&load(input)?, ell),
        Command::Adapt { input, ell, w } => {
            let f = load(input)?;
            Ok(adapted_json(&adapted(&f, ell, w)?))
        }
        Command::Isometry { input, ell, w, gamma } => {
            let f = load(input)?;
            let ab = adapted(&f, ell, w)?;
            let gamma = parse_gamma(&ab, gamma)?;
            let g = build_isometry(&ab, &gamma)?;
            Ok(json::object(vec![
                ("gamma", json::ints(gamma.entries())),
                ("d", json::int(ab.d())),
                ("matrix", json::matrix(g.matrix())),
            ]))
        }
        Command::Orbit { input, ell, w, gamma, x, m_max } => {
            let f = load(input)?;
            let ab = adapted(&f, ell, w)?;
            let gamma = match gamma {
                Some(spec) => parse_gamma(&ab, spec)?,
                None => gamma_generators(&ab).into_iter().next().ok_or(hyperlattice_core::Error::CorankTooSmall {
                    n: ab.rank(),
                    rank_w: ab.rank_w(),
                })?,
            };
            let g = build_isometry(&ab, &gamma)?;
            let report = orbit_projective_limit(&g, &f.vector(x)?, ab.ell(), *m_max)?;
            let steps = report
                .steps
                .iter()
                .map(|s| {
                    json::object(vec![
                        ("m", json::uint(s.m)),
                        ("iterate", json::vector(&s.iterate)),
                        ("ell_coordinate", json::int(&s.ell_coordinate)),
                        ("deviation", s.deviation.as_ref().map_or(Value::Null, json::rational)),
                    ])
                })
                .collect();
            Ok(json::object(vec![
                ("gamma", json::ints(gamma.entries())),
                ("matrix", json::matrix(g.matrix())),
                ("ell", json::vector(&report.ell)),
                ("functional", json::ints(&report.functional)),
                ("steps", Value::Array(steps)),
                ("ell_second_difference", report.ell_second_difference.as_ref().map_or(Value::Null, json::int)),
                ("quadratic_growth", Value::Bool(report.quadratic_growth())),
                ("residual_affine", Value::Bool(report.residual_affine)),
                ("decreasing_from", report.decreasing_from.map_or(Value::Null, json::uint)),
            ]))
        }
        Command::Enumerate { input, square, range, limit } => {
            let f = load(input)?;
            let mut query = match (square, range) {
                (Some(s), _) => EnumerationQuery::square(parse_big(s, "--square")?)?,
                (None, Some(r)) => {
                    let (lo, hi) = r
                        .split_once(',')
                        .ok_or_else(|| CliError::Usage(format!("--range expects 'qmin,qmax', got '{r}'")))?;
                    EnumerationQuery::new(parse_big(lo, "--range")?, parse_big(hi, "--range")?)?
                }
                (None, None) => return Err(CliError::Usage("enumerate needs --square or --range".into())),
            };
            if let Some(limit) = limit {
                query = query.with_limit(*limit);
            }
            let found = enumerate_negative(&f.lattice, &query)?;
            Ok(json::object(vec![("count", json::uint(found.len())), ("vectors", json::vectors(&found))]))
        }
        Command::LambdaN { input, ell, n } => {
            let f = load(input)?;
            let bound = parse_big(n, "--n")?;
            let reps = lambda_n_mod_ell(&f.lattice, &f.vector(ell)?, &bound)?;
            Ok(json::object(vec![
                ("n", json::int(&bound)),
                ("count", json::uint(reps.len())),
                ("representatives", json::vectors(&reps)),
            ]))
        }
        Command::Isotropic { input, size } => {
            let f = load(input)?;
            let found = find_isotropic(&f.lattice, *size);
            Ok(json::object(vec![("count", json::uint(found.len())), ("vectors", json::vectors(&found))]))
        }
        Command::Nef { input, walls, x } => {
            let f = load(input)?;
            let ws = wall_system(&f, walls)?;
            let x = f.vector(x)?;
            let positive = ws.in_positive_cone(&x)?;
            let chamber = if positive {
                let sig = ws.chamber_signature(&x)?;
                Value::String(sig.signs.iter().map(|s| s.symbol()).collect())
            } else {
                Value::Null
            };
            Ok(json::object(vec![
                ("nef", Value::Bool(ws.is_nef(&x)?)),
                ("in_positive_cone", Value::Bool(positive)),
                ("chamber", chamber),
                ("walls", json::vectors(ws.walls())),
            ]))
        }
        Command::Separates { input, walls, e, x, y } => {
            let f = load(input)?;
            let ws = wall_system(&f, walls)?;
            let (e, x, y) = (f.vector(e)?, f.vector(x)?, f.vector(y)?);
            Ok(json::object(vec![
                ("separates", Value::Bool(ws.separates(&e, &x, &y)?)),
                ("pairings", Value::Array(vec![json::int(&f.lattice.inner(&x, &e)?), json::int(&f.lattice.inner(&y, &e)?)])),
            ]))
        }
        Command::MbmFace { input, walls, e } => {
            let f = load(input)?;
            let ws = wall_system(&f, walls)?;
            let e = f.vector(e)?;
            Ok(json::object(vec![
                ("face", Value::Bool(ws.mbm_face_test(&e)?)),
                ("square", json::int(&f.lattice.square(&e)?)),
            ]))
        }
        Command::AutRank { input, walls, ell, mbm } => {
            let f = load(input)?;
            let ws = wall_system(&f, walls)?;
            let r = aut_rank(&ws, &f.vector(ell)?, &f.vector_list(mbm)?)?;
            Ok(json::object(vec![
                ("picard", json::uint(r.picard)),
                ("dimW", json::uint(r.dim_w)),
                ("rank", json::uint(r.rank)),
                ("rank_via_quotient", Value::from(r.rank_via_quotient)),
                ("quotient_rank", json::uint(r.quotient_rank)),
                ("upper_bound", json::uint(rank_upper_bound(&f.lattice)?)),
                ("spanning_set", json::vectors(&r.spanning_set)),
                ("mbm_circ_used", json::vectors(&r.mbm_circ_used)),
                ("basis", json::vectors(&r.span.basis)),
                ("negative_definite", Value::Bool(r.span.negative_definite)),
                ("within_hypothesis", Value::Bool(r.within_hypothesis)),
            ]))
        }
        Command::ShiodaTate { picard, fibers } => {
            let counts: Vec<usize> = fibers
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().map_err(|_| CliError::Usage(format!("--fibers: '{s}' is not a component count"))))
                .collect::<CliResult<_>>()?;
            let rank = shioda_tate_rank(*picard, &counts)?;
            let dim_w = 1 + counts.iter().map(|c| c - 1).sum::<usize>();
            Ok(json::object(vec![
                ("picard", json::uint(*picard)),
                ("fibers", Value::Array(counts.iter().map(|&c| json::uint(c)).collect())),
                ("dimW", json::uint(dim_w)),
                ("rank", json::uint(rank)),
            ]))
        }
    }
}

fn load(input: &Input) -> CliResult<LatticeFile> {
    read_lattice_file(&input.file)
}

fn parse_big(s: &str, flag: &str) -> CliResult<Int> {
    s.trim().parse().map_err(|_| CliError::Usage(format!("{flag}: '{s}' is not an integer")))
}

fn sublattice(f: &LatticeFile, spec: &str) -> CliResult<SublatticeBasis> {
    Ok(SublatticeBasis::new(f.rank(), f.vector_list(spec)?)?)
}

fn adapted(f: &LatticeFile, ell: &str, w: &str) -> CliResult<AdaptedBasis> {
    Ok(adapted_basis(&f.lattice, &f.vector(ell)?, &sublattice(f, w)?)?)
}

fn wall_system(f: &LatticeFile, walls: &Walls) -> CliResult<WallSystem> {
    Ok(WallSystem::new(&f.lattice, f.vector(&walls.kappa)?, f.vector_list(&walls.walls)?)?)
}

fn parse_gamma(ab: &AdaptedBasis, spec: &str) -> CliResult<GammaVector> {
    let value: Value = serde_json::from_str(spec.trim())
        .map_err(|e| CliError::Usage(format!("--gamma: cannot parse '{spec}' as JSON: {e}")))?;
    let entries = json::parse_ints(&value, "--gamma").map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(GammaVector::new(ab, entries)?)
}

fn info(f: &LatticeFile) -> CliResult<Value> {
    let sig = f.lattice.signature();
    Ok(json::object(vec![
        ("rank", json::uint(f.rank())),
        ("signature", json::signature(&sig)),
        ("determinant", json::int(&f.lattice.determinant())),
        ("hyperbolic", Value::Bool(sig.is_hyperbolic())),
        ("negative_definite", Value::Bool(sig.is_negative_definite())),
    ]))
}

fn basis_json(b: &SublatticeBasis) -> Value {
    json::object(vec![("rank", json::uint(b.rank())), ("basis", json::vectors(b.vectors()))])
}

fn quotient(f: &LatticeFile, ell: &str) -> CliResult<Value> {
    let q = quotient_mod_isotropic(&f.lattice, &f.vector(ell)?)?;
    let mut out = LatticeFile::new(q.form().clone()).to_json();
    if let Value::Object(map) = &mut out {
        map.insert("ell".into(), json::vector(q.ell()));
        map.insert("lifts".into(), json::vectors(q.lifts()));
        map.insert("signature".into(), json::signature(&q.signature()));
    }
    Ok(out)
}

fn adapted_json(ab: &AdaptedBasis) -> Value {
    let us: Vec<LatticeVector> = ab.us().to_vec();
    json::object(vec![
        ("ell", json::vector(ab.ell())),
        ("us", json::vectors(&us)),
        ("ell_prime", json::vector(ab.ell_prime())),
        ("a", json::int(ab.a())),
        ("gram_u", json::matrix(ab.gram_u())),
        ("b", json::ints(ab.b())),
        ("c", json::int(ab.c())),
        ("d", json::int(ab.d())),
        ("rank_w", json::uint(ab.rank_w())),
        ("free_rank", json::uint(ab.free_rank())),
        ("adapted_gram", json::matrix(&ab.adapted_gram())),
        ("change_of_basis", json::matrix(ab.change_of_basis())),
    ])
}
