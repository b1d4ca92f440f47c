use polyaut::algebra::parse::split_top_level;
use polyaut::algebra::parse_scalar;
use polyaut::derivations::nagata_map;
use polyaut::ffperm::{fiberwise_experiment, parity_experiment, ParityReport};
use polyaut::fixedspace::{eigenspace_basis, fixed_dimension_profile};
use polyaut::gradings::solve_gradings;
use polyaut::linearize::{build_shift_linearization, l_b};
use polyaut::{AutWord, Derivation, Error, Field, PolyMap, PolyRing, Result, Scalar};
use serde_json::json;

use crate::report::{components, scalar, CommandResult};

/// Number of entries in a `(..)` or `[..]` literal.
fn literal_arity(text: &str) -> usize {
    let t = text.trim();
    let inner = t.get(1..t.len().saturating_sub(1)).unwrap_or("");
    let sep = if t.starts_with('[') { ';' } else { ',' };
    split_top_level(inner, sep).len()
}

/// `nagata`, or a derivation literal `[e1; ...; en]`.
pub fn derivation_arg(field: &Field, text: &str) -> Result<Derivation> {
    let n = if text.trim().eq_ignore_ascii_case("nagata") {
        3
    } else {
        literal_arity(text)
    };
    Derivation::parse_or_preset(&PolyRing::new(field.clone(), n), text)
}

/// A preset (`N`, `L2N`, `2N`), a map literal `(e1, ..., en)`, or a word
/// in `vars` variables.
pub fn map_arg(field: &Field, text: &str, vars: usize) -> Result<PolyMap> {
    let t = text.trim();
    let one = field.one();
    match t {
        "N" | "nagata" => return nagata_map(field, &one),
        "L2N" => return l_b(field, &field.from_i64(2))?.endo_product(&nagata_map(field, &one)?),
        "2N" => {
            let two = field.from_i64(2);
            let ring = PolyRing::new(field.clone(), 3);
            let l = PolyMap::diagonal(&ring, &[two.clone(), two.clone(), two])?;
            return l.endo_product(&nagata_map(field, &one)?);
        }
        _ => {}
    }
    if t.starts_with('(') {
        PolyMap::parse(&PolyRing::new(field.clone(), literal_arity(t)), t)
    } else {
        AutWord::parse(&PolyRing::new(field.clone(), vars), t)?.realize()
    }
}

fn lines(map: &PolyMap) -> String {
    let ring = map.ring();
    map.components()
        .iter()
        .enumerate()
        .map(|(i, c)| format!("  {} -> {}\n", ring.var_name(i), c))
        .collect()
}

pub fn exp(field: &Field, derivation: &str, lambda: &str, bound: usize) -> Result<CommandResult> {
    let d = derivation_arg(field, derivation)?;
    let l = parse_scalar(field, lambda)?;
    let cert = d.verify_lnd(bound)?;
    let map = d.exp(&l, bound)?;
    let text = format!(
        "exp({} D) over {field}\nD = {d}\nnilpotency indices: {:?}\nmap: {map}\n{}",
        field.format(&l),
        cert.indices,
        lines(&map)
    );
    let json = json!({
        "field": field.to_string(),
        "derivation": d.to_string(),
        "lambda": scalar(field, &l),
        "nilpotencyIndices": cert.indices,
        "map": components(&map),
    });
    Ok(CommandResult::ok("exp", text, json))
}

pub fn gradings(field: &Field, derivation: &str) -> Result<CommandResult> {
    let d = derivation_arg(field, derivation)?;
    let sol = solve_gradings(&d);
    let mut text = format!("D = {d}\ndimension: {}\n", sol.dimension());
    let mut rows = Vec::new();
    for (w, k) in &sol.basis {
        let ws: Vec<String> = w.0.iter().map(ToString::to_string).collect();
        text.push_str(&format!("({} | {k})\n", ws.join(",")));
        rows.push(json!({ "weights": ws, "k": k.to_string() }));
    }
    let json = json!({
        "derivation": d.to_string(),
        "dimension": sol.dimension(),
        "basis": rows,
    });
    Ok(CommandResult::ok("gradings", text, json))
}

pub fn shift_linearize(
    field: &Field,
    map: &str,
    lambda: &str,
    derivation: &str,
    bound: usize,
) -> Result<CommandResult> {
    let d = derivation_arg(field, derivation)?;
    let l = map_arg(field, map, d.ring().nvars())?;
    let lam = parse_scalar(field, lambda)?;
    let rep = build_shift_linearization(&l, &d, &lam, bound)?;
    let f = |s: &Scalar| field.format(s);
    let mut text = format!(
        "L = {l}\nD = {d}\nlambda = {}\nconjugation scalar c = {}\nL*exp(lambda D) = {}\n",
        f(&lam),
        f(&rep.conjugation_scalar),
        rep.shifted_map
    );
    if rep.degenerate {
        text.push_str("degenerate: c = 1, L commutes with exp(lambda D); no shift-linearization by this L\n");
    } else {
        let mu = rep.conjugator.as_ref().expect("non-degenerate");
        text.push_str(&format!(
            "conjugator mu = {}\nexp(-mu D)*(L*exp(lambda D))*exp(mu D) = {}\nverified: {}\n",
            f(mu),
            rep.conjugated_map.as_ref().expect("non-degenerate"),
            rep.verified
        ));
    }
    let json = json!({
        "diagonal": rep.diagonal.iter().map(|s| scalar(field, s)).collect::<Vec<_>>(),
        "derivation": d.to_string(),
        "lambda": scalar(field, &lam),
        "conjugationScalar": scalar(field, &rep.conjugation_scalar),
        "conjugator": rep.conjugator.as_ref().map(|m| scalar(field, m)),
        "shiftedMap": components(&rep.shifted_map),
        "conjugatedMap": rep.conjugated_map.as_ref().map(components),
        "verified": rep.verified,
        "degenerate": rep.degenerate,
    });
    if rep.degenerate || rep.verified {
        Ok(CommandResult::ok("shift-linearize", text, json))
    } else {
        Ok(CommandResult::failed("shift-linearize", text, json))
    }
}

pub fn fixed_space(field: &Field, map: &str, mu: &str, degree: u32, vars: usize) -> Result<CommandResult> {
    let f = map_arg(field, map, vars)?;
    let m = parse_scalar(field, mu)?;
    let e = eigenspace_basis(&f, &m, degree)?;
    let mut text = format!(
        "F = {f}\nmu = {}, degree <= {degree}\ndimension: {}\n",
        field.format(&m),
        e.dimension()
    );
    for p in &e.basis {
        text.push_str(&format!("  {p}\n"));
    }
    let json = json!({
        "map": components(&f),
        "mu": scalar(field, &m),
        "degree": degree,
        "dimension": e.dimension(),
        "basis": e.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
    });
    Ok(CommandResult::ok("fixed-space", text, json))
}

pub fn profile(field: &Field, map: &str, dmax: u32, vars: usize) -> Result<CommandResult> {
    let f = map_arg(field, map, vars)?;
    let prof = fixed_dimension_profile(&f, dmax)?;
    let shown: Vec<String> = prof.iter().map(ToString::to_string).collect();
    let text = format!(
        "F = {f}\nfixed-space dimensions for degree <= 0..={dmax}: ({})\n",
        shown.join(",")
    );
    let json = json!({
        "map": components(&f),
        "dmax": dmax,
        "profile": prof,
    });
    Ok(CommandResult::ok("fixed-space", text, json))
}

pub struct ParityArgs {
    pub q: u32,
    pub n: usize,
    pub samples: usize,
    pub seed: u64,
    pub fiberwise: bool,
    pub length: usize,
    pub max_degree: u32,
}

pub fn parity(a: &ParityArgs) -> Result<CommandResult> {
    let field = Field::finite(a.q)?;
    let rep: ParityReport = if a.fiberwise {
        if a.n != 3 {
            return Err(Error::InvalidArgument(
                "the fibrewise experiment runs in dimension 3".into(),
            ));
        }
        fiberwise_experiment(&field, a.samples, a.seed, a.length, a.max_degree)?
    } else {
        parity_experiment(&field, a.n, a.samples, a.seed, a.length, a.max_degree)?
    };
    let flagged = rep.contradicts_even_expectation();
    let mut text = format!(
        "{}random tame words over GF({})^{}: {} samples, seed {}\neven: {}\nodd: {}\n",
        if a.fiberwise { "fibrewise " } else { "" },
        rep.q,
        rep.n,
        rep.samples,
        rep.seed,
        rep.even,
        rep.odd
    );
    for w in &rep.odd_witnesses {
        text.push_str(&format!("odd witness: {w}\n"));
    }
    if flagged {
        text.push_str(
            "WARNING: odd permutation from a tame word over a field of order 2^m, m >= 2. \
             Expected only even permutations; re-check this witness independently.\n",
        );
    }
    let json = json!({
        "q": rep.q,
        "n": rep.n,
        "samples": rep.samples,
        "seed": rep.seed,
        "fiberwise": a.fiberwise,
        "evenCount": rep.even,
        "oddCount": rep.odd,
        "witnesses": rep.odd_witnesses,
        "flagged": flagged,
    });
    Ok(CommandResult::ok("parity", text, json))
}
