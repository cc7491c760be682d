//! The acceptance suite: one line per criterion, exit status 1 if any fails.

use dualramsey::codec::{cp, cutoff_for, pc, trans, RealSet};
use dualramsey::filters::{diagonalize_check, diagonalize_construct, FilterBase};
use dualramsey::forcing::{
    classify, dense_embed, is_branch, is_subtree, leq, uniformize, validate_condition, validate_laver,
    Classification, ForcingError, LaverTree, Nbhd, OpenSet,
};
use dualramsey::game::{play, verify_certificate, Avoidance, Copycat, FirstLegal, Move, Outcome, RandomPlay, Strategy};
use dualramsey::oracle;
use dualramsey::partition::{all_finparts, all_xparts, enumerate_segments, inner_segments};
use dualramsey::ramsey::{
    check_min_lift, dual_ramsey_witness, hj_extract, hj_number, min_coloring_lift, planted_coloring, verify_witness,
    Coloring, SetColoring,
};
use dualramsey::{is_coarser, is_segment, join, FinPart, Part, XPart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::time::{Duration, Instant};

type Check = fn() -> Result<String, String>;

fn main() {
    let criteria: [(&str, Option<Duration>, Check); 10] = [
        ("codec round trips", Some(Duration::from_secs(10)), codec_round_trips),
        ("join is the finest common coarsening", Some(Duration::from_secs(60)), join_correctness),
        ("condition order equals neighbourhood inclusion", None, order_characterization),
        ("witness soundness and planted recovery", None, witness_soundness),
        ("Hales–Jewett oracle and line extraction", None, hales_jewett),
        ("coarsenings of branches are branches", None, sub_branch),
        ("dense embedding", None, dense_embedding),
        ("Min lift", None, min_lift),
        ("game legality and avoidance", None, game_legality),
        ("classify consistency", None, classify_consistency),
    ];
    let mut failures = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(detail), Some(limit)) if elapsed > limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            (result, _) => result,
        };
        let (tag, detail) = match result {
            Ok(detail) => ("PASS", detail),
            Err(detail) => {
                failures += 1;
                ("FAIL", detail)
            }
        };
        println!("[{tag}] {:>2}. {name}: {detail} ({elapsed:.2?})", i + 1);
    }
    if failures > 0 {
        println!("{failures} criteria failed");
        std::process::exit(1);
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rand_fin(rng: &mut ChaCha8Rng, m: usize) -> FinPart {
    let labels: Vec<usize> = (0..m).map(|_| rng.gen_range(0..m)).collect();
    FinPart::from_labels(&labels)
}

fn rand_fin_upto(rng: &mut ChaCha8Rng, max_dom: usize) -> FinPart {
    let m = rng.gen_range(0..=max_dom);
    rand_fin(rng, m)
}

fn rand_xpart(rng: &mut ChaCha8Rng, max_prefix: usize) -> XPart {
    XPart::from_prefix(rand_fin_upto(rng, max_prefix))
}

fn rand_base(rng: &mut ChaCha8Rng, max_prefix: usize) -> FilterBase {
    let members = (0..rng.gen_range(1..=2)).map(|_| rand_xpart(rng, max_prefix)).collect();
    FilterBase::new(members).expect("nonempty base")
}

fn xp(blocks: &[&[usize]]) -> XPart {
    XPart::from_blocks(blocks.iter().map(|b| b.iter().copied())).expect("valid blocks")
}

fn codec_round_trips() -> Result<String, String> {
    let mut partitions = 0;
    for m in 0..=8 {
        let parts: Vec<FinPart> = all_finparts(m).collect();
        ensure(parts.len() as u128 == oracle::bell(m), || format!("Bell({m}) mismatch"))?;
        for p in parts {
            let back = cp(&pc(&p, cutoff_for(m)), m).map_err(|e| e.to_string())?;
            ensure(back == p, || format!("cp(pc({p})) = {back}"))?;
            partitions += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..1000 {
        let m = rng.gen_range(2..=8);
        let cutoff = cutoff_for(m);
        let density = rng.gen_range(0.0..0.4);
        let raw = RealSet::new((0..cutoff).filter(|_| rng.gen_bool(density)), cutoff).map_err(|e| e.to_string())?;
        let x = trans(&raw);
        ensure(x.is_transitive(), || format!("trans({raw:?}) is not transitive"))?;
        let p = cp(&x, m).map_err(|e| e.to_string())?;
        ensure(p == oracle::cp(&x, m), || format!("cp({x:?}) disagrees with the oracle"))?;
        ensure(pc(&p, cutoff) == x, || format!("pc(cp({x:?})) ≠ x"))?;
    }
    Ok(format!("0 mismatches over {partitions} partitions (m ≤ 8) and 1000 transitive reals"))
}

/// The finest partition of `[0, len)` coarser than both, by enumeration.
fn finest_common_coarsening(p: &FinPart, q: &FinPart) -> Option<FinPart> {
    let len = p.dom().max(q.dom());
    let common: Vec<FinPart> =
        oracle::partitions(len).into_iter().filter(|r| oracle::is_coarser(r, p) && oracle::is_coarser(r, q)).collect();
    let finest = common.iter().max_by_key(|r| r.block_count())?;
    common.iter().all(|r| oracle::is_coarser(r, finest)).then(|| finest.clone())
}

fn join_correctness() -> Result<String, String> {
    let parts: Vec<FinPart> = (0..=5).flat_map(oracle::partitions).collect();
    let mut pairs = 0;
    for p in &parts {
        for q in &parts {
            let Part::Fin(fast) = join(p, q) else { return Err(format!("join({p}, {q}) is infinite")) };
            let brute = finest_common_coarsening(p, q).ok_or_else(|| format!("no finest coarsening of {p}, {q}"))?;
            ensure(fast == brute, || format!("join({p}, {q}) = {fast}, expected {brute}"))?;
            ensure(oracle::join(p, q) == Part::Fin(brute), || format!("fixpoint join of {p}, {q} disagrees"))?;
            pairs += 1;
        }
    }
    Ok(format!("0 mismatches over {pairs} pairs (m ≤ 5)"))
}

fn order_characterization() -> Result<String, String> {
    let bound = 6;
    let mut conditions = Vec::new();
    for s in (0..=3).flat_map(all_finparts) {
        for x in all_xparts(4) {
            let c = Nbhd::new(s.clone(), x);
            let listed = oracle::nbhd_members(&c.s, &c.x, bound);
            ensure(validate_condition(&c, bound) == !listed.is_empty(), || format!("validate_condition({c})"))?;
            if !listed.is_empty() {
                conditions.push((c, listed));
            }
        }
    }
    let mut pairs = 0;
    let mut below = 0;
    for (c1, m1) in &conditions {
        for (c2, m2) in &conditions {
            let brute = m1.iter().all(|z| m2.binary_search(z).is_ok());
            ensure(leq(c1, c2) == brute, || format!("leq({c1}, {c2}) = {}, members say {brute}", !brute))?;
            pairs += 1;
            below += usize::from(brute);
        }
    }
    ensure(pairs >= 2000, || format!("only {pairs} pairs"))?;
    Ok(format!("0 disagreements over {pairs} pairs ({below} comparable), members listed to prefix {bound}"))
}

fn witness_soundness() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let dom_bound = 5;
    let (mut planted, mut returned) = (0, 0);
    while planted < 500 {
        let s = rand_fin_upto(&mut rng, 2);
        // X extends s, Z coarsens X without touching s
        let mut rgs = s.rgs().to_vec();
        rgs.extend(rand_fin(&mut rng, 4 - s.dom()).rgs().iter().map(|&b| b + s.block_count()));
        let x = XPart::from_prefix(FinPart::from_labels(&rgs));
        let z = x.join_fin(&rand_fin_upto(&mut rng, dom_bound));
        if !is_segment(&s, &z) {
            continue;
        }
        let n_plus_k = s.block_count() + rng.gen_range(1..=2);
        let guaranteed = z.prefix_len() <= dom_bound && !enumerate_segments(&s, &z, n_plus_k, dom_bound).is_empty();
        let pi = planted_coloring(&s, &z, n_plus_k, dom_bound);
        let found = dual_ramsey_witness(&pi, &s, &x, n_plus_k, 0, dom_bound).map_err(|e| e.to_string())?;
        if guaranteed {
            planted += 1;
            ensure(found.is_some(), || format!("no witness for s = {s}, X = {x}, planted Z = {z}"))?;
        }
        if let Some(w) = found {
            returned += 1;
            ensure(verify_witness(&pi, &s, &x, n_plus_k, dom_bound, &w), || format!("witness {:?} fails", w.y))?;
        }
        // an unplanted colouring of the same segment set
        let colors = rng.gen_range(1..=3);
        let seed = rng.gen::<u64>();
        let noise = Coloring::from_fn(s.clone(), n_plus_k, dom_bound, colors, |u| {
            (u.rgs().iter().fold(seed, |h, &b| h.wrapping_mul(31).wrapping_add(b as u64)) % colors as u64) as usize
        })
        .map_err(|e| e.to_string())?;
        if let Some(w) = dual_ramsey_witness(&noise, &s, &x, n_plus_k, 0, dom_bound).map_err(|e| e.to_string())? {
            returned += 1;
            ensure(verify_witness(&noise, &s, &x, n_plus_k, dom_bound, &w), || format!("witness {:?} fails", w.y))?;
        }
    }
    Ok(format!("{returned} witnesses re-verified; {planted}/{planted} planted instances recovered"))
}

fn hales_jewett() -> Result<String, String> {
    for d in 1..=4 {
        ensure(hj_number(1, d, 3) == Some(1), || format!("HJ(1, {d}) ≠ 1"))?;
    }
    let numbers: Vec<Option<usize>> = (1..=3).map(|c| hj_number(2, c, 3)).collect();
    ensure(numbers.windows(2).all(|w| w[0] <= w[1]), || format!("HJ(2, c) not monotone: {numbers:?}"))?;
    for c in 1..=3 {
        for h in 1..=3 {
            let fast = dualramsey::ramsey::hj_holds(2, c, h);
            ensure(fast == oracle::hj_holds(2, c, h), || format!("hj_holds(2, {c}, {h}) disagrees with brute force"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances = 0;
    for a in 1..=2 {
        let s = FinPart::singletons(a);
        for s_bar in [s.clone(), s.star()] {
            for h in 1..=3 {
                let v = FinPart::singletons(a + 1 + h);
                for line in inner_segments(&v, &s, 1) {
                    // D: the points of the planted line and some random extra words
                    let points: BTreeSet<FinPart> = inner_segments(&line, &s, 0).into_iter().collect();
                    let extra: BTreeSet<FinPart> =
                        inner_segments(&v, &s, 0).into_iter().filter(|_| rng.gen_bool(0.3)).collect();
                    let d = |u: &FinPart| points.contains(u) || extra.contains(u);
                    let found = hj_extract(&s_bar, &s, &v, &d).map_err(|e| e.to_string())?;
                    let found = found.ok_or_else(|| format!("nothing extracted for the line {line}"))?;
                    ensure(inner_segments(&found, &s, 0).iter().all(d), || format!("{found} leaves D"))?;
                    instances += 1;
                }
            }
        }
    }
    Ok(format!("HJ(1, d) = 1 for d ≤ 4, HJ(2, c) = {numbers:?}, {instances}/{instances} planted extractions"))
}

/// A valid tree in `F`: `X_stem ∈ F`, and each further internal node takes
/// a random `X_t ∈ F` coarser than its parent's with `t* ⊑ X_t`.
fn rand_tree(rng: &mut ChaCha8Rng, base: &FilterBase, dom_bound: usize) -> Option<LaverTree> {
    let stem = rand_fin_upto(rng, 1);
    let starts: Vec<&XPart> = base.elements().iter().filter(|x| is_coarser(&stem.star(), *x)).collect();
    let x0 = (*starts.get(rng.gen_range(0..starts.len().max(1)))?).clone();
    let depth = rng.gen_range(1..=3);
    let mut x_of = BTreeMap::new();
    let mut frontier = vec![(stem.clone(), x0)];
    for level in 0..depth {
        let mut next = Vec::new();
        for (t, parent) in frontier {
            let xt = if level == 0 {
                parent
            } else {
                let options: Vec<&XPart> = base
                    .elements()
                    .iter()
                    .filter(|y| is_coarser(*y, &parent) && is_coarser(&t.star(), *y))
                    .collect();
                options[rng.gen_range(0..options.len())].clone()
            };
            for u in enumerate_segments(&t.star(), &xt, t.block_count() + 1, dom_bound) {
                next.push((u, xt.clone()));
            }
            x_of.insert(t, xt);
        }
        frontier = next;
    }
    let p = LaverTree::new(stem, depth, dom_bound, x_of);
    validate_laver(&p, base).is_ok().then_some(p)
}

fn sub_branch() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let dom_bound = 5;
    let mut triples = 0;
    let mut attempts = 0;
    while triples < 500 {
        attempts += 1;
        ensure(attempts < 100_000, || format!("only {triples} triples generated"))?;
        let base = rand_base(&mut rng, 3);
        let Some(p) = rand_tree(&mut rng, &base, dom_bound) else { continue };
        let y = base.elements()[rng.gen_range(0..base.elements().len())].clone();
        let branch = match diagonalize_check(&base, &p) {
            Some(x) if rng.gen_bool(0.5) => x,
            _ => match diagonalize_construct(&p, &y, dom_bound) {
                Ok(z) => z,
                Err(_) => continue,
            },
        };
        ensure(is_branch(&branch, &p), || format!("{branch} is not a branch of {p:?}"))?;
        let coarser = branch.join_fin(&rand_fin_upto(&mut rng, dom_bound));
        ensure(is_branch(&coarser, &p), || format!("{coarser} ⊑ {branch} is not a branch"))?;
        triples += 1;
    }
    Ok(format!("0 failures over {triples} (tree, branch, coarsening) triples"))
}

fn dense_embedding() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let dom_bound = 5;
    let mut pairs = 0;
    while pairs < 500 {
        let base = rand_base(&mut rng, 3);
        let stem = rand_fin_upto(&mut rng, 1);
        let xs: Vec<&XPart> = base.elements().iter().filter(|x| is_coarser(&stem.star(), *x)).collect();
        if xs.is_empty() {
            continue;
        }
        let x = xs[rng.gen_range(0..xs.len())].clone();
        let depth = rng.gen_range(1..=3);
        let p = LaverTree::uniform(stem, &x, depth, dom_bound);
        let levels = p.levels();
        let k = rng.gen_range(0..levels.len());
        if levels[k].is_empty() {
            continue;
        }
        let s2 = levels[k][rng.gen_range(0..levels[k].len())].clone();
        let ys: Vec<&XPart> = base.elements().iter().filter(|y| is_segment(&s2, *y) && is_coarser(*y, &x)).collect();
        if ys.is_empty() {
            continue;
        }
        let y = ys[rng.gen_range(0..ys.len())].clone();
        let q = LaverTree::uniform(s2, &y, depth - k, dom_bound);
        ensure(is_subtree(&q, &p), || format!("{q:?} is not below {p:?}"))?;
        let (jq, jp) = match (dense_embed(&q), dense_embed(&p)) {
            (Ok(jq), Ok(jp)) => (jq, jp),
            // a tree without internal nodes has no cu
            (Err(ForcingError::NoCu), _) | (_, Err(ForcingError::NoCu)) => continue,
            (a, b) => return Err(format!("dense_embed failed: {a:?}, {b:?}")),
        };
        ensure(leq(&jq, &jp), || format!("j(q) = {jq} is not below j(p) = {jp}"))?;
        pairs += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut uniformized = 0;
    let mut attempts = 0;
    while uniformized < 200 {
        attempts += 1;
        ensure(attempts < 100_000, || format!("only {uniformized} branches found"))?;
        let base = rand_base(&mut rng, 3);
        let Some(p) = rand_tree(&mut rng, &base, dom_bound) else { continue };
        let Some(x) = diagonalize_check(&base, &p) else { continue };
        let q = uniformize(&p, &x).map_err(|e| e.to_string())?;
        ensure(is_subtree(&q, &p), || format!("uniformize escapes {p:?}"))?;
        validate_laver(&q, &base).map_err(|v| format!("uniformized tree invalid: {v}"))?;
        uniformized += 1;
    }
    Ok(format!("order preserved on {pairs} uniform pairs; {uniformized} uniformized trees valid and below p"))
}

fn min_lift() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let dom_bound = 6;
    let (mut checked, mut constant) = (0, 0);
    for x in all_xparts(5) {
        let mins = x.min_set(dom_bound + 2);
        for n in 1..=2 {
            let mut taus = vec![
                SetColoring::from_fn(n, dom_bound + 1, 1, |_| 0),
                SetColoring::from_fn(n, dom_bound + 1, 2, |a| usize::from(!a.iter().all(|v| mins.contains(v)))),
            ];
            for _ in 0..10 {
                let colors = rng.gen_range(2..=3);
                let seed = rng.gen::<u64>();
                taus.push(SetColoring::from_fn(n, dom_bound + 1, colors, |a| {
                    (a.iter().fold(seed, |h, &v| h.rotate_left(7) ^ v as u64) % colors as u64) as usize
                }));
            }
            for tau in &taus {
                let pi = min_coloring_lift(tau, dom_bound).map_err(|e| e.to_string())?;
                let colours: BTreeSet<usize> = enumerate_segments(&FinPart::empty(), &x, n, dom_bound)
                    .iter()
                    .filter_map(|u| pi.get(u))
                    .collect();
                constant += usize::from(colours.len() <= 1);
                if let Some(cx) = check_min_lift(tau, &x, dom_bound).map_err(|e| e.to_string())? {
                    return Err(format!("τ differs on {:?} and {:?} inside Min({})", cx.a, cx.b, cx.x));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("0 counterexamples over {checked} (X, n, τ), {constant} with a constant lift"))
}

fn game_legality() -> Result<String, String> {
    let dom_bound = 6;
    let mut outcomes: BTreeMap<&str, usize> = BTreeMap::new();
    for seed in 0..1000u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + seed);
        let base = rand_base(&mut rng, 3);
        let rounds = rng.gen_range(1..=4);
        let mut one: Box<dyn Strategy> = if rng.gen_bool(0.8) {
            Box::new(RandomPlay::new(rng.gen()))
        } else {
            Box::new(FirstLegal::new(rand_fin_upto(&mut rng, 2)))
        };
        let mut two: Box<dyn Strategy> = match rng.gen_range(0..3) {
            0 => Box::new(RandomPlay::new(rng.gen())),
            1 => Box::new(Copycat),
            _ => Box::new(FirstLegal::new(FinPart::empty())),
        };
        let transcript = play(one.as_mut(), two.as_mut(), &base, rounds, dom_bound).map_err(|e| e.to_string())?;
        oracle::validate_transcript(&base, &transcript.moves)
            .map_err(|(i, rule)| format!("seed {seed}: move {i} breaks {}", rule.id()))?;
        let kind = match transcript.outcome {
            Outcome::Completed { .. } => "completed",
            Outcome::Forfeit { rule: None, .. } => "stalled",
            Outcome::Forfeit { rule: Some(rule), .. } => return Err(format!("seed {seed}: illegal move ({})", rule.id())),
            Outcome::Conceded { .. } => "conceded",
        };
        *outcomes.entry(kind).or_default() += 1;
    }

    let (mut kept, mut conceded) = (0, 0);
    for seed in 0..300u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let base = rand_base(&mut rng, 3);
        let s = rand_fin_upto(&mut rng, 2);
        let density = rng.gen_range(0.0..0.5);
        let d_set: BTreeSet<FinPart> = (0..=dom_bound + 1)
            .flat_map(all_finparts)
            .filter(|_| rng.gen_bool(density))
            .collect();
        let d = |u: &FinPart| d_set.contains(u);
        let z = base.elements()[rng.gen_range(0..base.elements().len())].clone();
        let mut one = Avoidance::new(s.clone(), s.clone(), z, d);
        let mut two = RandomPlay::new(rng.gen());
        let transcript = play(&mut one, &mut two, &base, rng.gen_range(1..=4), dom_bound).map_err(|e| e.to_string())?;
        oracle::validate_transcript(&base, &transcript.moves)
            .map_err(|(i, rule)| format!("avoidance seed {seed}: move {i} breaks {}", rule.id()))?;
        match &transcript.outcome {
            Outcome::Conceded { certificate, .. } => {
                ensure(verify_certificate(certificate, &s, &d, &base, dom_bound), || {
                    format!("avoidance seed {seed}: certificate {certificate:?} does not verify")
                })?;
                conceded += 1;
            }
            _ => {
                for mv in &transcript.moves {
                    if let Move::One { t, .. } = mv {
                        ensure(inner_segments(t, &s, 0).iter().all(|u| !d(u)), || {
                            format!("avoidance seed {seed}: t = {t} meets D")
                        })?;
                    }
                }
                kept += 1;
            }
        }
    }
    ensure(kept > 0 && conceded > 0, || format!("degenerate avoidance runs: {kept} kept, {conceded} conceded"))?;
    Ok(format!(
        "1000 playouts re-validated {outcomes:?}; avoidance kept clear of D in {kept} runs, {conceded} certificates verified"
    ))
}

/// Neighbourhood membership over the 52 partitions with prefix inside
/// `[0, 5)`, as bitmasks computed with the pairwise predicates.
struct Universe {
    parts: Vec<XPart>,
    in_filter: u64,
    members: HashMap<(FinPart, XPart), u64>,
}

impl Universe {
    fn new(base: &FilterBase, bound: usize) -> Self {
        let parts: Vec<XPart> = oracle::partitions(bound).into_iter().map(XPart::from_prefix).collect();
        let in_filter = mask(&parts, |z| oracle::member(base, z));
        Universe { parts, in_filter, members: HashMap::new() }
    }

    fn nbhd(&mut self, s: &FinPart, x: &XPart) -> u64 {
        let parts = &self.parts;
        *self
            .members
            .entry((s.clone(), x.clone()))
            .or_insert_with(|| mask(parts, |z| oracle::is_segment(s, z) && oracle::is_coarser(z, x)))
    }

    fn good(&mut self, s: &FinPart, x: &XPart, open: u64) -> bool {
        let candidates = self.nbhd(s, x) & self.in_filter;
        (0..self.parts.len()).filter(|i| candidates >> i & 1 == 1).any(|i| {
            let y = self.parts[i].clone();
            self.nbhd(s, &y) & !open == 0
        })
    }

    fn ugly(&mut self, s: &FinPart, x: &XPart, open: u64, bound: usize) -> bool {
        oracle::segments(s, x, s.block_count(), bound - 1).iter().all(|t| !self.good(&t.star(), x, open))
    }
}

fn mask(parts: &[XPart], f: impl Fn(&XPart) -> bool) -> u64 {
    parts.iter().enumerate().filter(|(_, z)| f(z)).fold(0, |m, (i, _)| m | 1 << i)
}

fn classify_consistency() -> Result<String, String> {
    let bound = 5;
    let nonempty = |c: &Nbhd| c.is_nonempty();
    let conditions: Vec<Nbhd> = (0..=2)
        .flat_map(all_finparts)
        .flat_map(|s| all_xparts(4).map(move |x| Nbhd::new(s.clone(), x)))
        .filter(nonempty)
        .collect();
    let mut pool: Vec<Nbhd> = (0..=1)
        .flat_map(all_finparts)
        .flat_map(|s| all_xparts(3).map(move |x| Nbhd::new(s.clone(), x)))
        .filter(nonempty)
        .collect();
    pool.push(Nbhd::new(FinPart::single_block(2), XPart::omega()));
    pool.push(Nbhd::new(FinPart::singletons(2), xp(&[&[2, 3]])));
    let mut opens: Vec<Vec<usize>> = vec![vec![]];
    for i in 0..pool.len() {
        opens.push(vec![i]);
        for j in i + 1..pool.len() {
            opens.push(vec![i, j]);
            for k in j + 1..pool.len() {
                opens.push(vec![i, j, k]);
            }
        }
    }
    let bases = [
        FilterBase::principal(xp(&[&[0, 2], &[1, 3]])),
        FilterBase::new(vec![xp(&[&[0, 1]]), xp(&[&[2, 3]])]).expect("nonempty"),
    ];
    let mut counts: BTreeMap<&str, usize> = BTreeMap::new();
    for base in &bases {
        let mut universe = Universe::new(base, bound);
        for picked in &opens {
            let o = OpenSet::new(picked.iter().map(|&i| pool[i].clone()).collect());
            let open = picked.iter().fold(0, |m, &i| m | universe.nbhd(&pool[i].s, &pool[i].x));
            for c in &conditions {
                let class = classify(c, &o, base, bound).map_err(|e| format!("classify({c}): {e}"))?;
                let good = universe.good(&c.s, &c.x, open);
                let ugly = universe.ugly(&c.s, &c.x, open, bound);
                ensure(!(good && ugly), || format!("({c}) is good and ugly for {o:?}"))?;
                let kind = match class {
                    Classification::Good { witness } => {
                        let sound = oracle::member(base, &witness)
                            && oracle::is_segment(&c.s, &witness)
                            && oracle::is_coarser(&witness, &c.x)
                            && universe.nbhd(&c.s, &witness) & !open == 0;
                        ensure(sound && good && !ugly, || format!("bad good-witness {witness} for ({c})"))?;
                        "good"
                    }
                    Classification::Bad => {
                        ensure(!good && !ugly, || format!("({c}) misclassified as bad"))?;
                        "bad"
                    }
                    Classification::UglyAndBad => {
                        ensure(!good && ugly, || format!("({c}) misclassified as ugly"))?;
                        "ugly"
                    }
                };
                *counts.entry(kind).or_default() += 1;
            }
        }
    }
    Ok(format!("0 violations; {} open sets × {} neighbourhoods × 2 filters: {counts:?}", opens.len(), conditions.len()))
}
