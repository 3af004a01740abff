//! The verification runner behind `affcell verify`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::asymptotic::{gamma_tilde_product, lattice_to_weyl, length_parity_check, DominantTuple, Generator, LatticeTable};
use crate::cells::{check_star_identity, right_star_orbit, CellAtlas, StarReport};
use crate::cellular::{build_chain, check_bimodule_commute, check_involution_compat, sample_quadruples};
use crate::error::{Error, Result};
use crate::hecke::{HeckeElt, KlCache};
use crate::schur::{cell_generation_check, hecke_idempotent_check, schur_structure, SchurKey};
use crate::weyl::{dominance_leq, enumerate_affine, longest_element, partitions, AffinePerm, GenSet, Partition, Truncation};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    Kl,
    Star,
    Lattice,
    Schur,
    Cellular,
}

impl Suite {
    const EACH: [Suite; 5] = [Suite::Kl, Suite::Star, Suite::Lattice, Suite::Schur, Suite::Cellular];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Kl => "kl",
            Suite::Star => "star",
            Suite::Lattice => "lattice",
            Suite::Schur => "schur",
            Suite::Cellular => "cellular",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::All]
            .into_iter()
            .chain(Suite::EACH)
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub checked: usize,
    pub unverified: usize,
    pub violations: Vec<String>,
    pub notes: BTreeMap<String, Value>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            name: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violations.push(what());
        }
    }

    fn note(&mut self, key: &str, value: Value) {
        self.notes.insert(key.to_string(), value);
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub version: u32,
    pub n: usize,
    pub bound: usize,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn has_violations(&self) -> bool {
        self.suites.iter().any(|s| !s.violations.is_empty())
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n = {}, bound = {}", self.n, self.bound);
        let _ = writeln!(out, "{:<10} {:>9} {:>11} {:>11}", "suite", "checked", "unverified", "violations");
        for s in &self.suites {
            let _ = writeln!(
                out,
                "{:<10} {:>9} {:>11} {:>11}",
                s.name,
                s.checked,
                s.unverified,
                s.violations.len()
            );
        }
        out
    }
}

/// Shared state for one run: a KL cache and, when needed, the cell atlas.
pub struct Context {
    pub n: usize,
    pub bound: usize,
    pub cache: KlCache,
    atlas: Option<CellAtlas>,
}

impl Context {
    pub fn new(n: usize, bound: usize) -> Self {
        Context {
            n,
            bound,
            cache: KlCache::new(n, 2 * bound + 2),
            atlas: None,
        }
    }

    /// The cache together with the atlas, which is built on first use over
    /// lengths up to `bound + 5`.
    pub fn with_atlas(&mut self) -> Result<(&KlCache, &CellAtlas)> {
        if self.atlas.is_none() {
            let trunc = Truncation::new(self.bound + 5, 1);
            self.atlas = Some(CellAtlas::build(&self.cache, trunc, 6)?);
        }
        Ok((&self.cache, self.atlas.as_ref().unwrap()))
    }
}

pub fn run(n: usize, bound: usize, suite: Suite) -> Result<VerifyReport> {
    if n < 2 {
        return Err(Error::Parse(format!("verification needs n >= 2, got {n}")));
    }
    let mut ctx = Context::new(n, bound);
    let suites = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    let mut out = Vec::new();
    for s in suites {
        out.push(match s {
            Suite::Kl => kl_suite(&ctx)?,
            Suite::Star => star_suite(&mut ctx)?,
            Suite::Lattice => lattice_suite(n)?,
            Suite::Schur => schur_suite(&mut ctx)?,
            Suite::Cellular => cellular_suite(&mut ctx)?,
            Suite::All => unreachable!(),
        });
    }
    Ok(VerifyReport {
        version: REPORT_VERSION,
        n,
        bound,
        suites: out,
    })
}

/// Bar invariance, degree bounds and positivity of the KL basis; integrality
/// and the ι symmetry of the structure constants.
pub fn kl_suite(ctx: &Context) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("kl");
    let cache = &ctx.cache;
    for w in enumerate_affine(ctx.n, ctx.bound) {
        let l = w.length() as i64;
        let c = cache.ntilde(&w)?.shift_half(-l);
        r.check(c.bar()? == c, || format!("C_{w} is not bar invariant"));
        for (y, p) in cache.ntilde(&w)?.terms() {
            let ok = if y == &w {
                p.is_one()
            } else {
                p.is_nonnegative()
                    && p.is_in_zq()
                    && p.terms().all(|(e, _)| e % 2 == 0)
                    && p.max_half_exp().is_some_and(|d| d < l - y.length() as i64)
            };
            r.check(ok, || format!("P_{{{y},{w}}} = {p}"));
        }
    }
    let small = enumerate_affine(ctx.n, ctx.bound.min(4));
    for u in &small {
        for v in &small {
            let f = cache.f_struct(u, v)?;
            let g = cache.f_struct(&v.inverse(), &u.inverse())?;
            for (w, c) in &f {
                r.check(c.is_in_zq(), || format!("f~_{{{u},{v}}}^{w} = {c} is not in Z[q]"));
            }
            let flipped: BTreeMap<_, _> = g.into_iter().map(|(w, c)| (w.inverse(), c)).collect();
            r.check(flipped == f, || format!("iota symmetry fails for {u}, {v}"));
        }
    }
    // How the bar map interacts with products, recorded rather than assumed.
    let mut mult = true;
    let mut anti = true;
    let gens = enumerate_affine(ctx.n, 2);
    for a in &gens {
        for b in &gens {
            let (ta, tb) = (HeckeElt::t(a), HeckeElt::t(b));
            let lhs = ta.t_mul(&tb)?.bar()?;
            mult &= lhs == ta.bar()?.t_mul(&tb.bar()?)?;
            anti &= lhs == tb.bar()?.t_mul(&ta.bar()?)?;
        }
    }
    r.note("bar_multiplicative", json!(mult));
    r.note("bar_anti_multiplicative", json!(anti));
    Ok(r)
}

fn star_seeds(n: usize) -> Vec<AffinePerm> {
    let s1 = AffinePerm::simple(n, 1).unwrap();
    let s12 = &s1 * &AffinePerm::simple(n, 2).unwrap();
    vec![s1, s12, longest_element(n, GenSet::finite(n))]
}

/// The star identities over right-star orbits of a few seeds.
pub fn star_suite(ctx: &mut Context) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("star");
    if ctx.n < 3 {
        r.note("skipped", json!("star operations need n >= 3"));
        return Ok(r);
    }
    let (n, bound) = (ctx.n, ctx.bound);
    let mut vs = Vec::new();
    for seed in star_seeds(n) {
        for (v, _) in right_star_orbit(&seed, bound)? {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
    }
    let us = enumerate_affine(n, bound.min(4));
    let (cache, atlas) = ctx.with_atlas()?;
    let mut total = StarReport::default();
    for v in &vs {
        for u in &us {
            for i in 0..n {
                total.merge(check_star_identity(cache, atlas, u, v, i)?);
            }
        }
    }
    r.checked = total.checked;
    r.unverified = total.uncertified;
    r.violations = total
        .violations
        .iter()
        .map(|v| format!("u={} v={} w={} i={}: {} vs {}", v.u, v.v, v.w, v.index, v.lhs, v.rhs))
        .collect();
    r.note("orbit_elements", json!(vs.len()));
    Ok(r)
}

/// The lattice bijection on the box `0 <= x <= 3` and γ̃ integrality.
pub fn lattice_suite(n: usize) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("lattice");
    for lambda in partitions(n) {
        let data = crate::weyl::PartitionData::new(&lambda);
        let zero = DominantTuple::zero(&data);
        r.check(lattice_to_weyl(&data, &zero)? == data.w_lambda, || format!("w(0) != w_lambda for {lambda}"));
        let table = LatticeTable::build(&data, 3)?;
        r.checked += 1;
        for (x, w) in table.iter() {
            if x.min_entry().unwrap_or(0) < 0 {
                continue;
            }
            let decreasing = (1..=lambda.parts().len()).all(|row| {
                (1..lambda.part(row)).all(|l| w.apply(data.e(row, l)) > w.apply(data.e(row, l + 1)))
            });
            r.check(decreasing, || format!("rows of w({x}) = {w} are not decreasing"));
            r.check(length_parity_check(&data, x)?, || format!("parity fails at {x} for {lambda}"));
            let shifted = lattice_to_weyl(&data, &x.omega_n_shift(&data, 1))?;
            r.check(
                shifted == w.left_mul_omega(data.n() as i64) && shifted.length() == w.length(),
                || format!("omega^n shift fails at {x} for {lambda}"),
            );
            r.check(
                w.right_descents() == data.w_lambda.right_descents() && w.left_descents() == data.w_lambda.left_descents(),
                || format!("w({x}) = {w} has the wrong descents for {lambda}"),
            );
            for g in Generator::all(&data) {
                for (t, c) in gamma_tilde_product(&data, x, g)? {
                    r.check(c.terms().all(|(e, _)| e % 2 == 0), || format!("gamma~ coefficient {c} at {t}"));
                }
            }
        }
    }
    if n == 2 {
        let data = crate::weyl::PartitionData::from_parts(&[2])?;
        let x = DominantTuple::new(&data, vec![vec![1, 0]])?;
        let g = gamma_tilde_product(&data, &x, Generator::Pos(1, 1))?;
        let y = DominantTuple::new(&data, vec![vec![1, 1]])?;
        let e = g.get(&y).and_then(|c| c.as_monomial().map(|(e, _)| e / 2));
        r.check(e.map(i64::abs) == Some(1), || format!("coefficient of w(y_12) in w(y_11)^2 has exponent {e:?}"));
        r.note("y11_squared_exponent_of_y12", json!(e));
    }
    Ok(r)
}

/// Idempotents, divisibility of Schur structure constants and generation of
/// each cell by its idempotent.
pub fn schur_suite(ctx: &mut Context) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("schur");
    let n = ctx.n;
    let subsets = GenSet::all_finite_subsets(n);
    for &p in &subsets {
        let rep = hecke_idempotent_check(&ctx.cache, p)?;
        r.check(rep.ok(), || format!("idempotent check fails for {p:?}: {rep:?}"));
    }
    let small = enumerate_affine(n, ctx.bound.min(3));
    let fin = GenSet::finite(n);
    for &mid in &subsets {
        for u in small.iter().filter(|u| mid.is_subset(u.right_descents())) {
            for v in small.iter().filter(|v| mid.is_subset(v.left_descents())) {
                let a = SchurKey::new(u.left_descents().intersect(fin), mid, u.clone())?;
                let b = SchurKey::new(mid, v.right_descents().intersect(fin), v.clone())?;
                let res = schur_structure(&ctx.cache, &a, &b);
                r.check(res.is_ok(), || format!("{a} * {b}: {}", res.unwrap_err()));
            }
        }
    }
    let chain = build_chain(n)?;
    r.note(
        "cell_counts",
        json!(chain
            .order
            .iter()
            .map(|d| json!({"lambda": d.lambda, "n": d.v_rank.to_string(), "m": d.u_rank.to_string()}))
            .collect::<Vec<_>>()),
    );
    let bound = ctx.bound;
    let (cache, atlas) = ctx.with_atlas()?;
    for lambda in partitions(n) {
        let rep = cell_generation_check(cache, atlas, &lambda, bound, &subsets)?;
        r.checked += rep.checked;
        r.unverified += rep.unverified.len();
        r.violations.extend(rep.failures.iter().map(|f| format!("{lambda}: {f}")));
    }
    Ok(r)
}

/// The chain order, the involution square and the commuting actions.
pub fn cellular_suite(ctx: &mut Context) -> Result<SuiteReport> {
    let mut r = SuiteReport::new("cellular");
    let n = ctx.n;
    let chain = build_chain(n)?;
    for (a, x) in chain.order.iter().enumerate() {
        for y in &chain.order[a + 1..] {
            let lx = Partition::new(x.lambda.clone())?;
            let ly = Partition::new(y.lambda.clone())?;
            r.check(!dominance_leq(&lx, &ly), || format!("{ly} precedes {lx} in the chain"));
        }
    }
    let bound = ctx.bound;
    let (cache, atlas) = ctx.with_atlas()?;
    let mut coverage = Vec::new();
    for lambda in partitions(n) {
        let Some(cells) = atlas.cells_for(&lambda) else {
            r.unverified += 1;
            continue;
        };
        r.note(
            &format!("left_cells {lambda}"),
            json!(cells
                .left_cells
                .iter()
                .zip(&cells.maps)
                .map(|(c, m)| json!({
                    "least": c.iter().next().map(|w| w.to_string()),
                    "size": c.len(),
                    "map": m.as_ref().map(|s| s.to_string()),
                }))
                .collect::<Vec<_>>()),
        );
        let table = LatticeTable::build(&cells.data, 4)?;
        let members: Vec<_> = cells.members.iter().filter(|w| w.length() <= bound).cloned().collect();
        let inv = check_involution_compat(cells, &table, &members)?;
        r.checked += inv.checked;
        r.unverified += inv.skipped;
        r.violations.extend(inv.violations.iter().map(|v| format!("{lambda}: {v}")));

        let one = GenSet::from_indices([1]);
        let mut checked = 0;
        for (q, p) in [(GenSet::EMPTY, GenSet::EMPTY), (one, GenSet::EMPTY), (GenSet::EMPTY, one)] {
            let samples = sample_quadruples(atlas, cells, q, p, 2, bound.min(4));
            let rep = check_bimodule_commute(cache, atlas, cells, &table, &samples)?;
            checked += rep.checked;
            r.checked += rep.checked;
            r.unverified += rep.unverified;
            r.violations.extend(rep.violations.iter().map(|v| {
                format!(
                    "{lambda}: u={} v={} y={} {:?}: {} vs {}",
                    v.sample.u, v.sample.v, v.sample.y, v.sample.generator, v.lhs, v.rhs
                )
            }));
        }
        coverage.push(json!({"lambda": lambda.to_string(), "involution": inv.checked, "bimodule": checked}));
    }
    r.note("coverage", json!(coverage));
    Ok(r)
}
