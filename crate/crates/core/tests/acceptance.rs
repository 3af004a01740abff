//! Acceptance criteria A1–A11. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::Instant;

use affcell::asymptotic::{a_value, gamma_from_h, gamma_tilde_product, lattice_to_weyl, pieri_product, DominantTuple, Generator, LatticeTable};
use affcell::cells::{check_star_identity, right_star_orbit, CellAtlas, StarReport};
use affcell::cellular::{build_chain, check_bimodule_commute, check_involution_compat, sample_quadruples};
use affcell::schur::{hecke_idempotent_check, schur_structure, SchurKey};
use affcell::weyl::{enumerate_affine, longest_element, partitions};
use affcell::{AffinePerm, GenSet, KlCache, Partition, PartitionData, Truncation};
use common::{bfs_lengths, KlOracle};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);
/// Partition, `n_λ`, `m_λ`.
type CellCount = (&'static [usize], u32, u32);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn a1() -> Outcome {
    let n = 3;
    let lengths = bfs_lengths(n, 6);
    let listed: HashSet<AffinePerm> = enumerate_affine(n, 6).into_iter().collect();
    ensure(listed.len() == lengths.len(), || {
        format!("enumeration has {} elements, BFS {}", listed.len(), lengths.len())
    })?;
    let mut checked = 0;
    for (w, &d) in &lengths {
        for k in -2..=2 {
            for x in [w.right_mul_omega(k), w.left_mul_omega(k)] {
                checked += 1;
                ensure(x.length() == d, || format!("l({x}) = {} but BFS gives {d}", x.length()))?;
            }
        }
    }
    Ok(format!("{checked} elements"))
}

fn a2() -> Outcome {
    let mut checked = 0;
    let mut compared = 0;
    for (n, bound) in [(2usize, 8usize), (3, 6)] {
        let cache = KlCache::new(n, bound);
        let mut oracle = KlOracle::new(n, bound);
        for w in enumerate_affine(n, bound) {
            let l = w.length() as i64;
            let nw = cache.ntilde(&w).map_err(|e| e.to_string())?;
            let c = nw.shift_half(-l);
            ensure(c.bar().map_err(|e| e.to_string())? == c, || format!("C_{w} is not bar invariant"))?;
            for (y, p) in nw.terms() {
                checked += 1;
                if y == &w {
                    ensure(p.is_one(), || format!("P_{{{w},{w}}} = {p}"))?;
                    continue;
                }
                let d = l - y.length() as i64;
                ensure(p.is_nonnegative(), || format!("P_{{{y},{w}}} = {p} has a negative coefficient"))?;
                ensure(p.terms().all(|(e, _)| e >= 0 && e % 2 == 0 && e < d), || {
                    format!("P_{{{y},{w}}} = {p} breaks the degree bound")
                })?;
            }
            let column = oracle.kl_column(&w);
            for (y, p) in &column {
                if l - y.length() as i64 > 5 {
                    continue;
                }
                compared += 1;
                let got = cache.kl_poly(y, &w).map_err(|e| e.to_string())?;
                ensure(&got == p, || format!("P_{{{y},{w}}}: engine {got}, oracle {p}"))?;
            }
            for (y, got) in nw.terms() {
                if l - y.length() as i64 <= 5 {
                    ensure(column.contains_key(y), || format!("P_{{{y},{w}}} = {got} outside the Bruhat interval"))?;
                }
            }
            // ω-shifted copies share the polynomials.
            let shifted = w.right_mul_omega(1);
            for (y, p) in &column {
                let got = cache.kl_poly(&y.right_mul_omega(1), &shifted).map_err(|e| e.to_string())?;
                ensure(&got == p, || format!("P differs after shifting {y}, {w} by ω"))?;
            }
        }
    }
    Ok(format!("{checked} coefficients, {compared} compared with the R-polynomial oracle"))
}

fn a3_a4_range() -> (KlCache, Vec<AffinePerm>, Vec<AffinePerm>) {
    let n = 3;
    let cache = KlCache::new(n, 10);
    let base = enumerate_affine(n, 5);
    let us = base
        .iter()
        .flat_map(|u| (-1..=1).map(move |k| u.right_mul_omega(k)))
        .collect();
    (cache, us, base)
}

fn a3() -> Outcome {
    let (cache, us, vs) = a3_a4_range();
    let mut checked = 0;
    for u in &us {
        for v in &vs {
            for (w, c) in cache.f_struct(u, v).map_err(|e| e.to_string())? {
                checked += 1;
                ensure(c.is_in_zq() && c.terms().all(|(e, _)| e % 2 == 0), || {
                    format!("f~_{{{u},{v}}}^{w} = {c} is not in Z[q]")
                })?;
            }
        }
    }
    Ok(format!("{} products, {checked} coefficients", us.len() * vs.len()))
}

fn a4() -> Outcome {
    let (cache, us, vs) = a3_a4_range();
    let mut checked = 0;
    for u in &us {
        for v in &vs {
            let f = cache.f_struct(u, v).map_err(|e| e.to_string())?;
            let g = cache.f_struct(&v.inverse(), &u.inverse()).map_err(|e| e.to_string())?;
            let flipped: BTreeMap<_, _> = g.into_iter().map(|(w, c)| (w.inverse(), c)).collect();
            let f: BTreeMap<_, _> = f.into_iter().collect();
            checked += 1;
            ensure(flipped == f, || format!("iota identity fails for {u}, {v}"))?;
        }
    }
    Ok(format!("{checked} products"))
}

fn a5() -> Outcome {
    let n = 3;
    let s1 = AffinePerm::simple(n, 1).unwrap();
    let s12 = &s1 * &AffinePerm::simple(n, 2).unwrap();
    let seeds = [s1, s12, longest_element(n, GenSet::finite(n))];
    let mut vs: Vec<AffinePerm> = Vec::new();
    for seed in &seeds {
        for (v, _) in right_star_orbit(seed, 6).map_err(|e| e.to_string())? {
            if !vs.contains(&v) {
                vs.push(v);
            }
        }
    }
    let cache = KlCache::new(n, 14);
    let atlas = CellAtlas::build(&cache, Truncation::new(11, 1), 6).map_err(|e| e.to_string())?;
    let us = enumerate_affine(n, 4);
    let mut total = StarReport::default();
    for v in &vs {
        for u in &us {
            for i in 0..n {
                total.merge(check_star_identity(&cache, &atlas, u, v, i).map_err(|e| e.to_string())?);
            }
        }
    }
    ensure(total.checked > 0, || "nothing checked".into())?;
    ensure(total.violations.is_empty(), || {
        let v = &total.violations[0];
        format!(
            "{} violations, first u={} v={} w={} i={}: {} vs {}",
            total.violations.len(),
            v.u,
            v.v,
            v.w,
            v.index,
            v.lhs,
            v.rhs
        )
    })?;
    Ok(format!(
        "{} orbit elements, {} identities checked, {} uncertified candidates, 0 violations",
        vs.len(),
        total.checked,
        total.uncertified
    ))
}

fn box_points(data: &PartitionData, max: i64) -> Vec<DominantTuple> {
    let table = LatticeTable::build(data, max).unwrap();
    table
        .iter()
        .map(|(x, _)| x.clone())
        .filter(|x| x.min_entry().unwrap_or(0) >= 0)
        .collect()
}

fn a6() -> Outcome {
    let mut checked = 0;
    for n in [2, 3] {
        for lambda in partitions(n) {
            let data = PartitionData::new(&lambda);
            let w0 = lattice_to_weyl(&data, &DominantTuple::zero(&data)).map_err(|e| e.to_string())?;
            ensure(w0 == data.w_lambda, || format!("w(0) = {w0} != w_λ for {lambda}"))?;
            let mut seen = HashSet::new();
            for x in box_points(&data, 3) {
                checked += 1;
                let w = lattice_to_weyl(&data, &x).map_err(|e| e.to_string())?;
                ensure(seen.insert(w.clone()), || format!("w({x}) = {w} repeats for {lambda}"))?;
                for row in 1..=lambda.parts().len() {
                    for l in 1..lambda.part(row) {
                        ensure(w.apply(data.e(row, l)) > w.apply(data.e(row, l + 1)), || {
                            format!("row {row} of w({x}) = {w} is not decreasing")
                        })?;
                    }
                }
                let weighted: i64 = x
                    .0
                    .iter()
                    .zip(&data.blocks)
                    .map(|(b, shape)| b.iter().sum::<i64>() * (n as i64 + shape.r as i64))
                    .sum();
                let diff = w.length() as i64 - data.w_lambda.length() as i64 - weighted;
                ensure(diff.rem_euclid(2) == 0, || format!("length parity fails at {x} for {lambda}"))?;
                let shifted_x = DominantTuple(
                    x.0.iter()
                        .zip(&data.blocks)
                        .map(|(b, shape)| b.iter().map(|e| e + shape.r as i64).collect())
                        .collect(),
                );
                let shifted = lattice_to_weyl(&data, &shifted_x).map_err(|e| e.to_string())?;
                ensure(shifted == w.left_mul_omega(n as i64), || format!("ω^n shift fails at {x} for {lambda}"))?;
            }
        }
    }
    Ok(format!("{checked} lattice points"))
}

fn a7() -> Outcome {
    let mut checked = 0;
    for n in [2, 3] {
        for lambda in partitions(n) {
            let data = PartitionData::new(&lambda);
            for x in box_points(&data, 3) {
                for g in Generator::all(&data) {
                    for (t, c) in gamma_tilde_product(&data, &x, g).map_err(|e| e.to_string())? {
                        checked += 1;
                        ensure(c.terms().all(|(e, _)| e % 2 == 0), || {
                            format!("γ~ coefficient {c} at {t} for {lambda} is not in Z[q, q^-1]")
                        })?;
                    }
                }
            }
        }
    }
    let data = PartitionData::from_parts(&[2]).unwrap();
    let x = DominantTuple::new(&data, vec![vec![1, 0]]).unwrap();
    let y = DominantTuple::new(&data, vec![vec![1, 1]]).unwrap();
    let prod = gamma_tilde_product(&data, &x, Generator::Pos(1, 1)).map_err(|e| e.to_string())?;
    let exp = prod.get(&y).and_then(|c| c.as_monomial().map(|(e, _)| e / 2));
    ensure(exp.map(i64::abs) == Some(1), || format!("exponent at (1,1) is {exp:?}"))?;
    Ok(format!("{checked} coefficients; λ=(2) term (1,1) has q^{}", exp.unwrap()))
}

fn a8() -> Outcome {
    let mut idem = 0;
    for n in [2, 3] {
        let cache = KlCache::new(n, n * (n - 1) + 2);
        for p in GenSet::all_finite_subsets(n) {
            let rep = hecke_idempotent_check(&cache, p).map_err(|e| e.to_string())?;
            idem += 1;
            ensure(rep.square, || format!("Ñ_(w_P)^2 != p_P Ñ_(w_P) for {p:?}, n={n}"))?;
            ensure(rep.idempotent, || format!("Ñ^(w_P)_(PP) is not idempotent for {p:?}, n={n}"))?;
        }
    }
    let mut products = 0;
    for n in [2, 3] {
        let cache = KlCache::new(n, 10);
        let fin = GenSet::finite(n);
        let small = enumerate_affine(n, 4);
        for mid in GenSet::all_finite_subsets(n) {
            for u in small.iter().filter(|u| mid.is_subset(u.right_descents())) {
                for v in small.iter().filter(|v| mid.is_subset(v.left_descents())) {
                    let a = SchurKey::new(u.left_descents().intersect(fin), mid, u.clone()).map_err(|e| e.to_string())?;
                    let b = SchurKey::new(mid, v.right_descents().intersect(fin), v.clone()).map_err(|e| e.to_string())?;
                    products += 1;
                    if let Err(e) = schur_structure(&cache, &a, &b) {
                        return Err(format!("{a} * {b}: {e}"));
                    }
                }
            }
        }
    }
    let expected: [(usize, &[CellCount]); 2] = [
        (2, &[(&[2], 2, 4), (&[1, 1], 1, 1)]),
        (3, &[(&[3], 6, 27), (&[2, 1], 3, 9), (&[1, 1, 1], 1, 1)]),
    ];
    for (n, rows) in expected {
        for &(parts, nl, ml) in rows {
            let data = PartitionData::from_parts(parts).unwrap();
            ensure(data.n_cells() == nl.into() && data.m_cells() == ml.into(), || {
                format!("counts for {parts:?}: ({}, {})", data.n_cells(), data.m_cells())
            })?;
        }
        let chain = build_chain(n).map_err(|e| e.to_string())?;
        ensure(chain.order.len() == rows.len(), || format!("chain for n={n} has {} layers", chain.order.len()))?;
    }
    // The certified left cells of the atlas agree with the counts.
    for (n, bound) in [(2, 8), (3, 8)] {
        let cache = KlCache::new(n, 2 * bound + 2);
        let atlas = CellAtlas::build(&cache, Truncation::new(bound, 1), 6).map_err(|e| e.to_string())?;
        for cells in atlas.lambda_cells() {
            let want = cells.data.n_cells();
            ensure(num_bigint::BigUint::from(cells.left_cells.len()) == want, || {
                format!("atlas has {} left cells for {}, expected {want}", cells.left_cells.len(), cells.lambda())
            })?;
        }
    }
    Ok(format!("{idem} idempotents, {products} divisible products, cell counts match"))
}

fn a9() -> Outcome {
    let data = PartitionData::from_parts(&[2]).unwrap();
    let a = a_value(&data);
    let table = LatticeTable::build(&data, 10).map_err(|e| e.to_string())?;
    let cache = KlCache::new(2, 14);
    let mut checked = 0;
    let gens: Vec<(Generator, AffinePerm)> = Generator::all(&data)
        .into_iter()
        .map(|g| (g, lattice_to_weyl(&data, &g.tuple(&data).unwrap()).unwrap()))
        .collect();
    let mut max_half = 0;
    for (x, u) in table.iter().filter(|(x, u)| u.length() <= 6 && x.0.iter().flatten().all(|e| e.abs() <= 6)) {
        for (g, v) in &gens {
            let predicted: HashSet<AffinePerm> = pieri_product(&data, x, *g)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|t| lattice_to_weyl(&data, t).unwrap())
                .collect();
            let h = cache.h_struct(u, v).map_err(|e| e.to_string())?;
            for (w, c) in &h {
                max_half = max_half.max(c.max_half_exp().unwrap_or(0));
                if table.tuple_of(w).is_none() {
                    ensure(c.coeff(a as i64) == 0.into(), || format!("γ_{{{u},{v}}}^{w} is nonzero off the diagonal"))?;
                    continue;
                }
                checked += 1;
                let gamma = gamma_from_h(&cache, u, v, w, a).map_err(|e| e.to_string())?;
                let want = i32::from(predicted.contains(w));
                ensure(gamma == want.into(), || format!("γ_{{{u},{v}}}^{w} = {gamma}, Pieri gives {want}"))?;
            }
            for w in &predicted {
                ensure(h.contains_key(w), || format!("Pieri term {w} missing from h_{{{u},{v}}}"))?;
            }
        }
    }
    ensure(max_half <= 1, || format!("h has q^(1/2)-degree {max_half} on the diagonal"))?;
    for (n, len) in [(2usize, 5usize), (3, 3)] {
        let cache = KlCache::new(n, 2 * len);
        let bound = (n * (n - 1) / 2) as i64;
        let els = enumerate_affine(n, len);
        for u in &els {
            for v in &els {
                for (w, c) in cache.h_struct(u, v).map_err(|e| e.to_string())? {
                    let d = c.max_half_exp().unwrap_or(0);
                    ensure(d <= bound, || format!("h_{{{u},{v}}}^{w} = {c} exceeds degree {bound}"))?;
                }
            }
        }
    }
    Ok(format!("{checked} γ values match Pieri; h degrees within n(n-1)/2"))
}

fn a10() -> Outcome {
    let mut checked = 0;
    let mut nonzero = 0;
    let mut unverified = 0;
    let mut coverage = Vec::new();
    for n in [2, 3] {
        let bound = 4;
        let cache = KlCache::new(n, 2 * bound + 2);
        let atlas = CellAtlas::build(&cache, Truncation::new(bound + 5, 1), 6).map_err(|e| e.to_string())?;
        for lambda in partitions(n) {
            let Some(cells) = atlas.cells_for(&lambda) else {
                return Err(format!("no certified cell for {lambda}"));
            };
            let table = LatticeTable::build(&cells.data, 4).map_err(|e| e.to_string())?;
            let one = GenSet::from_indices([1]);
            let mut here = 0;
            for (q, p) in [(GenSet::EMPTY, GenSet::EMPTY), (one, GenSet::EMPTY), (GenSet::EMPTY, one)] {
                let samples = sample_quadruples(&atlas, cells, q, p, 2, bound);
                let rep = check_bimodule_commute(&cache, &atlas, cells, &table, &samples).map_err(|e| e.to_string())?;
                if let Some(v) = rep.violations.first() {
                    return Err(format!(
                        "{lambda}: u={} v={} y={} {:?}: {} vs {}",
                        v.sample.u, v.sample.v, v.sample.y, v.sample.generator, v.lhs, v.rhs
                    ));
                }
                here += rep.checked;
                nonzero += rep.nonzero;
                unverified += rep.unverified;
            }
            checked += here;
            coverage.push(format!("n={n} {lambda}: {here}"));
        }
    }
    ensure(checked >= 20, || format!("only {checked} quadruples evaluated"))?;
    ensure(nonzero > 0, || "every evaluated quadruple was trivially zero".into())?;
    Ok(format!(
        "{checked} quadruples ({nonzero} nonzero, {unverified} out of range) [{}]",
        coverage.join(", ")
    ))
}

fn dominates(a: &Partition, b: &Partition) -> bool {
    // a ⊵ b: every partial sum of a is at least that of b.
    let (mut sa, mut sb) = (0, 0);
    (1..=a.size()).all(|k| {
        sa += a.part(k);
        sb += b.part(k);
        sa >= sb
    })
}

fn a11() -> Outcome {
    let mut inv_checked = 0;
    for n in [2, 3] {
        let chain = build_chain(n).map_err(|e| e.to_string())?;
        let order: Vec<Partition> = chain.order.iter().map(|d| Partition::new(d.lambda.clone()).unwrap()).collect();
        ensure(order.len() == partitions(n).len(), || format!("chain for n={n} misses partitions"))?;
        for (i, x) in order.iter().enumerate() {
            for y in &order[i + 1..] {
                ensure(!dominates(y, x) || y == x, || format!("{y} dominates {x} but comes later"))?;
            }
        }
        let bound = 5;
        let cache = KlCache::new(n, 2 * bound + 2);
        let atlas = CellAtlas::build(&cache, Truncation::new(bound + 5, 1), 6).map_err(|e| e.to_string())?;
        for lambda in partitions(n) {
            let cells = atlas.cells_for(&lambda).ok_or_else(|| format!("no cell for {lambda}"))?;
            let table = LatticeTable::build(&cells.data, 4).map_err(|e| e.to_string())?;
            let members: Vec<_> = cells.members.iter().filter(|w| w.length() <= bound).cloned().collect();
            let rep = check_involution_compat(cells, &table, &members).map_err(|e| e.to_string())?;
            ensure(rep.violations.is_empty(), || format!("{lambda}: {}", rep.violations[0]))?;
            ensure(!rep.no_coverage(), || format!("no coordinatized samples for {lambda}"))?;
            inv_checked += rep.checked;
        }
    }
    let out = Command::new(env!("CARGO_BIN_EXE_affcell"))
        .args(["verify", "--n", "3"])
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.success(), || {
        format!("affcell verify --n 3 exited with {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    Ok(format!("chain order ok, {inv_checked} involution squares, verify --n 3 exits 0"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
        ("A10", a10),
        ("A11", a11),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| x == name) {
            continue;
        }
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(msg) => println!("{name} PASS ({secs:.1}s) {msg}"),
            Err(msg) => {
                failed += 1;
                println!("{name} FAIL ({secs:.1}s) {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
