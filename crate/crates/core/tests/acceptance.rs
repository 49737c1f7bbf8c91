//! Acceptance gate: one line per criterion, non-zero exit on any failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hvb_core::bundlecat::{block_semisimplicity_test, BlockData, GroundContext, HomogBundle, Summand};
use hvb_core::galois::{CharacterOrbit, CharacterPoint, GaloisHom, GaloisModule, IntMatrix};
use hvb_core::isogeny::{frobenius_pushforward, pullback, pushforward, IsogenyData};
use hvb_core::nilmod::{decompose, ext_dims, hom_dim, is_isomorphic};
use hvb_core::{FieldSpec, Flavor, NilModule};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if let Some(limit) = limit {
        ensure!(took < limit, "took {took:.2?}, limit {limit:?}");
    }
    Ok(format!("{out} ({took:.2?})"))
}

fn criterion_1() -> Outcome {
    timed(Some(Duration::from_secs(1)), || {
        for g in 1..=5 {
            let t = NilModule::trivial(&FieldSpec::rationals(), Flavor::Additive, g, 1);
            let got = ext_dims(&t, &t, g).map_err(|e| e.to_string())?;
            let want: Vec<usize> = (0..=g).map(|i| binomial(g, i)).collect();
            ensure!(got == want, "g = {g}: got {got:?}, want {want:?}");
        }
        Ok("g = 1..5 binomial rows".into())
    })
}

fn criterion_2() -> Outcome {
    timed(Some(Duration::from_secs(1)), || {
        let mut cases = 0;
        let mut blocks = 0usize;
        for g in 1..=3usize {
            for r in 0..=g {
                for p in [2u64, 3, 5] {
                    for n in 0..=3u32 {
                        let rep = frobenius_pushforward(g, r, p, n, None).map_err(|e| e.to_string())?;
                        let count = p.pow(n * r as u32) as usize;
                        let rank = p.pow(n * (g - r) as u32) as usize;
                        let mut seen = 0usize;
                        for b in rep.blocks() {
                            ensure!(b.rank() == rank, "(g,r,p,n) = ({g},{r},{p},{n}): block rank {}", b.rank());
                            ensure!(b.indecomposable == Some(true), "block not indecomposable");
                            seen += b.multiplicity;
                        }
                        ensure!(seen == count, "(g,r,p,n) = ({g},{r},{p},{n}): {seen} summands, want {count}");
                        ensure!(rep.total_rank() == p.pow(n * g as u32) as usize, "total rank");
                        cases += 1;
                        blocks += seen;
                    }
                }
            }
        }
        Ok(format!("{cases} cases, {blocks} blocks enumerated"))
    })
}

fn criterion_3() -> Outcome {
    timed(Some(Duration::from_secs(10)), || {
        let q = FieldSpec::rationals();
        for a in 1..=6 {
            for b in 1..=6 {
                let t = NilModule::jordan(&q, Flavor::Additive, a)
                    .tensor(&NilModule::jordan(&q, Flavor::Additive, b))
                    .map_err(|e| e.to_string())?;
                let oracle = common::jordan_type(&t.mats()[0]);
                let d = decompose(&t, 0).map_err(|e| e.to_string())?;
                let mut got: Vec<usize> =
                    d.summands.iter().flat_map(|s| vec![s.module.rank(); s.multiplicity]).collect();
                got.sort_unstable_by(|x, y| y.cmp(x));
                ensure!(got == oracle, "J{a} x J{b}: decompose {got:?}, oracle {oracle:?}");
            }
        }
        Ok("36 tensor products".into())
    })
}

/// Isomorphism classes with multiplicities, as (representative, count).
fn classes(m: &NilModule, seed: u64) -> Result<Vec<(NilModule, usize)>, String> {
    let d = decompose(m, seed).map_err(|e| e.to_string())?;
    let mut out: Vec<(NilModule, usize)> = Vec::new();
    for s in d.summands {
        let mut placed = false;
        for (rep, count) in out.iter_mut() {
            if rep.rank() == s.module.rank() && is_isomorphic(rep, &s.module, seed).map_err(|e| e.to_string())?.is_some() {
                *count += s.multiplicity;
                placed = true;
                break;
            }
        }
        if !placed {
            out.push((s.module, s.multiplicity));
        }
    }
    Ok(out)
}

fn same_classes(a: &[(NilModule, usize)], b: &[(NilModule, usize)]) -> Result<bool, String> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for (rep, count) in a {
        let mut found = false;
        for (j, (other, c)) in b.iter().enumerate() {
            if !used[j] && c == count && other.rank() == rep.rank() && is_isomorphic(rep, other, 0).map_err(|e| e.to_string())?.is_some() {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_4() -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let fields = common::fields();
        let mut summands = 0;
        for i in 0..200 {
            let f = &fields[i % 3];
            let flavor = if f.characteristic() > 0 && rng.gen_bool(0.5) { Flavor::Unipotent } else { Flavor::Additive };
            let g = rng.gen_range(1..=3);
            let m = common::random_module(f, flavor, &mut rng, g, 8);
            let p = common::random_invertible(f, &mut rng, m.rank());
            let c = m.conjugate(&p).map_err(|e| e.to_string())?;
            let before = classes(&m, i as u64)?;
            let after = classes(&c, i as u64 + 1000)?;
            ensure!(
                same_classes(&before, &after)?,
                "instance {i} over {f} ({flavor:?}, g = {g}, rank {}): class multisets differ",
                m.rank()
            );
            summands += before.iter().map(|(_, c)| c).sum::<usize>();
        }
        Ok(format!("200 modules, {summands} indecomposable summands"))
    })
}

struct Instance {
    iso: IsogenyData,
}

fn scalar(k: usize, u: i64) -> IntMatrix {
    (0..k).map(|i| (0..k).map(|j| if i == j { u } else { 0 }).collect()).collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// A random isogeny on truncated character groups of level at most 60.
/// Coordinatewise the dual map is either a reduction `Z/n -> Z/m` or
/// multiplication by a divisor `d` of `n` on `Z/n`; the Galois group acts
/// by scalar units.
fn random_instance(rng: &mut ChaCha8Rng, char_p: bool) -> Instance {
    let p = if char_p { *[2u64, 3].choose(rng).unwrap() } else { 1 };
    let g = rng.gen_range(1..=2usize);
    let k = rng.gen_range(1..=2usize);
    loop {
        let level = rng.gen_range(2..=60u64);
        let mut dst_orders = vec![level];
        if k == 2 {
            let ds = divisors(level);
            dst_orders.push(*ds[1..].choose(rng).unwrap());
        }
        let mut src_orders = Vec::new();
        let mut diag = Vec::new();
        for &n in &dst_orders {
            let d = *divisors(n).choose(rng).unwrap();
            if rng.gen_bool(0.5) {
                src_orders.push(n / d); // reduction, kernel of size d
                diag.push(1);
            } else {
                src_orders.push(n); // multiplication by d, kernel of size d
                diag.push(d as i64);
            }
        }
        let mult: u64 = dst_orders
            .iter()
            .zip(&src_orders)
            .zip(&diag)
            .map(|((&n, &m), &d)| if d == 1 { n / m } else { d as u64 })
            .product();
        if src_orders.iter().product::<u64>() < 2 {
            continue;
        }
        let units: Vec<u64> = (1..level).filter(|&u| gcd(u, level) == 1).collect();
        let trivial = rng.gen_bool(0.3);
        let gamma = if trivial { Vec::new() } else { vec![scalar(k, *units.choose(rng).unwrap() as i64)] };
        let cp = Some(p);
        let src_chars = GaloisModule::new(src_orders.clone(), gamma.clone(), cp).unwrap();
        let dst_chars = GaloisModule::new(dst_orders.clone(), gamma, cp).unwrap();
        let sep_closed = trivial && rng.gen_bool(0.7);
        let r = if p == 1 { 0 } else if sep_closed && rng.gen_bool(0.6) { g } else { rng.gen_range(0..=g) };
        let src = GroundContext::new(g, p, r, sep_closed, src_chars, None).unwrap();
        let dst = GroundContext::new(g, p, r, sep_closed, dst_chars, None).unwrap();
        let dual_map: IntMatrix =
            (0..k).map(|i| (0..k).map(|j| if i == j { diag[i] } else { 0 }).collect()).collect();
        let (unip, inf) = if p > 1 {
            let mut f = Vec::new();
            for _ in 0..rng.gen_range(0..=2usize.min(g)) {
                f.push(p.pow(rng.gen_range(1..=2)));
            }
            (f, if rng.gen_bool(0.3) { p } else { 1 })
        } else {
            (Vec::new(), 1)
        };
        let iso = IsogenyData {
            src,
            dst,
            dual_map,
            mult_kernel_order: mult,
            unip_etale_factors: unip,
            infinitesimal_order: inf,
            degree: None,
        };
        let violations = iso.validate().unwrap();
        assert!(violations.is_empty(), "generated isogeny invalid: {violations:?}");
        return Instance { iso };
    }
}

fn instances() -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    (0..50).map(|i| random_instance(&mut rng, i % 2 == 1)).collect()
}

fn hom_of(iso: &IsogenyData) -> GaloisHom {
    GaloisHom::new(iso.dst.characters().clone(), iso.src.characters().clone(), iso.dual_map.clone()).unwrap()
}

fn random_image_point(iso: &IsogenyData, rng: &mut ChaCha8Rng) -> CharacterPoint {
    let y: Vec<u64> = iso.dst.characters().orders().iter().map(|&n| rng.gen_range(0..n)).collect();
    CharacterPoint::separable(hom_of(iso).map_coords(&y))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn criterion_5(inst: &[Instance]) -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(55);
        let mut checks = 0;
        for (i, it) in inst.iter().enumerate() {
            let iso = &it.iso;
            let hom = hom_of(iso);
            let x = iso.src.orbit_of(&random_image_point(iso, &mut rng)).map_err(err)?;
            let e = HomogBundle::irreducible(&iso.src, x.clone()).map_err(err)?;
            let push = pushforward(iso, &e, 0).map_err(err)?;
            ensure!(
                push.total_rank() == iso.computed_degree() as usize * e.rank(),
                "instance {i}: total rank {} != deg x rank",
                push.total_rank()
            );
            let pushed = push.to_bundle().map_err(err)?;
            for y in iso.dst.characters().orbits().map_err(err)? {
                let f = HomogBundle::irreducible(&iso.dst, y.clone()).map_err(err)?;
                let got = f.hom_ext_dims(&pushed, 0).map_err(err)?[0];
                let image = hom.map_coords(y.least());
                let want = if x.contains(&image) { y.degree() } else { 0 };
                ensure!(got == want, "instance {i}: Hom(F({y}), push E({x})) = {got}, want {want}");
                checks += 1;
            }
        }
        Ok(format!("{} instances, {checks} orbit pairs", inst.len()))
    })
}

fn random_orbit(ctx: &GroundContext, rng: &mut ChaCha8Rng) -> CharacterOrbit {
    let y: Vec<u64> = ctx.characters().orders().iter().map(|&n| rng.gen_range(0..n)).collect();
    ctx.orbit_of(&CharacterPoint::separable(y)).unwrap()
}

fn criterion_6(inst: &[Instance]) -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(66);
        let mut checks = 0;
        for (i, it) in inst.iter().enumerate() {
            let iso = &it.iso;
            let hom = hom_of(iso);
            for _ in 0..4 {
                let y = random_orbit(&iso.dst, &mut rng);
                let f = HomogBundle::irreducible(&iso.dst, y.clone()).map_err(err)?;
                let pb = pullback(iso, &f).map_err(err)?;
                ensure!(pb.rank() == f.rank(), "instance {i}: pullback rank {} != {}", pb.rank(), f.rank());
                let x = iso.src.orbit_of(&CharacterPoint::separable(hom.map_coords(y.least()))).map_err(err)?;
                ensure!(pb.summands().len() == 1, "instance {i}: pullback of F({y}) has several blocks");
                let s = &pb.summands()[0];
                ensure!(s.orbit == x, "instance {i}: pullback lands on {}, want {x}", s.orbit);
                let mult = y.degree() / x.degree();
                ensure!(
                    s.data.rank() == mult && s.data.is_semisimple() == Some(true),
                    "instance {i}: multiplicity {} (semisimple {:?}), want {mult}",
                    s.data.rank(),
                    s.data.is_semisimple()
                );
                checks += 1;
            }
        }
        Ok(format!("{checks} pullbacks"))
    })
}

fn criterion_7(inst: &[Instance]) -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let (mut sep, mut insep) = (0, 0);
        for (i, it) in inst.iter().enumerate() {
            let iso = &it.iso;
            let mut f = HomogBundle::zero(iso.dst.clone());
            for _ in 0..rng.gen_range(1..=3) {
                let y = random_orbit(&iso.dst, &mut rng);
                f = f.direct_sum(&HomogBundle::irreducible(&iso.dst, y).map_err(err)?).map_err(err)?;
            }
            ensure!(f.classify().semisimple == Some(true), "instance {i}: input not semisimple");
            let pb = pullback(iso, &f).map_err(err)?;
            ensure!(pb.classify().semisimple == Some(true), "instance {i}: pullback of a semisimple bundle is not semisimple");

            let x = iso.src.orbit_of(&random_image_point(iso, &mut rng)).map_err(err)?;
            let e = HomogBundle::irreducible(&iso.src, x).map_err(err)?;
            let pushed = pushforward(iso, &e, 0).map_err(err)?.to_bundle().map_err(err)?;
            let separable = iso.is_separable();
            let flag = pushed.classify().semisimple;
            ensure!(
                flag == Some(separable),
                "instance {i}: pushforward semisimple = {flag:?}, dual map separable = {separable}"
            );
            if separable {
                sep += 1;
            } else {
                insep += 1;
            }
        }
        ensure!(sep > 0 && insep > 0, "instance set does not exercise both directions ({sep}, {insep})");
        Ok(format!("{sep} separable, {insep} inseparable"))
    })
}

fn criterion_8() -> Outcome {
    timed(None, || {
        for p in [2u64, 3] {
            for a in 1..=2u32 {
                let chars = GaloisModule::trivial_action(vec![1], Some(p)).map_err(err)?;
                let ctx = GroundContext::new(1, p, 1, true, chars, None).map_err(err)?;
                let mut iso = IsogenyData::identity(&ctx);
                iso.unip_etale_factors = vec![p.pow(a)];
                let push = pushforward(&iso, &HomogBundle::structure_sheaf(&ctx), 0).map_err(err)?;
                let blocks: Vec<_> = push.blocks().collect();
                let n = p.pow(a) as usize;
                ensure!(blocks.len() == 1 && blocks[0].multiplicity == 1, "p = {p}, a = {a}: {} blocks", blocks.len());
                let b = &blocks[0];
                ensure!(b.rank() == n, "p = {p}, a = {a}: rank {}", b.rank());
                ensure!(b.loewy_length == Some(n), "p = {p}, a = {a}: Loewy length {:?}", b.loewy_length);
                ensure!(b.indecomposable == Some(true), "p = {p}, a = {a}: not indecomposable");
                let m = b.module().ok_or("no module data")?;
                ensure!(m.loewy_length() == n, "module Loewy length {}", m.loewy_length());
                ensure!(decompose(m, 0).map_err(err)?.count() == 1, "module decomposes");
            }
        }
        Ok("p in {2,3}, a in {1,2}".into())
    })
}

fn random_block_data(ctx: &GroundContext, orbit: &CharacterOrbit, rng: &mut ChaCha8Rng) -> BlockData {
    if ctx.module_allowed(orbit) && rng.gen_bool(0.6) {
        let flavor = ctx.flavor().unwrap();
        return BlockData::Module(common::random_module(ctx.field(), flavor, rng, ctx.g(), 3));
    }
    BlockData::semisimple(rng.gen_range(1..=2))
}

fn criterion_9(inst: &[Instance]) -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut checked = 0;
        for (i, it) in inst.iter().enumerate() {
            let ctx = &it.iso.src;
            let mut orbits = ctx.characters().orbits().map_err(err)?;
            ensure!(orbits.len() >= 2, "instance {i}: a single orbit");
            orbits.shuffle(&mut rng);
            let cut = rng.gen_range(1..orbits.len());
            let make = |rng: &mut ChaCha8Rng, pool: &[CharacterOrbit]| -> Result<HomogBundle, String> {
                let mut summands = Vec::new();
                for orbit in pool.iter().take(3) {
                    summands.push(Summand { orbit: orbit.clone(), data: random_block_data(ctx, orbit, rng) });
                }
                HomogBundle::new(ctx.clone(), summands).map_err(err)
            };
            let e1 = make(&mut rng, &orbits[..cut])?;
            let e2 = make(&mut rng, &orbits[cut..])?;
            let g = ctx.g();
            for (a, b) in [(&e1, &e2), (&e2, &e1)] {
                let dims = a.hom_ext_dims(b, g).map_err(err)?;
                ensure!(dims.iter().all(|&d| d == 0), "instance {i}: disjoint blocks have Ext dims {dims:?}");
            }
            // The same computation is not vacuous: on the sum it recovers
            // the diagonal terms.
            let top = if ctx.p() == 1 { g } else { 0 };
            let both = e1.direct_sum(&e2).map_err(err)?;
            let total = both.hom_ext_dims(&both, top).map_err(err)?;
            let d1 = e1.hom_ext_dims(&e1, top).map_err(err)?;
            let d2 = e2.hom_ext_dims(&e2, top).map_err(err)?;
            let sum: Vec<usize> = d1.iter().zip(&d2).map(|(a, b)| a + b).collect();
            ensure!(total == sum && total[0] > 0, "instance {i}: Ext of the sum {total:?} != {sum:?}");
            checked += 1;
        }
        Ok(format!("{checked} disjoint pairs"))
    })
}

fn criterion_10() -> Outcome {
    timed(None, || {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let q = FieldSpec::rationals();
        for i in 0..100 {
            let g = rng.gen_range(1..=3);
            let a = common::random_module(&q, Flavor::Additive, &mut rng, g, 4);
            let b = common::random_module(&q, Flavor::Additive, &mut rng, g, 4);
            let dims = ext_dims(&a, &b, g).map_err(err)?;
            let chi: i64 = dims.iter().enumerate().map(|(k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
            ensure!(chi == 0, "pair {i} (g = {g}): Ext dims {dims:?} have Euler characteristic {chi}");
            ensure!(dims[0] == hom_dim(&a, &b).map_err(err)?, "pair {i}: degree 0 differs from hom_dim");
        }
        Ok("100 pairs".into())
    })
}

fn criterion_11() -> Outcome {
    timed(None, || {
        let mut rows = 0;
        for p in [2u64, 3, 5] {
            let finite = [1, p, p * p];
            for kl in finite {
                for l_deg in [1, p, 7] {
                    let k_deg = kl * l_deg;
                    for u in finite.iter().map(|&u| Some(u)).chain([None]) {
                        let got = block_semisimplicity_test(u, k_deg, l_deg).map_err(err)?;
                        // The unipotent stabilizer must be finite of order [K:L].
                        let want = u.is_some_and(|u| u == kl);
                        ensure!(got == want, "p = {p}, U order {u:?}, [K:L] = {kl}: got {got}");
                        rows += 1;
                    }
                }
            }
        }
        // alpha_p inside a degree-p purely inseparable extension.
        ensure!(block_semisimplicity_test(Some(3), 3, 1).map_err(err)?, "U = alpha_p, [K:L] = p should be semisimple");
        Ok(format!("{rows} rows"))
    })
}

fn main() {
    let inst = instances();
    let criteria: Vec<(&str, Check)> = vec![
        ("exterior-algebra Ext dimensions", Box::new(criterion_1)),
        ("Frobenius pushforward counts", Box::new(criterion_2)),
        ("Clebsch-Gordan oracle equivalence", Box::new(criterion_3)),
        ("Krull-Schmidt stability under conjugation", Box::new(criterion_4)),
        ("adjunction dimensions", Box::new(|| criterion_5(&inst))),
        ("pullback rank law", Box::new(|| criterion_6(&inst))),
        ("semisimplicity preservation", Box::new(|| criterion_7(&inst))),
        ("unipotent-kernel pushforward", Box::new(criterion_8)),
        ("block orthogonality", Box::new(|| criterion_9(&inst))),
        ("Euler characteristic", Box::new(criterion_10)),
        ("semisimplicity predicate truth table", Box::new(criterion_11)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
