//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cone_zeta::corpus::{self, Instance};
use cone_zeta::genfun::{euler_sum, genfun_halfopen_simplicial, GenFunEngine};
use cone_zeta::geometry::{self, in_region};
use cone_zeta::oracle::{compare, lattice_sums_all_regions, series_expand};
use cone_zeta::weyl::{build_root_system, check_weyl_identities, CartanType};
use cone_zeta::zeta::{
    build_complex_from_weights, fneq_detect, torus_closed_form, torus_example, verify_main_theorem,
    weighted_zeta, FneqCertificate, WeightDatum,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn torus_closed_forms() -> Outcome {
    let mut checked = 0;
    for d in [2, 3] {
        for k in [3, 4, 5] {
            let zp = torus_example(d, k).map_err(|e| e.to_string())?;
            let z = weighted_zeta(&zp).map_err(|e| e.to_string())?;
            let (_, closed) = torus_closed_form(d, k).map_err(|e| e.to_string())?;
            if !z.eq_rational(&closed) {
                return Err(format!("d={d} k={k}: {z} != {closed}"));
            }
            if let Some(c) = fneq_detect(&z).map_err(|e| e.to_string())? {
                return Err(format!("d={d} k={k}: unexpected functional equation {c}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (d,k) pairs match, none has a functional equation"
    ))
}

fn reciprocity(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let engine = GenFunEngine::new(&inst.complex).map_err(|e| e.to_string())?;
        for region in geometry::subsets(inst.complex.bounding().len()) {
            let r = engine
                .check_reciprocity(&region, &inst.spec)
                .map_err(|e| format!("{}: {e}", inst.label))?;
            if !r.holds {
                return Err(format!(
                    "{} I={region:?}: {} != {}",
                    inst.label, r.lhs, r.rhs
                ));
            }
            checks += 1;
        }
    }
    Ok(format!("{} complexes, {checks} regions", corpus.len()))
}

fn oracle_equivalence(corpus: &[Instance], order: i64) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let engine = GenFunEngine::new(&inst.complex).map_err(|e| e.to_string())?;
        let sums = lattice_sums_all_regions(&inst.complex, &inst.spec, order)
            .map_err(|e| e.to_string())?;
        for (region, brute) in &sums {
            let g = engine
                .genfun_region(region, &inst.spec)
                .map_err(|e| e.to_string())?;
            let series = series_expand(&g, order).map_err(|e| e.to_string())?;
            let verdict = compare(&series, brute).map_err(|e| e.to_string())?;
            if !verdict.equal {
                return Err(format!(
                    "{} I={region:?}: {:?}",
                    inst.label, verdict.first_mismatch
                ));
            }
            checks += 1;
        }
    }
    Ok(format!("{checks} regions agree to t^{order}"))
}

fn euler_sums(corpus: &[Instance]) -> Outcome {
    let mut checks = 0;
    for inst in corpus {
        let cx = &inst.complex;
        let m = cx.dim();
        let n = cx.bounding().len();
        let cells = cx.enumerate_cells().map_err(|e| e.to_string())?;
        for region in geometry::subsets(n) {
            let complement = geometry::complement(n, &region);
            for f0 in &cells {
                let expected = if in_region(&f0.signs, &complement) {
                    if m.is_multiple_of(2) {
                        1
                    } else {
                        -1
                    }
                } else {
                    0
                };
                let got = euler_sum(&cells, f0, &region);
                if got != expected {
                    return Err(format!(
                        "{} I={region:?} F0={}: {got} != {expected}",
                        inst.label, f0.signs
                    ));
                }
                checks += 1;
            }
        }
    }
    Ok(format!("{checks} (cell, region) sums"))
}

fn main_theorem() -> Outcome {
    let expected = [
        (
            2,
            FneqCertificate {
                sign_exponent: 0,
                a: 1,
                b: -2,
            },
        ),
        (
            3,
            FneqCertificate {
                sign_exponent: 1,
                a: 3,
                b: -3,
            },
        ),
    ];
    let mut found = Vec::new();
    for (n, want) in expected {
        let (wd, rs) = WeightDatum::gl_natural(n).map_err(|e| e.to_string())?;
        let zp = build_complex_from_weights(&wd, &rs).map_err(|e| e.to_string())?;
        let report = verify_main_theorem(&zp, &wd).map_err(|e| e.to_string())?;
        if !report.all_pass() {
            return Err(format!("GL_{n}: {report:?}"));
        }
        if report.detected != Some(want) {
            return Err(format!(
                "GL_{n}: detected {:?}, want {want}",
                report.detected
            ));
        }
        found.push(format!("GL_{n} {want}"));
    }
    Ok(found.join(", "))
}

fn weyl_identities() -> Outcome {
    let types = [
        (CartanType::A, 1),
        (CartanType::A, 2),
        (CartanType::A, 3),
        (CartanType::B, 2),
        (CartanType::B, 3),
        (CartanType::C, 3),
        (CartanType::D, 4),
    ];
    let mut names = Vec::new();
    for (t, l) in types {
        let rs = build_root_system(t, l).map_err(|e| e.to_string())?;
        let r = check_weyl_identities(&rs).map_err(|e| e.to_string())?;
        if !r.all_hold() || r.poincare_matches != Some(true) {
            return Err(format!("{t}{l}: {r:?}"));
        }
        names.push(format!("{t}{l}(|W|={})", r.order));
    }
    Ok(names.join(" "))
}

fn inversion_lemma(trials: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_917);
    for i in 0..trials {
        let (gens, c, b) = corpus::random_simplicial_generators(&mut rng, 6);
        let k = gens.len();
        let all: Vec<usize> = (0..k).collect();
        let closed = genfun_halfopen_simplicial(&gens, &[], &c, &b).map_err(|e| e.to_string())?;
        let open = genfun_halfopen_simplicial(&gens, &all, &c, &b).map_err(|e| e.to_string())?;
        let lhs = closed.invert_variables();
        let rhs = if k % 2 == 0 { open } else { open.neg() };
        if !lhs.eq_rational(&rhs) {
            return Err(format!("trial {i}: gens {gens:?}, c {c:?}, b {b:?}"));
        }
    }
    Ok(format!("{trials} random simplicial cones"))
}

fn main() -> ExitCode {
    let corpus = corpus::standard_corpus().expect("corpus generation");
    let criteria: Vec<Criterion<'_>> = vec![
        ("torus closed forms", Box::new(torus_closed_forms)),
        ("reciprocity suite", Box::new(|| reciprocity(&corpus))),
        (
            "oracle equivalence",
            Box::new(|| oracle_equivalence(&corpus, corpus::DEFAULT_ORDER)),
        ),
        ("Euler-sum identity", Box::new(|| euler_sums(&corpus))),
        ("main-theorem exponents", Box::new(main_theorem)),
        ("Weyl identities", Box::new(weyl_identities)),
        ("inversion lemma", Box::new(|| inversion_lemma(50))),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {}. {name}: {detail} [{secs:.2}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why} [{secs:.2}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
