//! Acceptance suite. Each criterion prints one PASS/FAIL line with its
//! elapsed time against a fixed budget; the process fails if any does.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rvequiv::equiv::{
    decide_rv_equiv, forward_invariance_check, saito_membership, verify_transport, DecideOptions,
    EquivReason, EquivStatus, Substitution,
};
use rvequiv::logder::lie0_ambient;
use rvequiv::oracle::{crosscheck, oracle_fingerprint, oracle_member, oracle_rank_at};
use rvequiv::pencil::{assemble_pencil, mather_verdict, PencilVerdict};
use rvequiv::qpoly::{euler_apply, quasi_degree, weighted_order, Order, WeightSystem};
use rvequiv::rational::{int, ratio};
use rvequiv::relmilnor::{hilbert_fingerprint, ideal_equal_up_to};

use common::*;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn w(ws: &[u64]) -> WeightSystem {
    WeightSystem::new(ws).unwrap()
}

fn lie0_and_check_qh() -> Outcome {
    let r = ring(3);
    let w223 = w(&[2, 2, 3]);
    let fields: BTreeSet<String> = lie0_ambient(&r, &w223)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|f| f.to_string())
        .collect();
    let expected: BTreeSet<String> = ["x*dx", "x*dy", "y*dx", "y*dy", "z*dz"]
        .into_iter()
        .map(String::from)
        .collect();
    ensure(fields == expected, || format!("lie0 gave {fields:?}"))?;
    let f = poly(&r, "x^2*y + z^2");
    let d = quasi_degree(&f, &w223).map_err(|e| e.to_string())?;
    ensure(d == Some(6), || format!("degree {d:?}"))?;
    ensure(euler_apply(&f, &w223).unwrap() == f.scale(&int(6)), || "Euler check".into())
}

fn euler_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut done = 0;
    while done < 500 {
        let n = 1 + (done % 3);
        let r = ring(n);
        let ws = w(&random_weights(&mut rng, n, 5));
        let Some((f, d)) = random_qh(&mut rng, &r, &ws, 12) else {
            continue;
        };
        let lhs = euler_apply(&f, &ws).unwrap();
        ensure(lhs == f.scale(&int(d)), || format!("E({f}) != {d}*f for {:?}", ws.weights()))?;
        done += 1;
    }
    Ok(())
}

fn order_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for k in 0..500 {
        let n = 1 + (k % 3);
        let r = ring(n);
        let ws = w(&random_weights(&mut rng, n, 5));
        let f = random_poly(&mut rng, &r, 5, 4);
        let g = random_poly(&mut rng, &r, 5, 4);
        let of = weighted_order(&f, &ws).unwrap();
        let og = weighted_order(&g, &ws).unwrap();
        let ofg = weighted_order(&(&f * &g), &ws).unwrap();
        let (Order::Finite(a), Order::Finite(b)) = (of, og) else {
            return Err("nonzero polynomial with infinite order".into());
        };
        ensure(ofg == Order::Finite(a + b), || format!("ord({f} * {g}) = {ofg}, expected {}", a + b))?;
    }
    Ok(())
}

fn milnor_fixture() -> Outcome {
    let r = ring(2);
    let (phi, ws) = (poly(&r, "x*y"), w(&[1, 1]));
    let f = poly(&r, "x^3 + y^3");
    let fp = hilbert_fingerprint(&f, &phi, &ws, 5).map_err(|e| e.to_string())?;
    ensure(fp.degrees == vec![0, 1, 2, 3, 4, 5], || format!("degrees {:?}", fp.degrees))?;
    ensure(fp.dims == vec![1, 2, 3, 2, 1, 0], || format!("dims {:?}", fp.dims))?;
    let oracle: Vec<usize> = oracle_fingerprint(&f, &phi, &ws, 5).into_iter().map(|x| x.1).collect();
    ensure(oracle == fp.dims, || format!("oracle dims {oracle:?}"))
}

fn pencil_fixture() -> Outcome {
    let r = ring(2);
    let (phi, ws) = (poly(&r, "x*y"), w(&[1, 1]));
    let f = poly(&r, "x^3 + y^3");
    let g = poly(&r, "2*x^3 + 5*y^3");
    let rep = mather_verdict(&f, &g, &phi, &ws, 8).map_err(|e| e.to_string())?;
    ensure(rep.s == 2, || format!("s = {}", rep.s))?;
    let q = &rep.exceptional_poly;
    ensure(q.gcd(&q.derivative()).degree() == Some(0), || format!("{q} not squarefree"))?;
    ensure(rep.rational_roots == vec![int(-1), ratio(-1, 4)], || format!("roots {:?}", rep.rational_roots))?;
    ensure(rep.endpoints_ok && rep.tangent_inclusion, || "endpoint or tangent check".into())?;
    ensure(rep.verdict == PencilVerdict::Equivalent, || format!("verdict {}", rep.verdict))?;
    let m = assemble_pencil(&f, &g, &phi, &ws).map_err(|e| e.to_string())?;
    ensure(oracle_rank_at(&m, &int(-1)) == 1, || "oracle rank at -1".into())?;
    for t in [0, 1, 7] {
        ensure(oracle_rank_at(&m, &int(t)) == 2, || format!("oracle rank at {t}"))?;
    }
    Ok(())
}

fn negative_fixture() -> Outcome {
    let r = ring(2);
    let (phi, ws) = (poly(&r, "x*y"), w(&[1, 1]));
    let f = poly(&r, "x^3 + y^3");
    let g = poly(&r, "x^3 + y^3 + x^2*y");
    let cmp = ideal_equal_up_to(&f, &g, &phi, &ws, 8).map_err(|e| e.to_string())?;
    ensure(!cmp.equal && cmp.witness == Some(3), || format!("{cmp:?}"))?;
    for search in [false, true] {
        let opts = DecideOptions {
            search,
            draws: 50,
            ..DecideOptions::default()
        };
        let v = decide_rv_equiv(&f, &g, &phi, &ws, 8, &opts).map_err(|e| e.to_string())?;
        ensure(v.status == EquivStatus::Unknown, || format!("search={search}: {:?}", v.status))?;
    }
    Ok(())
}

fn forward_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (r2, r3) = (ring(2), ring(3));
    let (phi2, w2) = (poly(&r2, "x*y"), w(&[1, 1]));
    let (phi3, w3) = (poly(&r3, "x^2*y + z^2"), w(&[2, 2, 3]));
    let mut done = 0;
    while done < 100 {
        let (r, phi, ws, psi) = if done % 2 == 0 {
            (&r2, &phi2, &w2, random_axes_map(&mut rng, &r2))
        } else {
            (&r3, &phi3, &w3, random_cusp_scaling(&mut rng, &r3))
        };
        let Some((f, d)) = random_qh(&mut rng, r, ws, 8) else {
            continue;
        };
        if d < 2 {
            continue;
        }
        let c = forward_invariance_check(&psi, &f, phi, ws, 10).map_err(|e| e.to_string())?;
        ensure(c.agree, || format!("{f} under {psi}: mismatch at {:?}", c.mismatch_degree))?;
        done += 1;
    }
    Ok(())
}

fn saito_suite() -> Outcome {
    let r2 = ring(2);
    let h = poly(&r2, "x^5 + y^5 + x^3*y^3");
    let red = saito_membership(&h).map_err(|e| e.to_string())?;
    ensure(!red.is_member, || "x^5 + y^5 + x^3*y^3 reported in its Jacobian ideal".into())?;
    let r3 = ring(3);
    let fixtures = [
        (poly(&r2, "x^3 + y^3"), w(&[1, 1])),
        (poly(&r2, "2*x^3 + 5*y^3"), w(&[1, 1])),
        (poly(&r2, "8*x^3 + y^3"), w(&[1, 1])),
        (poly(&r2, "x^3 + y^3 + x^2*y"), w(&[1, 1])),
        (poly(&r2, "x*y"), w(&[1, 1])),
        (poly(&r2, "y^2 - x^4"), w(&[1, 2])),
        (poly(&r2, "x^3 - y^2"), w(&[2, 3])),
        (poly(&r3, "x^2*y + z^2"), w(&[2, 2, 3])),
        (poly(&r3, "x*y*z"), w(&[1, 1, 1])),
    ];
    for (f, ws) in &fixtures {
        let red = saito_membership(f).map_err(|e| e.to_string())?;
        ensure(red.is_member, || format!("{f} not in J_f"))?;
        ensure(oracle_member(f, &f.gradient(), ws), || format!("oracle: {f} not in J_f"))?;
    }
    Ok(())
}

fn oracle_sweep() -> Outcome {
    let report = crosscheck(50, 0, 10).map_err(|e| e.to_string())?;
    match report.instances.iter().find(|i| !i.mismatches.is_empty()) {
        None => ensure(report.all_agree && report.instances.len() == 50, || "report flags".into()),
        Some(i) => Err(format!("{} over {}: {:?}", i.f, i.phi, i.mismatches[0])),
    }
}

fn transport_fixture() -> Outcome {
    let r = ring(2);
    let (phi, ws) = (poly(&r, "x*y"), w(&[1, 1]));
    let f = poly(&r, "x^3 + y^3");
    let g = poly(&r, "8*x^3 + y^3");
    let u = Substitution::parse(&["1/2*x", "y"], &r).map_err(|e| e.to_string())?;
    let t = verify_transport(&u, &f, &g, &phi, &ws, 8).map_err(|e| e.to_string())?;
    ensure(t.holds() && t.image == f, || format!("transport gave {}", t.image))?;
    let opts = DecideOptions {
        substitution: Some(u.clone()),
        ..DecideOptions::default()
    };
    let v = decide_rv_equiv(&f, &g, &phi, &ws, 8, &opts).map_err(|e| e.to_string())?;
    ensure(v.status == EquivStatus::Equivalent, || format!("{:?}", v.status))?;
    ensure(v.reason == EquivReason::TransportPencil, || format!("{:?}", v.reason))?;
    ensure(v.substitution.as_ref() == Some(&u), || "substitution certificate missing".into())?;
    let pencil = v.pencil.ok_or("pencil certificate missing")?;
    ensure(pencil.verdict == PencilVerdict::Equivalent, || "pencil certificate verdict".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 lie0 and check-qh on weights (2,2,3)", lie0_and_check_qh, Duration::from_secs(1)),
        ("2 Euler identity, 500 samples", euler_suite, Duration::from_secs(10)),
        ("3 order additivity, 500 pairs", order_suite, Duration::from_secs(10)),
        ("4 Milnor fingerprint fixture", milnor_fixture, Duration::from_secs(1)),
        ("5 pencil fixture", pencil_fixture, Duration::from_secs(1)),
        ("6 negative hypothesis fixture", negative_fixture, Duration::from_secs(1)),
        ("7 forward invariance, 100 maps", forward_suite, Duration::from_secs(30)),
        ("8 Jacobian self-membership", saito_suite, Duration::from_secs(5)),
        ("9 oracle sweep, 50 instances", oracle_sweep, Duration::from_secs(120)),
        ("10 transport fixture", transport_fixture, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= budget, || format!("took {elapsed:?}, budget {budget:?}"))
        });
        match outcome {
            Ok(()) => println!("criterion {name}: PASS ({} ms)", elapsed.as_millis()),
            Err(why) => {
                failed += 1;
                println!("criterion {name}: FAIL ({} ms): {why}", elapsed.as_millis());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
