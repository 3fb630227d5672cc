//! The acceptance suite: one line per criterion, nonzero exit on any
//! failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use ribbon_sandpile::jacobian::{bernardi_action, EmbeddedGraph};
use ribbon_sandpile::ribbon::{bidirect, EdgeId};
use ribbon_sandpile::rotor::unicycles;
use ribbon_sandpile::sandpile::{ChipConfig, SandpileGroup};
use ribbon_sandpile::tours::{check_root_independence, is_compatible, tour_to_arb, EulerianTour, TourRotor};
use ribbon_sandpile::verify::{self, Report};
use ribbon_sandpile::{fixtures, Result};

const SEED: u64 = 0;

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn from_report(r: Report) -> Outcome {
    let mut detail = format!("{} cases, {} checks", r.cases, r.checks);
    for n in &r.notes {
        detail.push_str("; ");
        detail.push_str(n);
    }
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; {} failures, first: {f}", r.failures.len()));
    }
    Ok((r.passed(), detail))
}

fn names(eg: &EmbeddedGraph, q: &[EdgeId]) -> String {
    let v: Vec<&str> = q.iter().map(|&e| eg.graph().edge_name(e)).collect();
    format!("{{{}}}", v.join(","))
}

fn edges(eg: &EmbeddedGraph, names: &[&str]) -> Vec<EdgeId> {
    let mut v: Vec<EdgeId> = names.iter().map(|n| eg.graph().edge_id(n).unwrap()).collect();
    v.sort();
    v
}

fn fig1_golden() -> Outcome {
    let d = fixtures::fig1();
    let arcs = ["e1", "e4", "e3", "e2", "e8", "e9", "e5", "e6", "e7"].iter().map(|a| d.arc_id(a)).collect::<Result<Vec<_>>>()?;
    let tour = EulerianTour::new(&d, arcs)?;
    let arb = tour_to_arb(&d, &tour, d.arc_id("e1")?)?;
    let mut got: Vec<&str> = arb.arcs().map(|a| d.arc_name(a)).collect();
    got.sort();
    Ok((is_compatible(&d, &tour) && got == ["e6", "e7", "e9"], format!("compatible, arborescence {{{}}}", got.join(","))))
}

fn unicycle_equivalence() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (name, g) in verify::unicycle_battery(SEED) {
        let d = bidirect(&g);
        for u in unicycles(&g, &d, 1_000_000)? {
            let (support, sep, eq) = verify::reversal_case(&g, &d, &u)?;
            checked += 1;
            if sep != eq {
                let names: Vec<&str> = support.iter().map(|&e| g.edge_name(e)).collect();
                bad.push(format!("{name} {{{}}}", names.join(",")));
            }
        }
    }
    let detail = format!("{checked} unicycles on k4p, the loop-subdivided torus and 10 random graphs, mismatches {}", bad.len());
    Ok((bad.is_empty(), detail))
}

fn root_independence() -> Outcome {
    let k4p = check_root_independence(&fixtures::k4p())?.independent;
    let torus = check_root_independence(&verify::subdivide_loops(fixtures::torus().graph()))?.independent;
    let (ok, detail) = from_report(verify::run("root-independence-planarity", SEED)?)?;
    Ok((ok && k4p && !torus, format!("k4p independent {k4p}, torus (loops subdivided) independent {torus}; {detail}")))
}

fn torus_suite() -> Outcome {
    let t = fixtures::torus();
    let qs = t.enumerate_quasitrees()?;
    let want_q = vec![edges(&t, &["e1"]), edges(&t, &["e1", "e2", "e3"]), edges(&t, &["e1", "e2", "e4"]), edges(&t, &["e2"])];
    let mut got_q = qs.clone();
    got_q.sort();
    let mut want_sorted = want_q.clone();
    want_sorted.sort();
    let jac = t.jacobian()?;
    let factors = jac.presentation().invariant_factors();
    let medial_order = SandpileGroup::new(t.medial())?.order();
    let normal = |v: Vec<i64>| if v.iter().find(|&&x| x != 0) > Some(&0) { v } else { v.iter().map(|x| -x).collect() };
    let mut got_c: Vec<Vec<i64>> = jac.cycles().iter().map(|c| normal(c.values.clone())).collect();
    let mut want_c: Vec<Vec<i64>> = [
        [0, 0, 0, 0, 1, -1, 0, 0],
        [0, 0, -1, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, -1, 0, 0, 0],
        [0, 0, 1, 0, 0, -1, 0, 0],
        [0, 0, 0, 1, 0, -1, 0, 0],
        [0, 0, -1, 1, 0, 0, 0, 0],
        [1, 1, 0, 0, 0, 0, 1, 1],
    ]
    .iter()
    .map(|v| normal(v.to_vec()))
    .collect();
    got_c.sort();
    want_c.sort();
    let ok = got_q == want_sorted && factors == [BigInt::from(4)] && medial_order == BigInt::from(4) && got_c == want_c;
    Ok((ok, format!("{} quasi-trees, invariants {factors:?}, medial order {medial_order}, {} signed cycles", qs.len(), got_c.len())))
}

fn phi_isomorphism() -> Outcome {
    let t = fixtures::torus();
    let med = SandpileGroup::new(t.medial())?;
    let image = t.phi(&[0, 0, -1, 0])?;
    let example = med.equivalent(&image, &ChipConfig(vec![-1, 0, 1, 0]));
    let (ok, detail) = from_report(verify::run("phi-isomorphism", SEED)?)?;
    Ok((ok && example, format!("phi(0,0,-1,0) = {:?} ~ (-1,0,1,0): {example}; {detail}", image.0)))
}

fn bernardi_data() -> Outcome {
    let t = fixtures::torus();
    let e1 = t.graph().edge_id("e1")?;
    let o1 = t.bernardi_orientation(&edges(&t, &["e1", "e2", "e3"]), e1)?;
    let o2 = t.bernardi_orientation(&edges(&t, &["e1"]), e1)?;
    let moved = bernardi_action(&t, &[0, 0, -1, 0], &edges(&t, &["e1", "e2", "e3"]))?;
    let ok = o1.0 == [-1, 1, 1, 1] && o2.0 == [-1, 1, -1, 1] && moved == edges(&t, &["e1"]);
    Ok((ok, format!("orientations {:?} and {:?} (halves), action gives {}", o1.0, o2.0, names(&t, &moved))))
}

fn action_agreement() -> Outcome {
    let torus = ribbon_sandpile::jacobian::verify_action_agreement(&fixtures::torus())?;
    let (ok, detail) = from_report(verify::run("action-agreement", SEED)?)?;
    Ok((ok && torus.pairs == 16 && torus.mismatches.is_empty(), detail))
}

fn torus_golden() -> Outcome {
    let t = fixtures::torus();
    let tr = TourRotor::new(t.medial())?;
    let start = t.quasitree_to_tour(&edges(&t, &["e1", "e2", "e3"]))?;
    let moved = tr.act_verified(&ChipConfig(vec![-1, 0, 1, 0]), &start)?;
    let q = t.tour_to_quasitree(&moved)?;
    Ok((q == edges(&t, &["e1"]), format!("lands on {}", names(&t, &q))))
}

fn main() -> ExitCode {
    let criteria: Vec<Criterion> = vec![
        ("fig1 golden tour and arborescence", Box::new(fig1_golden)),
        ("BEST count", Box::new(|| from_report(verify::run("best-count", SEED)?))),
        ("tour-rotor canonicity and simple transitivity", Box::new(|| from_report(verify::run("tour-rotor-canonical", SEED)?))),
        ("first-arc change", Box::new(|| from_report(verify::run("lemma-first-edge", SEED)?))),
        ("cycles and cuts", Box::new(|| from_report(verify::run("prop-cycles-cuts", SEED)?))),
        ("rotor equivalence against routing oracle", Box::new(|| from_report(verify::rotor_equivalence_soundness(SEED)?))),
        ("unicycle reversal and separation", Box::new(unicycle_equivalence)),
        ("root independence and planarity", Box::new(root_independence)),
        ("torus quasi-trees, Jacobian and signed cycles", Box::new(torus_suite)),
        ("phi isomorphism", Box::new(phi_isomorphism)),
        ("Bernardi orientations and action", Box::new(bernardi_data)),
        ("Bernardi and tour-rotor agreement", Box::new(action_agreement)),
        ("torus golden tour-rotor action", Box::new(torus_golden)),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = match catch_unwind(AssertUnwindSafe(check)) {
            Ok(Ok(r)) => r,
            Ok(Err(e)) => (false, format!("error: {e}")),
            Err(_) => (false, "panicked".into()),
        };
        if !ok {
            failed += 1;
        }
        let secs = start.elapsed().as_secs_f64();
        println!("{} {:>2} {name} ({secs:.2}s): {detail}", if ok { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance seed {SEED}: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
