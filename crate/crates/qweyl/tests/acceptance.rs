//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit
//! if any criterion fails.

use std::process::Command;
use std::time::Instant;

use qweyl::export;
use qweyl::report::{verify, Suite};
use qweyl_core::crystal::node_label;
use qweyl_core::iqg::{irreducibility_witness, spanning_witness};
use qweyl_core::modweyl::{constant_reduction_witness, iota_consistency, ModWeylTable};
use qweyl_core::operator::apply_word;
use qweyl_core::poly::monomials_up_to_degree;
use qweyl_core::satake::all_specs;
use qweyl_core::scalar::q_integer;
use qweyl_core::weyl::leibniz_check;
use qweyl_core::{
    Crystal, DiagramKind, DiagramSpec, ExponentVector, OscillatorTable, QPolynomial, SatakeDiagram, ScalarQ,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn diagram(spec: DiagramSpec) -> SatakeDiagram {
    SatakeDiagram::from_spec(spec).expect("valid spec")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite_passes(d: &SatakeDiagram, suite: Suite, max: u32) -> Check {
    let rep = verify(d, suite, max).map_err(|e| e.to_string())?;
    let bad: Vec<String> = rep.failing().map(|c| format!("{}:{}", c.suite, c.id)).collect();
    ensure(bad.is_empty(), || format!("{}: failing {}", d.spec(), bad.join(" ")))
}

fn relations_through_realization() -> Check {
    for spec in all_specs(2) {
        suite_passes(&diagram(spec), Suite::Iqg, 4)?;
    }
    Ok(())
}

fn example_crystal_graph() -> Check {
    let c = Crystal::new(&SatakeDiagram::build(DiagramKind::I, 1).unwrap()).map_err(|e| e.to_string())?;
    let g = c.graph(3).map_err(|e| e.to_string())?;
    let nodes: Vec<String> = g.nodes.iter().map(node_label).collect();
    let want_nodes = ["300", "210", "201", "120", "111", "102", "030", "021", "012", "003"];
    ensure(nodes == want_nodes, || format!("nodes {nodes:?}"))?;
    let mut edges: Vec<(usize, String, String)> =
        g.edges.iter().map(|e| (e.color, node_label(&e.from), node_label(&e.to))).collect();
    edges.sort();
    let mut want: Vec<(usize, String, String)> = [
        (0, "300", "210"),
        (0, "210", "120"),
        (0, "120", "030"),
        (0, "201", "111"),
        (0, "111", "021"),
        (0, "102", "012"),
        (1, "210", "201"),
        (1, "120", "111"),
        (1, "111", "102"),
        (1, "030", "021"),
        (1, "021", "012"),
        (1, "012", "003"),
    ]
    .iter()
    .map(|(i, a, b)| (*i, a.to_string(), b.to_string()))
    .collect();
    want.sort();
    ensure(edges == want, || format!("edges {edges:?}"))
}

fn crystal_axioms() -> Check {
    let specs = [
        (DiagramKind::I, 0),
        (DiagramKind::I, 1),
        (DiagramKind::I, 2),
        (DiagramKind::III, 1),
        (DiagramKind::III, 2),
        (DiagramKind::A1Aff, 0),
    ];
    for (kind, r) in specs {
        let c = Crystal::new(&SatakeDiagram::build(kind, r).unwrap()).map_err(|e| e.to_string())?;
        for s in 0..=5 {
            let rep = c.axioms_check(s).map_err(|e| e.to_string())?;
            ensure(rep.is_ok(), || format!("{kind}:r={r} s={s}: {rep:?}"))?;
        }
    }
    Ok(())
}

fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize) -> QPolynomial {
    let mut p = QPolynomial::zero(nvars);
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..5) {
            let a = ExponentVector::new((0..nvars).map(|_| rng.gen_range(0..3)).collect());
            let c = &ScalarQ::q_pow(rng.gen_range(-3..4)) * &ScalarQ::from_integer(rng.gen_range(-4..5));
            p.add_term(a, &c).unwrap();
        }
    }
    p
}

fn witnesses() -> Check {
    let specs = all_specs(2);
    for &spec in &specs {
        let d = diagram(spec);
        let modweyl = ModWeylTable::for_diagram(&d);
        let osc = OscillatorTable::new(&d);
        for a in monomials_up_to_degree(d.nvars(), 5) {
            let p = QPolynomial::monomial(a.clone(), ScalarQ::one());
            let w = constant_reduction_witness(&d, &p).map_err(|e| e.to_string())?;
            let got = apply_word(&w.word, &p, &modweyl).map_err(|e| e.to_string())?;
            ensure(got == QPolynomial::one(d.nvars()).scale(&w.predicted), || format!("{spec} reduce {a}"))?;
            if spec.kind == DiagramKind::VI {
                continue;
            }
            for w in [irreducibility_witness(&d, &a), spanning_witness(&d, &a)] {
                let w = w.map_err(|e| e.to_string())?;
                ensure(!w.predicted.is_zero() && w.verify(&osc).unwrap_or(false), || format!("{spec} witness {a}"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for n in 0..100 {
        let d = diagram(specs[n % specs.len()]);
        let p = random_polynomial(&mut rng, d.nvars());
        let w = constant_reduction_witness(&d, &p).map_err(|e| e.to_string())?;
        let got = apply_word(&w.word, &p, &ModWeylTable::for_diagram(&d)).map_err(|e| e.to_string())?;
        ensure(got == QPolynomial::one(d.nvars()).scale(&w.predicted), || format!("random polynomial {p}"))?;
    }
    let i0 = SatakeDiagram::build(DiagramKind::I, 0).unwrap();
    let a = ExponentVector::new(vec![1, 2]);
    let up = irreducibility_witness(&i0, &a).map_err(|e| e.to_string())?;
    let down = spanning_witness(&i0, &a).map_err(|e| e.to_string())?;
    ensure(up.predicted == ScalarQ::from(&q_integer(4) * &q_integer(2)), || "[4][2] instance".into())?;
    ensure(down.predicted == ScalarQ::from(&q_integer(3) * &q_integer(2)), || "[3][2] instance".into())
}

fn embedding_consistency() -> Check {
    for spec in all_specs(2) {
        let d = diagram(spec);
        let bad = iota_consistency(&d, 4).map_err(|e| e.to_string())?;
        ensure(bad.is_empty(), || format!("{spec}: {} discrepancies", bad.len()))?;
        suite_passes(&d, Suite::Modweyl, 4)?;
    }
    Ok(())
}

fn classical_baseline() -> Check {
    for r in 0..=2 {
        let d = SatakeDiagram::build(DiagramKind::I, r).unwrap();
        suite_passes(&d, Suite::Weyl, 4)?;
        suite_passes(&d, Suite::Uqsl, 4)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let nvars = rng.gen_range(1..5);
        let pick = |rng: &mut ChaCha8Rng| {
            let all = monomials_up_to_degree(nvars, 5);
            let mut p = QPolynomial::zero(nvars);
            for _ in 0..rng.gen_range(1..4) {
                let a = all[rng.gen_range(0..all.len())].clone();
                let c = &ScalarQ::q_pow(rng.gen_range(-2..3)) * &ScalarQ::from_integer(rng.gen_range(-3..4));
                p.add_term(a, &c).unwrap();
            }
            p
        };
        let (f, g) = (pick(&mut rng), pick(&mut rng));
        let i = rng.gen_range(0..nvars);
        ensure(leibniz_check(i, &f, &g).map_err(|e| e.to_string())?, || format!("Leibniz on {f} and {g}"))?;
    }
    Ok(())
}

fn mutation_sensitivity() -> Check {
    let a = SatakeDiagram::build(DiagramKind::A1Aff, 0).unwrap();
    let i = SatakeDiagram::build(DiagramKind::I, 1).unwrap();
    let mutants = [
        ("A1AFF varsigma1=-q^-3", a.with_varsigma(1, -ScalarQ::q_pow(-3))),
        ("A1AFF varsigma1=-q", a.with_varsigma(1, -ScalarQ::q_pow(1))),
        ("I:r=1 xi2=-2", i.with_xi(2, -2)),
    ];
    for (name, m) in mutants {
        let m = m.map_err(|e| e.to_string())?;
        let rep = verify(&m, Suite::Iqg, 4).map_err(|e| e.to_string())?;
        ensure(!rep.passed, || format!("{name} still passes"))?;
    }
    suite_passes(&a, Suite::Iqg, 4)?;
    suite_passes(&i, Suite::Iqg, 4)
}

fn run_cli(args: &[&str]) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_qweyl")).args(args).output().expect("binary runs");
    (out.stdout, out.status.code().unwrap_or(-1))
}

fn cli_contract() -> Check {
    let dot = ["crystal", "--diagram", "I:r=1", "--s", "3", "--format", "dot"];
    let (first, code) = run_cli(&dot);
    let (second, _) = run_cli(&dot);
    ensure(code == 0 && first == second, || "DOT output differs between runs".into())?;
    let text = String::from_utf8(first).map_err(|e| e.to_string())?;
    ensure(text.matches(" -> ").count() == 12, || "DOT edge count".into())?;
    let (json, code) = run_cli(&["crystal", "--diagram", "I:r=1", "--s", "3", "--format", "json"]);
    ensure(code == 0, || "json export failed".into())?;
    let json = String::from_utf8(json).map_err(|e| e.to_string())?;
    let graph = export::from_json(&json).map_err(|e| e.to_string())?;
    let direct = Crystal::new(&SatakeDiagram::build(DiagramKind::I, 1).unwrap()).unwrap().graph(3).unwrap();
    ensure(graph == direct && export::to_json(&graph) == json, || "JSON round trip".into())?;
    let codes = [
        (vec!["verify", "--diagram", "I:r=1", "--max-degree", "3", "--suite", "iqg"], 0),
        (vec!["verify", "--diagram", "A1AFF", "--max-degree", "2", "--suite", "iqg", "--varsigma", "1=-q^-3"], 1),
        (vec!["verify", "--diagram", "I:r=-1"], 2),
        (vec!["crystal", "--diagram", "II:r=1", "--s", "2"], 2),
        (vec!["act", "--diagram", "I:r=1", "--word", "z1", "--poly", "X0"], 2),
    ];
    for (args, want) in codes {
        let (_, got) = run_cli(&args);
        ensure(got == want, || format!("`{}` exited {got}, expected {want}", args.join(" ")))?;
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("iquantum group relations vanish through the realization, degree <= 4", relations_through_realization),
        ("crystal graph of P_3 for I:r=1 matches node-for-node and edge-for-edge", example_crystal_graph),
        ("crystal closure, f~/e~ biconditional, weight and combinatorial rule, s <= 5", crystal_axioms),
        ("constant-reduction, irreducibility and spanning witnesses are exact", witnesses),
        ("embedding agrees with direct action; modified relations hold both ways", embedding_consistency),
        ("q-Weyl and U_q(sl) relations hold; q-Leibniz on 200 seeded pairs", classical_baseline),
        ("mutated varsigma or xi makes the relation check fail", mutation_sensitivity),
        ("CLI output is byte-stable, JSON round-trips, exit codes hold", cli_contract),
    ];
    let mut failed = 0;
    for (n, (what, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {} PASS ({secs:.1}s) {what}", n + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} FAIL ({secs:.1}s) {what}: {why}", n + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
