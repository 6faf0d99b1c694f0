use std::fs;
use std::path::PathBuf;

use unireal::extract::extract;
use unireal::interp::{BaseInterpretation, InterpName};
use unireal::kernel::KernelError;
use unireal::pipeline::{load_proof, proof_files, RealizerFile};
use unireal::term::{evaluate, EvalResult, Term};

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

#[test]
fn every_corpus_proof_checks() {
    let files = proof_files(&corpus()).unwrap();
    assert!(files.len() >= 15, "only {} proofs", files.len());
    for f in &files {
        let pf = load_proof(f).unwrap();
        pf.check()
            .unwrap_or_else(|e| panic!("{}: {e}", f.display()));
    }
}

#[test]
fn corpus_covers_every_axiom_schema() {
    let mut seen = std::collections::BTreeSet::new();
    for f in proof_files(&corpus()).unwrap() {
        for ax in load_proof(&f).unwrap().proof.axioms() {
            seen.insert(ax.schema_name());
        }
    }
    for s in [
        "efq",
        "refl",
        "sym",
        "trans",
        "nat-eq",
        "nat-zero",
        "nat-succ",
        "succ-inj",
        "succ-not-zero",
        "ind",
    ] {
        assert!(seen.contains(s), "no proof uses {s}");
    }
}

pub const BROKEN: [(&str, &str); 5] = [
    ("antecedent-mismatch", "root/1"),
    ("eigenvariable", "root"),
    ("missing-hypothesis", "root/0/1"),
    ("wrong-claim", "root"),
    ("wrong-witness", "root/0/0"),
];

#[test]
fn broken_variants_are_rejected_at_the_faulty_node() {
    let dir = corpus().join("broken");
    assert_eq!(proof_files(&dir).unwrap().len(), BROKEN.len());
    for (name, path) in BROKEN {
        let pf = load_proof(&dir.join(format!("{name}.proof"))).unwrap();
        let err = pf.check().expect_err(name);
        assert_eq!(err.path(), Some(path), "{name}: {err}");
    }
    let eig = load_proof(&dir.join("eigenvariable.proof")).unwrap();
    assert!(matches!(
        eig.check(),
        Err(KernelError::EigenvariableViolation { .. })
    ));
}

#[test]
fn extraction_matches_golden_files() {
    let golden = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut compared = 0;
    for f in proof_files(&corpus()).unwrap() {
        let pf = load_proof(&f).unwrap();
        let c = pf.check().unwrap();
        for i in InterpName::ALL {
            let g = golden.join(format!("{}.{}.real", pf.theorem, i));
            match extract(&c, &BaseInterpretation::new(i)) {
                Ok(e) => {
                    let text = format!("{}\n", RealizerFile::from_extraction(&pf.theorem, &e));
                    let want = fs::read_to_string(&g)
                        .unwrap_or_else(|_| panic!("missing golden file {}", g.display()));
                    assert_eq!(text, want, "{}", g.display());
                    assert_eq!(RealizerFile::parse(&want).unwrap().terms, e.terms);
                    compared += 1;
                }
                Err(_) => assert!(!g.exists(), "{} exists but extraction fails", g.display()),
            }
        }
    }
    assert!(compared > 100);
}

fn run1(t: &Term, arg: u64) -> Term {
    match evaluate(&[Term::app(t.clone(), vec![Term::Num(arg)])], &[], 100_000) {
        EvalResult::Value(mut v) => v.remove(0),
        other => panic!("{other:?}"),
    }
}

#[test]
fn predecessor_realizer_computes_predecessor() {
    let pf = load_proof(&corpus().join("predecessor.proof")).unwrap();
    let c = pf.check().unwrap();
    for i in [InterpName::Kleene, InterpName::Kreisel, InterpName::Bounded] {
        let e = extract(&c, &BaseInterpretation::new(i)).unwrap();
        assert_eq!(e.terms.len(), 1);
        for n in 0..=8u64 {
            assert_eq!(
                run1(&e.terms[0], n),
                Term::Num(n.saturating_sub(1)),
                "{i} at {n}"
            );
        }
    }
}

#[test]
fn successor_realizer_computes_successor() {
    let pf = load_proof(&corpus().join("successor.proof")).unwrap();
    let c = pf.check().unwrap();
    let e = extract(&c, &BaseInterpretation::new(InterpName::Kreisel)).unwrap();
    for n in 0..=8u64 {
        assert_eq!(run1(&e.terms[0], n), Term::Num(n + 1));
    }
}

#[test]
fn two_realizer_is_two() {
    let pf = load_proof(&corpus().join("two.proof")).unwrap();
    let c = pf.check().unwrap();
    let e = extract(&c, &BaseInterpretation::new(InterpName::Kleene)).unwrap();
    assert_eq!(e.terms, vec![Term::Num(2)]);
}
