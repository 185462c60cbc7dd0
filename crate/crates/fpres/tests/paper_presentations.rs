//! Manual smoke runs of the enumerator on the dataset presentations.

use fpres::{parse_presentation, todd_coxeter, TcOptions, TcOutcome, TcStrategy};

fn data(path: &str) -> String {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/");
    std::fs::read_to_string(format!("{root}{path}")).expect("dataset file")
}

fn run(file: &str, sub: Option<&str>, max: usize) -> usize {
    let t0 = std::time::Instant::now();
    let p = parse_presentation(&data(file)).unwrap();
    let subgroup = match sub {
        Some(name) => p.subgroup(name).expect("named subgroup").to_vec(),
        None => Vec::new(),
    };
    let opts = TcOptions {
        max_cosets: max,
        strategy: TcStrategy::Hlt,
    };
    match todd_coxeter(&p, &subgroup, &opts).unwrap() {
        TcOutcome::Complete(t) => {
            println!("{file} -> index {} in {:?}", t.index(), t0.elapsed());
            t.index()
        }
        TcOutcome::Overflow { live, defined } => {
            panic!("{file}: overflow live={live} defined={defined} after {:?}", t0.elapsed())
        }
    }
}

#[test]
#[ignore]
fn e5_degree_88() {
    assert_eq!(run("fp/e5.fp", Some("u"), 2_000_000), 88);
}

#[test]
#[ignore]
fn h_co2_degree_512() {
    assert_eq!(run("fp/h_co2.fp", Some("t"), 2_000_000), 512);
}

#[test]
#[ignore]
fn h_fi22_degree_1024() {
    assert_eq!(run("fp/h_fi22.fp", Some("t"), 2_000_000), 1024);
}

#[test]
#[ignore]
fn d_fi22_degree_1024() {
    assert_eq!(run("fp/d_fi22.fp", Some("u"), 2_000_000), 1024);
}

#[test]
#[ignore]
fn d_co2_degree_512() {
    assert_eq!(run("fp/d_co2.fp", Some("w"), 2_000_000), 512);
}

#[test]
#[ignore]
fn a22_regular_degree_887040() {
    assert_eq!(run("fp/a22.fp", None, 4_000_000), 887_040);
}

#[test]
#[ignore]
fn praeger_soicher_co2_46575() {
    assert_eq!(run("fp/ps_co2.fp", Some("q"), 4_000_000), 46_575);
}

#[test]
#[ignore]
fn praeger_soicher_fi22_142155() {
    assert_eq!(run("fp/ps_fi22.fp", Some("q"), 4_000_000), 142_155);
}
