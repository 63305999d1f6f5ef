use std::process::Command;
use std::sync::OnceLock;

use tqc_core::ajl_quantum::{build_ajl_circuit, read_ajl_csv, run_ajl, write_ajl_csv, GateLibrary, Weighting};
use tqc_core::braid_compiler::{count_words, Mode, PruneRules};
use tqc_core::knot_theory::{named_knot, Closure};
use tqc_core::tqc_simulator::{read_shots_csv, write_shots_csv, Outcome, QCState};

fn small_lib() -> &'static GateLibrary {
    static LIB: OnceLock<GateLibrary> = OnceLock::new();
    LIB.get_or_init(|| GateLibrary::build(10, 0.08).unwrap())
}

fn words_up_to(rules: &PruneRules, len: usize) -> u64 {
    count_words(rules, len)[1..].iter().sum()
}

#[test]
fn word_counts_up_to_length_18() {
    assert_eq!(words_up_to(&PruneRules::none(), 18), 91_625_968_980);
    assert_eq!(words_up_to(&PruneRules::for_mode(Mode::Weave), 18), 178_918_056);
    // The published braid-mode figure is 33,527,163; our rule set prunes more.
    assert_eq!(words_up_to(&PruneRules::for_mode(Mode::Braid), 18), 30_399_552);
}

#[test]
fn ajl_csv_round_trip() {
    let knot = named_knot("fig8", Closure::Trace).unwrap();
    let rows = run_ajl(&knot, &[5, 8, 13], 500, 3, small_lib()).unwrap();
    let mut buf = Vec::new();
    write_ajl_csv(&mut buf, &rows).unwrap();
    let back = read_ajl_csv(buf.as_slice()).unwrap();
    assert_eq!(back.len(), rows.len());
    for (a, b) in rows.iter().zip(&back) {
        assert_eq!((a.k, a.estimate, a.limit, a.exact, a.ci_halfwidth, a.ops), (b.k, b.estimate, b.limit, b.exact, b.ci_halfwidth, b.ops));
    }
    assert!(read_ajl_csv("k,x\n".as_bytes()).is_err());
}

#[test]
fn shots_csv_round_trip() {
    let mut reg = QCState::initialise(2, 9).unwrap();
    reg.braid_one(&[1, -2, 1, 1], 1).unwrap();
    let shots: Vec<Outcome> = (0..50)
        .map(|s| {
            let mut r = reg.clone();
            r.reseed(s);
            r.measure()
        })
        .chain([Outcome::Error])
        .collect();
    let mut buf = Vec::new();
    write_shots_csv(&mut buf, &shots).unwrap();
    assert_eq!(read_shots_csv(buf.as_slice()).unwrap(), shots);
}

#[test]
fn trace_estimates_converge_as_inverse_square_root() {
    let knot = named_knot("trefoilL", Closure::Trace).unwrap();
    let circ = build_ajl_circuit(&knot, 7, small_lib(), Weighting::Uniform).unwrap();
    let limit = circ.limit_trace();
    let ns = [100u64, 400, 1600, 6400];
    let (mut lx, mut ly) = (Vec::new(), Vec::new());
    for (i, &n) in ns.iter().enumerate() {
        let rms = ((0..100)
            .map(|r| (circ.estimate_trace(n, 5, (i * 100 + r) as u64).unwrap().value - limit).norm_sqr())
            .sum::<f64>()
            / 100.0)
            .sqrt();
        lx.push((n as f64).ln());
        ly.push(rms.ln());
    }
    let m = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (mx, my) = (m(&lx), m(&ly));
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    let syy: f64 = ly.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = sxy * sxy / (sxx * syy);
    assert!(r2 > 0.9, "R² {r2}");
    assert!((slope + 0.5).abs() < 0.1, "slope {slope}");
}

fn tqc(args: &[&str]) -> (bool, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_tqc")).args(args).output().unwrap();
    (out.status.success(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn cli_oracle_and_exact() {
    let (ok, csv) = tqc(&["oracle", "--knot", "hopf+", "--k", "4:5"]);
    assert!(ok);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "k,Re_jones,Im_jones,Re_path,Im_path");
    assert_eq!(lines.len(), 3);

    let dir = std::env::temp_dir().join(format!("tqc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let knot_file = dir.join("hopf.txt");
    std::fs::write(&knot_file, "n=4 closure=plat\n2 2\n").unwrap();
    let args = ["exact", "--knot-file", knot_file.to_str().unwrap(), "--iters", "2000", "--seed", "4"];
    let (ok, a) = tqc(&args);
    let (_, b) = tqc(&args);
    assert!(ok);
    assert_eq!(a, b);
    assert!(a.starts_with("model,k,iters,zeros,p_hat,magnitude,lower,upper,limit,exact\nfib,5,2000,"));

    assert!(!tqc(&["exact", "--knot", "hopf+", "--iters", "10"]).0, "seed is required");
    assert!(!tqc(&["ajl", "--knot", "hopf+", "--closure", "trace", "--k", "2", "--iters", "1", "--seed", "1"]).0);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn cli_compile_uses_cache() {
    let cache = std::env::temp_dir().join(format!("tqc-compile-{}.tsv", std::process::id()));
    let path = cache.to_str().unwrap();
    let (ok, first) = tqc(&["compile", "--target", "not", "--max-length", "8", "--cache", path]);
    assert!(ok);
    let (ok, second) = tqc(&["compile", "--target", "not", "--max-length", "1", "--cache", path, "--accept", "1"]);
    assert!(ok);
    assert_eq!(first, second);
    std::fs::remove_file(cache).unwrap();
}
