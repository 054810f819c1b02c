use std::sync::mpsc;
use std::thread;
use std::time::Duration;

use anyhow::Result;
use clap::ValueEnum;
use cohowork_core::chern16::{self, MergedClassFunction};
use cohowork_core::cochain::cohomology_u1;
use cohowork_core::constants::{self, Constant};
use cohowork_core::datasets;
use cohowork_core::foxone::h1;
use cohowork_core::groupkit::table;
use cohowork_core::repfun::{fixed_points, quotient_module};
use cohowork_core::specseq::{kunneth_degree4_z, large_primes_table, IntegralCohomology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::table::Table;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    LargePrimes,
    Co1H1,
    Chern,
    Kunneth,
    All,
}

impl Suite {
    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::LargePrimes, Suite::Co1H1, Suite::Chern, Suite::Kunneth],
            s => vec![s],
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::LargePrimes => "large-primes",
            Suite::Co1H1 => "co1-h1",
            Suite::Chern => "chern",
            Suite::Kunneth => "kunneth",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Skipped,
}

pub struct Row {
    pub claim: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl Row {
    fn new(claim: impl Into<String>, expected: impl Into<String>, computed: impl Into<String>) -> Self {
        let (expected, computed) = (expected.into(), computed.into());
        let status = if expected == computed {
            Status::Match
        } else {
            Status::Mismatch
        };
        Row {
            claim: claim.into(),
            expected,
            computed,
            status,
        }
    }
}

pub struct SuiteReport {
    pub suite: Suite,
    pub rows: Vec<Row>,
    pub constants: Vec<&'static Constant>,
}

/// Runs `f` on a worker thread, giving up after `secs` seconds.
pub fn with_budget<T: Send + 'static>(secs: u64, f: impl FnOnce() -> T + Send + 'static) -> Option<T> {
    if secs == 0 {
        return None;
    }
    let (tx, rx) = mpsc::channel();
    thread::spawn(move || {
        let _ = tx.send(f());
    });
    rx.recv_timeout(Duration::from_secs(secs)).ok()
}

fn large_primes() -> Result<SuiteReport> {
    let rows = large_primes_table()?
        .into_iter()
        .map(|r| {
            Row::new(
                format!("H3(M, U(1)) at p = {} ({})", r.p, r.method),
                "0",
                r.value.to_string(),
            )
        })
        .collect();
    Ok(SuiteReport {
        suite: Suite::LargePrimes,
        rows,
        constants: vec![
            constants::lookup("monster_order")?,
            constants::lookup("large_prime_sylow_normalizer")?,
        ],
    })
}

fn co1_h1() -> Result<SuiteReport> {
    let pres = datasets::co1_presentation()?;
    let alt = datasets::co1_rep()?.alt2()?;
    let fix = fixed_points(&alt)?;
    let quot = quotient_module(&alt, &fix.to_rows())?;
    Ok(SuiteReport {
        suite: Suite::Co1H1,
        rows: vec![
            Row::new("H1(Co1, Alt2 V), V = Leech mod 2", "Z2", h1(&pres, &alt)?.to_string()),
            Row::new("H1(Co1, Alt2 V / invariants)", "Z2", h1(&pres, &quot)?.to_string()),
        ],
        constants: vec![],
    })
}

const PRINTED_MATRIX: [&str; 4] = [
    "1/16 1/16 1/16 1/16 1/8 1/8 1/8",
    "1/16 1/16 1/16 1/16 1/8 -1/8 -1/8",
    "5/8 -3/8 1/8 1/8 -1/4 0 0",
    "1/4 1/4 -1/4 -1/4 0 0 0",
];

fn chern() -> Result<SuiteReport> {
    let mut rows = Vec::new();
    let m = chern16::merged_decomposition_matrix()?;
    for (i, expected) in PRINTED_MATRIX.iter().enumerate() {
        let computed: Vec<String> = m[i].iter().map(|r| r.to_string()).collect();
        rows.push(Row::new(
            format!("decomposition weights of class {}", chern16::MERGED_LABELS[i]),
            *expected,
            computed.join(" "),
        ));
    }
    let k = chern16::chern_constants()?;
    rows.push(Row::new("c2(V4) in units of c2(V6)", "4", k.c2_v4.to_string()));
    rows.push(Row::new("c2(V5) in units of c2(V6)", "9", k.c2_v5.to_string()));
    rows.push(Row::new("c2(V2 + V3)", "0", k.c2_v2_plus_v3.to_string()));
    let sym3 = MergedClassFunction::new([4, -4, 0, 0]);
    rows.push(Row::new(
        "c2(Sym3 V6)",
        "10",
        chern16::c2_restricted(&sym3)?.to_string(),
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut nonzero = 0;
    for _ in 0..1000 {
        let n4 = 8 * rng.gen_range(0..6i64);
        let b = rng.gen_range(0..=n4);
        let n5 = 16 * rng.gen_range(0..6i64);
        let n = [rng.gen_range(0..40), b, n4 - b, n4 - b, n4, n5, n5];
        let chi = MergedClassFunction::of_multiplicities(&n)?;
        if !chern16::verify_monster_divisibility(&chi)?.passes() || chern16::c2_restricted(&chi)? != 0 {
            nonzero += 1;
        }
    }
    rows.push(Row::new(
        "c2 restricts to 0 on divisible columns (1000 random)",
        "0 failures",
        format!("{nonzero} failures"),
    ));
    Ok(SuiteReport {
        suite: Suite::Chern,
        rows,
        constants: vec![
            constants::lookup("q16_monster_class_fusion")?,
            constants::lookup("mckay_h4_integral")?,
        ],
    })
}

fn kunneth(budget: u64) -> Result<SuiteReport> {
    let mut rows = Vec::new();
    for p in [2usize, 3] {
        let zp = IntegralCohomology::from_table(&table::cyclic(p))?;
        let square = table::elementary_abelian(p, 2)?;
        rows.push(Row::new(
            format!("H3(Z{p}^2, U(1)) bar cochains vs Kunneth"),
            kunneth_degree4_z(&zp, &zp).to_string(),
            cohomology_u1(&square, 3)?.to_string(),
        ));
    }
    let part = IntegralCohomology::semidirect_p_part(11, 5)?;
    rows.push(Row::new(
        "11-part of H4((11:5)^2, Z)",
        "0",
        kunneth_degree4_z(&part, &part).p_part(11).to_string(),
    ));
    let claim = "H3(Q16, U(1)) by bar cochains";
    let expected = constants::lookup("mckay_h4_integral")?.value_text();
    match with_budget(budget, || table::dicyclic(16).and_then(|q| cohomology_u1(&q, 3))) {
        Some(h) => rows.push(Row::new(claim, expected, h?.to_string())),
        None => rows.push(Row {
            claim: claim.into(),
            expected,
            computed: format!("not run within {budget} s"),
            status: Status::Skipped,
        }),
    }
    Ok(SuiteReport {
        suite: Suite::Kunneth,
        rows,
        constants: vec![constants::lookup("mckay_h4_integral")?],
    })
}

fn run_one(s: Suite, budget: u64) -> Result<SuiteReport> {
    match s {
        Suite::LargePrimes => large_primes(),
        Suite::Co1H1 => co1_h1(),
        Suite::Chern => chern(),
        Suite::Kunneth => kunneth(budget),
        Suite::All => unreachable!(),
    }
}

/// Runs the requested suites concurrently; reports come back in suite order.
pub fn run(suite: Suite, budget: u64) -> Result<Vec<SuiteReport>> {
    let parts = suite.parts();
    thread::scope(|scope| {
        let handles: Vec<_> = parts.iter().map(|&s| scope.spawn(move || run_one(s, budget))).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err(anyhow::anyhow!("suite panicked"))))
            .collect()
    })
}

pub fn to_table(reports: &[SuiteReport]) -> Table {
    let mut t = Table::new(&["suite", "claim", "expected", "computed", "status"]);
    for r in reports {
        for row in &r.rows {
            let status = match row.status {
                Status::Match => "match",
                Status::Mismatch => "MISMATCH",
                Status::Skipped => "skipped",
            };
            t.push(vec![
                r.suite.name().into(),
                row.claim.clone(),
                row.expected.clone(),
                row.computed.clone(),
                status.into(),
            ]);
        }
    }
    t
}

pub fn cited_constants(reports: &[SuiteReport]) -> Vec<&'static Constant> {
    let mut out: Vec<&'static Constant> = Vec::new();
    for c in reports.iter().flat_map(|r| r.constants.iter().copied()) {
        if !out.iter().any(|o| o.name == c.name) {
            out.push(c);
        }
    }
    out
}
