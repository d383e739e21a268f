//! Runs the eleven acceptance criteria at their stated bounds and prints one
//! line per criterion. Exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use tableau_orders::embedding::Embedding;
use tableau_orders::harness::{run_check, run_check_in_field, CheckName, CheckReport, RunConfig};
use tableau_orders::linalg::PrimeField;
use tableau_orders::nilpotent::{ModuleElement, ModuleShape};
use tableau_orders::orders::{
    box_moves_lr, box_moves_syt, box_path_lr, box_path_syt, dom_leq_lr, dom_leq_syt, phi,
    MoveRecord,
};
use tableau_orders::ses::{ses_gap, ses_nogap2};
use tableau_orders::{LrTableau, Partition, StandardTableau};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(v: &[usize]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn syt(text: &str) -> StandardTableau {
    let rows = text
        .split(',')
        .map(|r| r.chars().map(|c| c.to_digit(10).unwrap() as usize).collect())
        .collect();
    StandardTableau::from_rows(rows).unwrap()
}

/// A rook strip in a staircase; `entries[c - 1]` sits at the bottom of
/// column `c`.
fn staircase(entries: &[usize]) -> LrTableau {
    let n = entries.len();
    let outer = Partition::new((1..=n).rev().collect()).unwrap();
    let inner = Partition::new((1..n).rev().collect()).unwrap();
    let cells: Vec<(usize, usize, usize)> = entries
        .iter()
        .enumerate()
        .map(|(i, &e)| (n - i, i + 1, e))
        .collect();
    LrTableau::from_cells(&outer, &inner, &cells).unwrap()
}

fn from_report(r: CheckReport) -> Outcome {
    let summary = format!("{} instances, digest {}", r.instances, r.digest);
    if r.passed {
        Ok(summary)
    } else {
        Err(format!("{summary}; counterexample {}", r.counterexample.unwrap_or_default()))
    }
}

fn check(name: CheckName, cfg: &RunConfig) -> Outcome {
    run_check(name, cfg).map_err(|e| e.to_string()).and_then(from_report)
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.to_string())
    }
}

fn cfg() -> RunConfig {
    RunConfig::default()
}

/// Bounds used for criterion 6 and the field comparison of its outputs.
fn ses_cfg() -> RunConfig {
    RunConfig {
        max_height: 7,
        ..cfg()
    }
}

fn criterion_1() -> Outcome {
    check(CheckName::BoxEqDom, &RunConfig { max_weight_r: 6, ..cfg() })
}

fn criterion_2() -> Outcome {
    check(CheckName::FMap, &RunConfig { max_weight_r: 5, ..cfg() })
}

fn criterion_3() -> Outcome {
    check(
        CheckName::PhiOrders,
        &RunConfig {
            max_weight_r: 5,
            max_beta_weight: 10,
            ..cfg()
        },
    )
}

fn criterion_4() -> Outcome {
    check(CheckName::PoleTableau, &cfg())
}

fn criterion_5() -> Outcome {
    check(CheckName::DmnTableau, &cfg())
}

fn criterion_6() -> Outcome {
    let summary = check(CheckName::SesExactness, &ses_cfg())?;
    let f = PrimeField::new(2).unwrap();
    let pole = |m: &[usize]| Embedding::pole(f, m).unwrap();
    let gap = ses_gap(f, &[1, 2, 4], &[]).map_err(|e| e.to_string())?;
    ensure(gap.is_exact(), "first example sequence is not exact")?;
    ensure(gap.left == pole(&[4]), "first example: left term is not P(4)")?;
    ensure(
        gap.middle == Embedding::d_embedding(f, &[1, 2, 4], &[]).unwrap(),
        "first example: middle term is not D((1,2,4),())",
    )?;
    ensure(gap.right == pole(&[1, 2]), "first example: right term is not P(1,2)")?;
    let nogap = ses_nogap2(f, &[1, 2, 4, 6], &[3, 5]).map_err(|e| e.to_string())?;
    ensure(nogap.is_exact(), "second example sequence is not exact")?;
    let left = pole(&[3, 5, 6])
        .direct_sum(&Embedding::empty(f, &p(&[6])))
        .unwrap();
    ensure(nogap.left == left, "second example: left term is not P(3,5,6)+E(6)")?;
    ensure(
        nogap.middle == Embedding::d_embedding(f, &[1, 2, 4, 6], &[3, 5]).unwrap(),
        "second example: middle term is not D((1,2,4,6),(3,5))",
    )?;
    ensure(nogap.right == pole(&[1, 2, 4]), "second example: right term is not P(1,2,4)")?;
    Ok(format!("{summary}; both example sequences reproduced"))
}

fn criterion_7() -> Outcome {
    check(CheckName::ExtWitness, &cfg())
}

fn criterion_8() -> Outcome {
    let fixtures = tableau_orders::harness::fixture_embeddings(PrimeField::new(2).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(fixtures.len() >= 200, "fewer than 200 fixture embeddings")?;
    let summary = check(CheckName::HomFormula, &cfg())?;
    Ok(format!("{} fixtures, {summary}", fixtures.len()))
}

fn criterion_9() -> Outcome {
    check(CheckName::ExtHomDom, &cfg())
}

fn criterion_10() -> Outcome {
    let runs = [
        (CheckName::PoleTableau, cfg()),
        (CheckName::DmnTableau, cfg()),
        (CheckName::SesExactness, ses_cfg()),
        (CheckName::ExtWitness, cfg()),
        (CheckName::HomFormula, cfg()),
        (CheckName::ExtHomDom, cfg()),
    ];
    let primes = [2, 3, 5];
    for (name, c) in &runs {
        let mut reference: Option<CheckReport> = None;
        for p in primes {
            let r = run_check_in_field(*name, c, p).map_err(|e| e.to_string())?;
            if !r.passed {
                return Err(format!("{name} fails over F_{p}"));
            }
            if let Some(reference) = &reference {
                if reference.digest != r.digest || reference.instances != r.instances {
                    return Err(format!("{name} output over F_{p} differs from F_2"));
                }
            } else {
                reference = Some(r);
            }
        }
    }
    Ok(format!("{} checks agree over F_2, F_3, F_5", runs.len()))
}

fn criterion_11() -> Outcome {
    // Σ as a chain of shapes
    let sigma = syt("124,367,5");
    let chain: Vec<String> = sigma.to_chain().steps().iter().map(|s| s.to_string()).collect();
    ensure(
        chain.join(" ") == "[1] [1,1] [2,1] [2,1,1] [3,1,1] [3,2,1] [3,2,2]",
        &format!("Σ chain is {chain:?}"),
    )?;
    ensure(sigma.shape() == &p(&[3, 2, 2]), "Σ shape")?;

    // Π ≤dom Σ and the three-move box path
    let pi = syt("13,25,4");
    let sigma2 = syt("123,45");
    let pchain: Vec<String> = pi.to_chain().steps().iter().map(|s| s.to_string()).collect();
    let schain: Vec<String> = sigma2.to_chain().steps().iter().map(|s| s.to_string()).collect();
    ensure(pchain.join(" ") == "[1] [2] [2,1] [3,1] [3,2]", "Π chain")?;
    ensure(schain.join(" ") == "[1] [1,1] [1,1,1] [2,1,1] [2,2,1]", "Σ' chain")?;
    ensure(dom_leq_syt(&pi, &sigma2).unwrap(), "Π ≤dom Σ'")?;
    let steps = [
        (syt("124,35"), MoveRecord::Swap { smaller: 3, larger: 4 }),
        (syt("12,35,4"), MoveRecord::Wind { entry: 4, from_row: 1, to_row: 3 }),
        (pi.clone(), MoveRecord::Swap { smaller: 2, larger: 3 }),
    ];
    let mut cur = sigma2.clone();
    for (next, mv) in &steps {
        ensure(
            box_moves_syt(&cur).contains(&(next.clone(), mv.clone())),
            &format!("{mv:?} does not take {cur} to {next}"),
        )?;
        cur = next.clone();
    }
    ensure(
        box_path_syt(&pi, &sigma2).map(|p| p.len()) == Some(3),
        "shortest box path from Σ' to Π is not of length 3",
    )?;

    // Δ, Γ of shape (5,4,3,2,1)∖(4,3,2,1)
    let delta = staircase(&[2, 3, 1, 2, 1]);
    let gamma = staircase(&[2, 2, 1, 1, 1]);
    let dchain: Vec<String> = delta.chain().iter().map(|s| s.to_string()).collect();
    let gchain: Vec<String> = gamma.chain().iter().map(|s| s.to_string()).collect();
    ensure(
        dchain.join(" ") == "[4,3,2,1] [4,3,3,1,1] [5,3,3,2,1] [5,4,3,2,1]",
        &format!("Δ chain is {dchain:?}"),
    )?;
    ensure(
        gchain.join(" ") == "[4,3,2,1] [4,3,3,2,1] [5,4,3,2,1]",
        &format!("Γ chain is {gchain:?}"),
    )?;
    ensure(delta.content() == p(&[3, 2]) && gamma.content() == p(&[2, 2, 1]), "contents")?;
    ensure(dom_leq_lr(&delta, &gamma).unwrap(), "Δ ≤dom Γ")?;
    ensure(
        box_path_lr(&delta, &gamma).map(|p| p.len()) == Some(2),
        "Δ is not two box moves below Γ",
    )?;

    // Φ images
    let d6 = staircase(&[1, 3, 2, 2, 1, 1]);
    let g6 = staircase(&[2, 3, 2, 1, 1, 1]);
    let (pd, pg) = (phi(&d6).unwrap(), phi(&g6).unwrap());
    ensure(pd.to_string() == "{126,34,5}", &format!("Φ(Δ) is {pd}"))?;
    ensure(pg.to_string() == "{123,46,5}", &format!("Φ(Γ) is {pg}"))?;
    ensure(
        box_moves_lr(&g6).iter().any(|(t, _)| t == &d6),
        "the six-row tableaux are not one swap apart",
    )?;
    let g9 = staircase(&[1, 1, 1, 3, 2, 1, 1, 2, 1]);
    let d9 = staircase(&[1, 1, 1, 3, 2, 1, 3, 2, 1]);
    let (p9, q9) = (phi(&g9).unwrap(), phi(&d9).unwrap());
    ensure(p9.to_string() == "{134789,25,6}", &format!("nine-box Φ(Γ) is {p9}"))?;
    ensure(q9.to_string() == "{14789,25,36}", &format!("nine-box Φ(Δ) is {q9}"))?;
    ensure(
        box_moves_lr(&g9).contains(&(d9, MoveRecord::LrIncrease { column: 7, old: 1, new: 3 })),
        "nine-box Δ is not an increase move below Γ",
    )?;

    // P((1,3,4)) = ((t²b₁ + t b₂) ⊂ N(5,2))
    let f = PrimeField::new(2).unwrap();
    let x = Embedding::pole(f, &[1, 3, 4]).unwrap();
    let shape = ModuleShape::new(vec![5, 2]).unwrap();
    ensure(x.ambient() == &shape, &format!("ambient is {}", x.ambient()))?;
    let expected = ModuleElement::parse(f, &shape, "t^2*b_1 + t*b_2").unwrap();
    ensure(x.generators() == [expected], "P((1,3,4)) generator")?;
    let rendered = format!("({}) ⊂ {}", x.generators()[0], x.ambient());
    ensure(rendered == "(t^2*b_1 + t*b_2) ⊂ N(5,2)", &format!("rendered as {rendered}"))?;
    ensure(x.generators()[0].height_sequence() == vec![1, 3, 4], "height sequence")?;
    Ok("all fixtures reproduced".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1 box = dom on T_r, r <= 6", criterion_1),
        ("2 square embedding f, r <= 5", criterion_2),
        ("3 Phi preserves both orders, |beta| <= 10", criterion_3),
        ("4 pole tableaux, entries <= 8", criterion_4),
        ("5 D(m,n) tableaux, m_r <= 8", criterion_5),
        ("6 short exact sequences, m_r <= 7", criterion_6),
        ("7 ext witnesses, |beta| <= 9", criterion_7),
        ("8 hom formula, i, l <= 8", criterion_8),
        ("9 ext => hom => dom", criterion_9),
        ("10 field independence over 2, 3, 5", criterion_10),
        ("11 worked fixtures", criterion_11),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS criterion {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({secs:.1}s): {msg}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
