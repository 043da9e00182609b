//! The ten acceptance criteria, one PASS/FAIL line each.

mod common;

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use becrank::bernstein::{exp_mant_direct, BerOutcome};
use becrank::bits::{dual_string, thue_morse_prefix, BitString};
use becrank::certify::{std_compare, std_compare_certified, sturm_compare, Comparer, OrderOutcome};
use becrank::closure::closure_of;
use becrank::matrix::{MatrixMethod, RelationMatrix};
use becrank::orders::{
    at0_compare, at0_geq_diff, at1_geq_diff, avg_compare, beta::beta_exact, default_methods, hlf_compare,
    influence_table, more01_incomparable, BetaEvaluator, BetaParam, FstProfile, KendallReport, TotalOutcome,
};
use becrank::reliability::{average, reliability_poly};
use common::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("degree-256 Bernstein gap at m = 8", sixteen_pixels),
        ("factored difference of 011 and 10", rsf_identity),
        ("Thue-Morse blocks ordered by the exact order", rse_lemma),
        ("closure chain 0011 >= 010 >= 1000", closure_chain),
        ("exact identities in beta", beta_identities),
        ("implications and dualities", implication_suites),
        ("lowest-term exponent and mantissa", exponent_mantissa),
        ("Kendall distances between total orders", kendall_outlier),
        ("rule-set incomparable counts", rule_monotonicity),
        ("influence decay rate", influence_scaling),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn sixteen_pixels() -> Outcome {
    let exact = RelationMatrix::build(8, &MatrixMethod::Std).map_err(|e| e.to_string())?;
    let ber = RelationMatrix::build(8, &MatrixMethod::Ber(256)).map_err(|e| e.to_string())?;
    let census = ber.census(Some(&exact)).map_err(|e| e.to_string())?;
    let bright = census.not_dimmed.unwrap();
    let missed = bright.incomparable;
    let unsound = bright.greater + bright.less + bright.equal + bright.equivalent;

    // Each missed pair: the reference N-form has both signs while Sturm counting finds no sign change.
    let strings: Vec<BitString> = BitString::all_of_length(8).collect();
    let mut confirmed = 0;
    for i in 0..256 {
        for j in 0..256 {
            if ber.get(i, j) != OrderOutcome::Incomparable || exact.get(i, j) == OrderOutcome::Incomparable || i > j {
                continue;
            }
            let diff = sub(&reliability(&strings[i]), &reliability(&strings[j]));
            let nf = n_form(&diff, 256);
            let mixed = has_negative(&nf) && nf.iter().any(Signed::is_positive);
            let sturm = sturm_compare(&strings[i], &strings[j]).map_err(|e| e.to_string())?;
            if mixed && sturm == exact.get(i, j) {
                confirmed += 2;
            }
        }
    }
    check(
        missed == 16 && confirmed == 16 && unsound == 0,
        format!("{missed} bright incomparable pixels, {confirmed} confirmed by Sturm counts and reference N-forms, {unsound} unsound"),
    )
}

fn rsf_identity() -> Outcome {
    let reference = sub(&reliability(&bs("011")), &reliability(&bs("10")));
    let factored = mul(&mul(&from_i64(&[0, 0, 0, 1]), &mul(&from_i64(&[-1, 1]), &from_i64(&[-1, 1]))), &from_i64(&[4, 1, -2, -1]));
    let library = (&reliability_poly(&bs("011")).unwrap() - &reliability_poly(&bs("10")).unwrap()).into_coeffs();
    check(
        reference == factored && library == factored,
        format!("coefficients {:?}", factored.iter().map(ToString::to_string).collect::<Vec<_>>()),
    )
}

fn rse_lemma() -> Outcome {
    let pairs = [("0110", "1001"), ("01101001", "10010110"), ("011010011001", "100101100110")];
    let mut notes = Vec::new();
    let mut ok = true;
    for (lo, hi) in pairs {
        let (lo, hi) = (bs(lo), bs(hi));
        let (outcome, cert) = std_compare_certified(&lo, &hi).map_err(|e| e.to_string())?;
        let diff = &reliability_poly(&lo).unwrap() - &reliability_poly(&hi).unwrap();
        let rechecked = cert.map(|c| c.verify(&diff).unwrap_or(false)).unwrap_or(false);
        let grid_ok = (0..=4000).all(|k| {
            let x = k as f64 / 4000.0;
            eval_f64(&hi, x) - eval_f64(&lo, x) >= -1e-12
        });
        let sturm_ok = lo.len() > 8 || sturm_compare(&lo, &hi).map_err(|e| e.to_string())? == OrderOutcome::Less;
        ok &= outcome == OrderOutcome::Less && rechecked && grid_ok && sturm_ok;
        notes.push(format!("{lo} {outcome:?}"));
    }
    check(ok, notes.join(", "))
}

fn closure_chain() -> Outcome {
    let closed = closure_of(&"ABF".parse().unwrap(), 4, false).map_err(|e| e.to_string())?;
    let first = closed.contains(&bs("0011"), &bs("010"));
    let second = closed.contains(&bs("010"), &bs("1000"));
    let sound = std_compare(&bs("0011"), &bs("010")).unwrap() == OrderOutcome::Greater
        && std_compare(&bs("010"), &bs("1000")).unwrap() == OrderOutcome::Greater;
    check(first && second && sound, format!("0011 >= 010: {first}, 010 >= 1000: {second}, both confirmed exactly: {sound}"))
}

fn beta_identities() -> Outcome {
    let minus_one = from_i64(&[-1, 1]);
    let power_minus_one = |k: usize| {
        let mut p = vec![BigInt::zero(); k + 1];
        p[0] = BigInt::from(-1);
        p[k] = BigInt::one();
        p
    };
    let mut bad = Vec::new();
    for k in 0..=8 {
        let z = "0".repeat(k);
        let (a, g) = (bs(&format!("10{z}01")), bs(&format!("01{z}10")));
        let lhs = sub(&beta_dense(&a), &beta_dense(&g));
        let library = (&becrank::orders::beta::beta_poly(&a) - &becrank::orders::beta::beta_poly(&g)).into_coeffs();
        if lhs != mul(&minus_one, &power_minus_one(k + 2)) || library != lhs {
            bad.push(format!("rsC k={k}"));
        }
    }
    for k in 1..=6 {
        let tau = thue_morse_prefix(1 << k);
        let lhs = sub(&beta_dense(&tau.complement()), &beta_dense(&tau));
        let rhs = (0..k).fold(from_i64(&[1]), |acc, j| mul(&acc, &power_minus_one(1 << j)));
        if lhs != rhs {
            bad.push(format!("rsE k={k}"));
        }
    }
    check(bad.is_empty(), format!("9 + 6 identities, failures: {bad:?}"))
}

#[derive(Default)]
struct Tally {
    checks: u64,
    violations: Vec<String>,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(what());
        } else if !ok {
            self.violations.push(String::new());
        }
    }
}

fn ber_reversed(o: BerOutcome) -> BerOutcome {
    match o {
        BerOutcome::Holds => BerOutcome::HoldsReversed,
        BerOutcome::HoldsReversed => BerOutcome::Holds,
        other => other,
    }
}

fn betas() -> Vec<BetaEvaluator> {
    ["2^(1/4)", "2^(1/3.627)", "3/2", "1/2"].iter().map(|s| BetaEvaluator::new(s.parse::<BetaParam>().unwrap())).collect()
}

/// Every consequence of `std` plus every duality for one pair of cached strings.
fn pair_checks(t: &mut Tally, cmp: &Comparer, profiles: &[FstProfile], dual: &[usize], i: usize, j: usize, betas: &[BetaEvaluator]) {
    let s = cmp.strings();
    let (a, g) = (&s[i], &s[j]);
    let std = cmp.std(i, j).unwrap();
    let ber = cmp.ber(i, j);
    t.expect(
        match ber {
            BerOutcome::Holds => std.is_at_least(),
            BerOutcome::HoldsReversed => std.reversed().is_at_least(),
            _ => true,
        },
        || format!("Ber=>std {a} {g}"),
    );
    if std == OrderOutcome::Greater {
        t.expect(at0_geq_diff(a, g).unwrap() && at1_geq_diff(a, g).unwrap(), || format!("std=>at {a} {g}"));
        t.expect(avg_compare(a, g).unwrap().is_at_least(), || format!("std=>avg {a} {g}"));
        t.expect(hlf_compare(a, g).outcome.is_at_least(), || format!("std=>hlf {a} {g}"));
        t.expect(profiles[i].compare(&profiles[j]).is_at_least(), || format!("std=>fst {a} {g}"));
    }
    if more01_incomparable(a, g) {
        t.expect(std == OrderOutcome::Incomparable, || format!("more01 {a} {g}"));
    }
    let (di, dj) = (dual[i], dual[j]);
    t.expect(cmp.std(di, dj).unwrap() == std.reversed(), || format!("std dual {a} {g}"));
    t.expect(cmp.ber(di, dj) == ber_reversed(ber), || format!("Ber dual {a} {g}"));
    let (da, dg) = (&s[di], &s[dj]);
    t.expect(avg_compare(da, dg).unwrap() == avg_compare(a, g).unwrap().reversed(), || format!("avg dual {a} {g}"));
    let h = hlf_compare(a, g);
    t.expect(h.at_cap || hlf_compare(da, dg).outcome == h.outcome.reversed(), || format!("hlf dual {a} {g}"));
    t.expect(profiles[di].compare(&profiles[dj]) == profiles[i].compare(&profiles[j]).reversed(), || format!("fst dual {a} {g}"));
    if a.len() == g.len() {
        for b in betas {
            let d = b.compare(a, g);
            t.expect(d.at_cap || b.compare(da, dg).outcome == d.outcome.reversed(), || format!("beta {} dual {a} {g}", b.param()));
        }
    }
}

fn cached(strings: Vec<BitString>) -> (Comparer, Vec<FstProfile>, Vec<usize>) {
    let index: HashMap<BitString, usize> = strings.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
    let dual = strings.iter().map(|s| index[&dual_string(s)]).collect();
    let profiles = strings.iter().map(|s| FstProfile::new(s).unwrap()).collect();
    (Comparer::new(strings).unwrap(), profiles, dual)
}

fn implication_suites() -> Outcome {
    let betas = betas();
    let mut t = Tally::default();

    // Exhaustive over equal lengths.
    let mut pairs = 0;
    for len in 0..=6 {
        let (cmp, profiles, dual) = cached(BitString::all_of_length(len).collect());
        let n = cmp.strings().len();
        for i in 0..n {
            for j in 0..n {
                pair_checks(&mut t, &cmp, &profiles, &dual, i, j, &betas);
                pairs += 1;
            }
        }
    }

    // Unequal lengths: every pair up to length 5, then random pairs up to length 8.
    let (cmp, profiles, dual) = cached(BitString::all_up_to(8).collect());
    let strings = cmp.strings().to_vec();
    let short = strings.iter().filter(|s| s.len() <= 5).count();
    let mut cross = 0;
    for i in 0..short {
        for j in 0..short {
            if strings[i].len() != strings[j].len() {
                pair_checks(&mut t, &cmp, &profiles, &dual, i, j, &betas);
                cross += 1;
            }
        }
    }
    let mut rng = rng(0x5eed);
    let mut random = 0;
    while random < 10_000 {
        let (i, j) = (rng.gen_range(0..strings.len()), rng.gen_range(0..strings.len()));
        if strings[i].len() != strings[j].len() {
            pair_checks(&mut t, &cmp, &profiles, &dual, i, j, &betas);
            random += 1;
        }
    }

    // The average is a martingale, on the reference polynomials.
    let mut level: Vec<BigRational> = vec![integral(&from_i64(&[0, 1]))];
    for len in 0..8 {
        let polys = reliability_level(len + 1);
        let next: Vec<BigRational> = polys.iter().map(integral).collect();
        for (k, parent) in level.iter().enumerate() {
            t.expect(&next[2 * k] + &next[2 * k + 1] == parent * BigRational::from_integer(2.into()), || format!("martingale level {len} #{k}"));
        }
        level = next;
    }
    for alpha in BitString::all_of_length(8) {
        t.expect(average(&alpha).unwrap() == level[alpha.to_index() as usize], || format!("avg {alpha}"));
    }

    // Strict @0 on the left and @0-equivalence on the right survive concatenation.
    let mut at_con = 0;
    while at_con < 2_000 {
        let (a, g, k, l) = (short_string(&mut rng), short_string(&mut rng), short_string(&mut rng), short_string(&mut rng));
        if at0_compare(&a, &g).unwrap() != TotalOutcome::Greater || at0_compare(&k, &l).unwrap() != TotalOutcome::Equivalent {
            continue;
        }
        t.expect(at0_geq_diff(&a.concat(&k), &g.concat(&l)).unwrap(), || format!("at-con {a}{k} {g}{l}"));
        t.expect(at0_geq_diff(&k.concat(&a), &l.concat(&g)).unwrap(), || format!("at-con {k}{a} {l}{g}"));
        at_con += 1;
    }

    // Beta order survives concatenation with an ordered same-length pair.
    let rational_bases: Vec<BigRational> = ["1/2", "1", "5/4", "3/2", "2", "3"].iter().map(|s| becrank::orders::beta::parse_rational(s).unwrap()).collect();
    let mut beta_con = 0;
    while beta_con < 2_000 {
        let (la, lg, lk) = (rng.gen_range(0..=5), rng.gen_range(0..=5), rng.gen_range(0..=4));
        let (a, g) = (random_string(&mut rng, la), random_string(&mut rng, lg));
        let (k, l) = (random_string(&mut rng, lk), random_string(&mut rng, lk));
        for b in &rational_bases {
            if beta_exact(&a, b) >= beta_exact(&g, b) && beta_exact(&k, b) >= beta_exact(&l, b) {
                t.expect(beta_exact(&a.concat(&k), b) >= beta_exact(&g.concat(&l), b), || format!("beta-concat {b} {a}{k} {g}{l}"));
            }
        }
        for e in &betas {
            if e.compare(&a, &g).outcome.is_at_least() && e.compare(&k, &l).outcome.is_at_least() {
                t.expect(e.compare(&a.concat(&k), &g.concat(&l)).outcome.is_at_least(), || format!("beta-concat {} {a}{k} {g}{l}", e.param()));
            }
        }
        beta_con += 1;
    }

    check(
        t.violations.is_empty(),
        format!(
            "{pairs} equal-length pairs, {cross} + {random} unequal-length pairs, {at_con} @0 and {beta_con} beta concatenations, {} checks, {} violations {:?}",
            t.checks,
            t.violations.len(),
            t.violations.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn short_string(rng: &mut impl Rng) -> BitString {
    let len = rng.gen_range(1..=4);
    random_string(rng, len)
}

fn exponent_mantissa() -> Outcome {
    let mut exponent_bad = Vec::new();
    let mut mantissa_bad = Vec::new();
    let mut count = 0;
    for alpha in BitString::all_up_to(10).filter(|a| !a.is_empty()) {
        let direct = exp_mant_direct(&reliability_poly(&alpha).unwrap()).unwrap();
        let zeros = alpha.zeros() as u32;
        let bits = alpha.bits();
        let log2_mantissa: u64 = (0..bits.len()).filter(|&i| bits[i]).map(|i| 1u64 << bits[i + 1..].iter().filter(|b| !**b).count()).sum();
        count += 1;
        if direct.exponent != 1usize << zeros {
            exponent_bad.push(alpha.to_string());
        }
        if direct.mantissa != BigInt::one() << log2_mantissa {
            mantissa_bad.push(alpha.to_string());
        }
    }
    check(
        exponent_bad.is_empty(),
        format!(
            "{count} strings, {} exponent mismatches, {} mantissa discrepancies {:?}",
            exponent_bad.len(),
            mantissa_bad.len(),
            mantissa_bad.iter().take(5).collect::<Vec<_>>()
        ),
    )
}

fn kendall_outlier() -> Outcome {
    let report = KendallReport::build(8, &default_methods()).map_err(|e| e.to_string())?;
    let d = |a: &str, b: &str| report.distance(a, b).unwrap();
    let (b4, b3) = ("beta:2^(1/4)", "beta:2^(1/3.627)");
    let pinned = [(b4, b3, 313), (b4, "avg", 492), (b4, "hlf", 582), (b3, "avg", 195), (b3, "hlf", 285), ("avg", "hlf", 110)];

    // Reference rankings: floating point for beta and hlf, exact integrals for avg.
    let strings: Vec<BitString> = BitString::all_of_length(8).collect();
    let sorted = |key: &dyn Fn(&BitString) -> f64, larger_first: bool| {
        let mut v = strings.clone();
        v.sort_by(|x, y| {
            let o = key(x).partial_cmp(&key(y)).unwrap();
            if larger_first { o.reverse() } else { o }
        });
        v.iter().map(BitString::short_label).collect::<Vec<_>>()
    };
    let averages: Vec<BigRational> = reliability_level(8).iter().map(integral).collect();
    let mut by_avg: Vec<usize> = (0..256).collect();
    by_avg.sort_by(|&x, &y| averages[y].cmp(&averages[x]));
    let reference = [
        sorted(&|s| beta_f64(s, 2f64.powf(0.25)), true),
        sorted(&|s| beta_f64(s, 2f64.powf(1.0 / 3.627)), true),
        by_avg.iter().map(|&k| strings[k].short_label()).collect(),
        sorted(&hlf_f64, false),
    ];
    let same_rankings = report.rankings.iter().zip(&reference).all(|(r, f)| &r.labels == f);
    let names: Vec<&str> = report.rankings.iter().map(|r| r.method.as_str()).collect();
    let mut mismatches = Vec::new();
    for (a, b, want) in pinned {
        let (ia, ib) = (names.iter().position(|n| *n == a).unwrap(), names.iter().position(|n| *n == b).unwrap());
        let brute = crossings(&reference[ia], &reference[ib]);
        if d(a, b) != want || brute != want {
            mismatches.push(format!("d({a}, {b}) = {} reference {brute} pinned {want}", d(a, b)));
        }
    }
    let outlier = d(b3, "hlf") < d(b4, "hlf") && d(b3, "avg") < d(b4, "avg");
    check(
        outlier && same_rankings && mismatches.is_empty(),
        format!(
            "d(b3.627, hlf) = {} < d(b4, hlf) = {}, d(b3.627, avg) = {} < d(b4, avg) = {}, reference rankings agree: {same_rankings}, mismatches {mismatches:?}",
            d(b3, "hlf"),
            d(b4, "hlf"),
            d(b3, "avg"),
            d(b4, "avg")
        ),
    )
}

fn rule_monotonicity() -> Outcome {
    let exact = RelationMatrix::build(8, &MatrixMethod::Std).map_err(|e| e.to_string())?;
    let floor = exact.census(None).unwrap().all.incomparable;
    let pinned = [("AB", 17172), ("ABC", 14038), ("ABCD", 10046), ("ABCDF", 6972)];
    let mut counts = Vec::new();
    let mut sound = true;
    for (sets, _) in pinned {
        let method = MatrixMethod::parse(&format!("rules:{sets}"), true).unwrap();
        let census = RelationMatrix::build(8, &method).map_err(|e| e.to_string())?.census(Some(&exact)).unwrap();
        let bright = census.not_dimmed.unwrap();
        sound &= bright.greater + bright.less == 0 && census.all.incomparable >= floor;
        counts.push(census.all.incomparable);
    }
    let monotone = counts.windows(2).all(|w| w[0] >= w[1]) && counts[3] < counts[2];
    let matches = counts.iter().zip(&pinned).all(|(c, p)| *c == p.1);
    check(
        monotone && matches && sound,
        format!("incomparable AB {} ABC {} ABCD {} ABCDF {} (exact order {floor}), sound: {sound}", counts[0], counts[1], counts[2], counts[3]),
    )
}

fn influence_scaling() -> Outcome {
    let table = influence_table(12, 4, 64);
    let reference: Vec<(f64, f64)> = (4..=12)
        .map(|l| {
            let sum: f64 = BitString::all_of_length(l).map(|a| hlf_f64(&a.pushed(false)) - hlf_f64(&a.pushed(true))).sum();
            (l as f64, (sum / (1u64 << l) as f64).log2())
        })
        .collect();
    let reference_slope = slope(&reference);
    let nonneg = table.rows.iter().all(|r| !r.influence.starts_with('-'));
    let level0 = (table.means[0].mean - (2.0 * 0.5f64.sqrt() - 1.0)).abs() < 1e-12;
    check(
        table.slope > -0.40 && table.slope < -0.20 && (table.slope - reference_slope).abs() < 1e-9 && nonneg && level0,
        format!("slope {:.5} over levels 4..=12 (floating-point reference {reference_slope:.5}), all influences nonnegative: {nonneg}", table.slope),
    )
}
