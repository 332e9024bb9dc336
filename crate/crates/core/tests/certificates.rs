mod common;

use common::{random_weighted, rng};
use num_traits::Zero;
use rand::seq::SliceRandom;
use ramsey_mult::certificates::{
    parse_lower, recover_flag_ordering, verify_alpha, verify_lower, LowerBoundCertificate, RecoveryContext,
    C5_B_LOWER, D_M_LOWER, K3_C5_LOWER,
};
use ramsey_mult::densities::{objective, Kernel};
use ramsey_mult::exact::{int, rat};
use ramsey_mult::flags::enumerate_flags;
use ramsey_mult::graph::{enumerate_graphs, named_graph};
use ramsey_mult::sdp_export::problem_from_certificate;
use ramsey_mult::Graph;

fn each_corruption(c: &LowerBoundCertificate, mut f: impl FnMut(LowerBoundCertificate)) {
    for (q, b) in c.blocks.iter().enumerate() {
        let t = b.matrix.dim();
        for i in 0..t {
            for j in i..t {
                let v = b.matrix.get(i, j).clone();
                let mut vs = vec![&v + int(1), &v - int(1)];
                if !v.is_zero() {
                    vs.push(-v.clone());
                }
                for nv in vs {
                    let mut cc = c.clone();
                    cc.blocks[q].matrix.set_sym(i, j, nv);
                    f(cc);
                }
            }
        }
    }
}

#[test]
fn k3_c5_file() {
    let c = parse_lower(K3_C5_LOWER).unwrap();
    let r = verify_lower(&c).unwrap();
    assert!(r.verdict && r.all_psd());
    assert_eq!(r.min, rat(3, 34));
    assert_eq!(r.values.len(), 34);
    assert_eq!(r.value_at(&named_graph("K5").unwrap()), Some(&rat(5, 34)));
}

#[test]
fn c5_b_file_is_tight_everywhere() {
    let r = verify_lower(&parse_lower(C5_B_LOWER).unwrap()).unwrap();
    assert!(r.verdict);
    assert!(r.values.iter().all(|v| v.value == rat(1, 16)));
    assert_eq!(r.tight.len(), 34);
}

#[test]
fn d_m_file_is_well_formed() {
    let c = parse_lower(D_M_LOWER).unwrap();
    assert_eq!(c.blocks.len(), 5);
    let r = verify_lower(&c).unwrap();
    assert_eq!(r.values.len(), 156);
    assert!(r.all_psd());
}

#[test]
fn single_entry_corruption_flips_verdict() {
    for s in [K3_C5_LOWER, C5_B_LOWER] {
        let c = parse_lower(s).unwrap();
        let mut n = 0;
        each_corruption(&c, |cc| {
            n += 1;
            assert!(!verify_lower(&cc).unwrap().verdict);
        });
        assert!(n > 0);
    }
}

#[test]
fn verdict_is_monotone_in_alpha() {
    let mut c = parse_lower(K3_C5_LOWER).unwrap();
    for a in [rat(3, 34), rat(1, 12), int(0), int(-1)] {
        c.alpha = a;
        assert!(verify_lower(&c).unwrap().verdict);
    }
    c.alpha = rat(3, 34) + rat(1, 1_000_000);
    assert!(!verify_lower(&c).unwrap().verdict);
}

#[test]
fn passing_certificates_bound_every_step_graphon() {
    let mut r = rng(404);
    for s in [K3_C5_LOWER, C5_B_LOWER] {
        let c = parse_lower(s).unwrap();
        for i in 0..50 {
            let w = Kernel::Step(random_weighted(&mut r, 1 + i % 4));
            assert!(objective(&c.h1, &c.h2, &c.lambda, &w).unwrap() >= c.alpha);
        }
        for g in enumerate_graphs(6).unwrap().iter().step_by(7) {
            assert!(objective(&c.h1, &c.h2, &c.lambda, &Kernel::from_graph(g)).unwrap() >= c.alpha);
        }
    }
}

#[test]
fn alpha_pairs_meet_lower_bounds() {
    for (lower, alpha) in [
        (K3_C5_LOWER, ramsey_mult::certificates::K3_C5_ALPHA),
        (C5_B_LOWER, ramsey_mult::certificates::C5_B_ALPHA),
    ] {
        let l = parse_lower(lower).unwrap();
        let a = ramsey_mult::certificates::parse_alpha(alpha).unwrap();
        assert_eq!(l.alpha, a.alpha);
        let rep = verify_alpha(&a).unwrap();
        assert!(rep.verdict);
        assert_eq!(rep.objective_w1.clone().min(rep.objective_w2.clone()), a.alpha);
    }
}

#[test]
fn recovery_finds_k3_c5_order_from_shuffled_family() {
    let c = parse_lower(K3_C5_LOWER).unwrap();
    let b = &c.blocks[0];
    let mut cands = enumerate_flags(&Graph::empty(1).unwrap(), 3).unwrap().flags;
    cands.shuffle(&mut rng(3));
    let ctx = RecoveryContext { h1: &c.h1, h2: &c.h2, lambda: &c.lambda, alpha: &c.alpha, ell: c.ell, partners: &[] };
    let order = recover_flag_ordering(&cands, &b.matrix, &b.scale, &ctx, None).unwrap();
    let mut rebuilt = c.clone();
    rebuilt.blocks[0].flags = order.iter().map(|&i| cands[i].clone()).collect();
    assert!(verify_lower(&rebuilt).unwrap().verdict);
}

#[test]
fn swapped_flags_fail() {
    let c = parse_lower(K3_C5_LOWER).unwrap();
    let t = c.blocks[0].flags.len();
    let mut failures = 0;
    for a in 0..t {
        for b in a + 1..t {
            let mut cc = c.clone();
            cc.blocks[0].flags.swap(a, b);
            if !verify_lower(&cc).unwrap().verdict {
                failures += 1;
            }
        }
    }
    assert_eq!(failures, t * (t - 1) / 2);
}

#[test]
fn recovery_keeps_a_correct_guess() {
    let c = parse_lower(C5_B_LOWER).unwrap();
    let b = &c.blocks[1];
    let partners: Vec<_> = c.blocks.iter().enumerate().filter(|&(i, _)| i != 1).map(|(_, b)| b.clone()).collect();
    let ctx =
        RecoveryContext { h1: &c.h1, h2: &c.h2, lambda: &c.lambda, alpha: &c.alpha, ell: c.ell, partners: &partners };
    let id: Vec<usize> = (0..b.flags.len()).collect();
    assert_eq!(recover_flag_ordering(&b.flags, &b.matrix, &b.scale, &ctx, Some(&id)).unwrap(), id);
}

#[test]
fn exported_problem_has_nonnegative_slack() {
    let c = parse_lower(K3_C5_LOWER).unwrap();
    let p = problem_from_certificate(&c).unwrap();
    assert_eq!(p.constraint_count(), 34);
    let mats: Vec<_> = c.blocks.iter().map(|b| b.scaled_matrix()).collect();
    let slack = p.slacks(&c.lambda, &rat(3, 34), &mats).unwrap();
    assert!(slack.iter().all(|s| *s >= rat(0, 1)));
    assert!(slack.iter().any(|s| s.is_zero()));
    let over = p.slacks(&c.lambda, &(rat(3, 34) + rat(1, 1000)), &mats).unwrap();
    assert!(over.iter().any(|s| *s < rat(0, 1)));
}

#[test]
fn exported_problem_sizes_for_d_m() {
    let c = parse_lower(D_M_LOWER).unwrap();
    let p = problem_from_certificate(&c).unwrap();
    assert_eq!(p.constraint_count(), 156);
    let mats: Vec<_> = c.blocks.iter().map(|b| b.scaled_matrix()).collect();
    let slack = p.slacks(&c.lambda, &c.alpha, &mats).unwrap();
    let report = verify_lower(&c).unwrap();
    // slack is value(J) - t, the same quantity the verifier reports
    for (s, v) in slack.iter().zip(&report.values) {
        assert_eq!(*s, &v.value - &c.alpha);
    }
}
