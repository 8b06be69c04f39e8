use super::*;
use crate::q;
use crate::superalgebra::{build_osp, build_sl2, LatticeVec};
use crate::vacuum::{init_space, State};

#[test]
fn commutant_low_weights() {
    let s = init_space(build_osp(1).unwrap(), 2, 4).unwrap();
    assert_eq!(commutant_basis(&s, 0).unwrap().dim(), 1);
    assert_eq!(commutant_basis(&s, 1).unwrap().dim(), 0);
    let n2 = commutant_basis(&s, 2).unwrap();
    assert!(n2.dim() >= 2);
    let z = LatticeVec::zero(1);
    for v in n2.basis() {
        let st = s.from_coordinates(v, 2, &z).unwrap();
        assert!(heisenberg_annihilated(&s, &st, 2).is_none());
    }
    assert_eq!(charge_block(&s, 1, &z).unwrap().dim(), 1);
    assert_eq!(charge_block(&s, 1, &LatticeVec(vec![6])).unwrap().dim(), 0);
}

#[test]
fn generators_are_in_the_commutant() {
    for (alg, k) in [(build_osp(1).unwrap(), 1), (build_osp(2).unwrap(), 1), (build_osp(1).unwrap(), 2)] {
        let dim = alg.dim();
        let rank = alg.rank();
        let s = init_space(alg, k, 4).unwrap();
        let g = parafermion_generators(&s).unwrap();
        assert_eq!(g.len(), dim - rank);
        for gen in &g.generators {
            if gen.kind == GeneratorKind::Omega {
                assert_eq!(s.composite_mode(&gen.state, 1, &gen.state), gen.state.scaled(&q(2)), "{}", gen.name);
            }
        }
    }
    let s = init_space(build_sl2(), 2, 4).unwrap();
    assert_eq!(parafermion_generators(&s).unwrap().len(), 2);
}

#[test]
fn vacuum_generates_only_itself() {
    let s = init_space(build_osp(1).unwrap(), 1, 4).unwrap();
    let one = [State::vacuum()];
    let c = closure(&s, &one, Action::Composite(&one), 4, 4, None).unwrap();
    assert_eq!(c.dims.dims(), vec![1, 0, 0, 0, 0]);
    assert!(c.stabilized);
}

#[test]
fn osp2_level1_small_run() {
    let a = CosetAnalysis::with_default_headroom(build_osp(1).unwrap(), 1, 4).unwrap();
    let m = a.ideal_model().unwrap();
    assert_eq!(m.method, IdealMethod::BothAgree);
    assert_eq!(m.quotient.dim(0), Some(1));
    assert_eq!(m.quotient.dim(1), Some(0));
    for id in CheckId::ALL {
        let r = verify(&a, id).unwrap();
        assert_eq!(r.verdict, Verdict::VerifiedAtCutoff, "{id}: {r:?}");
    }
}

#[test]
fn check_ids_parse() {
    for id in CheckId::ALL {
        assert_eq!(id.as_str().parse::<CheckId>().unwrap(), id);
    }
    assert!("thm_9_9".parse::<CheckId>().is_err());
}

#[test]
fn w3_bar_h3_balance() {
    use crate::superalgebra::AlgebraElement;
    for (n, k) in [(1i64, 1i64), (1, 2), (2, 1)] {
        let s = init_space(build_osp(n).unwrap(), k, 4).unwrap();
        let alg = s.algebra();
        let gens = parafermion_generators(&s).unwrap();
        for c in alg.chevalley().iter().filter(|c| c.odd.is_some()) {
            let h = c.h.clone();
            let (xp, xm) = c.odd.unwrap();
            let (xp, xm) = (alg.basis_element(xp), alg.basis_element(xm));
            let w = |coef: i64, word: &[(&AlgebraElement, i32)]| {
                let v: Vec<_> = word.iter().map(|(a, n)| ((*a).clone(), *n)).collect();
                s.straighten_elements(&v).unwrap().scaled(&q(coef))
            };
            let rest = w(3 * k, &[(&h, -2), (&h, -1)])
                .plus(&w(1, &[(&h, -1), (&h, -1), (&h, -1)]))
                .plus(&w(-6 * k, &[(&h, -1), (&xp, -1), (&xm, -1)]))
                .plus(&w(6 * k * k, &[(&xp, -2), (&xm, -1)]))
                .plus(&w(-6 * k * k, &[(&xp, -1), (&xm, -2)]));
            // the literal k²h(−3) leaves h(3)v = −6k³·𝟙
            let literal = rest.plus(&w(k * k, &[(&h, -3)]));
            let hv = s.apply_mode(&h, 3, &literal).unwrap();
            assert_eq!(hv, State::vacuum().scaled(&q(-6 * k * k * k)));
            let fixed = rest.plus(&w(2 * k * k, &[(&h, -3)]));
            assert!(heisenberg_annihilated(&s, &fixed, 3).is_none());
            assert_eq!(gens.get(GeneratorKind::W3Bar, &c.root).unwrap().state, fixed);
        }
    }
}
