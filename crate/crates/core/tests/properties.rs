use std::collections::HashMap;

use proptest::collection::vec;
use proptest::prelude::*;

use conlat_core::algebra::{FiniteAlgebra, Operation};
use conlat_core::document::AlgebraDocument;
use conlat_core::freese::chain::{chain_step, congruence_chain};
use conlat_core::freese::subpower::{build_double, build_subpower, Side};
use conlat_core::lattice::{lattice_from_partitions, LatticeEmbedding};
use conlat_core::partition::Partition;

fn partition(n: usize) -> impl Strategy<Value = Partition> {
    vec(0..n, n).prop_map(|labels| Partition::from_labels(&labels))
}

fn algebra() -> impl Strategy<Value = FiniteAlgebra> {
    (2usize..=6).prop_flat_map(|n| {
        let op = (1usize..=2).prop_flat_map(move |arity| {
            vec(0..n, n.pow(arity as u32)).prop_map(move |t| Operation::new("f", arity, t))
        });
        vec(op, 0..=2).prop_map(move |ops| FiniteAlgebra::new(n, ops).unwrap())
    })
}

fn pair_set(p: &Partition) -> Vec<(usize, usize)> {
    let mut v = p.pairs();
    v.sort();
    v
}

proptest! {
    #[test]
    fn partition_lattice_laws((a, b, c) in (1usize..=7).prop_flat_map(|n| (partition(n), partition(n), partition(n)))) {
        prop_assert_eq!(a.meet(&b), b.meet(&a));
        prop_assert_eq!(a.join(&b), b.join(&a));
        prop_assert_eq!(a.meet(&b.meet(&c)), a.meet(&b).meet(&c));
        prop_assert_eq!(a.join(&b.join(&c)), a.join(&b).join(&c));
        prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
        prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
        prop_assert!(a.meet(&b).refines(&a) && a.refines(&a.join(&b)));
        // meet is pair-set intersection
        let inter: Vec<_> = pair_set(&a).into_iter().filter(|&(x, y)| b.related(x, y)).collect();
        prop_assert_eq!(pair_set(&a.meet(&b)), inter);
        let text = a.to_string();
        prop_assert_eq!(text.parse::<Partition>().unwrap(), a);
    }

    #[test]
    fn cg_is_least_congruence_above(alg in algebra(), seed in any::<u64>()) {
        let n = alg.size();
        let x = (seed % n as u64) as usize;
        let y = ((seed / 7) % n as u64) as usize;
        let cg = alg.cg([(x, y)]).unwrap();
        prop_assert!(alg.is_congruence(&cg).unwrap());
        prop_assert!(cg.related(x, y));
        for theta in alg.all_congruences().unwrap() {
            if theta.related(x, y) {
                prop_assert!(cg.refines(&theta));
            }
        }
    }

    #[test]
    fn lifts_are_congruences_and_quotients_are_faithful(alg in algebra(), pick in any::<prop::sample::Index>()) {
        let cons = alg.all_congruences().unwrap();
        let alpha = pick.get(&cons);
        let ctx = build_double(&alg, alpha).unwrap();
        let sub = ctx.algebra();
        for side in [Side::First, Side::Second] {
            let eta = ctx.eta(side);
            let lifted: Vec<Partition> = cons.iter().map(|t| ctx.lift(t, side).unwrap()).collect();
            for (t, l) in cons.iter().zip(&lifted) {
                prop_assert!(sub.is_congruence(l).unwrap(), "{}", t);
                prop_assert!(eta.refines(l));
            }
            // θ ↦ θ_s is a lattice embedding of Con(A) onto the filter above η_s
            let index: HashMap<&Partition, usize> = cons.iter().enumerate().map(|(i, c)| (c, i)).collect();
            for i in 0..cons.len() {
                for j in i + 1..cons.len() {
                    prop_assert!(lifted[i] != lifted[j]);
                    let m = index[&cons[i].meet(&cons[j])];
                    let k = index[&cons[i].join(&cons[j])];
                    prop_assert_eq!(&lifted[m], &lifted[i].meet(&lifted[j]));
                    prop_assert_eq!(&lifted[k], &lifted[i].join(&lifted[j]));
                }
            }
        }
    }

    #[test]
    fn chain_is_monotone_bounded_and_stable(alg in algebra(), picks in vec(any::<prop::sample::Index>(), 3)) {
        let cons = alg.all_congruences().unwrap();
        let outer = picks[0].get(&cons);
        let bridge = picks[1].get(&cons);
        let seed = outer.meet(picks[2].get(&cons));
        let r = congruence_chain(&alg, outer, bridge, &seed, alg.size() + 1).unwrap();
        prop_assert!(r.stabilized_at < alg.size());
        for w in r.chain.windows(2) {
            prop_assert!(w[0].refines(&w[1]) && w[0] != w[1]);
        }
        for x in &r.chain {
            prop_assert!(alg.is_congruence(x).unwrap());
            prop_assert!(x.refines(outer));
        }
        prop_assert_eq!(&chain_step(&alg, outer, bridge, r.limit()).unwrap(), r.limit());
        prop_assert_eq!(r.reached_outer, r.limit() == outer);
    }

    #[test]
    fn subpower_size_and_closure(alg in algebra(), pick in any::<prop::sample::Index>(), power in 1usize..=3) {
        let cons = alg.all_congruences().unwrap();
        let alpha = pick.get(&cons);
        let ctx = build_subpower(&alg, alpha, power).unwrap();
        let expected: usize = alpha.blocks().iter().map(|b| b.len().pow(power as u32)).sum();
        prop_assert_eq!(ctx.size(), expected);
        for i in 0..ctx.size() {
            let t = ctx.tuple(i);
            prop_assert!(t.iter().all(|&x| alpha.related(t[0], x)));
        }
    }

    #[test]
    fn generated_lattices_satisfy_axioms(gens in (2usize..=5).prop_flat_map(|n| vec(partition(n), 1..=3))) {
        let g = lattice_from_partitions(&gens, 10_000).unwrap();
        prop_assert!(g.lattice.check_axioms().is_ok());
        let identity = LatticeEmbedding::new((0..g.lattice.len()).collect());
        prop_assert!(identity.verify(&g.lattice, &g.lattice));
        for i in 0..g.lattice.len() {
            for j in 0..g.lattice.len() {
                let m = g.lattice.meet(i, j);
                prop_assert_eq!(&g.partitions[m], &g.partitions[i].meet(&g.partitions[j]));
            }
        }
    }

    #[test]
    fn document_round_trip(alg in algebra(), parts in vec(any::<prop::sample::Index>(), 0..4), named in any::<bool>()) {
        let n = alg.size();
        let all = Partition::all(n);
        let partitions = parts
            .iter()
            .enumerate()
            .map(|(i, ix)| (format!("p{i}"), ix.get(&all).clone()))
            .collect();
        let element_names = named.then(|| (0..n).map(|i| format!("e{i}")).collect());
        let doc = AlgebraDocument { algebra: alg, element_names, partitions };
        let again = AlgebraDocument::parse(&doc.to_toml()).unwrap();
        prop_assert_eq!(again, doc);
    }
}
