//! Module-level behavior: constructors, validation, structural functors,
//! socle/top, nilpotency and the duality into J(n).
//!
//! Expected dimensions are frozen from independent enumerations computed in
//! this file (binary partitions, excess-filtered admissible counts, pair
//! counts), not from the constructors under test.

use sq2::f2::BitVec;
use sq2::steenrod::SteenrodElement;
use sq2::umod::{
    brown_gitler, cohomology_bv, count_maps_from_free, direct_sum, free_module, frobenius, h_k,
    hom_to_j, is_nilpotent, is_reduced, kernel_module, lambda, lambda_iterate, quotient,
    same_module_structure, sigma_simple, socle, submodule_generated_by, suspension, tensor, top,
    Violation,
};

/// Independent oracle: number of partitions of `n` into exactly `parts`
/// powers of two.
fn binary_partitions_into(n: u32, parts: u32) -> usize {
    fn rec(n: u32, parts: u32, max_pow: u32) -> usize {
        if parts == 0 {
            return usize::from(n == 0);
        }
        if n == 0 {
            return 0;
        }
        let mut count = 0;
        let mut p = max_pow;
        loop {
            let w = 1u32 << p;
            if w <= n {
                count += rec(n - w, parts - 1, p);
            }
            if p == 0 {
                break;
            }
            p -= 1;
        }
        count
    }
    if n == 0 {
        return usize::from(parts == 0);
    }
    rec(n, parts, n.ilog2())
}

#[test]
fn brown_gitler_dims_match_partition_oracle() {
    for n in [1u32, 2, 3, 4, 7, 8, 12, 16] {
        let j = brown_gitler(n).unwrap();
        for d in 0..=n {
            let expected = if n == 0 || d > 0 {
                binary_partitions_into(n, d)
            } else {
                0
            };
            assert_eq!(j.dim(d), expected, "J({n}) degree {d}");
        }
    }
    // J(4) has dims (1,1,1,1) in degrees 1..4
    let j4 = brown_gitler(4).unwrap();
    assert_eq!(&j4.dims()[1..], &[1, 1, 1, 1]);
}

#[test]
fn brown_gitler_sq1_sends_x2_to_x1_squared() {
    let j4 = brown_gitler(4).unwrap();
    // degree 1 basis is x2, degree 2 basis is x1^2
    assert_eq!(j4.labels(1), &["x2".to_string()]);
    assert_eq!(j4.labels(2), &["x1^2".to_string()]);
    let image = j4.apply_sq(1, 1, &BitVec::standard(1, 0));
    assert!(image.get(0), "Sq^1 x2 should be x1^2");
}

#[test]
fn constructors_pass_validate() {
    for n in [0u32, 1, 4, 9, 16] {
        assert!(brown_gitler(n).unwrap().validate().is_empty(), "J({n})");
    }
    assert!(free_module(1, 16).unwrap().validate().is_empty());
    assert!(free_module(2, 12).unwrap().validate().is_empty());
    assert!(cohomology_bv(2, 10).unwrap().validate().is_empty());
    for n in [1u32, 5, 32] {
        assert!(sigma_simple(n).unwrap().validate().is_empty());
    }
    assert!(h_k(4).unwrap().validate().is_empty());
}

#[test]
fn corrupted_module_fails_validate() {
    // hand-corrupt J(4): force Sq^2 != 0 out of degree 1, violating
    // instability
    let j4 = brown_gitler(4).unwrap();
    let mut action = std::collections::BTreeMap::new();
    for (&(k, n), m) in j4.action_entries() {
        action.insert((k, n), m.clone());
    }
    let mut bad = sq2::f2::BitMatrix::zero(j4.dim(3), j4.dim(1));
    bad.set(0, 0, true);
    action.insert((2, 1), bad);
    let corrupted = sq2::umod::GradedModule::assemble(
        "J(4)-corrupted",
        4,
        false,
        j4.dims().to_vec(),
        (0..=4).map(|n| j4.labels(n).to_vec()).collect(),
        action,
    )
    .unwrap();
    let violations = corrupted.validate();
    assert!(violations
        .iter()
        .any(|v| matches!(v, Violation::Instability { k: 2, n: 1 })));
}

#[test]
fn free_module_dims() {
    // F(1) through degree 16 is one-dimensional exactly in degrees 1,2,4,8,16
    let f1 = free_module(1, 16).unwrap();
    for d in 0..=16u32 {
        let expected = usize::from(d.is_power_of_two());
        assert_eq!(f1.dim(d), expected, "F(1) degree {d}");
    }
    // F(2) in degrees 2,3,4: iota, Sq^1 iota, Sq^2 iota
    let f2 = free_module(2, 8).unwrap();
    assert_eq!(f2.dim(2), 1);
    assert_eq!(f2.dim(3), 1);
    assert_eq!(f2.dim(4), 1);
}

#[test]
fn free_hom_characterization_against_j() {
    // dim Hom(F(n), J(m)) computed through the J-duality equals dim J(m)^n
    for n in 1..=6u32 {
        for m in 1..=6u32 {
            let fn_mod = free_module(n, m.max(n)).unwrap();
            let h = hom_to_j(&fn_mod, m).unwrap();
            let jm = brown_gitler(m).unwrap();
            assert_eq!(
                h.dim(),
                jm.dim_at(n).unwrap(),
                "Hom(F({n}), J({m})) vs J({m})^{n}"
            );
        }
    }
}

#[test]
fn count_maps_from_free_matches_component_dimension() {
    let j4 = brown_gitler(4).unwrap();
    for n in 1..=4u32 {
        assert_eq!(count_maps_from_free(n, &j4).unwrap(), j4.dim(n));
    }
    let h3 = h_k(3).unwrap();
    for n in 1..=4u32 {
        assert_eq!(count_maps_from_free(n, &h3).unwrap(), h3.dim(n));
    }
}

#[test]
fn suspension_behaviour() {
    let s1 = sigma_simple(1).unwrap();
    let j1 = brown_gitler(1).unwrap();
    assert!(same_module_structure(&s1, &j1));
    assert_eq!(s1.labels(1), j1.labels(1));

    let twice = suspension(&suspension(&s1, 1).unwrap(), 1).unwrap();
    let once_by_two = suspension(&s1, 2).unwrap();
    assert!(same_module_structure(&twice, &once_by_two));

    for n in [4u32, 32] {
        assert!(sigma_simple(n).unwrap().validate().is_empty());
    }
}

#[test]
fn frobenius_examples() {
    // Phi(Sigma F2) = Sigma^2 F2
    let phi_s = frobenius(&sigma_simple(1).unwrap()).unwrap();
    assert!(same_module_structure(&phi_s, &sigma_simple(2).unwrap()));
    for n in 1..=16u32 {
        let a = frobenius(&sigma_simple(n).unwrap()).unwrap();
        let b = sigma_simple(2 * n).unwrap();
        assert!(same_module_structure(&a, &b), "Phi(Sigma^{n})");
    }
    // Phi(F(1)) is one-dimensional in degrees 2,4,8,16 within window 16
    let f1 = free_module(1, 8).unwrap();
    let phi = frobenius(&f1).unwrap();
    for d in 0..=16u32 {
        let expected = usize::from(d >= 2 && d.is_power_of_two());
        assert_eq!(phi.dim(d), expected, "Phi F(1) degree {d}");
    }
    assert!(phi.validate().is_empty());
    // Phi preserves validity on J(4)
    assert!(frobenius(&brown_gitler(4).unwrap()).unwrap().validate().is_empty());
}

#[test]
fn lambda_examples() {
    // lambda on F(1): Phi u -> u^2, injective where defined
    let f1 = free_module(1, 16).unwrap();
    let l = lambda(&f1).unwrap();
    assert!(l.is_module_map());
    assert!(l.block(2).get(0, 0), "Phi u -> u^2");
    for d in 0..=16u32 {
        assert!(l.block(d).kernel_basis().is_empty(), "lambda kernel at {d}");
    }
    // lambda on Sigma F2 is zero
    let ls = lambda(&sigma_simple(1).unwrap()).unwrap();
    assert!(ls.is_zero());
    // the image of lambda on Phi F(1) is spanned by u^{2^j}, j >= 1
    for d in [2u32, 4, 8, 16] {
        assert_eq!(l.block(d).rank(), 1);
    }
    assert_eq!(l.block(1).rank(), 0);
    // lambda^2 = lambda ∘ Phi(lambda) holds by construction; check blocks
    let l2 = lambda_iterate(&f1, 2).unwrap();
    assert!(l2.is_module_map());
    assert!(l2.block(4).get(0, 0), "Phi^2 u -> u^4");
}

#[test]
fn tensor_examples() {
    let f1 = free_module(1, 16).unwrap();
    let t = tensor(&f1, &f1, 16).unwrap();
    // pair-count oracle: dims of F(1) tensor F(1) at degree d are the number
    // of ordered pairs of powers of two summing to d
    for d in 0..=16u32 {
        let mut pairs = 0usize;
        for a in 1..d {
            if a.is_power_of_two() && (d - a).is_power_of_two() {
                pairs += 1;
            }
        }
        assert_eq!(t.dim(d), pairs, "F(1)⊗F(1) degree {d}");
    }
    // degree 2: u⊗u; degree 3: u⊗u^2 and u^2⊗u; degree 4: only u^2⊗u^2
    // since F(1) has nothing in degree 3
    assert_eq!(t.dim(2), 1);
    assert_eq!(t.dim(3), 2);
    assert_eq!(t.dim(4), 1);
    assert!(t.validate().is_empty());

    // Sq^2(u ⊗ u) = u^2 ⊗ u^2
    let v = t.apply_sq(2, 2, &BitVec::standard(1, 0));
    assert!(v.get(0));

    // Sigma F2 ⊗ Sigma F2 = Sigma^2 F2
    let s = sigma_simple(1).unwrap();
    let ss = tensor(&s, &s, 2).unwrap();
    assert_eq!(ss.dims(), &[0, 0, 1]);
    assert!(ss.validate().is_empty());
}

#[test]
fn tensor_commutes_up_to_swap() {
    let a = brown_gitler(2).unwrap();
    let b = sigma_simple(1).unwrap();
    let ab = tensor(&a, &b, 3).unwrap();
    let ba = tensor(&b, &a, 3).unwrap();
    assert_eq!(ab.dims(), ba.dims());
    // conjugate the action by the swap permutation on each degree
    for d in 0..=3u32 {
        let mut perm = sq2::f2::BitMatrix::zero(ba.dim(d), ab.dim(d));
        let mut idx = 0usize;
        for p in 0..=d {
            let q = d - p;
            if p <= a.window() && q <= b.window() {
                for i in 0..a.dim(p) {
                    for j in 0..b.dim(q) {
                        // position of (y_j, x_i) inside B ⊗ A at degree d
                        let mut pos = 0usize;
                        for pp in 0..q {
                            let qq = d - pp;
                            if pp <= b.window() && qq <= a.window() {
                                pos += b.dim(pp) * a.dim(qq);
                            }
                        }
                        pos += j * a.dim(p) + i;
                        perm.set(pos, idx, true);
                        idx += 1;
                    }
                }
            }
        }
        for k in 1..=(3 - d) {
            let lhs = perm_mul(&ba.sq(k, d), &perm);
            let mut perm_up = sq2::f2::BitMatrix::zero(ba.dim(d + k), ab.dim(d + k));
            // rebuild swap at degree d+k
            let mut idx2 = 0usize;
            for p in 0..=(d + k) {
                let q = d + k - p;
                if p <= a.window() && q <= b.window() {
                    for i in 0..a.dim(p) {
                        for j in 0..b.dim(q) {
                            let mut pos = 0usize;
                            for pp in 0..q {
                                let qq = d + k - pp;
                                if pp <= b.window() && qq <= a.window() {
                                    pos += b.dim(pp) * a.dim(qq);
                                }
                            }
                            pos += j * a.dim(p) + i;
                            perm_up.set(pos, idx2, true);
                            idx2 += 1;
                        }
                    }
                }
            }
            let rhs = perm_mul(&perm_up, &ab.sq(k, d));
            assert_eq!(lhs, rhs, "swap conjugation at (k={k}, d={d})");
        }
    }

    fn perm_mul(a: &sq2::f2::BitMatrix, b: &sq2::f2::BitMatrix) -> sq2::f2::BitMatrix {
        a.mul(b)
    }
}

#[test]
fn quotient_examples() {
    // J(2)/<x0^2> = Sigma F2
    let j2 = brown_gitler(2).unwrap();
    let (sub, incl) = submodule_generated_by(&j2, &[(2, BitVec::standard(1, 0))]).unwrap();
    assert_eq!(sub.dims(), &[0, 0, 1]);
    let (q, proj) = quotient(&j2, &incl).unwrap();
    assert_eq!(q.dims(), &[0, 1, 0]);
    assert!(proj.is_module_map());
    let s1_padded = sq2::umod::with_window(&sigma_simple(1).unwrap(), 2).unwrap();
    assert!(same_module_structure(&q, &s1_padded));

    // quotient by the zero submodule is the identity
    let (zsub, zincl) = submodule_generated_by(&j2, &[]).unwrap();
    assert!(zsub.is_zero_module());
    let (q2, proj2) = quotient(&j2, &zincl).unwrap();
    assert_eq!(q2.dims(), j2.dims());
    assert!(proj2.is_injective() && proj2.is_surjective());

    // H(3) as a quotient: F(1) at window 16 modulo the submodule generated
    // by u^8 leaves dims 1 at degrees 1, 2, 4
    let f1 = free_module(1, 16).unwrap();
    let (sub8, incl8) = submodule_generated_by(&f1, &[(8, BitVec::standard(1, 0))]).unwrap();
    assert_eq!(sub8.dim(8), 1);
    assert_eq!(sub8.dim(16), 1);
    let (h3q, _) = quotient(&f1, &incl8).unwrap();
    for d in 0..=16u32 {
        let expected = usize::from(d == 1 || d == 2 || d == 4);
        assert_eq!(h3q.dim(d), expected, "H(3) quotient at degree {d}");
    }
    // matches the direct construction where both are defined
    let h3 = h_k(3).unwrap();
    for d in 0..=4u32 {
        assert_eq!(h3q.dim(d), h3.dim(d));
    }
}

#[test]
fn socle_and_top_examples() {
    // socle(J(n)) is the top class only
    for n in [2u32, 4, 8] {
        let j = brown_gitler(n).unwrap();
        let s = socle(&j).unwrap();
        for d in 0..=n {
            let expected = usize::from(d == n);
            assert_eq!(s[d as usize].len(), expected, "socle J({n}) degree {d}");
        }
    }
    // socle(H(4)) = <u^8> in degree 8
    let h4 = h_k(4).unwrap();
    let s = socle(&h4).unwrap();
    for d in 0..=8u32 {
        assert_eq!(s[d as usize].len(), usize::from(d == 8), "socle H(4) at {d}");
    }
    // socle(Sigma^n F2) is everything
    let s5 = sigma_simple(5).unwrap();
    assert_eq!(socle(&s5).unwrap()[5].len(), 1);

    // top(F(n)) is one class in degree n
    let f2m = free_module(2, 10).unwrap();
    let t = top(&f2m);
    for d in 0..=10u32 {
        assert_eq!(t[d as usize].1.len(), usize::from(d == 2), "top F(2) at {d}");
    }
    // top(H(3)) = <u>
    let h3 = h_k(3).unwrap();
    let t = top(&h3);
    for d in 0..=4u32 {
        assert_eq!(t[d as usize].1.len(), usize::from(d == 1), "top H(3) at {d}");
    }
    // top(Sigma^n F2) is everything
    let t = top(&s5);
    assert_eq!(t[5].1.len(), 1);
}

#[test]
fn nilpotent_and_reduced() {
    for n in 1..=16u32 {
        assert!(is_nilpotent(&brown_gitler(n).unwrap()).unwrap(), "J({n})");
    }
    assert!(is_reduced(&free_module(1, 32).unwrap()));
    // Sigma F2 ⊕ (finite piece of a reduced module): neither nilpotent nor
    // reduced
    let s1 = sigma_simple(1).unwrap();
    let j2 = brown_gitler(2).unwrap();
    let mix = direct_sum(&[s1, j2], "mix").unwrap();
    // the J(2) part makes lambda non-injective; there is no degree-0 part so
    // nilpotency needs the finite check: every piece is finite, so the sum
    // IS nilpotent; swap in a reduced piece to break it
    assert!(is_nilpotent(&mix).unwrap());
    assert!(!is_reduced(&mix));
    // F2 in degree zero is reduced but not nilpotent
    let pt = sq2::umod::point_module();
    assert!(!is_nilpotent(&pt).unwrap());
    assert!(is_reduced(&pt));
}

#[test]
fn hom_to_j_examples() {
    // Hom(H(4), J(8)): dimension dim H(4)^8 = 1, and the realized map is
    // injective (the canonical embedding)
    let h4 = h_k(4).unwrap();
    let h = hom_to_j(&h4, 8).unwrap();
    assert_eq!(h.dim(), 1);
    let f = BitVec::standard(1, 0);
    let map = h.realize(&f).unwrap();
    assert!(map.is_module_map());
    assert!(map.is_injective());

    // dim Hom(M, J(n)) = dim M^n across small finite modules
    for n in 1..=6u32 {
        let j6 = brown_gitler(6).unwrap();
        let h = hom_to_j(&j6, n).unwrap();
        let maps = h.basis().unwrap();
        assert_eq!(maps.len(), j6.dim_at(n).unwrap());
        for m in &maps {
            assert!(m.is_module_map());
        }
    }
}

#[test]
fn cohomology_bv_rank_one() {
    let m = cohomology_bv(1, 12).unwrap();
    assert!(m.validate().is_empty());
    assert!(is_reduced(&m));
    // dims all 1, Sq^1 u^{2j} = 0, Sq^1 u^{2j+1} = u^{2j+2}
    for d in 0..=12u32 {
        assert_eq!(m.dim(d), 1);
    }
    for d in 1..=11u32 {
        let v = m.apply_sq(1, d, &BitVec::standard(1, 0));
        assert_eq!(v.get(0), d % 2 == 1, "Sq^1 on u^{d}");
    }
    // Sq^1-acyclicity of the reduced part in degrees 1..=window-2
    for d in 1..=10u32 {
        let ker = m.sq(1, d).kernel_basis().len();
        let im = if d >= 1 { m.sq(1, d - 1).rank() } else { 0 };
        let im = if d == 1 { 0 } else { im };
        assert_eq!(ker, im, "Sq^1 homology at degree {d}");
    }
}

#[test]
fn kernel_module_of_lambda() {
    // kernel of the projection F(1) -> H(3) (degrees <= 4 window) is zero
    let f1 = free_module(1, 4).unwrap();
    let ident = sq2::umod::ModuleMap::identity(&f1);
    let (k, incl) = kernel_module(&ident).unwrap();
    assert!(k.is_zero_module());
    assert!(incl.is_module_map());
}
