use num_traits::Zero;
use proptest::prelude::*;

use glasspath_core::backend::{CountBackend, Engine};
use glasspath_core::glass3::{closed_n3, exists3};
use glasspath_core::words::{dp_n, enumerate_words_with_vector, ReflectionVector, Semantics};

fn vector(max_n: usize, max_entry: u32) -> impl Strategy<Value = ReflectionVector> {
    prop::collection::vec(0..=max_entry, 1..=max_n).prop_map(ReflectionVector::new)
}

proptest! {
    #[test]
    fn backends_agree(v in vector(5, 3)) {
        let dp = dp_n(&v);
        for b in [CountBackend::Recursion, CountBackend::Gf, CountBackend::Oracle] {
            if b.incompatibility(&v).is_none() {
                prop_assert_eq!(Engine::new(b).count(&v).unwrap(), dp.clone(), "{}", b);
            }
        }
    }

    #[test]
    fn listed_words_realize_the_vector(v in vector(4, 3)) {
        let words: Vec<_> = enumerate_words_with_vector(&v, Semantics::Path).collect();
        prop_assert_eq!(words.len(), usize::try_from(dp_n(&v)).unwrap());
        for w in &words {
            prop_assert!(w.is_admissible(Semantics::Path));
            prop_assert_eq!(&w.vector(v.n()).unwrap(), &v);
        }
        prop_assert!(words.windows(2).all(|p| p[0].letters() < p[1].letters()));
    }

    #[test]
    fn closed_form_beyond_the_grid(x in 0u32..24, y in 0u32..24, z in 0u32..24) {
        let v = ReflectionVector::new(vec![x, y, z]);
        prop_assert_eq!(closed_n3(x.into(), y.into(), z.into()), dp_n(&v));
    }

    #[test]
    fn witnesses_are_valid(x in 0u64..40, y in 0u64..40, z in 0u64..40) {
        let f = exists3(x, y, z);
        let v = ReflectionVector::new(vec![x as u32, y as u32, z as u32]);
        prop_assert_eq!(f.feasible, !closed_n3(x, y, z).is_zero());
        if let Some(w) = f.witness {
            prop_assert!(w.is_admissible(Semantics::Path));
            prop_assert_eq!(w.vector(3).unwrap(), v);
        }
    }

    #[test]
    fn even_totals_reverse(v in vector(5, 4)) {
        prop_assume!(v.total() % 2 == 0);
        prop_assert_eq!(dp_n(&v), dp_n(&v.reversed()));
    }
}
