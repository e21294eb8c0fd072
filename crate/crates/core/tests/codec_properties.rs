use hsiao::codec::{DecodeOutcome, SecDed};
use hsiao::planner::build_check_matrix;
use hsiao::Strategy;
use proptest::prelude::*;

fn codec(k: usize, strategy: Strategy) -> SecDed {
    SecDed::new(build_check_matrix(k, strategy).unwrap()).unwrap()
}

fn word_of(k: usize, v: u64) -> Vec<u8> {
    (0..k).map(|i| ((v >> i) & 1) as u8).collect()
}

#[test]
fn round_trip_every_data_word_up_to_sixteen_bits() {
    for k in [1, 2, 3, 5, 8, 11, 12, 16] {
        let c = codec(k, Strategy::Shift);
        for v in 0..1u64 << k {
            let data = word_of(k, v);
            let word = c.encode(&data).unwrap();
            assert_eq!(c.decode(word.bits()).unwrap(), DecodeOutcome::NoError { data });
        }
    }
}

#[test]
fn single_and_double_flips_for_every_word_k8() {
    for strategy in Strategy::ALL {
        let c = codec(8, strategy);
        let n = c.length();
        for v in 0..256 {
            let data = word_of(8, v);
            let word = c.encode(&data).unwrap();
            for i in 0..n {
                let mut bad = word.clone();
                bad.flip(i);
                assert_eq!(
                    c.decode(bad.bits()).unwrap(),
                    DecodeOutcome::Corrected {
                        position: i,
                        data: data.clone()
                    }
                );
                for j in i + 1..n {
                    let mut bad2 = bad.clone();
                    bad2.flip(j);
                    assert_eq!(c.decode(bad2.bits()).unwrap(), DecodeOutcome::DoubleError);
                }
            }
        }
    }
}

#[test]
fn lookup_table_matches_scan_on_all_syndromes() {
    let c = codec(57, Strategy::Flip);
    let n = c.length();
    let word = c.encode(&[1; 57]).unwrap();
    for i in 0..n {
        for j in i..n {
            let mut bad = word.clone();
            bad.flip(i);
            if j != i {
                bad.flip(j);
            }
            let s = c.syndrome(bad.bits()).unwrap();
            assert_eq!(c.lookup(s), c.lookup_linear(s));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_round_trip_and_sec(k in 17usize..300, seed in any::<u64>(), pos in any::<usize>()) {
        let c = codec(k, Strategy::Shift);
        let data: Vec<u8> = (0..k).map(|i| ((seed.rotate_left(i as u32 % 64) ^ i as u64) & 1) as u8).collect();
        let word = c.encode(&data).unwrap();
        prop_assert!(c.syndrome(word.bits()).unwrap().is_zero());
        let i = pos % c.length();
        let mut bad = word.clone();
        bad.flip(i);
        prop_assert_eq!(
            c.decode(bad.bits()).unwrap(),
            DecodeOutcome::Corrected { position: i, data: data.clone() }
        );
        let j = (i + 1 + pos / 7 % (c.length() - 1)) % c.length();
        bad.flip(j);
        prop_assert_eq!(c.decode(bad.bits()).unwrap(), DecodeOutcome::DoubleError);
    }
}
