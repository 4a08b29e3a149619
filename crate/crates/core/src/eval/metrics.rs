//! Ranked-retrieval quality measures over graded relevance.
//!
//! Gain/discount convention: linear gain `grade_i` with discount
//! `log2(i+1)` at 1-based rank `i`, for all ranks. Binary relevance for
//! precision means judged grade >= 2. Absolute NDCG values depend on this
//! convention, so it is fixed here and documented in the README.

use crate::scalar::Real;

/// Relevance threshold for binary metrics: grades 2 and 3 count as
/// relevant.
pub const RELEVANT_GRADE: u8 = 2;

fn dcg<S: Real>(grades: &[u8], k: usize) -> S {
    grades
        .iter()
        .take(k)
        .enumerate()
        .map(|(i, &g)| {
            let rank = S::from_count(i + 2); // discount log2(i+1) at 1-based rank
            S::from_u8(g).unwrap() / rank.log2()
        })
        .sum()
}

/// NDCG@k of a ranked grade list; 0 when the ideal DCG is 0 (no judged
/// relevance anywhere in the list).
pub fn ndcg_at_k<S: Real>(grades: &[u8], k: usize) -> S {
    if grades.is_empty() || k == 0 {
        return S::zero();
    }
    let mut ideal = grades.to_vec();
    ideal.sort_unstable_by(|a, b| b.cmp(a));
    let idcg: S = dcg(&ideal, k);
    if idcg == S::zero() {
        return S::zero();
    }
    dcg::<S>(grades, k) / idcg
}

/// NDCG over the full list.
pub fn ndcg_all<S: Real>(grades: &[u8]) -> S {
    ndcg_at_k(grades, grades.len())
}

/// P@k: fraction of the first k positions holding a relevant (grade >= 2)
/// document. Divides by k even when the list is shorter.
pub fn precision_at_k<S: Real>(grades: &[u8], k: usize) -> S {
    if k == 0 {
        return S::zero();
    }
    let relevant = grades
        .iter()
        .take(k)
        .filter(|&&g| g >= RELEVANT_GRADE)
        .count();
    S::from_count(relevant) / S::from_count(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn ideal_order_scores_one() {
        assert_abs_diff_eq!(ndcg_at_k::<f64>(&[3, 0], 2), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn inverted_pair_matches_hand_computation() {
        // DCG = 3/log2(3), IDCG = 3/log2(2)
        assert_abs_diff_eq!(
            ndcg_at_k::<f64>(&[0, 3], 2),
            0.6309297535714574,
            epsilon = 1e-12
        );
    }

    #[test]
    fn all_zero_grades_score_zero() {
        assert_eq!(ndcg_at_k::<f64>(&[0, 0, 0], 3), 0.0);
        assert_eq!(ndcg_all::<f64>(&[0, 0]), 0.0);
    }

    #[test]
    fn precision_counts_grades_at_least_two() {
        assert_abs_diff_eq!(precision_at_k::<f64>(&[3, 2, 0, 1, 2], 5), 0.6);
        assert_eq!(precision_at_k::<f64>(&[1, 1], 5), 0.0);
        assert_abs_diff_eq!(precision_at_k::<f64>(&[3], 5), 0.2);
    }

    #[test]
    fn precision_depends_only_on_prefix() {
        let a = precision_at_k::<f64>(&[3, 2, 0], 2);
        let b = precision_at_k::<f64>(&[3, 2, 3, 3, 3], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn ndcg_is_bounded() {
        let grades = [1, 3, 0, 2, 2, 0, 1];
        for k in 1..=grades.len() {
            let v: f64 = ndcg_at_k(&grades, k);
            assert!((0.0..=1.0).contains(&v));
        }
    }
}
