use crate::error::{Result, StatsError};

pub const ITEM_COUNT: usize = 5;

/// Mean of the five 7-point items.
pub fn beauvis_score(items: &[i64]) -> Result<f64> {
    if items.len() != ITEM_COUNT {
        return Err(StatsError::BadItemCount(items.len()));
    }
    if let Some(&bad) = items.iter().find(|v| !(1..=7).contains(*v)) {
        return Err(StatsError::OutOfRange(bad));
    }
    Ok(items.iter().sum::<i64>() as f64 / ITEM_COUNT as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(beauvis_score(&[5, 5, 5, 5, 5]).unwrap(), 5.0);
        assert_eq!(beauvis_score(&[4, 5, 6, 3, 7]).unwrap(), 5.0);
        assert!((beauvis_score(&[1, 1, 1, 1, 2]).unwrap() - 1.2).abs() < 1e-12);
        assert_eq!(beauvis_score(&[1, 2, 3, 4]), Err(StatsError::BadItemCount(4)));
        assert_eq!(beauvis_score(&[1, 2, 3, 4, 8]), Err(StatsError::OutOfRange(8)));
    }
}
