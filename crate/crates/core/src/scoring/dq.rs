use super::weights::WeightVector;
use crate::ingredients::{Ingredient, IngredientVector};
use crate::{Error, Result};

/// Weights restricted to the assessed ingredients and rescaled to sum to
/// 100; `None` for ingredients that were not assessed.
pub fn effective_weights(ingredients: &IngredientVector, weights: &WeightVector) -> Result<[Option<f64>; 9]> {
    let assessed = ingredients.assessed();
    if assessed.is_empty() {
        return Err(Error::NoIngredients);
    }
    let total: f64 = assessed.iter().map(|i| weights.get(*i)).sum();
    if total <= 0.0 {
        return Err(Error::Domain(
            "assessed ingredients carry zero total weight".to_string(),
        ));
    }
    Ok(std::array::from_fn(|k| {
        let ingredient = Ingredient::ALL[k];
        ingredients
            .get(ingredient)
            .map(|_| 100.0 * weights.get(ingredient) / total)
    }))
}

/// Weighted mean of the assessed ingredient scores.
pub fn dq_score(ingredients: &IngredientVector, weights: &WeightVector) -> Result<f64> {
    let effective = effective_weights(ingredients, weights)?;
    let mut total = 0.0;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for (w, s) in effective.iter().zip(ingredients.to_array()) {
        if let (Some(w), Some(s)) = (w, s) {
            total += w * s / 100.0;
            lo = lo.min(s);
            hi = hi.max(s);
        }
    }
    // Rounding can push a weighted mean a hair outside its bounds.
    Ok(total.clamp(lo, hi))
}
