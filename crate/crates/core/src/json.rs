use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::Value;

/// A JSON number when the integer fits in `i64`, otherwise a decimal string.
pub fn bigint_value(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}
