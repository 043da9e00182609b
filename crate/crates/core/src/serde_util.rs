//! Serializers for exact numbers as decimal or fraction strings.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serializer;

pub fn bigint_string<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn rational_list<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn rational_pair<S: Serializer>(v: &Option<(BigRational, BigRational)>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some((a, b)) => s.collect_seq([a.to_string(), b.to_string()]),
    }
}
