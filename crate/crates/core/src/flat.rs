//! Serializes nalgebra column vectors as plain arrays.

use nalgebra::{DVector, Scalar};
use serde::{Serialize, Serializer};

use crate::geometry::Point;

pub fn vector<T: Scalar + Serialize, S: Serializer>(v: &DVector<T>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter())
}

pub fn points<S: Serializer>(vs: &[Point], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(vs.iter().map(|v| v.as_slice()))
}
