//! Built-in example fields, each given by the minimal polynomial of a normal element.

use crate::error::Result;
use crate::number_field::{Irreducibility, NumberField};
use crate::poly::PolyQ;

#[derive(Clone, Copy, Debug)]
pub struct Example {
    pub name: &'static str,
    pub group: &'static str,
    /// Coefficients, highest degree first.
    pub coeffs: &'static [i64],
    /// Degree patterns cannot prove irreducibility for every group.
    pub irreducibility: Irreducibility,
}

impl Example {
    pub fn poly(&self) -> PolyQ {
        PolyQ::from_ints_high_first(self.coeffs)
    }

    pub fn field(&self) -> Result<NumberField> {
        NumberField::new(self.poly(), self.irreducibility)
    }
}

/// Splitting field of `x^3 - 2`.
pub const S3: Example = Example {
    name: "s3",
    group: "S3",
    coeffs: &[1, 3, 12, 25, 60, 51, 127],
    irreducibility: Irreducibility::Certify,
};

/// Splitting field of `x^4 - 2`.
pub const D4: Example = Example {
    name: "d4",
    group: "D4",
    coeffs: &[1, -8, 32, 112, 152, 160, 128, 64, 16],
    irreducibility: Irreducibility::Assume,
};

/// `Q(sqrt 2, sqrt 3, sqrt((2 + sqrt 2)(3 + sqrt 3)))`.
pub const Q8: Example = Example {
    name: "q8",
    group: "Q8",
    coeffs: &[1, -8, -736, -3344, 5800, 18272, -27904, 9920, -368],
    irreducibility: Irreducibility::Assume,
};

pub const ALL: [Example; 3] = [S3, D4, Q8];

pub fn by_name(name: &str) -> Option<Example> {
    ALL.into_iter().find(|e| e.name.eq_ignore_ascii_case(name))
}
