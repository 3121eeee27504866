use serde::Serialize;

use super::GbError;

/// Truncated integer power series `c_0 + c_1 g + ... + c_D g^D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PowerSeries {
    coeffs: Vec<i128>,
}

impl PowerSeries {
    /// Series with the given coefficients; the truncation is `len - 1`.
    pub fn new(coeffs: Vec<i128>) -> Self {
        assert!(!coeffs.is_empty(), "a power series needs at least c_0");
        PowerSeries { coeffs }
    }

    /// A polynomial padded (or cut) to truncation `d`.
    pub fn from_polynomial(coeffs: &[i128], d: usize) -> Self {
        let mut c = vec![0; d + 1];
        for (i, &x) in coeffs.iter().enumerate().take(d + 1) {
            c[i] = x;
        }
        PowerSeries { coeffs: c }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i128 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn truncate(&self, d: usize) -> Self {
        PowerSeries::from_polynomial(&self.coeffs, d)
    }

    /// Product truncated to the smaller of the two truncations.
    pub fn mul(&self, other: &Self) -> Result<Self, GbError> {
        let d = self.truncation().min(other.truncation());
        let mut c = vec![0i128; d + 1];
        for (i, slot) in c.iter_mut().enumerate() {
            let mut acc: i128 = 0;
            for k in 0..=i {
                let t = self.coeffs[k]
                    .checked_mul(other.coeffs[i - k])
                    .ok_or(GbError::CountOverflow)?;
                acc = acc.checked_add(t).ok_or(GbError::CountOverflow)?;
            }
            *slot = acc;
        }
        Ok(PowerSeries { coeffs: c })
    }

    /// Is this `1 + O(g^{D+1})`?
    pub fn is_one(&self) -> bool {
        self.coeffs[0] == 1 && self.coeffs[1..].iter().all(|&c| c == 0)
    }
}

/// Inverse of a series with constant term `±1`, truncated at `d`.
pub fn invert_series(p: &PowerSeries, d: usize) -> Result<PowerSeries, GbError> {
    let c0 = p.coeff(0);
    if c0 != 1 && c0 != -1 {
        return Err(GbError::NonUnitSeries(c0));
    }
    let mut r = vec![0i128; d + 1];
    r[0] = c0;
    for n in 1..=d {
        let mut acc: i128 = 0;
        for k in 1..=n {
            let t = p
                .coeff(k)
                .checked_mul(r[n - k])
                .ok_or(GbError::CountOverflow)?;
            acc = acc.checked_add(t).ok_or(GbError::CountOverflow)?;
        }
        // c0 is its own inverse
        r[n] = -c0 * acc;
    }
    Ok(PowerSeries { coeffs: r })
}
