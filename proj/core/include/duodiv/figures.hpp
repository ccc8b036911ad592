#pragma once

//! CSV plot data for the two qualitative pictures the library's guards are
//! built around:
//!  - tangent-gap surfaces of the scaled-quadratic pair
//!    ((a/2) theta^2, theta'^2/2) for a in {1, 2, 0.5} — the a = 0.5 panel
//!    violates dominance and exhibits negative values, which is why the duo
//!    constructors guard and why an explicit unchecked path exists;
//!  - the dominance-reversal curves of the (theta^2, theta^4) pair on (0,1):
//!    pointwise order of the generators against the reversed pointwise order
//!    of their numerically computed conjugates on (0,2).

#include <string>

namespace duodiv {

//! Surfaces value(a, theta, theta') = (a/2) theta^2 + theta'^2/2 - theta theta'
//! over [-1,1]^2, a in {1, 2, 0.5}; the a = 0.5 sheet is computed through the
//! unchecked pair. CSV columns: a,theta,theta_prime,value.
std::string quadratic_surfaces_csv(int grid_per_axis = 41);

//! Curves F1 = theta^2 and F2 = theta^4 sampled on (0,1) plus their numeric
//! conjugates sampled on (0,2). CSV columns: curve,x,value with curve in
//! {F1, F2, F1_conj, F2_conj}.
std::string conjugate_reversal_csv(int points_per_curve = 200);

//! Write content to path, replacing the file. Throws Error on I/O failure.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace duodiv
