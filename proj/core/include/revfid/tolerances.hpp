#pragma once

// Default numerical thresholds shared by all modules.

namespace revfid::tol {

// Hermitian substrate.
inline constexpr double psd_relative = 1e-10;          // clip threshold, relative to ||H||_F
inline constexpr double mean_strict_positive = 1e-12;  // relative to ||A||_F
inline constexpr double mean_regularization = 1e-12;   // epsilon = this * tr A

// States and distributions.
inline constexpr double density_input = 1e-8;     // accepted trace / eigenvalue deviation
inline constexpr double density_invariant = 1e-10;
inline constexpr double pure_norm = 1e-12;
inline constexpr double prob_clip = 1e-14;
inline constexpr double prob_sum = 1e-12;
inline constexpr double signed_total = 1e-10;
inline constexpr double kraus_completeness = 1e-9;
inline constexpr double povm_completeness = 1e-9;

// Divergences.
inline constexpr double strictly_positive_state = 1e-10;  // absolute min eigenvalue
inline constexpr double support_membership = 1e-8;
inline constexpr double support_eigenvalue = 1e-12;       // relative to ||rho||_F

// Reverse tests.
inline constexpr double prep_column_norm = 1e-9;
inline constexpr double contraction_residual = 1e-8;
inline constexpr double schur_epsilon = 1e-9;             // C shift, relative to tr T
inline constexpr double dropped_column = 1e-12;
inline constexpr double degenerate_eigenvalue = 1e-9;

// Geometry.
inline constexpr double tangent_trace = 1e-10;
inline constexpr double expansion_generic = 0.1;
inline constexpr double flow_start_constraint = 1e-8;
inline constexpr double flow_reject_residual = 1e-4;

}  // namespace revfid::tol
