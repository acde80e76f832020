// SPDX-License-Identifier: Apache-2.0
#ifndef SPDISO_TOLERANCES_HPP
#define SPDISO_TOLERANCES_HPP

namespace spdiso {

// Numerical thresholds used across the library. All checks that compare
// against a matrix are relative to its scale unless noted otherwise.
struct Tolerances {
  double sym = 1e-10;        // symmetry: ||P - P^T|| <= sym * ||P||
  double orth = 1e-10;       // orthogonality: ||U^T U - I|| <= orth
  double pd = 1e-12;         // positive definiteness: lambda_min > pd * ||P||
  double sing = 1e-12;       // nonsingularity: |det| > sing
  double eig = 1e-8;         // eigenvalue pairing / modulus spread
  double angle_gap = 1e-7;   // eigenangle clustering gap, radians
  double rank = 1e-8;        // numeric-rank cutoff relative to sigma_max
  double residual = 1e-8;    // default fixed-point membership tolerance
  double kernel = 1e-6;      // singular-value cutoff in tangent-space kernels
  double det_unit = 1e-9;    // |det M| = 1 test for the j-delta family
};

const Tolerances& default_tolerances();

}  // namespace spdiso

#endif
