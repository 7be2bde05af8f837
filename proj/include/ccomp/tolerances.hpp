#pragma once

namespace ccomp {

// Numeric tolerances used across the library. Probability tables are exact
// up to double rounding; derived identities accumulate a little more error.
inline constexpr double kProbSumTol = 1e-12;   // distributions must sum to 1
inline constexpr double kIdentityTol = 1e-9;   // derived identities (chain rule etc.)
inline constexpr double kPartitionTol = 1e-9;  // mixture-of-products consistency
inline constexpr double kUnitNormTol = 1e-10;  // unit vectors
inline constexpr double kOrthoTol = 1e-10;     // orthonormality (Gram residual)
inline constexpr double kTraceTol = 1e-9;      // density-matrix trace / Tr M rho
inline constexpr double kMeanStateTol = 1e-8;  // ensemble mean state vs I/m
inline constexpr double kEntropyTol = 1e-6;    // spectral entropy identities

}  // namespace ccomp
