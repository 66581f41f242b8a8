// Independent reference implementations used only by tests. Nothing here may
// call into the library paths it checks.
#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <utility>
#include <vector>

#include "seldkit/eigen4.hpp"
#include "seldkit/salsa.hpp"

namespace oracle {

/// Eigenvalues of a 4x4 Hermitian matrix via the characteristic polynomial
/// (trace power sums + Newton identities) and a derivative-chain bisection;
/// descending order. Entirely independent of the Jacobi path.
std::array<double, 4> charpoly_eigenvalues(const seld::HermitianMatrix4& a);

/// Unit eigenvector for a given eigenvalue via inverse iteration with
/// Gaussian elimination.
std::array<seld::Complex, 4> inverse_iteration_vector(
    const seld::HermitianMatrix4& a, double eigenvalue);

/// |<a, b>| for unit complex 4-vectors; 1 means aligned up to phase.
double alignment(const std::array<seld::Complex, 4>& a,
                 const std::array<seld::Complex, 4>& b);

/// Random Hermitian PSD matrix B * B^H with entries from a seeded stream,
/// scaled to unit-ish trace.
seld::HermitianMatrix4 random_psd(std::uint64_t seed);

/// Minimum-total-cost one-to-one assignment by exhaustive enumeration.
/// Matches min(rows, cols) pairs; feasible only for tiny inputs.
double brute_force_assignment_cost(const std::vector<double>& cost, int rows,
                                   int cols);

/// Frame count by literally walking hops until past the signal end, for the
/// centered framing convention (frame k starts at k * hop).
int naive_centered_frame_count(std::int64_t num_samples, int hop);

/// All (az, el) estimates of single-source bins inside a frame range.
std::vector<std::pair<double, double>> collect_ss_bin_doas(
    const seld::SalsaFeature& feat, int frame_begin, int frame_end);

}  // namespace oracle
