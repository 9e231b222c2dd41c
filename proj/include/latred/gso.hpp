#pragma once

#include <vector>

#include "latred/models.hpp"

namespace latred {

// Gram-Schmidt data of a basis: squared orthogonalized norms plus the
// upper-triangular projection coefficients with unit diagonal.
struct GsoData {
    int n = 0;
    int p = 0;
    std::vector<double> hat_norms_sq;  // p entries, all positive
    std::vector<double> r_coeffs;      // p*p row-major, r(k,j) for k <= j, unit diagonal

    double r(int k, int j) const { return r_coeffs[static_cast<size_t>(k) * p + j]; }
    double& r(int k, int j) { return r_coeffs[static_cast<size_t>(k) * p + j]; }
};

// Consecutive-ratio statistics of a squared-norm profile, read back to front:
// ratio j (for j = g+1 .. n-1) is hat_norm_sq[n-j+1] / hat_norm_sq[n-j] in
// 1-based vector positions, so small j looks at the tail of the basis.
struct ReductionReport {
    int g = 0;
    std::vector<double> ratios;  // ratios[idx] is ratio j = g+1+idx
    double level = 0.0;          // minimum ratio
    int worst_index = 0;         // (smallest j attaining the minimum) - 1

    double ratio_at(int j) const { return ratios[static_cast<size_t>(j) - g - 1]; }
};

// Modified Gram-Schmidt with one re-orthogonalization pass. If hat_out is
// given it receives the orthogonalized vectors as columns (same shape as the
// input). Inputs whose smallest orthogonalized norm falls below 1e-12 times
// the largest are rejected as rank deficient.
GsoData gram_schmidt(const Basis& basis, Basis* hat_out = nullptr);

// Reduction statistics from a squared-norm profile of p = n - g entries.
ReductionReport ratios_from_norms(const std::vector<double>& hat_norms_sq, int n, int g);
ReductionReport ratios(const GsoData& gso, int g);

// True iff every consecutive squared-norm ratio exceeds s^2 (trivially true
// for fewer than two vectors).
bool is_siegel_reduced(const GsoData& gso, double s);

// True iff every off-diagonal coefficient lies in [-1/2, 1/2).
bool is_proper(const GsoData& gso);

// Segment generalization of the reduction level: the profile is cut into
// disjoint blocks of k consecutive positions counted from the back (a partial
// block at the front is dropped), and the level is the minimum over adjacent
// blocks of (product over block r) / (product over block r+1). Block size 1
// recovers the plain reduction level.
double schnorr_level_from_norms(const std::vector<double>& hat_norms_sq, int n, int k, int g);
double schnorr_level(const GsoData& gso, int k, int g);

// Y_j = hat_norm_sq[j] / ||b_j||^2, each in (0, 1].
std::vector<double> y_ratios(const GsoData& gso, const Basis& basis);

}  // namespace latred
