#pragma once

#include <cstdint>
#include <vector>

#include "latred/gso.hpp"
#include "latred/models.hpp"

namespace latred {

struct LllConfig {
    enum class Mode { Siegel, TrulyLll };
    Mode mode = Mode::Siegel;
    double param = 0.75;            // s or delta, in (0,1)
    long long max_iterations = 0;   // 0 = derive a generous cap from the input
};

struct LllResult {
    Basis basis;
    long long iterations = 0;
    long long swaps = 0;
};

// Optional exact record of the column operations applied to a basis: the
// output equals input * matrix, and the matrix is integer with determinant
// +-1 by construction (identity, integer translations, column swaps).
struct ChangeOfBasis {
    int p = 0;
    std::vector<long long> m;  // p*p row-major

    explicit ChangeOfBasis(int p_ = 0);
    long long at(int i, int j) const { return m[static_cast<size_t>(i) * p + j]; }
};

// Translate each vector by integer multiples of its predecessors until every
// projection coefficient lies in [-1/2, 1/2). The orthogonalized vectors and
// their norms are unchanged; the spanned lattice is preserved.
Basis make_proper(const Basis& basis, ChangeOfBasis* track = nullptr);

// The classic sweep: translate vector i+1 by the nearest-integer multiple of
// vector i, test the configured condition, on success make the prefix proper
// and advance, on failure swap the pair and retreat. Siegel mode tests
// hat_{i+1} > s^2 * hat_i; the other mode tests
// hat_{i+1} + r(i,i+1)^2 * hat_i > delta^2 * hat_i. One terminal make-proper
// pass is applied after the sweep (a no-op in every observed run).
// Throws on rank-deficient input or if the iteration cap is exceeded.
LllResult lll_reduce(const Basis& basis, const LllConfig& config,
                     ChangeOfBasis* track = nullptr);

// Proper, and hat_{i+1} + r(i,i+1)^2 * hat_i > delta^2 * hat_i for all i.
bool is_truly_reduced(const Basis& basis, double delta);

}  // namespace latred
