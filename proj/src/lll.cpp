#include "latred/lll.hpp"

#include <cmath>
#include <stdexcept>

namespace latred {

namespace {

// nearest integer with ties toward +inf, so a coefficient c - round(c)
// always lands in [-1/2, 1/2)
long long round_half_up(double x) {
    return static_cast<long long>(std::floor(x + 0.5));
}

// Mutable working state for the sweep: the basis columns are updated exactly
// (integer column operations), while hat norms and projection coefficients
// are maintained incrementally and refreshed by a full recomputation every p
// swaps to bound floating-point drift.
struct Workspace {
    Basis basis;
    GsoData gso;
    ChangeOfBasis* track;

    Workspace(const Basis& input, ChangeOfBasis* track_) : basis(input), track(track_) {
        gso = gram_schmidt(basis);
    }

    void refresh() { gso = gram_schmidt(basis); }

    // b_i -= m * b_j with j < i; hat vectors are unchanged, and column i of
    // the coefficient matrix shifts by m times column j (rows up to j)
    void translate(int i, int j, long long m) {
        if (m == 0) return;
        const double md = static_cast<double>(m);
        double* bi = basis.col(i);
        const double* bj = basis.col(j);
        for (int t = 0; t < basis.n; ++t) bi[t] -= md * bj[t];
        for (int k = 0; k <= j; ++k) gso.r(k, i) -= md * gso.r(k, j);
        if (track) {
            for (int r = 0; r < track->p; ++r) {
                track->m[static_cast<size_t>(r) * track->p + i] -=
                    m * track->m[static_cast<size_t>(r) * track->p + j];
            }
        }
    }

    // swap b_i and b_{i+1}, updating hat norms and coefficients in place
    void swap_pair(int i) {
        double* a = basis.col(i);
        double* b = basis.col(i + 1);
        for (int t = 0; t < basis.n; ++t) std::swap(a[t], b[t]);
        if (track) {
            for (int r = 0; r < track->p; ++r) {
                std::swap(track->m[static_cast<size_t>(r) * track->p + i],
                          track->m[static_cast<size_t>(r) * track->p + i + 1]);
            }
        }
        const double nu = gso.r(i, i + 1);
        const double ci = gso.hat_norms_sq[i];
        const double cj = gso.hat_norms_sq[i + 1];
        const double ci_new = cj + nu * nu * ci;
        const double nu_new = nu * ci / ci_new;
        gso.hat_norms_sq[i] = ci_new;
        gso.hat_norms_sq[i + 1] = ci * cj / ci_new;
        gso.r(i, i + 1) = nu_new;
        for (int j = i + 2; j < basis.p; ++j) {
            const double t = gso.r(i + 1, j);
            gso.r(i + 1, j) = gso.r(i, j) - nu * t;
            gso.r(i, j) = t + nu_new * gso.r(i + 1, j);
        }
        for (int k = 0; k < i; ++k) {
            std::swap(gso.r(k, i), gso.r(k, i + 1));
        }
    }

    // size-reduce columns 1..last against their predecessors; returns the
    // number of nonzero translations performed
    long long make_prefix_proper(int last) {
        long long moves = 0;
        for (int i = 1; i <= last; ++i) {
            for (int j = i - 1; j >= 0; --j) {
                const long long m = round_half_up(gso.r(j, i));
                if (m != 0) {
                    translate(i, j, m);
                    ++moves;
                }
            }
        }
        return moves;
    }
};

}  // namespace

ChangeOfBasis::ChangeOfBasis(int p_) : p(p_), m(static_cast<size_t>(p_) * p_, 0) {
    for (int i = 0; i < p; ++i) m[static_cast<size_t>(i) * p + i] = 1;
}

Basis make_proper(const Basis& basis, ChangeOfBasis* track) {
    if (track) *track = ChangeOfBasis(basis.p);
    Workspace w(basis, track);
    w.make_prefix_proper(basis.p - 1);
    return std::move(w.basis);
}

LllResult lll_reduce(const Basis& basis, const LllConfig& config, ChangeOfBasis* track) {
    if (!(config.param > 0.0) || !(config.param < 1.0)) {
        throw std::invalid_argument("lll_reduce: reduction parameter must lie in (0,1)");
    }
    if (track) *track = ChangeOfBasis(basis.p);
    Workspace w(basis, track);
    const int p = basis.p;
    const double thr = config.param * config.param;

    long long cap = config.max_iterations;
    if (cap <= 0) {
        // generous multiple of the classical potential bound, scaled by how
        // unbalanced the input profile is
        double worst = 1.0;
        for (int i = 0; i + 1 < p; ++i) {
            const double ratio = w.gso.hat_norms_sq[i + 1] / w.gso.hat_norms_sq[i];
            worst = std::max(worst, std::fabs(std::log(ratio)));
        }
        cap = static_cast<long long>(64.0 * p * p * (1.0 + worst)) + 64;
    }

    LllResult result;
    int i = 0;
    while (i < p - 1) {
        if (++result.iterations > cap) {
            throw std::runtime_error("lll_reduce: iteration cap exceeded");
        }
        w.translate(i + 1, i, round_half_up(w.gso.r(i, i + 1)));
        const double ci = w.gso.hat_norms_sq[i];
        const double cj = w.gso.hat_norms_sq[i + 1];
        const double nu = w.gso.r(i, i + 1);
        const bool ok = config.mode == LllConfig::Mode::Siegel
                            ? cj > thr * ci
                            : cj + nu * nu * ci > thr * ci;
        if (ok) {
            w.make_prefix_proper(i + 1);
            ++i;
        } else {
            w.swap_pair(i);
            ++result.swaps;
            if (result.swaps % p == 0) w.refresh();
            if (i != 0) --i;
        }
    }
    w.make_prefix_proper(p - 1);  // terminal pass, observed to be a no-op
    result.basis = std::move(w.basis);
    return result;
}

bool is_truly_reduced(const Basis& basis, double delta) {
    if (!(delta > 0.0) || !(delta < 1.0)) {
        throw std::invalid_argument("is_truly_reduced: delta must lie in (0,1)");
    }
    const GsoData gso = gram_schmidt(basis);
    if (!is_proper(gso)) return false;
    const double d2 = delta * delta;
    for (int i = 0; i + 1 < basis.p; ++i) {
        const double nu = gso.r(i, i + 1);
        if (!(gso.hat_norms_sq[i + 1] + nu * nu * gso.hat_norms_sq[i] >
              d2 * gso.hat_norms_sq[i])) {
            return false;
        }
    }
    return true;
}

}  // namespace latred
