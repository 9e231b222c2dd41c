#include "latred/gso.hpp"

#include <cmath>
#include <stdexcept>

namespace latred {

namespace {

double dot(const double* a, const double* b, int n) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

GsoData gram_schmidt(const Basis& basis, Basis* hat_out) {
    const int n = basis.n;
    const int p = basis.p;
    if (p < 1 || n < 1 || p > n) {
        throw std::invalid_argument("gram_schmidt: need 1 <= p <= n");
    }
    Basis hat(n, p);
    GsoData gso;
    gso.n = n;
    gso.p = p;
    gso.hat_norms_sq.assign(p, 0.0);
    gso.r_coeffs.assign(static_cast<size_t>(p) * p, 0.0);
    for (int j = 0; j < p; ++j) {
        gso.r(j, j) = 1.0;
        double* q = hat.col(j);
        const double* b = basis.col(j);
        for (int i = 0; i < n; ++i) q[i] = b[i];
        // two passes of modified Gram-Schmidt; the second pass recovers the
        // orthogonality that a single pass loses for larger n
        for (int pass = 0; pass < 2; ++pass) {
            for (int i = 0; i < j; ++i) {
                const double* qi = hat.col(i);
                const double c = dot(qi, q, n) / gso.hat_norms_sq[i];
                gso.r(i, j) += c;
                for (int t = 0; t < n; ++t) q[t] -= c * qi[t];
            }
        }
        gso.hat_norms_sq[j] = dot(q, q, n);
    }
    double largest = 0.0;
    for (int j = 0; j < p; ++j) largest = std::max(largest, gso.hat_norms_sq[j]);
    for (int j = 0; j < p; ++j) {
        if (!(gso.hat_norms_sq[j] > 1e-24 * largest)) {
            throw std::invalid_argument("gram_schmidt: input is numerically rank deficient");
        }
    }
    if (hat_out) *hat_out = std::move(hat);
    return gso;
}

ReductionReport ratios_from_norms(const std::vector<double>& hat_norms_sq, int n, int g) {
    const int p = n - g;
    if (g < 0 || g > n - 2) {
        throw std::invalid_argument("ratios: need 0 <= g <= n-2");
    }
    if (static_cast<int>(hat_norms_sq.size()) != p || p < 2) {
        throw std::invalid_argument("ratios: profile must have n - g >= 2 entries");
    }
    ReductionReport report;
    report.g = g;
    report.ratios.resize(p - 1);
    for (int j = g + 1; j <= n - 1; ++j) {
        // 1-based positions n-j+1 over n-j, i.e. 0-based n-j over n-j-1
        report.ratios[j - g - 1] = hat_norms_sq[n - j] / hat_norms_sq[n - j - 1];
    }
    report.level = report.ratios[0];
    int level_j = g + 1;
    for (int j = g + 2; j <= n - 1; ++j) {
        const double r = report.ratios[j - g - 1];
        if (r < report.level) {
            report.level = r;
            level_j = j;
        }
    }
    report.worst_index = level_j - 1;
    return report;
}

ReductionReport ratios(const GsoData& gso, int g) {
    if (gso.n != gso.p + g) {
        throw std::invalid_argument("ratios: profile size does not match n - g");
    }
    return ratios_from_norms(gso.hat_norms_sq, gso.n, g);
}

bool is_siegel_reduced(const GsoData& gso, double s) {
    if (!(s > 0.0) || !(s < 1.0)) {
        throw std::invalid_argument("is_siegel_reduced: s must lie in (0,1)");
    }
    const double s2 = s * s;
    for (int i = 0; i + 1 < gso.p; ++i) {
        if (!(gso.hat_norms_sq[i + 1] > s2 * gso.hat_norms_sq[i])) return false;
    }
    return true;
}

bool is_proper(const GsoData& gso) {
    for (int k = 0; k < gso.p; ++k) {
        for (int j = k + 1; j < gso.p; ++j) {
            const double c = gso.r(k, j);
            if (!(c >= -0.5) || !(c < 0.5)) return false;
        }
    }
    return true;
}

double schnorr_level_from_norms(const std::vector<double>& hat_norms_sq, int n, int k, int g) {
    const int p = n - g;
    if (static_cast<int>(hat_norms_sq.size()) != p) {
        throw std::invalid_argument("schnorr_level: profile must have n - g entries");
    }
    if (k < 1 || k > p) {
        throw std::invalid_argument("schnorr_level: block size must lie in [1, p]");
    }
    const int blocks = p / k;
    if (blocks < 2) {
        throw std::invalid_argument("schnorr_level: need at least two full blocks");
    }
    // product over block r (1-based from the back): positions p-rk .. p-(r-1)k-1
    auto block_product = [&](int r) {
        double prod = 1.0;
        for (int i = p - r * k; i < p - (r - 1) * k; ++i) prod *= hat_norms_sq[i];
        return prod;
    };
    double level = HUGE_VAL;
    double nearer = block_product(1);
    for (int r = 1; r < blocks; ++r) {
        const double farther = block_product(r + 1);
        level = std::min(level, nearer / farther);
        nearer = farther;
    }
    return level;
}

double schnorr_level(const GsoData& gso, int k, int g) {
    if (gso.n != gso.p + g) {
        throw std::invalid_argument("schnorr_level: profile size does not match n - g");
    }
    return schnorr_level_from_norms(gso.hat_norms_sq, gso.n, k, g);
}

std::vector<double> y_ratios(const GsoData& gso, const Basis& basis) {
    if (gso.n != basis.n || gso.p != basis.p) {
        throw std::invalid_argument("y_ratios: basis and GSO data dimensions differ");
    }
    std::vector<double> y(gso.p);
    for (int j = 0; j < gso.p; ++j) {
        y[j] = gso.hat_norms_sq[j] / dot(basis.col(j), basis.col(j), basis.n);
    }
    return y;
}

}  // namespace latred
