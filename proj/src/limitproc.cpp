#include "latred/limitproc.hpp"

#include <cmath>
#include <stdexcept>

#include "latred/randstat.hpp"

namespace latred {

LimitSample sample_limit_process(RngStream& stream, int k_max) {
    if (k_max < 1) {
        throw std::invalid_argument("sample_limit_process: k_max must be at least 1");
    }
    LimitSample sample;
    sample.k_max = k_max;
    sample.eta.resize(k_max + 1);
    sample.ratios.resize(k_max);
    for (int j = 1; j <= k_max + 1; ++j) {
        sample.eta[j - 1] = sample_gamma(stream, {0.5 * j});
    }
    for (int j = 1; j <= k_max; ++j) {
        sample.ratios[j - 1] = sample.eta[j - 1] / sample.eta[j];
    }
    return sample;
}

namespace {

double chain_tail_bound(double current_min, int truncation) {
    if (!(current_min < 1.0)) return 1.0;  // vacuous until the min dips below 1
    const double rho = 1.0 - current_min;
    const double q = 1.0 - rho * rho / ((2.0 - rho) * (2.0 - rho));
    return std::sqrt(2.0) * std::pow(q, 0.5 * (truncation + 1)) / (1.0 - std::sqrt(q));
}

}  // namespace

LimitLevelResult limit_level(RngStream& stream, int g, double epsilon) {
    if (g < 0) {
        throw std::invalid_argument("limit_level: g must be nonnegative");
    }
    if (!(epsilon > 0.0) || !(epsilon < 1.0)) {
        throw std::invalid_argument("limit_level: epsilon must lie in (0,1)");
    }
    LimitLevelResult result;
    result.g = g;
    result.level = HUGE_VAL;
    result.worst_index = 0;

    int target = g + 16;  // initial truncation; doubles until the bound holds
    int j = g + 1;        // next ratio index to realize
    double eta_prev = sample_gamma(stream, {0.5 * j});
    for (;;) {
        for (; j <= target; ++j) {
            const double eta_next = sample_gamma(stream, {0.5 * (j + 1)});
            const double ratio = eta_prev / eta_next;
            if (ratio < result.level) {
                result.level = ratio;
                result.worst_index = j;
            }
            eta_prev = eta_next;
        }
        result.truncation_used = target;
        result.tail_error_bound = chain_tail_bound(result.level, target);
        if (result.tail_error_bound < epsilon) break;
        target = g + 2 * (target - g);
    }
    return result;
}

double tail_bound_upper(int k, double rho, TailSide side) {
    if (k < 1) {
        throw std::invalid_argument("tail_bound_upper: index must be at least 1");
    }
    if (!(rho >= 0.0) || !(rho <= 1.0)) {
        throw std::invalid_argument("tail_bound_upper: rho must lie in [0,1]");
    }
    const double denom = side == TailSide::Above ? 2.0 + rho : 2.0 - rho;
    const double q = 1.0 - rho * rho / (denom * denom);
    const double c = side == TailSide::Above ? 1.0 : std::sqrt(2.0);
    return c * std::pow(q, 0.5 * k);
}

std::pair<double, double> density_bound_phi(int k, double x) {
    if (k < 1) {
        throw std::invalid_argument("density_bound_phi: index must be at least 1");
    }
    if (!(x > 0.0)) {
        throw std::invalid_argument("density_bound_phi: x must be positive");
    }
    const double log_phi =
        (0.5 * k - 1.0) * std::log(4.0 * x) - (k + 0.5) * std::log1p(x);
    const double log_c = std::log(2.0 / std::sqrt(M_PI)) + log_gamma(k + 0.5) - log_gamma(k);
    return {std::exp(log_phi), std::exp(log_c)};
}

std::pair<double, double> clt_statistic(RngStream& stream, int k, long long trials) {
    if (k < 2) {
        throw std::invalid_argument("clt_statistic: index must be at least 2");
    }
    if (trials < 1000) {
        throw std::invalid_argument("clt_statistic: need at least 1000 trials");
    }
    const double sqrt_k = std::sqrt(static_cast<double>(k));
    double mean = 0.0;
    double m2 = 0.0;
    for (long long t = 0; t < trials; ++t) {
        const double num = sample_gamma(stream, {0.5 * k});
        const double den = sample_gamma(stream, {0.5 * (k + 1)});
        const double value = sqrt_k * (num / den - 1.0);
        const double delta = value - mean;
        mean += delta / static_cast<double>(t + 1);
        m2 += delta * (value - mean);
    }
    return {mean, m2 / static_cast<double>(trials - 1)};
}

std::vector<double> limit_schnorr_process(RngStream& stream, int k, int r_max) {
    if (k < 1 || r_max < 1) {
        throw std::invalid_argument("limit_schnorr_process: k and r_max must be at least 1");
    }
    std::vector<double> blocks(r_max + 1);
    for (int r = 1; r <= r_max + 1; ++r) {
        double prod = 1.0;
        for (int i = 0; i < k; ++i) {
            prod *= sample_gamma(stream, {0.5 * (r + i)});
        }
        blocks[r - 1] = prod;
    }
    std::vector<double> ratios(r_max);
    for (int r = 1; r <= r_max; ++r) {
        ratios[r - 1] = blocks[r - 1] / blocks[r];
    }
    return ratios;
}

}  // namespace latred
