#include "latred/randstat.hpp"

#include <cmath>
#include <stdexcept>

namespace latred {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::mt19937_64 make_engine(std::uint64_t master_seed, std::uint64_t stream_index) {
    // Expand the key into several well-mixed words; a raw 64-bit seed leaves
    // nearby streams correlated through the default mt19937_64 init.
    std::uint64_t state = master_seed ^ (0x632BE59BD9B4E019ULL * (stream_index + 1));
    std::seed_seq seq{
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32),
        static_cast<std::uint32_t>(splitmix64(state)), static_cast<std::uint32_t>(splitmix64(state) >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
    : master_seed_(master_seed),
      stream_index_(stream_index),
      engine_(make_engine(master_seed, stream_index)) {}

std::uint64_t RngStream::next_u64() { return engine_(); }

double RngStream::uniform() {
    // 53 random bits, offset by half a step: strictly inside (0,1)
    return (static_cast<double>(engine_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
}

double sample_gamma(RngStream& stream, GammaParams p) {
    if (!(p.a > 0.0) || !std::isfinite(p.a)) {
        throw std::invalid_argument("sample_gamma: shape must be positive and finite");
    }
    // Marsaglia-Tsang squeeze method. Shapes below 1 are boosted to a+1 and
    // corrected by U^{1/a}, which keeps the method valid for e.g. a = 1/2.
    const double a = (p.a < 1.0) ? p.a + 1.0 : p.a;
    const double d = a - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    double result;
    for (;;) {
        double x, v;
        do {
            x = stream.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            result = d * v;
            break;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            result = d * v;
            break;
        }
    }
    if (p.a < 1.0) {
        result *= std::pow(stream.uniform(), 1.0 / p.a);
    }
    return result;
}

double sample_beta(RngStream& stream, BetaParams p) {
    if (!(p.a > 0.0) || !(p.b > 0.0)) {
        throw std::invalid_argument("sample_beta: both parameters must be positive");
    }
    const double x = sample_gamma(stream, {p.a});
    const double y = sample_gamma(stream, {p.b});
    return x / (x + y);
}

double gamma_ratio_pdf(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("gamma_ratio_pdf: shapes must be positive");
    }
    if (!(x >= 0.0)) {
        throw std::invalid_argument("gamma_ratio_pdf: x must be nonnegative");
    }
    const double log_norm = log_gamma(a + b) - log_gamma(a) - log_gamma(b);
    if (x == 0.0) {
        // limiting value at the origin
        if (a > 1.0) return 0.0;
        if (a == 1.0) return std::exp(log_norm);
        return HUGE_VAL;
    }
    return std::exp(log_norm + (a - 1.0) * std::log(x) - (a + b) * std::log1p(x));
}

double cramer_half_gamma(double x, double half_n) {
    if (!(x > 0.0)) {
        throw std::invalid_argument("cramer_half_gamma: x must be positive");
    }
    if (!(half_n > 0.0)) {
        throw std::invalid_argument("cramer_half_gamma: half_n must be positive");
    }
    return x - half_n + half_n * std::log(half_n / x);
}

double log_gamma(double a) {
    if (!(a > 0.0)) {
        throw std::invalid_argument("log_gamma: argument must be positive");
    }
    // Lanczos approximation, g = 7 with 9 coefficients. Arguments below 1/2
    // go through Gamma(a) = Gamma(a+1)/a instead of the reflection formula.
    static const double coef[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6,  1.5056327351493116e-7};
    if (a < 0.5) {
        return log_gamma(a + 1.0) - std::log(a);
    }
    const double x = a - 1.0;
    double acc = coef[0];
    for (int i = 1; i < 9; ++i) {
        acc += coef[i] / (x + static_cast<double>(i));
    }
    const double t = x + 7.5;
    return 0.91893853320467274178 + (x + 0.5) * std::log(t) - t + std::log(acc);
}

}  // namespace latred
