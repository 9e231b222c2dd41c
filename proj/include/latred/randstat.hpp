#pragma once

#include <cstdint>
#include <random>

namespace latred {

// One reproducible variate stream per Monte Carlo trial. Streams are keyed by
// (master_seed, stream_index): equal keys replay the identical sequence, and
// distinct indices give streams that are independent for statistical purposes.
// Aggregations over trials therefore do not depend on thread scheduling.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

    std::uint64_t next_u64();

    // uniform on the open interval (0,1); never returns 0 or 1
    double uniform();

    // standard normal via the polar method, one spare cached
    double normal();

private:
    std::uint64_t master_seed_;
    std::uint64_t stream_index_;
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

struct GammaParams {
    double a;  // shape; scale is fixed at 1
};

struct BetaParams {
    double a;
    double b;
};

// Draw from the gamma density e^{-x} x^{a-1} / Gamma(a) on (0, inf).
// Valid for every a > 0, including the half-integer shapes below 1.
double sample_gamma(RngStream& stream, GammaParams p);

// Draw from beta(a,b), realized as g_a / (g_a + g_b) with independent gammas.
double sample_beta(RngStream& stream, BetaParams p);

// Density of the ratio of independent gammas g_a / g_b at x:
//   Gamma(a+b)/(Gamma(a)Gamma(b)) * x^{a-1} / (1+x)^{a+b}.
// x == 0 is accepted with its limiting value.
double gamma_ratio_pdf(double a, double b, double x);

// Cramer transform of the gamma(h) law at x: x - h + h*log(h/x), h = n/2.
// Nonnegative, zero exactly at the mean x = h.
double cramer_half_gamma(double x, double half_n);

// log Gamma(a) for a > 0, relative error below 1e-12 on [0.5, 1e4].
double log_gamma(double a);

}  // namespace latred
