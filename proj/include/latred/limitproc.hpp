#pragma once

#include <utility>
#include <vector>

#include "latred/randstat.hpp"

namespace latred {

// Finite prefix of the limit ratio chain: eta[j-1] ~ gamma(j/2) independent,
// ratios[j-1] = eta_j / eta_{j+1}. Consecutive ratios share a gamma variable;
// ratios two or more apart are independent.
struct LimitSample {
    int k_max = 0;
    std::vector<double> eta;     // k_max + 1 entries
    std::vector<double> ratios;  // k_max entries
};

struct LimitLevelResult {
    int g = 0;
    double level = 0.0;          // min of the sampled ratios with index >= g+1
    int worst_index = 0;         // smallest index attaining the minimum (>= g+1)
    int truncation_used = 0;     // largest ratio index sampled
    double tail_error_bound = 0; // bound on P(some ratio beyond truncation is smaller)
};

enum class TailSide { Above, Below };

LimitSample sample_limit_process(RngStream& stream, int k_max);

// Minimum of the ratio chain beyond index g, with adaptive truncation: the
// chain is extended (doubling the window) until the summed lower-tail bound
//   sum_{j>K} sqrt(2) * q^{j/2} = sqrt(2) * q^{(K+1)/2} / (1 - sqrt(q)),
//   q = 1 - rho^2/(2-rho)^2, rho = 1 - current minimum,
// falls below epsilon, so deeper ratios change the result with probability
// less than epsilon.
LimitLevelResult limit_level(RngStream& stream, int g, double epsilon = 1e-6);

// Closed-form tail bounds for a single ratio with index k:
//   above: P(ratio >= 1+rho) <= (1 - rho^2/(2+rho)^2)^{k/2}
//   below: P(ratio <= 1-rho) <= sqrt(2) * (1 - rho^2/(2-rho)^2)^{k/2}
double tail_bound_upper(int k, double rho, TailSide side);

// The density of ratio k is C_k * phi_k with
//   phi_k(x) = (4x)^{k/2-1} (1+x)^{-k-1/2},
//   C_k = (2/sqrt(pi)) * Gamma(k+1/2) / Gamma(k)  (grows like 2 sqrt(k/pi)).
// Returns the pair (phi_k(x), C_k), both computed in log space.
std::pair<double, double> density_bound_phi(int k, double x);

// Empirical mean and variance of sqrt(k) * (ratio_k - 1) over the given
// number of trials; the limit law is centered normal with variance 4.
std::pair<double, double> clt_statistic(RngStream& stream, int k, long long trials);

// Block generalization of the ratio chain: for r = 1..r_max the value
// eta_{k,r} is a product of k independent gammas with shapes r/2 .. (r+k-1)/2,
// the eta_{k,r} are mutually independent, and the returned ratios are
// eta_{k,r} / eta_{k,r+1}. Block size 1 recovers the plain chain law.
std::vector<double> limit_schnorr_process(RngStream& stream, int k, int r_max);

}  // namespace latred
