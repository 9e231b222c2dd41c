#pragma once

#include <string>
#include <vector>

#include "latred/randstat.hpp"

namespace latred {

enum class ModelKind { UnitSphere, RandomBall, Gaussian };

// A rotation-invariant law for basis vectors: radial and angular parts are
// independent, the angular part uniform on the unit sphere. The three kinds
// differ only in the radial law; radial_scale(n) is the sequence the squared
// norm concentrates around (1, 1, n respectively).
struct SphericalModel {
    ModelKind kind = ModelKind::RandomBall;

    double radial_scale(int n) const {
        return kind == ModelKind::Gaussian ? static_cast<double>(n) : 1.0;
    }

    static SphericalModel sphere() { return {ModelKind::UnitSphere}; }
    static SphericalModel ball() { return {ModelKind::RandomBall}; }
    static SphericalModel gaussian() { return {ModelKind::Gaussian}; }

    // accepts "sphere", "ball", "gauss"
    static SphericalModel parse(const std::string& name);
    std::string name() const;
};

// p column vectors in R^n, stored column-major.
struct Basis {
    int n = 0;
    int p = 0;
    std::vector<double> data;  // n * p entries, column j at data[j*n .. j*n+n)

    Basis() = default;
    Basis(int n_, int p_) : n(n_), p(p_), data(static_cast<size_t>(n_) * p_, 0.0) {}

    double* col(int j) { return data.data() + static_cast<size_t>(j) * n; }
    const double* col(int j) const { return data.data() + static_cast<size_t>(j) * n; }

    int codimension() const { return n - p; }
};

// Squared Gram-Schmidt norms of a basis, without the basis itself.
struct GsoNormProfile {
    int n = 0;
    int p = 0;
    std::vector<double> hat_norms_sq;
};

// p = n - g i.i.d. columns: angular part a normalized Gaussian vector, radial
// part per model (sphere: norm 1; ball: norm U^{1/n}, the CDF r^n law;
// Gaussian: plain i.i.d. standard normal coordinates).
Basis sample_basis(RngStream& stream, const SphericalModel& model, int n, int g);

// Draw the squared Gram-Schmidt norms directly, skipping orthogonalization.
// Entry j is distributed as Y_j times an independent squared radial draw,
// where Y_1 = 1 and Y_j ~ beta((n-j+1)/2, (j-1)/2): the same law the full
// pipeline produces, at O(p) gamma draws per basis.
GsoNormProfile sample_gso_norms_direct(RngStream& stream, const SphericalModel& model,
                                       int n, int g);

// One squared radial draw for a single vector of the model in dimension n
// (sphere: 1; ball: U^{2/n}; Gaussian: twice a gamma(n/2) variate).
double sample_squared_radius(RngStream& stream, const SphericalModel& model, int n);

// Proven upper bound on P(| ||b||^2 / radial_scale(n) - 1 | >= rho):
// sphere -> 0; ball -> e^{-n rho/2}; Gaussian -> the two-sided Chernoff bound
// e^{-(n/2)(rho - log(1+rho))} + e^{(n/2)(rho + log(1-rho))}.
// The value may exceed 1 (vacuous) for small n; it is returned unclamped.
double radial_tail_probability(const SphericalModel& model, int n, double rho);

}  // namespace latred
