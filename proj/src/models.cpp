#include "latred/models.hpp"

#include <cmath>
#include <stdexcept>

namespace latred {

SphericalModel SphericalModel::parse(const std::string& name) {
    if (name == "sphere") return sphere();
    if (name == "ball") return ball();
    if (name == "gauss") return gaussian();
    throw std::invalid_argument("unknown model '" + name + "' (expected sphere, ball or gauss)");
}

std::string SphericalModel::name() const {
    switch (kind) {
        case ModelKind::UnitSphere: return "sphere";
        case ModelKind::RandomBall: return "ball";
        case ModelKind::Gaussian: return "gauss";
    }
    return "?";
}

namespace {

void check_dims(int n, int g) {
    if (n < 1 || g < 0 || g >= n) {
        throw std::invalid_argument("basis dimensions require 0 <= g < n");
    }
}

}  // namespace

double sample_squared_radius(RngStream& stream, const SphericalModel& model, int n) {
    if (n < 1) {
        throw std::invalid_argument("sample_squared_radius: n must be positive");
    }
    switch (model.kind) {
        case ModelKind::UnitSphere:
            return 1.0;
        case ModelKind::RandomBall:
            return std::pow(stream.uniform(), 2.0 / n);
        case ModelKind::Gaussian:
            return 2.0 * sample_gamma(stream, {0.5 * n});
    }
    return 1.0;
}

Basis sample_basis(RngStream& stream, const SphericalModel& model, int n, int g) {
    check_dims(n, g);
    const int p = n - g;
    Basis basis(n, p);
    for (int j = 0; j < p; ++j) {
        double* v = basis.col(j);
        double norm_sq;
        do {
            norm_sq = 0.0;
            for (int i = 0; i < n; ++i) {
                v[i] = stream.normal();
                norm_sq += v[i] * v[i];
            }
        } while (norm_sq == 0.0);
        if (model.kind == ModelKind::Gaussian) {
            continue;  // i.i.d. normal coordinates already have the right law
        }
        double radius = 1.0;
        if (model.kind == ModelKind::RandomBall) {
            radius = std::pow(stream.uniform(), 1.0 / n);
        }
        const double scale = radius / std::sqrt(norm_sq);
        for (int i = 0; i < n; ++i) {
            v[i] *= scale;
        }
    }
    return basis;
}

GsoNormProfile sample_gso_norms_direct(RngStream& stream, const SphericalModel& model,
                                       int n, int g) {
    check_dims(n, g);
    const int p = n - g;
    GsoNormProfile profile;
    profile.n = n;
    profile.p = p;
    profile.hat_norms_sq.resize(p);
    for (int j = 1; j <= p; ++j) {
        double y = 1.0;
        if (j >= 2) {
            y = sample_beta(stream, {0.5 * (n - j + 1), 0.5 * (j - 1)});
        }
        profile.hat_norms_sq[j - 1] = y * sample_squared_radius(stream, model, n);
    }
    return profile;
}

double radial_tail_probability(const SphericalModel& model, int n, double rho) {
    if (!(rho > 0.0) || !(rho < 1.0)) {
        throw std::invalid_argument("radial_tail_probability: rho must lie in (0,1)");
    }
    if (n < 1) {
        throw std::invalid_argument("radial_tail_probability: n must be positive");
    }
    const double h = 0.5 * n;
    switch (model.kind) {
        case ModelKind::UnitSphere:
            return 0.0;
        case ModelKind::RandomBall:
            return std::exp(-h * rho);
        case ModelKind::Gaussian:
            return std::exp(-h * (rho - std::log1p(rho))) +
                   std::exp(h * (rho + std::log1p(-rho)));
    }
    return 0.0;
}

}  // namespace latred
