// bath.cpp
#include "spinbath/bath.hpp"

#include <cmath>
#include <stdexcept>

namespace spinbath {

double bose_occupation(double omega, double beta) {
    if (!(omega > 0.0) || !(beta > 0.0))
        throw std::domain_error("bose_occupation: omega and beta must be positive");
    return 1.0 / std::expm1(beta * omega);
}

RateSet spectral_rates(const BathParams& p) {
    if (!(p.gamma0 > 0.0))
        throw std::invalid_argument("spectral_rates: gamma0 must be positive");
    const double n = bose_occupation(p.omega0, p.beta);
    RateSet r;
    r.A = p.gamma0 * n;
    r.B = p.gamma0 * (1.0 + n);
    r.R1 = r.A + r.B;
    r.M0 = (r.B - r.A) / r.R1;
    r.alpha = 1.0;
    return r;
}

RateSet unit_relaxation_rates(double beta_omega0, double alpha) {
    if (!(beta_omega0 > 0.0))
        throw std::invalid_argument("unit_relaxation_rates: beta*omega0 must be positive");
    if (alpha < 0.0 || alpha > 1.0)
        throw std::invalid_argument("unit_relaxation_rates: alpha must lie in [0, 1]");
    RateSet r;
    r.M0 = std::tanh(0.5 * beta_omega0);
    r.A = 0.5 * (1.0 - r.M0);
    r.B = 0.5 * (1.0 + r.M0);
    r.R1 = 1.0;
    r.alpha = alpha;
    return r;
}

double spatial_correlation(const SpatialModel& m, double r, double xi, double omega) {
    if (r < 0.0) throw std::invalid_argument("spatial_correlation: r must be non-negative");
    if (m.kind == SpatialKind::constant) {
        if (m.alpha_fixed < 0.0 || m.alpha_fixed > 1.0)
            throw std::invalid_argument("spatial_correlation: alpha_fixed must lie in [0, 1]");
        return m.alpha_fixed;
    }
    if (!(xi > 0.0)) throw std::invalid_argument("spatial_correlation: xi must be positive");
    switch (m.kind) {
        case SpatialKind::lorentzian: {
            const double wr = omega * r;
            return xi * xi / (xi * xi + wr * wr);
        }
        case SpatialKind::exponential:
            return std::exp(-r / xi);
        case SpatialKind::gaussian:
            return std::exp(-(r / xi) * (r / xi));
        default:
            throw std::logic_error("spatial_correlation: unknown spatial kind");
    }
}

SpatialKind parse_spatial_kind(const std::string& name) {
    if (name == "constant") return SpatialKind::constant;
    if (name == "lorentzian") return SpatialKind::lorentzian;
    if (name == "exponential") return SpatialKind::exponential;
    if (name == "gaussian") return SpatialKind::gaussian;
    throw std::invalid_argument("parse_spatial_kind: unknown model '" + name + "'");
}

std::string to_string(SpatialKind k) {
    switch (k) {
        case SpatialKind::constant: return "constant";
        case SpatialKind::lorentzian: return "lorentzian";
        case SpatialKind::exponential: return "exponential";
        case SpatialKind::gaussian: return "gaussian";
    }
    throw std::logic_error("to_string: unknown spatial kind");
}

}  // namespace spinbath
