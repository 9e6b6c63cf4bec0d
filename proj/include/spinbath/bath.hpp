// bath.hpp - bosonic bath occupation, up/down rates, spatial correlation profiles
#pragma once

#include <string>

namespace spinbath {

// Spatial profile of the cross-site dissipation weight alpha(r).
enum class SpatialKind { constant, lorentzian, exponential, gaussian };

struct SpatialModel {
    SpatialKind kind{SpatialKind::constant};
    double alpha_fixed{1.0};  // used only by SpatialKind::constant
};

struct BathParams {
    double gamma0{1.0};  // bare coupling rate, > 0
    double omega0{1.0};  // qubit splitting, > 0
    double beta{1.0};    // inverse temperature, > 0
    double xi{1.0};      // bath correlation length, > 0 unless model is constant
    SpatialModel model{};
};

// Local rate pair plus derived relaxation scale and polarization.
// Invariants: A/B = exp(-beta*omega0), R1 = A + B, M0 = (B - A)/(B + A).
struct RateSet {
    double A{0.0};      // absorption (excitation) rate
    double B{0.0};      // emission (decay toward the pumped pole) rate
    double R1{0.0};     // total relaxation rate
    double M0{0.0};     // equilibrium polarization per spin, tanh(beta*omega0/2)
    double alpha{1.0};  // cross-site weight in [0, 1]
};

// Thermal occupation 1/(exp(beta*omega) - 1); beta, omega > 0 required.
double bose_occupation(double omega, double beta);

// A = gamma0*N(omega0), B = gamma0*(1 + N(omega0)); alpha left at 1.
RateSet spectral_rates(const BathParams& p);

// Rates rescaled so R1 = 1: A = (1 - M0)/2, B = (1 + M0)/2.
// beta_omega0 > 0 required; alpha in [0, 1].
RateSet unit_relaxation_rates(double beta_omega0, double alpha);

// alpha(r) for the given profile; r >= 0, xi > 0 (ignored for constant).
// lorentzian: xi^2/(xi^2 + (omega*r)^2), exponential: exp(-r/xi),
// gaussian: exp(-(r/xi)^2), constant: alpha_fixed.
double spatial_correlation(const SpatialModel& m, double r, double xi, double omega);

SpatialKind parse_spatial_kind(const std::string& name);
std::string to_string(SpatialKind k);

}  // namespace spinbath
