// dynamics.cpp
#include "spinbath/dynamics.hpp"

#include <boost/numeric/odeint.hpp>
#include <boost/numeric/odeint/external/eigen/eigen.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace spinbath {

namespace {

namespace ode = boost::numeric::odeint;

using RhsFn = std::function<void(const Eigen::VectorXd&, Eigen::VectorXd&, double)>;
using GridObserver = std::function<void(double, const Eigen::VectorXd&)>;

std::vector<double> sample_times(const IntegratorConfig& cfg) {
    if (!(cfg.t_max > 0.0))
        throw std::invalid_argument("sample_times: t_max must be positive");
    std::vector<double> ts{0.0};
    if (cfg.log_record) {
        if (!(cfg.record_start > 0.0) || cfg.record_start >= cfg.t_max)
            throw std::invalid_argument(
                "sample_times: record_start must lie in (0, t_max) for log sampling");
        if (cfg.samples < 2)
            throw std::invalid_argument("sample_times: log grid needs at least 2 samples");
        const double ratio = std::log(cfg.t_max / cfg.record_start);
        for (int k = 0; k < cfg.samples; ++k) {
            const double f = static_cast<double>(k) / (cfg.samples - 1);
            ts.push_back(cfg.record_start * std::exp(f * ratio));
        }
        ts.back() = cfg.t_max;
    } else {
        const double dt = cfg.record_every > 0.0 ? cfg.record_every : cfg.t_max / 200.0;
        const auto n_steps = static_cast<long>(std::floor(cfg.t_max / dt * (1.0 - 1e-12)));
        for (long k = 1; k <= n_steps; ++k) ts.push_back(static_cast<double>(k) * dt);
        if (ts.back() < cfg.t_max) ts.push_back(cfg.t_max);
    }
    return ts;
}

// Adaptive dopri5 hitting every grid point exactly.
void integrate_grid(const RhsFn& rhs, Eigen::VectorXd y, const std::vector<double>& times,
                    const IntegratorConfig& cfg, const GridObserver& on_sample) {
    using Stepper = ode::runge_kutta_dopri5<Eigen::VectorXd, double, Eigen::VectorXd, double,
                                            ode::vector_space_algebra>;
    using Checker = ode::default_error_checker<double, ode::vector_space_algebra,
                                               ode::default_operations>;
    using Adjuster = ode::default_step_adjuster<double, double>;
    ode::controlled_runge_kutta<Stepper, Checker, Adjuster> stepper(
        Checker(cfg.abs_tol, cfg.rel_tol), Adjuster(cfg.max_step > 0.0 ? cfg.max_step : 0.0),
        Stepper());

    auto system = [&rhs](const Eigen::VectorXd& x, Eigen::VectorXd& dxdt, double t) {
        if (dxdt.size() != x.size()) dxdt.resize(x.size());
        rhs(x, dxdt, t);
    };
    double dt0 = times.back() / 1000.0;
    if (cfg.max_step > 0.0) dt0 = std::min(dt0, cfg.max_step);
    try {
        ode::integrate_times(stepper, system, y, times.begin(), times.end(), dt0,
                             [&](const Eigen::VectorXd& x, double t) { on_sample(t, x); });
    } catch (const std::exception& e) {
        throw std::runtime_error(
            std::string("integrate_grid: adaptive stepping failed (stiff or overlong "
                        "horizon; consider the spectral method): ") +
            e.what());
    }
}

struct SpectralPropagator {
    Eigen::MatrixXcd V;
    Eigen::VectorXcd lam;
    Eigen::VectorXcd c;

    // Returns nothing if the eigenbasis does not reconstruct L or v0 well.
    static std::optional<SpectralPropagator> build(const Superoperator& L,
                                                   const Eigen::VectorXcd& v0) {
        Eigen::EigenSolver<Eigen::MatrixXd> es(L.data, /*computeEigenvectors=*/true);
        if (es.info() != Eigen::Success) return std::nullopt;
        SpectralPropagator p;
        p.V = es.eigenvectors();
        p.lam = es.eigenvalues();
        Eigen::MatrixXcd lv(p.V.rows(), p.V.cols());
        lv.real() = L.data * p.V.real();
        lv.imag() = L.data * p.V.imag();
        const double resid =
            (lv - p.V * p.lam.asDiagonal()).norm() / std::max(L.data.norm(), 1e-300);
        if (resid > 1e-8) return std::nullopt;
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(p.V);
        p.c = lu.solve(v0);
        if ((p.V * p.c - v0).norm() > 1e-8 * std::max(v0.norm(), 1e-300))
            return std::nullopt;
        return p;
    }

    Eigen::VectorXcd at(double t) const {
        const Eigen::VectorXcd w =
            (c.array() * (lam.array() * t).exp()).matrix();
        return V * w;
    }
};

double fetch_signal(const Trajectory& traj, const std::string& signal, std::size_t k) {
    if (signal == "purity") {
        if (traj.purity.empty())
            throw std::invalid_argument("detect_plateau: trajectory has no purity record");
        return traj.purity[k];
    }
    if (signal == "entropy") {
        if (traj.entropy.empty())
            throw std::invalid_argument("detect_plateau: trajectory has no entropy record");
        return traj.entropy[k];
    }
    const auto it = traj.observables[k].find(signal);
    if (it == traj.observables[k].end())
        throw std::invalid_argument("detect_plateau: unknown signal '" + signal + "'");
    return it->second;
}

// Shared driver for the closed linear systems dx/dt = K x + b.
Trajectory run_linear_reduced(const Eigen::MatrixXd& K, const Eigen::VectorXd& b,
                              const std::vector<std::string>& keys,
                              const Eigen::VectorXd& x0, const IntegratorConfig& cfg,
                              const std::function<double(const Eigen::VectorXd&)>& pair_sum) {
    const auto times = sample_times(cfg);
    Trajectory traj;
    const double f0 = pair_sum(x0);
    auto rhs = [&K, &b](const Eigen::VectorXd& x, Eigen::VectorXd& dxdt, double) {
        dxdt.noalias() = K * x;
        dxdt += b;
    };
    integrate_grid(rhs, x0, times, cfg, [&](double t, const Eigen::VectorXd& x) {
        traj.times.push_back(t);
        ObservableSet obs;
        for (std::size_t i = 0; i < keys.size(); ++i)
            obs[keys[i]] = x(static_cast<Eigen::Index>(i));
        traj.observables.push_back(std::move(obs));
        traj.conserved_drift.push_back(4.0 * std::abs(pair_sum(x) - f0));
    });
    return traj;
}

Eigen::VectorXd reduced_initial(const ObservableSet& init,
                                const std::vector<std::string>& keys, const char* fn) {
    Eigen::VectorXd x0(static_cast<Eigen::Index>(keys.size()));
    for (std::size_t i = 0; i < keys.size(); ++i) {
        const auto it = init.find(keys[i]);
        if (it == init.end())
            throw std::invalid_argument(std::string(fn) + ": init lacks key '" + keys[i] +
                                        "'");
        x0(static_cast<Eigen::Index>(i)) = it->second;
    }
    return x0;
}

}  // namespace

Trajectory evolve_full(const Superoperator& L, const DensityMatrix& rho0,
                       const IntegratorConfig& cfg, const SampleObserver& observer) {
    if (L.n_spins != rho0.n_spins)
        throw std::invalid_argument("evolve_full: generator and state sizes differ");
    rho0.validate(1e-8);
    const auto times = sample_times(cfg);
    const Eigen::Index dim = L.dim;
    const Eigen::Index n2 = dim * dim;

    std::vector<Eigen::MatrixXcd> pair_ops;
    for (int i = 1; i <= L.n_spins; ++i)
        for (int j = i + 1; j <= L.n_spins; ++j)
            pair_ops.push_back(pair_correlator(L.n_spins, i, j).data);

    Trajectory traj;
    std::vector<double> pair0;
    auto record = [&](double t, const Eigen::MatrixXcd& raw) {
        const double tr_err = std::abs(raw.trace() - std::complex<double>(1.0));
        if (tr_err > 1e-8)
            throw std::runtime_error("evolve_full: trace drift exceeds 1e-8 at t = " +
                                     std::to_string(t));
        if ((raw - raw.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
            throw std::runtime_error("evolve_full: Hermiticity lost at t = " +
                                     std::to_string(t));
        DensityMatrix rho{L.n_spins, 0.5 * (raw + raw.adjoint())};
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho.data, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("evolve_full: sample eigendecomposition failed");
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw std::runtime_error("evolve_full: positivity lost at t = " +
                                     std::to_string(t));
        double pur = 0.0, ent = 0.0;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
            const double lam = es.eigenvalues()(k);
            pur += lam * lam;
            if (lam > 0.0) ent -= lam * std::log(lam);
        }
        double drift = 0.0;
        for (std::size_t k = 0; k < pair_ops.size(); ++k) {
            const double val = (pair_ops[k] * rho.data).trace().real();
            if (traj.times.empty())
                pair0.push_back(val);
            else
                drift = std::max(drift, std::abs(val - pair0[k]));
        }
        traj.times.push_back(t);
        traj.observables.push_back(extract_observables(rho));
        traj.purity.push_back(pur);
        traj.entropy.push_back(ent);
        traj.conserved_drift.push_back(drift);
        if (observer) observer(t, rho);
    };

    EvolveMethod method = cfg.method;
    if (method == EvolveMethod::automatic)
        method = (cfg.t_max * L.rates.R1 > 100.0 || cfg.log_record)
                     ? EvolveMethod::spectral
                     : EvolveMethod::adaptive_rk;

    const Eigen::VectorXcd v0 = vectorize(rho0.data);
    if (method == EvolveMethod::spectral) {
        const auto prop = SpectralPropagator::build(L, v0);
        if (prop.has_value()) {
            for (double t : times) record(t, unvectorize(prop->at(t), dim));
            return traj;
        }
        if (cfg.method == EvolveMethod::spectral)
            throw std::runtime_error(
                "evolve_full: eigenbasis reconstruction is poor; use adaptive_rk");
        method = EvolveMethod::adaptive_rk;  // automatic fallback
    }

    Eigen::VectorXd y(2 * n2);
    y.head(n2) = v0.real();
    y.tail(n2) = v0.imag();
    auto rhs = [&L, n2](const Eigen::VectorXd& x, Eigen::VectorXd& dxdt, double) {
        dxdt.head(n2).noalias() = L.data * x.head(n2);
        dxdt.tail(n2).noalias() = L.data * x.tail(n2);
    };
    integrate_grid(rhs, y, times, cfg, [&](double t, const Eigen::VectorXd& x) {
        Eigen::VectorXcd v(n2);
        v.real() = x.head(n2);
        v.imag() = x.tail(n2);
        record(t, unvectorize(v, dim));
    });
    return traj;
}

Trajectory evolve_two_spin_reduced(const RateSet& rates, const ObservableSet& init,
                                   const IntegratorConfig& cfg) {
    const std::vector<std::string> keys{"Mz", "Mzz", "Mc"};
    const Eigen::VectorXd x0 = reduced_initial(init, keys, "evolve_two_spin_reduced");
    const double r1 = rates.R1, m0 = rates.M0, a = rates.alpha;
    Eigen::MatrixXd K(3, 3);
    K << -2.0, 0.0, 4.0 * m0 * a,
         m0, -4.0, 2.0 * a,
         -m0 * a, 4.0 * a, -2.0;
    K *= r1;
    Eigen::VectorXd b(3);
    b << 2.0 * r1 * m0, 0.0, 0.0;
    return run_linear_reduced(K, b, keys, x0, cfg,
                              [](const Eigen::VectorXd& x) { return x(1) + x(2); });
}

Trajectory evolve_three_spin_reduced(const RateSet& rates, const ObservableSet& init,
                                     const IntegratorConfig& cfg) {
    const std::vector<std::string> keys{"Mz", "Mc", "Mzz", "Mcz", "Mzzz"};
    const Eigen::VectorXd x0 = reduced_initial(init, keys, "evolve_three_spin_reduced");
    const double r1 = rates.R1, m0 = rates.M0, a = rates.alpha;
    Eigen::MatrixXd K(5, 5);
    K << -2.0, 4.0 * m0 * a, 0.0, 0.0, 0.0,
         -2.0 * m0 * a, -2.0, 4.0 * a, -4.0 * m0 * a, 0.0,
         2.0 * m0, 2.0 * a, -4.0, 4.0 * m0 * a, 0.0,
         0.0, m0 * (1.0 + a), -2.0 * m0 * a, -4.0 * (1.0 + a), 12.0 * a,
         0.0, 0.0, m0, 2.0 * a, -6.0;
    K *= r1;
    Eigen::VectorXd b(5);
    b << 3.0 * r1 * m0, 0.0, 0.0, 0.0, 0.0;
    return run_linear_reduced(K, b, keys, x0, cfg,
                              [](const Eigen::VectorXd& x) { return x(1) + x(2); });
}

CollectiveTrajectory evolve_collective(int two_j, const RateSet& rates,
                                       const Eigen::VectorXd& p0,
                                       const IntegratorConfig& cfg) {
    if (two_j < 0) throw std::invalid_argument("evolve_collective: two_j must be >= 0");
    const Eigen::Index n = two_j + 1;
    if (p0.size() != n)
        throw std::invalid_argument("evolve_collective: p0 length must be 2J + 1");
    if (p0.minCoeff() < -1e-12 || std::abs(p0.sum() - 1.0) > 1e-8)
        throw std::invalid_argument("evolve_collective: p0 is not a probability vector");

    // zeta(M) = 2 (J - M)(J + M + 1) in doubled-integer form.
    auto zeta = [two_j](int two_m) {
        return 0.5 * static_cast<double>((two_j - two_m) * (two_j + two_m + 2));
    };
    const double A = rates.A, B = rates.B;
    auto rhs = [&](const Eigen::VectorXd& p, Eigen::VectorXd& dpdt, double) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const int two_m = -two_j + 2 * static_cast<int>(k);
            double d = 0.0;
            if (k + 1 < n) d -= zeta(two_m) * (A * p(k) - B * p(k + 1));
            if (k > 0) d -= zeta(-two_m) * (B * p(k) - A * p(k - 1));
            dpdt(k) = d;
        }
    };

    CollectiveTrajectory traj;
    traj.two_j = two_j;
    integrate_grid(rhs, p0, sample_times(cfg), cfg, [&](double t, const Eigen::VectorXd& p) {
        if (p.minCoeff() < -1e-10)
            throw std::runtime_error(
                "evolve_collective: integration fault, negative population at t = " +
                std::to_string(t));
        if (std::abs(p.sum() - 1.0) > 1e-10)
            throw std::runtime_error(
                "evolve_collective: population sum drifted at t = " + std::to_string(t));
        traj.times.push_back(t);
        traj.populations.push_back(p);
    });
    return traj;
}

PlateauReport detect_plateau(const Trajectory& traj, const std::string& signal,
                             const PlateauConfig& cfg) {
    const std::size_t n = traj.times.size();
    if (n < 5) throw std::invalid_argument("detect_plateau: need at least 5 samples");
    std::vector<double> s(n);
    for (std::size_t k = 0; k < n; ++k) s[k] = fetch_signal(traj, signal, k);
    const auto& t = traj.times;

    PlateauReport rep;
    rep.final_value = s.back();
    const auto [mn_it, mx_it] = std::minmax_element(s.begin(), s.end());
    const double range = *mx_it - *mn_it;

    if (range < 1e-12 * std::max(1.0, std::abs(rep.final_value))) {
        // No dynamics at all; only a reference can qualify this as a plateau.
        if (cfg.thermal_reference.has_value()) {
            const double gap = std::abs(rep.final_value - *cfg.thermal_reference);
            const double tol = cfg.delta > 0.0 ? cfg.delta
                                               : 1e-9 * std::max(1.0, std::abs(rep.final_value));
            if (gap > tol) {
                rep.detected = true;
                rep.stable = true;
                rep.t_pre = t.front();
                rep.t_R = t.back();
                rep.plateau_value = rep.final_value;
            }
        }
        return rep;
    }

    const double eps = cfg.eps_slope > 0.0 ? cfg.eps_slope : 1e-4 * range;
    const double delta = cfg.delta > 0.0 ? cfg.delta : 0.01 * range;

    std::vector<double> slope(n);
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t lo = k == 0 ? 0 : k - 1;
        const std::size_t hi = k == n - 1 ? n - 1 : k + 1;
        slope[k] = (s[hi] - s[lo]) / (t[hi] - t[lo]);
    }
    std::vector<bool> flat(n), far(n);
    for (std::size_t k = 0; k < n; ++k) {
        flat[k] = std::abs(slope[k]) < eps;
        far[k] = std::abs(s[k] - rep.final_value) > delta;
    }

    // Longest-duration interior run that is both flat and separated from the end.
    std::size_t best_lo = 0, best_hi = 0;
    bool found = false;
    for (std::size_t k = 0; k < n;) {
        if (!(flat[k] && far[k])) {
            ++k;
            continue;
        }
        std::size_t lo = k;
        while (k < n && flat[k] && far[k]) ++k;
        const std::size_t hi = k - 1;
        if (hi - lo + 1 >= static_cast<std::size_t>(cfg.min_samples) &&
            (!found || t[hi] - t[lo] > t[best_hi] - t[best_lo])) {
            best_lo = lo;
            best_hi = hi;
            found = true;
        }
    }
    if (found) {
        rep.detected = true;
        rep.t_pre = t[best_lo];
        rep.t_R = t[best_hi];
        // Level estimate from the entry-adjacent part of the run, before the
        // slow exit drift accumulates.
        double acc = 0.0;
        std::size_t cnt = 0;
        for (std::size_t k = best_lo; k <= best_hi; ++k) {
            if (std::abs(s[k] - s[best_lo]) <= 0.25 * delta) {
                acc += s[k];
                ++cnt;
            }
        }
        rep.plateau_value = acc / static_cast<double>(cnt);
        return rep;
    }

    if (cfg.thermal_reference.has_value()) {
        // Terminal flat run: a plateau that never exits within the horizon.
        if (flat[n - 1]) {
            std::size_t lo = n - 1;
            while (lo > 0 && flat[lo - 1]) --lo;
            if (n - lo >= static_cast<std::size_t>(cfg.min_samples)) {
                double acc = 0.0;
                for (std::size_t k = lo; k < n; ++k) acc += s[k];
                const double mean = acc / static_cast<double>(n - lo);
                if (std::abs(mean - *cfg.thermal_reference) > delta) {
                    rep.detected = true;
                    rep.stable = true;
                    rep.t_pre = t[lo];
                    rep.t_R = t.back();
                    rep.plateau_value = mean;
                }
            }
        }
    }
    return rep;
}

}  // namespace spinbath
