#include "crowqed/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace crowqed {

namespace {

double splitting_f(double detuning_k, const ModelParams& p, double s_z) {
    return 0.25 * detuning_k * detuning_k - p.g * p.g * s_z;
}

}  // namespace

double group_velocity(double k, Branch branch, const ModelParams& params, double s_z) {
    const double kl = k * params.ell;
    const double detuning_k = params.delta() + 2.0 * params.j_hop * std::cos(kl);
    const double f2 = splitting_f(detuning_k, params, s_z);
    if (f2 <= 0.0)
        throw std::domain_error("group_velocity: degenerate or complex splitting at this k");
    const double f = std::sqrt(f2);
    const double sign = (branch == Branch::plus) ? 1.0 : -1.0;
    return params.j_hop * params.ell * std::sin(kl) * (1.0 + sign * detuning_k / (2.0 * f));
}

BandwidthResult bandwidth(Branch branch, const ModelParams& params, double s_z, int n_samples) {
    if (n_samples < 2) throw std::invalid_argument("bandwidth: need at least 2 samples");
    BandwidthResult out;
    out.inversion_free_regime = (s_z < 0.0);

    const double f0 = splitting_f(params.delta() + 2.0 * params.j_hop, params, s_z);
    const double fc = splitting_f(params.delta(), params, s_z);
    out.formula_halfband = (f0 >= 0.0 && fc >= 0.0)
                               ? std::abs(std::sqrt(f0) - std::sqrt(fc))
                               : std::numeric_limits<double>::quiet_NaN();

    const double k_max = std::numbers::pi / (2.0 * params.ell);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (int i = 0; i < n_samples; ++i) {
        const double k = k_max * i / (n_samples - 1);
        const PolePair p = poles_undamped(k, params, s_z);
        const double w = (branch == Branch::plus) ? p.omega_plus.real() : p.omega_minus.real();
        lo = std::min(lo, w);
        hi = std::max(hi, w);
    }
    out.numeric_extent = hi - lo;
    return out;
}

double laser_threshold(const ModelParams& params) {
    if (!(params.g > 0.0)) throw std::invalid_argument("laser_threshold: g must be > 0");
    return params.gamma * params.kappa / (2.0 * params.g * params.g);
}

double exact_threshold_resonant(const ModelParams& params) {
    if (!(params.g > 0.0))
        throw std::invalid_argument("exact_threshold_resonant: g must be > 0");
    return params.gamma * params.kappa / (params.g * params.g);
}

GainReport gain_rate(const ModelParams& params, double s_z) {
    if (!(params.gamma > 0.0)) throw std::invalid_argument("gain_rate: gamma must be > 0");
    GainReport out;
    out.approx = params.g * params.g * s_z / params.gamma - 0.5 * params.kappa;
    // exact pole at band resonance Omega_k = omega_a
    out.exact_im_plus = poles_at_bare_frequency(params.omega_a, params, s_z).omega_plus.imag();
    out.within_validity = (4.0 * params.g * params.g * std::abs(s_z) <=
                           0.1 * params.gamma * params.gamma) &&
                          (params.gamma >= 10.0 * params.kappa);
    return out;
}

TransportReport transport_report(double k, const ModelParams& params, double s_z) {
    TransportReport r;
    r.k = k;
    const BranchDispersion bd = branch_point(k, params, s_z);
    r.omega_plus = bd.omega_plus;
    r.omega_minus = bd.omega_minus;
    r.amp_a = bd.amp_a;
    r.amp_b = bd.amp_b;
    r.degenerate = bd.degenerate;
    r.gain = bd.omega_plus.imag();
    r.lasing = r.gain > 0.0;
    r.threshold_sz = (params.g > 0.0) ? laser_threshold(params)
                                      : std::numeric_limits<double>::quiet_NaN();
    r.gain_approx = (params.gamma > 0.0)
                        ? params.g * params.g * s_z / params.gamma - 0.5 * params.kappa
                        : std::numeric_limits<double>::quiet_NaN();

    try {
        r.v_plus = group_velocity(k, Branch::plus, params, s_z);
        r.v_minus = group_velocity(k, Branch::minus, params, s_z);
    } catch (const std::domain_error&) {
        r.v_plus = r.v_minus = std::numeric_limits<double>::quiet_NaN();
    }
    r.bandwidth_plus = bandwidth(Branch::plus, params, s_z).numeric_extent;
    r.bandwidth_minus = bandwidth(Branch::minus, params, s_z).numeric_extent;
    return r;
}

}  // namespace crowqed
