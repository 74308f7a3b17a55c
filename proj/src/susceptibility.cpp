#include "crowqed/susceptibility.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace crowqed {

namespace {

constexpr Complex kImag{0.0, 1.0};

double mode_shift(double k, const ModelParams& p) {
    // x = delta + 2 J cos(k ell) = Omega_k - omega_a
    return p.delta() + 2.0 * p.j_hop * std::cos(k * p.ell);
}

struct State {
    Complex a, b;
};

State apply(const std::array<Complex, 4>& m, const State& s) {
    return {m[0] * s.a + m[1] * s.b, m[2] * s.a + m[3] * s.b};
}

State axpy(const State& x, double f, const State& y) {
    return {x.a + f * y.a, x.b + f * y.b};
}

double state_norm(const State& s) { return std::sqrt(std::norm(s.a) + std::norm(s.b)); }

}  // namespace

std::array<Complex, 4> mode_generator(double k, const ModelParams& params) {
    const double gn = params.g * std::sqrt(static_cast<double>(params.n_atoms));
    const double detune = params.omega_a - bare_dispersion(k, params);  // omega_a - Omega_k
    return {Complex(-params.kappa, 0.0), -kImag * gn,
            -kImag * gn, Complex(-params.gamma, -detune)};
}

std::vector<ModeAmplitudes> evolve_mode(double k, const ModelParams& params,
                                        const ModeAmplitudes& initial,
                                        const std::vector<double>& t_grid) {
    if (t_grid.empty()) return {};
    if (t_grid.front() < initial.t)
        throw std::invalid_argument("evolve_mode: t_grid starts before the initial time");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] < t_grid[i - 1])
            throw std::invalid_argument("evolve_mode: t_grid must be non-decreasing");

    const auto m = mode_generator(k, params);
    const auto rhs = [&m](const State& s) { return apply(m, s); };

    // Cash-Karp embedded 5(4) pair (autonomous system, no time nodes needed)
    static constexpr double b21 = 0.2;
    static constexpr double b31 = 3.0 / 40.0, b32 = 9.0 / 40.0;
    static constexpr double b41 = 0.3, b42 = -0.9, b43 = 1.2;
    static constexpr double b51 = -11.0 / 54.0, b52 = 2.5, b53 = -70.0 / 27.0,
                            b54 = 35.0 / 27.0;
    static constexpr double b61 = 1631.0 / 55296.0, b62 = 175.0 / 512.0,
                            b63 = 575.0 / 13824.0, b64 = 44275.0 / 110592.0,
                            b65 = 253.0 / 4096.0;
    static constexpr double c1 = 37.0 / 378.0, c3 = 250.0 / 621.0, c4 = 125.0 / 594.0,
                            c6 = 512.0 / 1771.0;
    static constexpr double d1 = c1 - 2825.0 / 27648.0, d3 = c3 - 18575.0 / 48384.0,
                            d4 = c4 - 13525.0 / 55296.0, d5 = -277.0 / 14336.0,
                            d6 = c6 - 0.25;

    const double rel_tol = 1e-10;
    const double abs_tol = 1e-13;

    std::vector<ModeAmplitudes> out;
    out.reserve(t_grid.size());
    State y{initial.a_tilde, initial.b_tilde};
    double t = initial.t;
    // initial step from the generator's magnitude
    double mmax = 0.0;
    for (const Complex& z : m) mmax = std::max(mmax, std::abs(z));
    double h = (mmax > 0.0) ? 0.1 / mmax : 0.1;

    for (double target : t_grid) {
        while (t < target) {
            bool clipped = false;
            double step = h;
            if (t + step >= target) {
                step = target - t;
                clipped = true;
            }
            const State k1 = rhs(y);
            const State k2 = rhs(axpy(y, step * b21, k1));
            const State k3 = rhs(axpy(axpy(y, step * b31, k1), step * b32, k2));
            const State k4 = rhs(axpy(axpy(axpy(y, step * b41, k1), step * b42, k2),
                                      step * b43, k3));
            const State k5 = rhs(axpy(axpy(axpy(axpy(y, step * b51, k1), step * b52, k2),
                                           step * b53, k3), step * b54, k4));
            const State k6 = rhs(axpy(axpy(axpy(axpy(axpy(y, step * b61, k1), step * b62, k2),
                                                step * b63, k3), step * b64, k4),
                                      step * b65, k5));
            State y5 = y;
            y5 = axpy(y5, step * c1, k1);
            y5 = axpy(y5, step * c3, k3);
            y5 = axpy(y5, step * c4, k4);
            y5 = axpy(y5, step * c6, k6);
            State err{step * (d1 * k1.a + d3 * k3.a + d4 * k4.a + d5 * k5.a + d6 * k6.a),
                      step * (d1 * k1.b + d3 * k3.b + d4 * k4.b + d5 * k5.b + d6 * k6.b)};
            const double scale = abs_tol + rel_tol * std::max(state_norm(y), state_norm(y5));
            const double e = state_norm(err) / scale;
            if (e <= 1.0) {
                t += step;
                y = y5;
                if (!clipped) {
                    const double grow = (e > 0.0) ? 0.9 * std::pow(e, -0.2) : 5.0;
                    h = step * std::clamp(grow, 0.2, 5.0);
                }
            } else {
                h = step * std::clamp(0.9 * std::pow(e, -0.25), 0.1, 0.9);
                if (!(h > 0.0) || t + h == t)
                    throw std::runtime_error("evolve_mode: step size underflow");
            }
        }
        out.push_back(ModeAmplitudes{y.a, y.b, target});
    }
    return out;
}

std::vector<ModeAmplitudes> evolve_mode_closed_form(double k, const ModelParams& params,
                                                    const ModeAmplitudes& initial,
                                                    const std::vector<double>& t_grid) {
    const auto m = mode_generator(k, params);
    const Complex tr = m[0] + m[3];
    const Complex det = m[0] * m[3] - m[1] * m[2];
    const Complex disc = std::sqrt(0.25 * tr * tr - det);
    const Complex lp = 0.5 * tr + disc;
    const Complex lm = 0.5 * tr - disc;

    std::vector<ModeAmplitudes> out;
    out.reserve(t_grid.size());
    for (double target : t_grid) {
        const double dt = target - initial.t;
        std::array<Complex, 4> e;  // exp(M dt)
        if (std::abs(lp - lm) <= 1e-14 * (1.0 + std::abs(lp))) {
            // defective/degenerate pair: exp = e^{l t} (I + (M - l I) t)
            const Complex f = std::exp(lp * dt);
            e = {f * (1.0 + (m[0] - lp) * dt), f * m[1] * dt,
                 f * m[2] * dt, f * (1.0 + (m[3] - lp) * dt)};
        } else {
            // Lagrange form: exp = e^{l+ t}(M - l- I)/(l+ - l-) + e^{l- t}(M - l+ I)/(l- - l+)
            const Complex fp = std::exp(lp * dt) / (lp - lm);
            const Complex fm = std::exp(lm * dt) / (lm - lp);
            e = {fp * (m[0] - lm) + fm * (m[0] - lp), (fp + fm) * m[1],
                 (fp + fm) * m[2], fp * (m[3] - lm) + fm * (m[3] - lp)};
        }
        out.push_back(ModeAmplitudes{e[0] * initial.a_tilde + e[1] * initial.b_tilde,
                                     e[2] * initial.a_tilde + e[3] * initial.b_tilde, target});
    }
    return out;
}

Complex steady_state_ratio(double k, const ModelParams& params) {
    const double x = mode_shift(k, params);
    const double scale = 1.0 + std::abs(params.delta()) + 2.0 * params.j_hop;
    if (params.gamma == 0.0 && std::abs(x) <= 1e-12 * scale)
        throw std::invalid_argument("steady_state_ratio: gamma = 0 on resonance");
    const double gn = params.g * std::sqrt(static_cast<double>(params.n_atoms));
    return -kImag * gn / Complex(params.gamma, -x);
}

namespace {

void require_gamma(const ModelParams& p) {
    if (!(p.gamma > 0.0)) throw std::invalid_argument("susceptibility: gamma must be > 0");
    if (!(p.omega_c != 0.0)) throw std::invalid_argument("susceptibility: omega_c must be nonzero");
}

double shift_at(double k, double delta, const ModelParams& p) {
    return delta + 2.0 * p.j_hop * std::cos(k * p.ell);
}

}  // namespace

Complex chi(double k, double delta, const ModelParams& params) {
    require_gamma(params);
    const double g2n = params.g * params.g * params.n_atoms;
    const double x = shift_at(k, delta, params);
    return 2.0 * kImag * g2n / (params.omega_c * Complex(params.gamma, -x));
}

double chi_dispersive(double k, double delta, const ModelParams& params) {
    require_gamma(params);
    const double g2n = params.g * params.g * params.n_atoms;
    const double x = shift_at(k, delta, params);
    return -x * 2.0 * g2n / (params.omega_c * (params.gamma * params.gamma + x * x));
}

double chi_absorptive(double k, double delta, const ModelParams& params) {
    require_gamma(params);
    const double g2n = params.g * params.g * params.n_atoms;
    const double x = shift_at(k, delta, params);
    return 2.0 * g2n * params.gamma / (params.omega_c * (params.gamma * params.gamma + x * x));
}

SusceptibilityCurve chi_sweep(double k, const ModelParams& params, double delta_min,
                              double delta_max, int n_points) {
    require_gamma(params);
    if (n_points < 2) throw std::invalid_argument("chi_sweep: need at least 2 points");
    if (!(delta_max > delta_min))
        throw std::invalid_argument("chi_sweep: delta_max must exceed delta_min");
    SusceptibilityCurve curve;
    curve.k = k;
    curve.delta_grid.resize(static_cast<std::size_t>(n_points));
    curve.chi1.resize(curve.delta_grid.size());
    curve.chi2.resize(curve.delta_grid.size());
    const double step = (delta_max - delta_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double d = delta_min + step * i;
        const Complex c = chi(k, d, params);
        curve.delta_grid[static_cast<std::size_t>(i)] = d;
        curve.chi1[static_cast<std::size_t>(i)] = c.real();
        curve.chi2[static_cast<std::size_t>(i)] = c.imag();
    }
    return curve;
}

}  // namespace crowqed
