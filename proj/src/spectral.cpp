#include "crowqed/spectral.hpp"

#include <cmath>
#include <complex>
#include <string>

namespace crowqed {

namespace {

constexpr Complex kImag{0.0, 1.0};

struct PoleCore {
    Complex center;       // (a + b) / 2
    Complex half_split;   // principal sqrt((a-b)^2/4 - g^2 s_z)
    Complex atom_pole;    // a = omega_a - i gamma
    Complex photon_pole;  // b = Omega_k - i kappa
    bool degenerate;
};

PoleCore pole_core(double omega_k, const ModelParams& p, double s_z) {
    PoleCore c;
    c.atom_pole = Complex(p.omega_a, -p.gamma);
    c.photon_pole = Complex(omega_k, -p.kappa);
    c.center = 0.5 * (c.atom_pole + c.photon_pole);
    const Complex diff = c.atom_pole - c.photon_pole;
    Complex radicand = 0.25 * diff * diff - p.g * p.g * s_z;
    // a negative-real radicand (exact band resonance) must resolve to the
    // +i side of the cut so the plus branch is the long-lived/gain mode
    if (radicand.imag() == 0.0) radicand = Complex(radicand.real(), 0.0);
    c.half_split = std::sqrt(radicand);
    c.degenerate = std::abs(c.half_split) <= 1e-12 * (1.0 + std::abs(c.center));
    return c;
}

PolePair to_pair(const PoleCore& c) {
    return PolePair{c.center + c.half_split, c.center - c.half_split, c.degenerate};
}

BranchAmplitudes amplitudes_from(const PoleCore& c) {
    const Complex a = (c.center + c.half_split - c.atom_pole) / (2.0 * c.half_split);
    return BranchAmplitudes{a, 1.0 - a};
}

}  // namespace

PolePair poles_undamped(double k, const ModelParams& params, double s_z) {
    ModelParams p = params;
    p.kappa = 0.0;
    p.gamma = 0.0;
    return to_pair(pole_core(bare_dispersion(k, p), p, s_z));
}

PolePair poles_damped(double k, const ModelParams& params, double s_z) {
    return to_pair(pole_core(bare_dispersion(k, params), params, s_z));
}

PolePair poles_at_bare_frequency(double omega_k, const ModelParams& params, double s_z) {
    return to_pair(pole_core(omega_k, params, s_z));
}

BranchAmplitudes branch_amplitudes(double k, const ModelParams& params, double s_z) {
    const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
    if (c.degenerate)
        throw ExceptionalPointError("branch_amplitudes: coalesced poles at k = " +
                                    std::to_string(k));
    return amplitudes_from(c);
}

BranchDispersion branch_point(double k, const ModelParams& params, double s_z) {
    const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
    BranchDispersion out;
    out.k = k;
    out.omega_plus = c.center + c.half_split;
    out.omega_minus = c.center - c.half_split;
    out.omega_d = 0.5 * (params.omega_a + bare_dispersion(k, params));
    out.epsilon_k = c.half_split;
    out.degenerate = c.degenerate;
    if (!c.degenerate) {
        const BranchAmplitudes amp = amplitudes_from(c);
        out.amp_a = amp.a;
        out.amp_b = amp.b;
    } else {
        out.amp_a = out.amp_b = Complex(std::nan(""), std::nan(""));
    }
    return out;
}

std::vector<BranchDispersion> branch_curve(const std::vector<double>& ks,
                                           const ModelParams& params, double s_z) {
    std::vector<BranchDispersion> out;
    out.reserve(ks.size());
    bool have_prev = false;
    Complex prev_plus;
    for (double k : ks) {
        const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
        Complex h = c.half_split;
        if (have_prev && !c.degenerate) {
            // keep omega_plus continuous: pick the root sign closest to the
            // previous value
            if (std::abs(c.center + h - prev_plus) > std::abs(c.center - h - prev_plus)) h = -h;
        }
        BranchDispersion bd;
        bd.k = k;
        bd.omega_plus = c.center + h;
        bd.omega_minus = c.center - h;
        bd.omega_d = 0.5 * (params.omega_a + bare_dispersion(k, params));
        bd.epsilon_k = h;
        bd.degenerate = c.degenerate;
        if (!c.degenerate) {
            const Complex a = (bd.omega_plus - c.atom_pole) / (bd.omega_plus - bd.omega_minus);
            bd.amp_a = a;
            bd.amp_b = 1.0 - a;
            prev_plus = bd.omega_plus;
            have_prev = true;
        } else {
            bd.amp_a = bd.amp_b = Complex(std::nan(""), std::nan(""));
        }
        out.push_back(bd);
    }
    return out;
}

namespace {

void check_eps(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("Green function broadening eps must be > 0");
}

}  // namespace

Complex photon_gf(double k, double omega, const ModelParams& params, double s_z, double eps) {
    check_eps(eps);
    const Complex z(omega, eps);
    const Complex a(params.omega_a, -params.gamma);
    const Complex b(bare_dispersion(k, params), -params.kappa);
    return (z - a) / ((z - a) * (z - b) + params.g * params.g * s_z);
}

Complex photon_gf_pole_form(double k, double omega, const ModelParams& params, double s_z,
                            double eps) {
    check_eps(eps);
    const Complex z(omega, eps);
    const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
    if (c.degenerate) {
        // double pole: (z - a) / (z - c)^2
        const Complex d = z - c.center;
        return (z - c.atom_pole) / (d * d);
    }
    const BranchAmplitudes amp = amplitudes_from(c);
    return amp.a / (z - (c.center + c.half_split)) + amp.b / (z - (c.center - c.half_split));
}

Complex atom_gf(double k, double omega, const ModelParams& params, double s_z, double eps) {
    check_eps(eps);
    const Complex z(omega, eps);
    const Complex a(params.omega_a, -params.gamma);
    const Complex b(bare_dispersion(k, params), -params.kappa);
    return -s_z * (z - b) / ((z - b) * (z - a) + params.g * params.g * s_z);
}

Complex atom_gf_pole_form(double k, double omega, const ModelParams& params, double s_z,
                          double eps) {
    check_eps(eps);
    const Complex z(omega, eps);
    const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
    if (c.degenerate) {
        const Complex d = z - c.center;
        return -s_z * (z - c.photon_pole) / (d * d);
    }
    const BranchAmplitudes amp = amplitudes_from(c);
    return -s_z * (amp.b / (z - (c.center + c.half_split)) +
                   amp.a / (z - (c.center - c.half_split)));
}

GreenFunctionEvaluation evaluate_gf(double k, const ModelParams& params, double s_z,
                                    double omega_min, double omega_max, int n_points,
                                    double eps) {
    check_eps(eps);
    if (n_points < 2) throw std::invalid_argument("evaluate_gf: need at least 2 omega points");
    if (!(omega_max > omega_min))
        throw std::invalid_argument("evaluate_gf: omega_max must exceed omega_min");
    GreenFunctionEvaluation ev;
    ev.k = k;
    ev.epsilon_broadening = eps;
    ev.omega_grid.resize(static_cast<std::size_t>(n_points));
    ev.photon.resize(ev.omega_grid.size());
    ev.atom.resize(ev.omega_grid.size());
    const double step = (omega_max - omega_min) / (n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double w = omega_min + step * i;
        ev.omega_grid[static_cast<std::size_t>(i)] = w;
        ev.photon[static_cast<std::size_t>(i)] = photon_gf(k, w, params, s_z, eps);
        ev.atom[static_cast<std::size_t>(i)] = atom_gf(k, w, params, s_z, eps);
    }
    return ev;
}

CoupledGfSolution solve_coupled_gf(const KGrid& grid, const PopulationProfile& profile,
                                   const ModelParams& params, Complex omega, int max_sites) {
    const std::size_t n = grid.size();
    if (n == 0) throw std::invalid_argument("solve_coupled_gf: empty k grid");
    if (static_cast<int>(n) > max_sites)
        throw std::invalid_argument("solve_coupled_gf: n_sites exceeds the dense-solve cap");
    if (profile.size() != n)
        throw std::invalid_argument("solve_coupled_gf: profile/grid length mismatch");

    const ComplexMatrix z = kspace_inversion_matrix(profile, grid);
    const Complex za(params.omega_a, -params.gamma);
    const double g2 = params.g * params.g;

    std::vector<Complex> inv_photon(n);  // 1 / (omega - Omega_k + i kappa)
    for (std::size_t j = 0; j < n; ++j) {
        const Complex b(bare_dispersion(grid.values[j], params), -params.kappa);
        const Complex d = omega - b;
        if (d == Complex(0.0, 0.0))
            throw SingularSystemError("solve_coupled_gf: omega on a bare photon pole");
        inv_photon[j] = 1.0 / d;
    }

    // Row k' of the system:
    //   (omega - a) X_{k'} + g^2 sum_j Z[j][k'] X_j / (omega - Omega_j) = -Z[k'][source]
    // The j = k' term reproduces the mean-field self-energy because the
    // diagonal of Z is the mean inversion.
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = g2 * z(j, i) * inv_photon[j];
            if (i == j) m(i, j) += omega - za;
        }
    }
    ComplexMatrix rhs(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) rhs(i, j) = -z(i, j);

    try {
        lu_solve_in_place(std::move(m), rhs);
    } catch (const SingularMatrixError& e) {
        throw SingularSystemError(e.what());
    }

    CoupledGfSolution sol;
    sol.atom = rhs;
    sol.photon = ComplexMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            Complex v = g2 * sol.atom(i, j) * inv_photon[i] * inv_photon[j];
            if (i == j) v += inv_photon[i];
            sol.photon(i, j) = v;
        }
    }
    return sol;
}

std::vector<Complex> time_response(double k, const ModelParams& params, double s_z,
                                   const std::vector<double>& t_grid,
                                   std::optional<BranchAmplitudes> weights) {
    const PoleCore c = pole_core(bare_dispersion(k, params), params, s_z);
    BranchAmplitudes amp;
    if (weights) {
        amp = *weights;
    } else {
        if (c.degenerate)
            throw ExceptionalPointError("time_response: coalesced poles; supply weights");
        amp = amplitudes_from(c);
    }
    const Complex wp = c.center + c.half_split;
    const Complex wm = c.center - c.half_split;
    std::vector<Complex> out(t_grid.size());
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const double t = t_grid[i];
        if (t < 0.0) {
            out[i] = 0.0;
            continue;
        }
        out[i] = -kImag * (amp.a * std::exp(-kImag * wp * t) + amp.b * std::exp(-kImag * wm * t));
    }
    return out;
}

}  // namespace crowqed
