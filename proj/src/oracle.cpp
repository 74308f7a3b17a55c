#include "crowqed/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <unordered_map>
#include <utility>

namespace crowqed::oracle {

SingleExcitationHamiltonian build_single_excitation_h(const ModelParams& params) {
    params.validate();
    if (params.n_atoms != 1)
        throw std::invalid_argument("build_single_excitation_h: sector requires n_atoms == 1");
    if (params.kappa != 0.0 || params.gamma != 0.0)
        throw std::invalid_argument("build_single_excitation_h: Hermitian sector, no damping");

    const std::size_t n = static_cast<std::size_t>(params.n_sites);
    SingleExcitationHamiltonian h;
    h.params = params;
    h.grid = build_k_grid(params);
    h.site_basis = ComplexMatrix(2 * n, 2 * n);

    // photon block: on-site energy + periodic nearest-neighbour hopping.
    // N = 1 wraps onto itself (2J self energy), N = 2 doubles the single link.
    for (std::size_t a = 0; a < n; ++a) {
        h.site_basis(a, a) += params.omega_c;
        const std::size_t nb = (a + 1) % n;
        h.site_basis(a, nb) += params.j_hop;
        h.site_basis(nb, a) += params.j_hop;
    }
    // atom block and local Jaynes-Cummings coupling
    for (std::size_t a = 0; a < n; ++a) {
        h.site_basis(n + a, n + a) += params.omega_a;
        h.site_basis(a, n + a) += params.g;
        h.site_basis(n + a, a) += params.g;
    }
    return h;
}

ComplexMatrix k_basis_hamiltonian(const SingleExcitationHamiltonian& h) {
    const std::size_t n = h.grid.size();
    ComplexMatrix u(2 * n, 2 * n);
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t j = 0; j < n; ++j) {
        const double k = h.grid.values[j];
        for (std::size_t a = 0; a < n; ++a) {
            const Complex phase = std::polar(norm, -k * h.grid.ell * static_cast<double>(a));
            u(a, j) = phase;          // photon column for mode k_j
            u(n + a, n + j) = phase;  // atom column with the matching pattern
        }
    }
    return matmul(adjoint(u), matmul(h.site_basis, u));
}

EigenSystem diagonalize(const SingleExcitationHamiltonian& h) {
    return hermitian_eigensystem(h.site_basis);
}

std::vector<Complex> photon_mode_vector(const SingleExcitationHamiltonian& h, double k) {
    const std::size_t n = h.grid.size();
    std::vector<Complex> v(2 * n, Complex(0.0, 0.0));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t a = 0; a < n; ++a)
        v[a] = std::polar(norm, -k * h.grid.ell * static_cast<double>(a));
    return v;
}

std::vector<Complex> atom_mode_vector(const SingleExcitationHamiltonian& h, double k) {
    const std::size_t n = h.grid.size();
    std::vector<Complex> v(2 * n, Complex(0.0, 0.0));
    const double norm = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::size_t a = 0; a < n; ++a)
        v[n + a] = std::polar(norm, k * h.grid.ell * static_cast<double>(a));
    return v;
}

Complex lehmann_gf(const EigenSystem& eig, const std::vector<Complex>& mode_vector,
                   double omega, double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("lehmann_gf: eps must be > 0");
    const std::size_t dim = eig.values.size();
    if (mode_vector.size() != dim)
        throw std::invalid_argument("lehmann_gf: vector/eigensystem dimension mismatch");
    Complex out = 0.0;
    for (std::size_t m = 0; m < dim; ++m) {
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            overlap += std::conj(eig.vectors(i, m)) * mode_vector[i];
        const double w = std::norm(overlap);
        if (w == 0.0) continue;
        out += w / Complex(omega - eig.values[m], eps);
    }
    return out;
}

Complex lehmann_photon_gf(const SingleExcitationHamiltonian& h, const EigenSystem& eig,
                          double k, double omega, double eps) {
    return lehmann_gf(eig, photon_mode_vector(h, k), omega, eps);
}

Complex lehmann_atom_gf(const SingleExcitationHamiltonian& h, const EigenSystem& eig, double k,
                        double omega, double eps) {
    return lehmann_gf(eig, atom_mode_vector(h, k), omega, eps);
}

std::vector<PoleResidue> lehmann_residues(const EigenSystem& eig,
                                          const std::vector<Complex>& mode_vector,
                                          double cluster_tol, double weight_floor) {
    const std::size_t dim = eig.values.size();
    std::vector<PoleResidue> out;
    for (std::size_t m = 0; m < dim; ++m) {
        Complex overlap = 0.0;
        for (std::size_t i = 0; i < dim; ++i)
            overlap += std::conj(eig.vectors(i, m)) * mode_vector[i];
        const double w = std::norm(overlap);
        if (!out.empty() && eig.values[m] - out.back().energy <= cluster_tol) {
            // weight-average the cluster energy so tiny splittings don't bias it
            const double tot = out.back().weight + w;
            if (tot > 0.0)
                out.back().energy =
                    (out.back().energy * out.back().weight + eig.values[m] * w) / tot;
            out.back().weight = tot;
        } else {
            out.push_back(PoleResidue{eig.values[m], w});
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const PoleResidue& p) { return p.weight < weight_floor; }),
              out.end());
    return out;
}

// ---------------------------------------------------------------------------
// spin-space machinery
// ---------------------------------------------------------------------------

namespace {

// sparse amplitude list over the 2^N product basis
using Sparse = std::unordered_map<std::uint32_t, Complex>;

void add_sigma_plus(std::uint32_t site, const Complex& amp, std::uint32_t state, Sparse& out) {
    const std::uint32_t bit = 1u << site;
    if (!(state & bit)) out[state | bit] += amp;
}

void add_sigma_minus(std::uint32_t site, const Complex& amp, std::uint32_t state, Sparse& out) {
    const std::uint32_t bit = 1u << site;
    if (state & bit) out[state & ~bit] += amp;
}

struct SpinSpace {
    int n = 0;
    double ell = 1.0;
    std::vector<double> kgrid;

    explicit SpinSpace(int n_sites, double lattice) : n(n_sites), ell(lattice) {
        kgrid.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j)
            kgrid[static_cast<std::size_t>(j)] = 2.0 * std::numbers::pi * j / (ell * n);
    }

    std::uint32_t dim() const { return 1u << n; }

    Complex phase_plus(double k, int site) const {
        return std::polar(1.0 / std::sqrt(static_cast<double>(n)),
                          k * ell * static_cast<double>(site));
    }

    Sparse sigma_k_plus(double k, const Sparse& in) const {
        Sparse out;
        for (const auto& [state, amp] : in)
            for (int a = 0; a < n; ++a)
                add_sigma_plus(static_cast<std::uint32_t>(a), phase_plus(k, a) * amp, state, out);
        return out;
    }

    Sparse sigma_k_minus(double k, const Sparse& in) const {
        Sparse out;
        for (const auto& [state, amp] : in)
            for (int a = 0; a < n; ++a)
                add_sigma_minus(static_cast<std::uint32_t>(a),
                                std::conj(phase_plus(k, a)) * amp, state, out);
        return out;
    }

    Sparse collective_plus(const Sparse& in) const {  // S^+ = sum_a sigma_a^+
        Sparse out;
        for (const auto& [state, amp] : in)
            for (int a = 0; a < n; ++a)
                add_sigma_plus(static_cast<std::uint32_t>(a), amp, state, out);
        return out;
    }

    // sigma^z_{kk'} is diagonal: (1/N) sum_a exp(i (k - k') ell a) z_a(state)
    Complex sigma_z_kkp_diag(double k, double kp, std::uint32_t state) const {
        Complex s = 0.0;
        for (int a = 0; a < n; ++a) {
            const double z = (state >> a) & 1u ? 1.0 : -1.0;
            s += std::polar(z, (k - kp) * ell * static_cast<double>(a));
        }
        return s / static_cast<double>(n);
    }

    double sigma_z_diag(std::uint32_t state) const {
        const int pop = std::popcount(state);
        return (2.0 * pop - n) / static_cast<double>(n);
    }
};

double max_abs(const Sparse& s) {
    double m = 0.0;
    for (const auto& [state, amp] : s) {
        (void)state;
        m = std::max(m, std::abs(amp));
    }
    return m;
}

Sparse diff(const Sparse& a, const Sparse& b) {
    Sparse d = a;
    for (const auto& [state, amp] : b) d[state] -= amp;
    return d;
}

// max entry of ([A, B] - target) over every basis column, where A/B are
// closures producing sparse columns and target supplies the exact column.
template <typename OpA, typename OpB, typename Target>
double commutator_residual(const SpinSpace& sp, OpA&& op_a, OpB&& op_b, Target&& target) {
    double worst = 0.0;
    for (std::uint32_t b = 0; b < sp.dim(); ++b) {
        Sparse unit;
        unit[b] = 1.0;
        const Sparse ab = op_a(op_b(unit));
        const Sparse ba = op_b(op_a(unit));
        Sparse res = diff(ab, ba);
        const Sparse t = target(b);
        res = diff(res, t);
        worst = std::max(worst, max_abs(res));
    }
    return worst;
}

}  // namespace

AlgebraReport verify_spin_algebra(int n_sites, int trials, std::uint64_t seed, double ell) {
    if (n_sites < 1) throw std::invalid_argument("verify_spin_algebra: n_sites must be >= 1");
    if (n_sites > 12)
        throw std::invalid_argument("verify_spin_algebra: n_sites > 12 rejected (2^N space)");
    if (trials < 1) throw std::invalid_argument("verify_spin_algebra: trials must be >= 1");

    const SpinSpace sp(n_sites, ell);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, sp.kgrid.size() - 1);

    AlgebraReport report;
    report.n_sites = n_sites;
    report.tolerance = 1e-12;

    const auto record = [&](std::string name, double residual, bool pass) {
        report.checks.push_back(AlgebraCheck{std::move(name), residual, pass});
    };

    double r_pm = 0.0, r_same = 0.0, r_zp = 0.0, r_zm = 0.0;
    for (int t = 0; t < trials; ++t) {
        const double k = sp.kgrid[pick(rng)];
        const double kp = sp.kgrid[pick(rng)];

        const auto sig_p = [&](const Sparse& v) { return sp.sigma_k_plus(k, v); };
        const auto sig_m_kp = [&](const Sparse& v) { return sp.sigma_k_minus(kp, v); };
        r_pm = std::max(r_pm, commutator_residual(sp, sig_p, sig_m_kp, [&](std::uint32_t b) {
                            Sparse t1;
                            t1[b] = sp.sigma_z_kkp_diag(k, kp, b);
                            return t1;
                        }));

        const auto sig_m_k = [&](const Sparse& v) { return sp.sigma_k_minus(k, v); };
        r_same = std::max(r_same, commutator_residual(sp, sig_p, sig_m_k, [&](std::uint32_t b) {
                              Sparse t1;
                              t1[b] = sp.sigma_z_diag(b);
                              return t1;
                          }));

        const auto sig_z = [&](const Sparse& v) {
            Sparse out;
            for (const auto& [state, amp] : v) out[state] = amp * sp.sigma_z_diag(state);
            return out;
        };
        const double two_over_n = 2.0 / n_sites;
        r_zp = std::max(r_zp, commutator_residual(sp, sig_z, sig_p, [&](std::uint32_t b) {
                            Sparse unit;
                            unit[b] = two_over_n;
                            return sp.sigma_k_plus(k, unit);
                        }));
        r_zm = std::max(r_zm, commutator_residual(sp, sig_z, sig_m_k, [&](std::uint32_t b) {
                            Sparse unit;
                            unit[b] = -two_over_n;
                            return sp.sigma_k_minus(k, unit);
                        }));
    }
    record("commutator_plus_minus_cross_mode", r_pm, r_pm <= report.tolerance);
    record("commutator_plus_minus_same_mode", r_same, r_same <= report.tolerance);
    record("commutator_z_plus", r_zp, r_zp <= report.tolerance);
    record("commutator_z_minus", r_zm, r_zm <= report.tolerance);

    // k = 0 collective equivalence: sqrt(N) sigma_0^+ == S^+ as matrices
    {
        double worst = 0.0;
        const double root_n = std::sqrt(static_cast<double>(n_sites));
        for (std::uint32_t b = 0; b < sp.dim(); ++b) {
            Sparse unit;
            unit[b] = 1.0;
            Sparse lhs = sp.sigma_k_plus(0.0, unit);
            for (auto& [state, amp] : lhs) {
                (void)state;
                amp *= root_n;
            }
            worst = std::max(worst, max_abs(diff(lhs, sp.collective_plus(unit))));
        }
        record("k0_matches_collective_raising", worst, worst <= report.tolerance);
    }

    // k != 0 spin waves are not the collective operator (distance must be large)
    if (n_sites >= 2) {
        const double k = sp.kgrid[1];
        double worst = 0.0;
        const double root_n = std::sqrt(static_cast<double>(n_sites));
        for (std::uint32_t b = 0; b < sp.dim(); ++b) {
            Sparse unit;
            unit[b] = 1.0;
            Sparse lhs = sp.sigma_k_plus(k, unit);
            for (auto& [state, amp] : lhs) {
                (void)state;
                amp *= root_n;
            }
            worst = std::max(worst, max_abs(diff(lhs, sp.collective_plus(unit))));
        }
        record("nonzero_k_differs_from_collective", worst, worst > 0.5);

        // sigma^z_{kk'} (k != k') is not a scalar multiple of sigma^z
        const double kp = sp.kgrid[0];
        Complex num = 0.0;
        double den = 0.0, norm_kkp = 0.0;
        std::vector<Complex> dvals(sp.dim());
        for (std::uint32_t b = 0; b < sp.dim(); ++b) {
            const Complex v = sp.sigma_z_kkp_diag(k, kp, b);
            const double z = sp.sigma_z_diag(b);
            dvals[b] = v;
            num += v * z;
            den += z * z;
            norm_kkp += std::norm(v);
        }
        const Complex c = (den > 0.0) ? num / den : Complex(0.0, 0.0);
        double resid = 0.0;
        for (std::uint32_t b = 0; b < sp.dim(); ++b)
            resid += std::norm(dvals[b] - c * sp.sigma_z_diag(b));
        const double rel = (norm_kkp > 0.0) ? std::sqrt(resid / norm_kkp) : 0.0;
        record("cross_mode_commutator_outside_triple", rel, rel > 0.1);
    }

    report.all_pass = std::all_of(report.checks.begin(), report.checks.end(),
                                  [](const AlgebraCheck& c) { return c.pass; });
    return report;
}

BosonicReport bosonic_limit_check(int n_sites, int max_excitations, double ell) {
    if (n_sites < 1) throw std::invalid_argument("bosonic_limit_check: n_sites must be >= 1");
    if (n_sites > 12)
        throw std::invalid_argument("bosonic_limit_check: n_sites > 12 rejected (2^N space)");
    if (max_excitations < 0 || max_excitations > n_sites)
        throw std::invalid_argument("bosonic_limit_check: bad excitation count");

    const SpinSpace sp(n_sites, ell);
    BosonicReport report;
    report.n_sites = n_sites;

    const double k0 = sp.kgrid[0];
    Sparse psi;
    psi[0] = 1.0;  // |G>

    const auto inner = [](const Sparse& a, const Sparse& b) {
        Complex s = 0.0;
        for (const auto& [state, amp] : a) {
            const auto it = b.find(state);
            if (it != b.end()) s += std::conj(amp) * it->second;
        }
        return s;
    };

    for (int m = 0; m <= max_excitations; ++m) {
        // deviation for every (k, k') pair on the current m-excitation state
        for (std::size_t i = 0; i < sp.kgrid.size(); ++i) {
            for (std::size_t j = 0; j < sp.kgrid.size(); ++j) {
                const Sparse up_i = sp.sigma_k_plus(sp.kgrid[i], psi);
                const Sparse up_j = sp.sigma_k_plus(sp.kgrid[j], psi);
                // <psi| sigma_k^- sigma_k'^+ |psi> - <psi| sigma_k'^+ sigma_k^- |psi>
                const Sparse dn_i = sp.sigma_k_minus(sp.kgrid[i], psi);
                const Sparse dn_j = sp.sigma_k_minus(sp.kgrid[j], psi);
                const Complex expect = inner(up_i, up_j) - inner(dn_j, dn_i);
                const double kron = (i == j) ? 1.0 : 0.0;
                report.samples.push_back(BosonicSample{m, i, j, expect - kron});
            }
        }
        if (m == max_excitations) break;
        // raise: psi <- normalized sigma_{k0}^+ psi
        Sparse next = sp.sigma_k_plus(k0, psi);
        double norm2 = 0.0;
        for (const auto& [state, amp] : next) {
            (void)state;
            norm2 += std::norm(amp);
        }
        if (norm2 == 0.0) break;
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto& [state, amp] : next) {
            (void)state;
            amp *= inv;
        }
        psi = std::move(next);
    }
    return report;
}

}  // namespace crowqed::oracle
