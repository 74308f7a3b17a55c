#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "crowqed/oracle.hpp"
#include "crowqed/spectral.hpp"

using crowqed::Complex;
using crowqed::ModelParams;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> analytic_sector_spectrum(const ModelParams& p) {
    std::vector<double> out;
    for (double k : crowqed::build_k_grid(p).values) {
        const auto poles = crowqed::poles_undamped(k, p, -1.0);
        out.push_back(poles.omega_plus.real());
        out.push_back(poles.omega_minus.real());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("single-excitation sector: Jaynes-Cummings single cavity") {
    ModelParams p;
    p.n_sites = 1;
    p.omega_c = 1.3;
    p.omega_a = 0.8;
    p.g = 0.2;
    p.j_hop = 1e-300;  // isolated cavity (hopping enters only as a self-loop)
    const auto h = crowqed::oracle::build_single_excitation_h(p);
    REQUIRE(h.site_basis.rows() == 2);
    CHECK(h.site_basis(0, 0).real() == doctest::Approx(1.3));
    CHECK(h.site_basis(1, 1).real() == doctest::Approx(0.8));
    CHECK(h.site_basis(0, 1).real() == doctest::Approx(0.2));
    CHECK(h.site_basis(1, 0).real() == doctest::Approx(0.2));

    // with hopping the single site wraps onto itself: Omega_0 = omega_c + 2J
    p.j_hop = 0.4;
    const auto h2 = crowqed::oracle::build_single_excitation_h(p);
    CHECK(h2.site_basis(0, 0).real() == doctest::Approx(1.3 + 0.8));
}

TEST_CASE("single-excitation sector: decoupled two-site spectrum") {
    ModelParams p;
    p.n_sites = 2;
    p.omega_c = 2.0;
    p.omega_a = 1.1;
    p.g = 0.0;
    p.j_hop = 0.7;
    const auto eig = crowqed::oracle::diagonalize(crowqed::oracle::build_single_excitation_h(p));
    std::vector<double> expected{2.0 + 1.4, 2.0 - 1.4, 1.1, 1.1};
    std::sort(expected.begin(), expected.end());
    for (std::size_t i = 0; i < expected.size(); ++i)
        CHECK(eig.values[i] == doctest::Approx(expected[i]).epsilon(1e-12));
}

TEST_CASE("single-excitation sector: guards") {
    ModelParams p;
    p.n_sites = 2;
    p.n_atoms = 3;
    CHECK_THROWS_AS(crowqed::oracle::build_single_excitation_h(p), std::invalid_argument);
    p.n_atoms = 1;
    p.kappa = 0.1;
    CHECK_THROWS_AS(crowqed::oracle::build_single_excitation_h(p), std::invalid_argument);
}

TEST_CASE("eigenvalues match the analytic branches across sizes") {
    std::mt19937_64 rng(97);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n : {1, 2, 4, 8, 12}) {
        for (int trial = 0; trial < 10; ++trial) {
            ModelParams p;
            p.n_sites = n;
            p.omega_a = 0.5 + 3.5 * u(rng);
            p.omega_c = p.omega_a + 6.0 * u(rng) - 3.0;
            p.g = u(rng);
            const auto h = crowqed::oracle::build_single_excitation_h(p);
            const auto eig = crowqed::oracle::diagonalize(h);
            const auto expected = analytic_sector_spectrum(p);
            double worst = 0.0;
            for (std::size_t i = 0; i < expected.size(); ++i)
                worst = std::max(worst, std::abs(expected[i] - eig.values[i]));
            CHECK(worst < 1e-10);
        }
    }
}

TEST_CASE("mode-basis Hamiltonian exhibits the per-mode block structure") {
    ModelParams p;
    p.n_sites = 6;
    p.omega_c = 1.7;
    p.omega_a = 1.2;
    p.g = 0.35;
    p.ell = 2.0;
    const auto h = crowqed::oracle::build_single_excitation_h(p);
    const auto hk = crowqed::oracle::k_basis_hamiltonian(h);
    const std::size_t n = h.grid.size();
    for (std::size_t i = 0; i < 2 * n; ++i) {
        for (std::size_t j = 0; j < 2 * n; ++j) {
            Complex expected = 0.0;
            if (i == j)
                expected = (i < n) ? crowqed::bare_dispersion(h.grid.values[i], p)
                                   : p.omega_a;
            else if (i < n && j == i + n)
                expected = p.g;
            else if (j < n && i == j + n)
                expected = p.g;
            CHECK(std::abs(hk(i, j) - expected) < 1e-12);
        }
    }
}

TEST_CASE("Lehmann photon GF: free propagator and the resonant doublet") {
    ModelParams p;
    p.n_sites = 4;
    p.omega_c = 1.4;
    p.omega_a = 0.9;
    p.g = 0.0;
    const double eps = 0.1;
    auto h = crowqed::oracle::build_single_excitation_h(p);
    auto eig = crowqed::oracle::diagonalize(h);
    for (double k : h.grid.values) {
        const double om_k = crowqed::bare_dispersion(k, p);
        for (double w : {0.2, 1.1, 2.7}) {
            const Complex expected = 1.0 / Complex(w - om_k, eps);
            CHECK(std::abs(crowqed::oracle::lehmann_photon_gf(h, eig, k, w, eps) - expected) <
                  1e-12);
        }
    }

    ModelParams jc;
    jc.n_sites = 1;
    jc.omega_c = 1.0;
    jc.omega_a = 1.0 + 2.0 * jc.j_hop;  // resonant with Omega_0 = omega_c + 2J
    jc.g = 0.25;
    h = crowqed::oracle::build_single_excitation_h(jc);
    eig = crowqed::oracle::diagonalize(h);
    const double om0 = crowqed::bare_dispersion(0.0, jc);
    for (double w : {om0 - 0.7, om0 - 0.1, om0 + 0.4}) {
        const Complex expected =
            0.5 / Complex(w - om0 - jc.g, eps) + 0.5 / Complex(w - om0 + jc.g, eps);
        CHECK(std::abs(crowqed::oracle::lehmann_photon_gf(h, eig, 0.0, w, eps) - expected) <
              1e-12);
    }
}

TEST_CASE("Lehmann GFs match the closed forms for random models") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        ModelParams p;
        p.n_sites = 8;
        p.omega_a = 1.0 + 2.0 * u(rng);
        p.omega_c = p.omega_a + 4.0 * u(rng) - 2.0;
        p.g = 0.05 + 0.25 * u(rng);
        const auto h = crowqed::oracle::build_single_excitation_h(p);
        const auto eig = crowqed::oracle::diagonalize(h);
        const double eps = 0.1;
        double worst = 0.0;
        for (double k : h.grid.values) {
            for (int i = 0; i <= 200; ++i) {
                const double w = eig.values.front() - 1.0 +
                                 (eig.values.back() - eig.values.front() + 2.0) * i / 200.0;
                worst = std::max(worst,
                                 std::abs(crowqed::oracle::lehmann_photon_gf(h, eig, k, w, eps) -
                                          crowqed::photon_gf(k, w, p, -1.0, eps)));
                worst = std::max(worst,
                                 std::abs(crowqed::oracle::lehmann_atom_gf(h, eig, k, w, eps) -
                                          crowqed::atom_gf(k, w, p, -1.0, eps)));
            }
        }
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("clustered spectral weights equal the branch amplitudes") {
    ModelParams p;
    p.n_sites = 8;
    p.omega_c = 2.0;
    p.omega_a = 1.5;
    p.g = 0.17;
    const auto h = crowqed::oracle::build_single_excitation_h(p);
    const auto eig = crowqed::oracle::diagonalize(h);
    for (double k : h.grid.values) {
        const auto poles = crowqed::poles_undamped(k, p, -1.0);
        const auto amp = crowqed::branch_amplitudes(k, p, -1.0);
        const auto photon_res =
            crowqed::oracle::lehmann_residues(eig, crowqed::oracle::photon_mode_vector(h, k));
        double total = 0.0;
        for (const auto& pr : photon_res) {
            total += pr.weight;
            if (std::abs(pr.energy - poles.omega_plus.real()) < 1e-8)
                CHECK(std::abs(pr.weight - amp.a.real()) < 1e-10);
            if (std::abs(pr.energy - poles.omega_minus.real()) < 1e-8)
                CHECK(std::abs(pr.weight - amp.b.real()) < 1e-10);
        }
        CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

        // atom weights carry the swapped amplitudes, scaled by |s_z| = 1
        const auto atom_res =
            crowqed::oracle::lehmann_residues(eig, crowqed::oracle::atom_mode_vector(h, k));
        for (const auto& pr : atom_res) {
            if (std::abs(pr.energy - poles.omega_plus.real()) < 1e-8)
                CHECK(std::abs(pr.weight - amp.b.real()) < 1e-10);
            if (std::abs(pr.energy - poles.omega_minus.real()) < 1e-8)
                CHECK(std::abs(pr.weight - amp.a.real()) < 1e-10);
        }
    }
}

TEST_CASE("spin algebra: all commutator identities at N = 2, 3, 8") {
    for (int n : {2, 3, 8}) {
        const auto report = crowqed::oracle::verify_spin_algebra(n, n * n, 1234 + n);
        CHECK(report.all_pass);
        for (const auto& check : report.checks) {
            INFO(check.name);
            CHECK(check.pass);
        }
    }
    CHECK_THROWS_AS(crowqed::oracle::verify_spin_algebra(13, 1, 0), std::invalid_argument);
}

TEST_CASE("spin algebra: k = 0 collective triple, k != 0 distinct") {
    const auto report = crowqed::oracle::verify_spin_algebra(4, 16, 7);
    bool saw_collective = false, saw_distinct = false;
    for (const auto& check : report.checks) {
        if (check.name == "k0_matches_collective_raising") {
            saw_collective = true;
            CHECK(check.residual < 1e-12);
        }
        if (check.name == "nonzero_k_differs_from_collective") {
            saw_distinct = true;
            CHECK(check.residual > 0.5);
            CHECK(check.pass);
        }
    }
    CHECK(saw_collective);
    CHECK(saw_distinct);
}

TEST_CASE("bosonic limit: vacuum exact, deviation halves from N = 4 to N = 8") {
    const auto dev_at = [](int n) {
        const auto report = crowqed::oracle::bosonic_limit_check(n, 1);
        double vacuum = 0.0, one_exc = 0.0;
        for (const auto& s : report.samples) {
            if (s.excitations == 0) vacuum = std::max(vacuum, std::abs(s.deviation));
            if (s.excitations == 1 && s.k_index == s.kp_index)
                one_exc = std::max(one_exc, std::abs(s.deviation));
        }
        CHECK(vacuum < 1e-13);
        return one_exc;
    };
    const double d4 = dev_at(4);
    const double d8 = dev_at(8);
    CHECK(d4 == doctest::Approx(2.0 / 4.0).epsilon(1e-12));
    CHECK(d8 == doctest::Approx(2.0 / 8.0).epsilon(1e-12));
    CHECK(d4 / d8 == doctest::Approx(2.0).epsilon(0.2));
}
