#include <doctest.h>

#include <cmath>
#include <random>

#include "crowqed/linalg.hpp"

using crowqed::Complex;
using crowqed::ComplexMatrix;

namespace {

ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = u(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            a(i, j) = Complex(u(rng), u(rng));
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

double eigen_residual(const ComplexMatrix& a, const crowqed::EigenSystem& eig) {
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex av = 0.0;
            for (std::size_t j = 0; j < n; ++j) av += a(i, j) * eig.vectors(j, m);
            worst = std::max(worst, std::abs(av - eig.values[m] * eig.vectors(i, m)));
        }
    }
    return worst;
}

double orthonormality_defect(const ComplexMatrix& v) {
    const ComplexMatrix g = matmul(adjoint(v), v);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j)
            worst = std::max(worst, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return worst;
}

}  // namespace

TEST_CASE("hermitian eigensystem: 2x2 closed form") {
    ComplexMatrix a(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = -1.0;
    a(0, 1) = Complex(0.3, -0.7);
    a(1, 0) = std::conj(a(0, 1));
    const auto eig = crowqed::hermitian_eigensystem(a);
    const double mid = 0.5 * (2.0 - 1.0);
    const double rad = std::sqrt(std::pow(0.5 * (2.0 + 1.0), 2) + std::norm(a(0, 1)));
    CHECK(eig.values[0] == doctest::Approx(mid - rad).epsilon(1e-13));
    CHECK(eig.values[1] == doctest::Approx(mid + rad).epsilon(1e-13));
    CHECK(eigen_residual(a, eig) < 1e-13);
}

TEST_CASE("hermitian eigensystem: diagonal and repeated eigenvalues") {
    ComplexMatrix a(4, 4);
    a(0, 0) = 1.0;
    a(1, 1) = 1.0;
    a(2, 2) = -3.0;
    a(3, 3) = 0.5;
    const auto eig = crowqed::hermitian_eigensystem(a);
    REQUIRE(eig.values.size() == 4);
    CHECK(eig.values[0] == doctest::Approx(-3.0));
    CHECK(eig.values[1] == doctest::Approx(0.5));
    CHECK(eig.values[2] == doctest::Approx(1.0));
    CHECK(eig.values[3] == doctest::Approx(1.0));
    CHECK(orthonormality_defect(eig.vectors) < 1e-13);
}

TEST_CASE("hermitian eigensystem: random matrices up to n = 64") {
    std::mt19937_64 rng(42);
    for (std::size_t n : {std::size_t{1}, std::size_t{2}, std::size_t{3}, std::size_t{5},
                          std::size_t{8}, std::size_t{16}, std::size_t{33}, std::size_t{64}}) {
        const ComplexMatrix a = random_hermitian(n, rng);
        const auto eig = crowqed::hermitian_eigensystem(a);
        const double scale = a.frobenius_norm() + 1.0;
        CHECK(eigen_residual(a, eig) < 1e-12 * scale);
        CHECK(orthonormality_defect(eig.vectors) < 1e-12);
        double trace = 0.0, esum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            trace += a(i, i).real();
            esum += eig.values[i];
        }
        CHECK(trace == doctest::Approx(esum).epsilon(1e-11));
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(eig.values[i] <= eig.values[i + 1]);
    }
}

TEST_CASE("lu solve: reproduces a known solution") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const std::size_t n = 24;
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = Complex(u(rng), u(rng));
        a(i, i) += 8.0;  // keep it comfortably nonsingular
    }
    ComplexMatrix x_true(n, 3);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 3; ++j) x_true(i, j) = Complex(u(rng), u(rng));
    ComplexMatrix b = matmul(a, x_true);
    crowqed::lu_solve_in_place(a, b);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            worst = std::max(worst, std::abs(b(i, j) - x_true(i, j)));
    CHECK(worst < 1e-12);
}

TEST_CASE("lu solve: singular matrix rejected") {
    ComplexMatrix a(3, 3);
    for (std::size_t j = 0; j < 3; ++j) {
        a(0, j) = static_cast<double>(j + 1);
        a(1, j) = 2.0 * (j + 1);  // row 1 = 2 * row 0
        a(2, j) = Complex(0.0, 1.0) * static_cast<double>(j);
    }
    ComplexMatrix b = ComplexMatrix::identity(3);
    CHECK_THROWS_AS(crowqed::lu_solve_in_place(a, b), crowqed::SingularMatrixError);
}
