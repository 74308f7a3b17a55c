#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "crowqed/model.hpp"

namespace crowqed {

/// Raised where the two branches coalesce (epsilon_k = 0); the branch
/// amplitudes diverge there and are deliberately not produced.
struct ExceptionalPointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PolePair {
    Complex omega_plus;   // branch connected to max(Omega_k, omega_a) as g -> 0
    Complex omega_minus;
    bool degenerate = false;  // coalesced double pole (exceptional point)
};

/// Poles of the photon/atom Green functions without damping:
///   omega_(+/-) = Omega_D +/- epsilon_k,
///   Omega_D   = (omega_a + Omega_k) / 2,
///   epsilon_k = sqrt((Omega_k - omega_a)^2 - 4 g^2 s_z) / 2   (principal root).
/// Both poles are real whenever the radicand is non-negative.
PolePair poles_undamped(double k, const ModelParams& params, double s_z);

/// Damped poles from the substitutions omega_c -> omega_c - i*kappa,
/// omega_a -> omega_a - i*gamma. Exact quadratic roots, so the trace and
/// determinant identities hold:
///   w+ + w- = omega_a + Omega_k - i (gamma + kappa)
///   w+ * w- = (omega_a - i gamma)(Omega_k - i kappa) + g^2 s_z.
/// The half-splitting carries the principal branch (Re >= 0); use
/// branch_curve for continuity tracking along a k path.
PolePair poles_damped(double k, const ModelParams& params, double s_z);

/// Damped poles at an explicitly chosen bare photon frequency instead of
/// Omega_k (e.g. exactly at band resonance omega_k = omega_a).
PolePair poles_at_bare_frequency(double omega_k, const ModelParams& params, double s_z);

struct BranchAmplitudes {
    Complex a;  // weight of the plus branch in the photon propagator
    Complex b;  // weight of the minus branch; a + b == 1 by construction
};

/// Residue weights A_k = (w+ - omega_a + i gamma)/(w+ - w-), B_k = 1 - A_k.
/// Throws ExceptionalPointError at a degenerate pole pair.
BranchAmplitudes branch_amplitudes(double k, const ModelParams& params, double s_z);

/// Per-k snapshot of the two-branch dispersion.
struct BranchDispersion {
    double k = 0.0;
    Complex omega_plus;
    Complex omega_minus;
    Complex amp_a;      // valid only when !degenerate
    Complex amp_b;
    double omega_d = 0.0;   // band centre (omega_a + Omega_k) / 2
    Complex epsilon_k;      // half-splitting, principal or continuity-tracked
    bool degenerate = false;
};

/// Single-k evaluation with the principal-branch convention.
BranchDispersion branch_point(double k, const ModelParams& params, double s_z);

/// Dispersion along an ordered k path. The first point uses the principal
/// branch; each subsequent point picks the square-root sign that keeps
/// omega_plus closest to its predecessor, which removes the artificial
/// jumps the principal branch produces when the radicand's argument
/// crosses the cut.
std::vector<BranchDispersion> branch_curve(const std::vector<double>& ks,
                                           const ModelParams& params, double s_z);

/// Retarded photon Green function at omega + i*eps (rational form):
///   (z - a) / ((z - a)(z - b) + g^2 s_z),  a = omega_a - i gamma, b = Omega_k - i kappa.
Complex photon_gf(double k, double omega, const ModelParams& params, double s_z, double eps);

/// Same function assembled from its pole expansion A/(z - w+) + B/(z - w-).
Complex photon_gf_pole_form(double k, double omega, const ModelParams& params, double s_z,
                            double eps);

/// Retarded atom Green function, rational form:
///   -s_z (z - b) / ((z - b)(z - a) + g^2 s_z).
Complex atom_gf(double k, double omega, const ModelParams& params, double s_z, double eps);

/// Pole expansion -s_z [B/(z - w+) + A/(z - w-)]; the amplitudes swap
/// relative to the photon propagator.
Complex atom_gf_pole_form(double k, double omega, const ModelParams& params, double s_z,
                          double eps);

struct GreenFunctionEvaluation {
    double k = 0.0;
    std::vector<double> omega_grid;
    double epsilon_broadening = 1e-3;
    std::vector<Complex> photon;
    std::vector<Complex> atom;
};

GreenFunctionEvaluation evaluate_gf(double k, const ModelParams& params, double s_z,
                                    double omega_min, double omega_max, int n_points,
                                    double eps);

/// Full coupled k-space Green-function system for an inhomogeneous
/// population profile: one dense N x N complex solve shared by all source
/// modes. Row index = response mode k', column index = source mode k. With
/// a homogeneous profile both matrices are diagonal and match the closed
/// forms above.
struct CoupledGfSolution {
    ComplexMatrix photon;
    ComplexMatrix atom;
};

CoupledGfSolution solve_coupled_gf(const KGrid& grid, const PopulationProfile& profile,
                                   const ModelParams& params, Complex omega,
                                   int max_sites = 256);

/// Retarded time response by residue summation:
///   G(t) = -i theta(t) [A exp(-i w+ t) + B exp(-i w- t)].
/// Custom weights replace the computed amplitudes when provided (e.g. to
/// isolate a single branch).
std::vector<Complex> time_response(double k, const ModelParams& params, double s_z,
                                   const std::vector<double>& t_grid,
                                   std::optional<BranchAmplitudes> weights = std::nullopt);

}  // namespace crowqed
