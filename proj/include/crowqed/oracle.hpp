#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "crowqed/model.hpp"

namespace crowqed::oracle {

/// Exact Hamiltonian of the one-excitation sector over the site basis
/// { a_alpha^dag |0, G>  (alpha = 0..N-1),  |0, E_alpha> }, with energies
/// measured relative to the all-ground reference. Built from the site-local
/// operators only; the k-space block structure emerges by transformation and
/// is checked, not assumed.
struct SingleExcitationHamiltonian {
    ModelParams params;
    KGrid grid;
    ComplexMatrix site_basis;  // 2N x 2N Hermitian
};

/// Requires n_atoms == 1 and kappa == gamma == 0 (Hermitian sector).
SingleExcitationHamiltonian build_single_excitation_h(const ModelParams& params);

/// Unitary transform of the site-basis Hamiltonian into the mode basis
/// whose photon and atom columns carry the same per-site phase pattern.
/// For the translation-invariant chain this is block structured:
/// photon block diag(Omega_k), atom block omega_a * I, coupling g * I.
ComplexMatrix k_basis_hamiltonian(const SingleExcitationHamiltonian& h);

EigenSystem diagonalize(const SingleExcitationHamiltonian& h);

/// Sector vectors a_k^dag |G> and sigma_k^+ |G> over the site basis.
std::vector<Complex> photon_mode_vector(const SingleExcitationHamiltonian& h, double k);
std::vector<Complex> atom_mode_vector(const SingleExcitationHamiltonian& h, double k);

/// Lehmann sum G(omega) = sum_m |<m|v>|^2 / (omega - E_m + i eps).
Complex lehmann_gf(const EigenSystem& eig, const std::vector<Complex>& mode_vector,
                   double omega, double eps);

Complex lehmann_photon_gf(const SingleExcitationHamiltonian& h, const EigenSystem& eig,
                          double k, double omega, double eps);
Complex lehmann_atom_gf(const SingleExcitationHamiltonian& h, const EigenSystem& eig, double k,
                        double omega, double eps);

/// Spectral weight grouped by (near-)degenerate eigenvalue. Degenerate
/// clusters are summed, which makes the weights basis independent.
struct PoleResidue {
    double energy = 0.0;
    double weight = 0.0;
};

std::vector<PoleResidue> lehmann_residues(const EigenSystem& eig,
                                          const std::vector<Complex>& mode_vector,
                                          double cluster_tol = 1e-6,
                                          double weight_floor = 1e-14);

// ---------------------------------------------------------------------------
// Quasi-spin commutator algebra on the full 2^N product space
// ---------------------------------------------------------------------------

struct AlgebraCheck {
    std::string name;
    double residual = 0.0;  // max matrix-entry magnitude of the defect
    bool pass = false;
};

struct AlgebraReport {
    int n_sites = 0;
    double tolerance = 1e-12;
    std::vector<AlgebraCheck> checks;
    bool all_pass = false;
};

/// Verifies, as matrix identities over the full 2^N space:
///   [sigma_k^+, sigma_k'^-] = sigma^z_{kk'}
///   [sigma_k^+, sigma_k^-]  = sigma^z
///   [sigma^z, sigma_k^+]    = (2/N) sigma_k^+
///   [sigma^z, sigma_k^-]    = -(2/N) sigma_k^-
/// plus the collective-operator statements: sqrt(N) sigma_0^+ coincides with
/// the total-spin raising operator (only at k = 0), and the cross-mode
/// commutator sigma^z_{kk'} is not a multiple of sigma^z for k != k'.
/// Rejects n_sites > 12 (dense 2^N workspace).
AlgebraReport verify_spin_algebra(int n_sites, int trials, std::uint64_t seed,
                                  double ell = 1.0);

struct BosonicSample {
    int excitations = 0;
    std::size_t k_index = 0;
    std::size_t kp_index = 0;
    Complex deviation;  // <psi| [sigma_k^-, sigma_k'^+] |psi> - delta_{kk'}
};

struct BosonicReport {
    int n_sites = 0;
    std::vector<BosonicSample> samples;
};

/// Measures how far the spin-wave operators are from bosonic on
/// m-excitation states (sigma_{k0}^+)^m |G>, m = 0..max_excitations.
/// The k = k' deviation is -2m/N, so it halves when N doubles.
BosonicReport bosonic_limit_check(int n_sites, int max_excitations, double ell = 1.0);

}  // namespace crowqed::oracle
