#pragma once

#include <complex>
#include <vector>

#include "crowqed/linalg.hpp"

namespace crowqed {

/// Physical parameters of the atom-doped cavity array. Every frequency and
/// rate is dimensionless, measured in units of the inter-cavity hopping
/// (j_hop = 1 by default); lengths are in units of the lattice constant
/// (ell = 1 by default).
struct ModelParams {
    double omega_c = 1.0;  // cavity mode frequency
    double omega_a = 1.0;  // atomic level spacing
    double j_hop = 1.0;    // inter-cavity photon hopping J
    double g = 0.1;        // atom-photon coupling
    double ell = 1.0;      // lattice constant
    int n_sites = 8;       // number of cavities N
    int n_atoms = 1;       // atoms per cavity n
    double kappa = 0.0;    // cavity amplitude decay rate
    double gamma = 0.0;    // atomic amplitude decay rate

    /// Photon-atom detuning delta = omega_c - omega_a.
    double delta() const { return omega_c - omega_a; }

    /// Throws std::invalid_argument when any constraint is violated.
    void validate() const;
};

/// Raman drive parameters of the underlying three-level scheme.
struct RamanParams {
    double omega_rabi = 0.0;         // quantized-mode Rabi frequency
    Complex omega_rabi_c = 0.0;      // classical control Rabi frequency
    double detuning_raman = 0.0;     // common detuning, must be nonzero
};

/// Effective two-level coupling g = Omega * conj(Omega_c) / Delta obtained
/// by adiabatic elimination of the auxiliary level.
Complex effective_coupling(const RamanParams& raman);

/// Brillouin-zone grid k_n = 2*pi*n / (ell*N), n = 0..N-1.
struct KGrid {
    std::vector<double> values;
    double ell = 1.0;

    std::size_t size() const { return values.size(); }
};

KGrid build_k_grid(const ModelParams& params);

/// Bare photonic dispersion Omega_k = omega_c + 2 J cos(k ell).
double bare_dispersion(double k, const ModelParams& params);

/// Static per-site population inversion profile. For n_atoms > 1 each entry
/// stores the collective per-site value directly. Immutable input data: the
/// mean-field treatment keeps the populations frozen.
class PopulationProfile {
public:
    PopulationProfile(std::vector<double> per_site, int n_atoms);

    static PopulationProfile uniform(int n_sites, double value, int n_atoms);
    /// All sites at `background` except `site` at `value`. Background
    /// defaults to -n_atoms (all atoms in the ground state).
    static PopulationProfile with_defect(int n_sites, int site, double value, int n_atoms);

    const std::vector<double>& per_site() const { return per_site_; }
    int n_atoms() const { return n_atoms_; }
    std::size_t size() const { return per_site_.size(); }

    double mean_inversion() const;

private:
    std::vector<double> per_site_;
    int n_atoms_ = 1;
};

double mean_inversion(const PopulationProfile& profile);

/// k-space inversion matrix Z[i][j] = (1/N) sum_a exp(-i (k_j - k_i) ell a) s_a.
/// Hermitian by construction; every diagonal entry equals the mean inversion.
ComplexMatrix kspace_inversion_matrix(const PopulationProfile& profile, const KGrid& grid);

}  // namespace crowqed
