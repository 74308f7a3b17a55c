#include "crowqed/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace crowqed {

void ModelParams::validate() const {
    if (n_sites < 1) throw std::invalid_argument("n_sites must be >= 1");
    if (n_atoms < 1) throw std::invalid_argument("n_atoms must be >= 1");
    if (!(j_hop > 0.0)) throw std::invalid_argument("j_hop must be > 0");
    if (!(ell > 0.0)) throw std::invalid_argument("ell must be > 0");
    if (g < 0.0) throw std::invalid_argument("g must be >= 0");
    if (kappa < 0.0) throw std::invalid_argument("kappa must be >= 0");
    if (gamma < 0.0) throw std::invalid_argument("gamma must be >= 0");
    if (!std::isfinite(omega_c) || !std::isfinite(omega_a))
        throw std::invalid_argument("omega_c/omega_a must be finite");
}

Complex effective_coupling(const RamanParams& raman) {
    if (raman.detuning_raman == 0.0)
        throw std::invalid_argument("effective_coupling: zero Raman detuning");
    return raman.omega_rabi * std::conj(raman.omega_rabi_c) / raman.detuning_raman;
}

KGrid build_k_grid(const ModelParams& params) {
    params.validate();
    KGrid grid;
    grid.ell = params.ell;
    grid.values.resize(static_cast<std::size_t>(params.n_sites));
    const double step = 2.0 * std::numbers::pi / (params.ell * params.n_sites);
    for (int n = 0; n < params.n_sites; ++n)
        grid.values[static_cast<std::size_t>(n)] = step * n;
    return grid;
}

double bare_dispersion(double k, const ModelParams& params) {
    return params.omega_c + 2.0 * params.j_hop * std::cos(k * params.ell);
}

PopulationProfile::PopulationProfile(std::vector<double> per_site, int n_atoms)
    : per_site_(std::move(per_site)), n_atoms_(n_atoms) {
    if (n_atoms_ < 1) throw std::invalid_argument("PopulationProfile: n_atoms must be >= 1");
    if (per_site_.empty()) throw std::invalid_argument("PopulationProfile: empty profile");
    const double bound = static_cast<double>(n_atoms_);
    for (double s : per_site_) {
        if (!(s >= -bound && s <= bound))
            throw std::invalid_argument("PopulationProfile: site inversion outside [-n, n]: " +
                                        std::to_string(s));
    }
}

PopulationProfile PopulationProfile::uniform(int n_sites, double value, int n_atoms) {
    if (n_sites < 1) throw std::invalid_argument("PopulationProfile: n_sites must be >= 1");
    return PopulationProfile(std::vector<double>(static_cast<std::size_t>(n_sites), value),
                             n_atoms);
}

PopulationProfile PopulationProfile::with_defect(int n_sites, int site, double value,
                                                 int n_atoms) {
    if (n_sites < 1) throw std::invalid_argument("PopulationProfile: n_sites must be >= 1");
    if (site < 0 || site >= n_sites)
        throw std::invalid_argument("PopulationProfile: defect site out of range");
    std::vector<double> s(static_cast<std::size_t>(n_sites), -static_cast<double>(n_atoms));
    s[static_cast<std::size_t>(site)] = value;
    return PopulationProfile(std::move(s), n_atoms);
}

double PopulationProfile::mean_inversion() const {
    double sum = 0.0;
    for (double s : per_site_) sum += s;
    return sum / static_cast<double>(per_site_.size());
}

double mean_inversion(const PopulationProfile& profile) { return profile.mean_inversion(); }

ComplexMatrix kspace_inversion_matrix(const PopulationProfile& profile, const KGrid& grid) {
    const std::size_t n = grid.size();
    if (profile.size() != n)
        throw std::invalid_argument("kspace_inversion_matrix: profile/grid length mismatch");
    ComplexMatrix z(n, n);
    const double mean = profile.mean_inversion();
    // fill the upper triangle and mirror so Hermiticity is exact
    for (std::size_t i = 0; i < n; ++i) {
        z(i, i) = mean;
        for (std::size_t j = i + 1; j < n; ++j) {
            Complex acc = 0.0;
            const double dk = grid.values[j] - grid.values[i];
            for (std::size_t a = 0; a < n; ++a)
                acc += std::polar(profile.per_site()[a], -dk * grid.ell * static_cast<double>(a));
            acc /= static_cast<double>(n);
            z(i, j) = acc;
            z(j, i) = std::conj(acc);
        }
    }
    return z;
}

}  // namespace crowqed
