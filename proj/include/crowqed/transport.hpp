#pragma once

#include "crowqed/spectral.hpp"

namespace crowqed {

enum class Branch { plus, minus };

/// Group velocity of the chosen polariton branch (units of J*ell):
///   v = J ell sin(k ell) [1 +/- D_k / (2 F)],
///   D_k = delta + 2 J cos(k ell),  F = sqrt(D_k^2 / 4 - g^2 s_z).
/// Equals -d(omega_branch)/dk; positive on (0, pi/ell) for s_z < 0.
/// Throws std::domain_error when the splitting is degenerate or complex.
double group_velocity(double k, Branch branch, const ModelParams& params, double s_z);

struct BandwidthResult {
    /// |F(s,0) - F(s,pi/2 ell)|: the F-difference form of the half-band
    /// width. It omits the half bare-band drop J present in the actual
    /// frequency extent, which is why both numbers are reported.
    double formula_halfband = 0.0;
    /// max - min of Re omega_branch over a dense k grid spanning the
    /// band-edge-to-band-centre range [0, pi/(2 ell)].
    double numeric_extent = 0.0;
    /// True for s_z < 0 (no inversion), where both branches stay real and
    /// the half-band formula applies.
    bool inversion_free_regime = true;
};

BandwidthResult bandwidth(Branch branch, const ModelParams& params, double s_z,
                          int n_samples = 2001);

/// Population-inversion threshold gamma*kappa / (2 g^2) obtained from the
/// weak-coupling expansion of the damped eigenfrequencies. Throws for g = 0.
double laser_threshold(const ModelParams& params);

/// Inversion at which the exact Im omega_plus crosses zero at band
/// resonance (Omega_k = omega_a): gamma*kappa / g^2. The factor-2 gap from
/// laser_threshold() is inherent to the weak-coupling expansion, which
/// drops kappa from the intermediate rate gamma - kappa.
double exact_threshold_resonant(const ModelParams& params);

struct GainReport {
    double approx = 0.0;         // g^2 s_z / gamma - kappa / 2
    double exact_im_plus = 0.0;  // Im omega_plus at band resonance
    bool within_validity = true; // 4 g^2 |s_z| <= 0.1 gamma^2 and gamma >= 10 kappa
};

/// Gain of the plus branch at band resonance: the weak-coupling formula and
/// the exact pole imaginary part side by side.
GainReport gain_rate(const ModelParams& params, double s_z);

struct TransportReport {
    double k = 0.0;
    double v_plus = 0.0;
    double v_minus = 0.0;
    double bandwidth_plus = 0.0;    // numeric extents
    double bandwidth_minus = 0.0;
    double threshold_sz = 0.0;
    double gain = 0.0;              // exact Im omega_plus at this k
    double gain_approx = 0.0;
    bool lasing = false;            // gain > 0
    Complex omega_plus;
    Complex omega_minus;
    Complex amp_a;
    Complex amp_b;
    bool degenerate = false;
};

TransportReport transport_report(double k, const ModelParams& params, double s_z);

}  // namespace crowqed
