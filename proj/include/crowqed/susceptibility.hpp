#pragma once

#include <array>
#include <vector>

#include "crowqed/model.hpp"

namespace crowqed {

/// Slowly varying photon / collective-atom amplitudes in the frame
/// rotating at the bare photon frequency Omega_k.
struct ModeAmplitudes {
    Complex a_tilde;
    Complex b_tilde;
    double t = 0.0;
};

/// Generator of the rotating-frame mode equations, row-major 2x2:
///   d/dt (a, b) = M (a, b),
///   M = [ -kappa,            -i g sqrt(n) ]
///       [ -i g sqrt(n), -gamma - i (omega_a - Omega_k) ].
std::array<Complex, 4> mode_generator(double k, const ModelParams& params);

/// Trajectory from an adaptive embedded Runge-Kutta pair (rel tol 1e-10).
/// t_grid must start at initial.t and be non-decreasing.
std::vector<ModeAmplitudes> evolve_mode(double k, const ModelParams& params,
                                        const ModeAmplitudes& initial,
                                        const std::vector<double>& t_grid);

/// Same trajectory through the closed-form 2x2 matrix exponential.
std::vector<ModeAmplitudes> evolve_mode_closed_form(double k, const ModelParams& params,
                                                    const ModeAmplitudes& initial,
                                                    const std::vector<double>& t_grid);

/// Steady-state polarization-to-field ratio
///   <b>/<a> = -i g sqrt(n) / (gamma - i x),  x = delta + 2 J cos(k ell).
/// Rejected when gamma = 0 exactly on resonance (no steady state).
Complex steady_state_ratio(double k, const ModelParams& params);

/// k-resolved linear susceptibility
///   chi_k = 2 i g^2 n / (omega_c [gamma - i x]),  x = delta + 2 J cos(k ell),
/// evaluated at an explicit detuning delta (params.omega_a is ignored here).
/// Requires gamma > 0.
Complex chi(double k, double delta, const ModelParams& params);

/// The separated dispersion part -x * 2 g^2 n / (omega_c [gamma^2 + x^2]).
double chi_dispersive(double k, double delta, const ModelParams& params);

/// The separated absorption part 2 g^2 n gamma / (omega_c [gamma^2 + x^2]):
/// a Lorentzian in x with half width gamma and peak 2 g^2 n / (omega_c gamma).
double chi_absorptive(double k, double delta, const ModelParams& params);

struct SusceptibilityCurve {
    double k = 0.0;
    std::vector<double> delta_grid;
    std::vector<double> chi1;  // dispersion
    std::vector<double> chi2;  // absorption
};

SusceptibilityCurve chi_sweep(double k, const ModelParams& params, double delta_min,
                              double delta_max, int n_points);

}  // namespace crowqed
