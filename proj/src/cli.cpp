#include "crowqed/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "crowqed/oracle.hpp"
#include "crowqed/output.hpp"
#include "crowqed/spectral.hpp"
#include "crowqed/susceptibility.hpp"
#include "crowqed/transport.hpp"

namespace crowqed::cli {

using io::Cell;
using io::CsvTable;
using io::IoError;
using io::OutputFormat;
using io::RunConfig;
using io::ValidationError;
using nlohmann::json;

namespace {

double band_center_k(const ModelParams& p) { return std::numbers::pi / (2.0 * p.ell); }

double single_k(const RunConfig& c) {
    // gf/chi default to the band centre when no explicit k is given
    if (c.k_sel.kind == io::KSelection::Kind::all) return band_center_k(c.params);
    return c.k_sel.resolve(c.params).front();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    const double step = (hi - lo) / (n - 1);
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + step * i;
    return v;
}

json config_json(const RunConfig& c) {
    json j;
    j["command"] = io::command_name(c.command);
    j["omega_c"] = c.params.omega_c;
    j["omega_a"] = c.params.omega_a;
    j["j_hop"] = c.params.j_hop;
    j["g"] = c.params.g;
    j["ell"] = c.params.ell;
    j["n_sites"] = c.params.n_sites;
    j["n_atoms"] = c.params.n_atoms;
    j["kappa"] = c.params.kappa;
    j["gamma"] = c.params.gamma;
    j["eps"] = c.eps;
    j["format"] = io::format_name(c.format);
    return j;
}

json table_json(const RunConfig& c, const CsvTable& table) {
    json rows = json::array();
    for (const auto& row : table.rows()) {
        json r = json::array();
        for (const auto& cell : row)
            std::visit([&r](const auto& v) { r.push_back(v); }, cell);
        rows.push_back(std::move(r));
    }
    json j;
    j["config"] = config_json(c);
    j["results"] = {{"columns", table.header()}, {"rows", rows}};
    j["version"] = "1.0.0";
    return j;
}

void emit_table(const RunConfig& c, const CsvTable& table) {
    if (c.format == OutputFormat::csv) {
        io::write_text_output(c.out_path, table.to_string());
    } else if (c.format == OutputFormat::json) {
        io::write_text_output(c.out_path, table_json(c, table).dump(2) + "\n");
    } else {
        throw ValidationError("svg emission must go through a plot builder");
    }
}

void emit_object(const RunConfig& c, const json& results, const CsvTable& csv_fallback) {
    if (c.format == OutputFormat::json) {
        json j;
        j["config"] = config_json(c);
        j["results"] = results;
        j["version"] = "1.0.0";
        io::write_text_output(c.out_path, j.dump(2) + "\n");
    } else {
        io::write_text_output(c.out_path, csv_fallback.to_string());
    }
}

template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
    const int n_threads =
        std::max(1, std::min<int>(workers, static_cast<int>(count)));
    if (n_threads == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!error) error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------

int run_bands(const RunConfig& c) {
    const double s_z = c.profile.materialize(c.params).mean_inversion();

    if (c.g_min && c.g_max) {
        // coupling-axis mode at a fixed k (band centre unless overridden)
        if (!(*c.g_max > *c.g_min)) throw ValidationError("g_max must exceed g_min");
        const double k = single_k(c);
        CsvTable table({"g", "re_omega_plus", "im_omega_plus", "re_omega_minus",
                        "im_omega_minus", "amp_a_re", "amp_a_im", "amp_b_re", "amp_b_im"});
        std::vector<double> gs = linspace(*c.g_min, *c.g_max, c.g_points);
        std::vector<double> re_p, re_m;
        for (double g : gs) {
            ModelParams p = c.params;
            p.g = g;
            const BranchDispersion bd = branch_point(k, p, s_z);
            table.add_row({g, bd.omega_plus.real(), bd.omega_plus.imag(),
                           bd.omega_minus.real(), bd.omega_minus.imag(), bd.amp_a.real(),
                           bd.amp_a.imag(), bd.amp_b.real(), bd.amp_b.imag()});
            re_p.push_back(bd.omega_plus.real());
            re_m.push_back(bd.omega_minus.real());
        }
        if (c.format == OutputFormat::svg) {
            io::LinePlot plot;
            plot.title = "polariton branches at k = pi/(2 ell)";
            plot.x_label = "g [J]";
            plot.y_label = "Re omega [J]";
            plot.series.push_back({"omega_plus", gs, re_p, "#1f3b73", false});
            plot.series.push_back({"omega_minus", gs, re_m, "#a63232", true});
            io::write_text_output(c.out_path, io::render_svg(plot));
            return 0;
        }
        emit_table(c, table);
        return 0;
    }

    // k-axis mode: continuity-tracked dispersion across the zone
    std::vector<double> ks;
    if (c.k_sel.kind == io::KSelection::Kind::all) {
        ks = linspace(0.0, 2.0 * std::numbers::pi / c.params.ell, c.k_points + 1);
        ks.pop_back();  // periodic endpoint
    } else {
        ks = c.k_sel.resolve(c.params);
    }
    const auto curve = branch_curve(ks, c.params, s_z);
    CsvTable table({"k", "re_omega_plus", "im_omega_plus", "re_omega_minus", "im_omega_minus",
                    "amp_a_re", "amp_a_im", "amp_b_re", "amp_b_im"});
    std::vector<double> re_p, re_m;
    for (const auto& bd : curve) {
        table.add_row({bd.k, bd.omega_plus.real(), bd.omega_plus.imag(),
                       bd.omega_minus.real(), bd.omega_minus.imag(), bd.amp_a.real(),
                       bd.amp_a.imag(), bd.amp_b.real(), bd.amp_b.imag()});
        re_p.push_back(bd.omega_plus.real());
        re_m.push_back(bd.omega_minus.real());
    }
    if (c.format == OutputFormat::svg) {
        io::LinePlot plot;
        plot.title = "polariton dispersion";
        plot.x_label = "k [1/ell]";
        plot.y_label = "Re omega [J]";
        plot.series.push_back({"omega_plus", ks, re_p, "#1f3b73", false});
        plot.series.push_back({"omega_minus", ks, re_m, "#a63232", true});
        io::write_text_output(c.out_path, io::render_svg(plot));
        return 0;
    }
    emit_table(c, table);
    return 0;
}

int run_gf(const RunConfig& c) {
    const double s_z = c.profile.materialize(c.params).mean_inversion();
    const double k = single_k(c);

    if (c.time_domain) {
        if (!(c.t_max > 0.0)) throw ValidationError("t_max must be > 0");
        const std::vector<double> ts = linspace(0.0, c.t_max, c.t_points);
        const auto resp = time_response(k, c.params, s_z, ts);
        CsvTable table({"t", "re", "im", "abs"});
        for (std::size_t i = 0; i < ts.size(); ++i)
            table.add_row({ts[i], resp[i].real(), resp[i].imag(), std::abs(resp[i])});
        emit_table(c, table);
        return 0;
    }

    double wmin, wmax;
    if (c.omega_min && c.omega_max) {
        wmin = *c.omega_min;
        wmax = *c.omega_max;
    } else {
        const double om_k = bare_dispersion(k, c.params);
        const double span = 2.0 * c.params.j_hop + 2.0 * c.params.g *
                                std::sqrt(std::abs(s_z) + 1.0) + 1.0;
        wmin = std::min(c.params.omega_a, om_k) - span;
        wmax = std::max(c.params.omega_a, om_k) + span;
    }
    const auto ev = evaluate_gf(k, c.params, s_z, wmin, wmax, c.omega_points, c.eps);
    CsvTable table({"omega", "re_photon", "im_photon", "re_atom", "im_atom"});
    for (std::size_t i = 0; i < ev.omega_grid.size(); ++i)
        table.add_row({ev.omega_grid[i], ev.photon[i].real(), ev.photon[i].imag(),
                       ev.atom[i].real(), ev.atom[i].imag()});
    if (c.format == OutputFormat::svg) {
        io::LinePlot plot;
        plot.title = "retarded Green functions";
        plot.x_label = "omega [J]";
        plot.y_label = "Re / Im";
        std::vector<double> rp(ev.photon.size()), ip(ev.photon.size());
        for (std::size_t i = 0; i < ev.photon.size(); ++i) {
            rp[i] = ev.photon[i].real();
            ip[i] = ev.photon[i].imag();
        }
        plot.series.push_back({"re_photon", ev.omega_grid, rp, "#1f3b73", false});
        plot.series.push_back({"im_photon", ev.omega_grid, ip, "#a63232", true});
        io::write_text_output(c.out_path, io::render_svg(plot));
        return 0;
    }
    emit_table(c, table);
    return 0;
}

int run_transport(const RunConfig& c) {
    const double s_z = c.profile.materialize(c.params).mean_inversion();
    const std::vector<double> ks = c.k_sel.resolve(c.params);
    CsvTable table({"k", "v_plus", "v_minus", "bandwidth_plus", "bandwidth_minus",
                    "threshold_sz", "gain", "gain_approx", "lasing"});
    for (double k : ks) {
        const TransportReport r = transport_report(k, c.params, s_z);
        table.add_row({r.k, r.v_plus, r.v_minus, r.bandwidth_plus, r.bandwidth_minus,
                       r.threshold_sz, r.gain, r.gain_approx, r.lasing});
    }
    emit_table(c, table);
    return 0;
}

int run_chi(const RunConfig& c) {
    if (!(c.params.gamma > 0.0)) throw ValidationError("chi requires gamma > 0");
    const double k = single_k(c);
    const auto curve = chi_sweep(k, c.params, c.delta_min, c.delta_max, c.delta_points);
    CsvTable table({"delta", "chi1", "chi2"});
    for (std::size_t i = 0; i < curve.delta_grid.size(); ++i)
        table.add_row({curve.delta_grid[i], curve.chi1[i], curve.chi2[i]});
    if (c.format == OutputFormat::svg) {
        io::LinePlot plot;
        plot.title = "linear susceptibility";
        plot.x_label = "delta [gamma]";
        plot.y_label = "chi";
        plot.series.push_back({"chi1", curve.delta_grid, curve.chi1, "#1f3b73", false});
        plot.series.push_back({"chi2", curve.delta_grid, curve.chi2, "#a63232", true});
        io::write_text_output(c.out_path, io::render_svg(plot));
        return 0;
    }
    emit_table(c, table);
    return 0;
}

int run_threshold(const RunConfig& c) {
    if (!(c.params.g > 0.0)) throw ValidationError("threshold requires g > 0");
    const double t_weak = laser_threshold(c.params);
    const double t_exact = exact_threshold_resonant(c.params);
    json results;
    results["threshold_sz"] = t_weak;
    results["threshold_sz_exact_resonant"] = t_exact;
    CsvTable table({"threshold_sz", "threshold_sz_exact_resonant"});
    table.add_row({t_weak, t_exact});
    emit_object(c, results, table);
    return 0;
}

int run_oracle_check(const RunConfig& c) {
    ModelParams p = c.params;
    p.n_sites = c.oracle_n;
    p.n_atoms = 1;
    p.kappa = 0.0;
    p.gamma = 0.0;

    json checks = json::array();
    bool all_pass = true;
    const auto push = [&](const std::string& name, double residual, bool pass) {
        checks.push_back({{"name", name}, {"max_residual", residual}, {"pass", pass}});
        all_pass = all_pass && pass;
    };

    const auto h = oracle::build_single_excitation_h(p);
    const auto eig = oracle::diagonalize(h);

    // eigenvalues against the analytic two-branch poles at s_z = -1
    std::vector<double> analytic;
    for (double k : h.grid.values) {
        const PolePair poles = poles_undamped(k, p, -1.0);
        analytic.push_back(poles.omega_plus.real());
        analytic.push_back(poles.omega_minus.real());
    }
    std::sort(analytic.begin(), analytic.end());
    double dev = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i)
        dev = std::max(dev, std::abs(analytic[i] - eig.values[i]));
    push("eigenvalues_match_pole_branches", dev, dev < 1e-10);

    // Lehmann Green functions against the closed forms
    double gf_dev = 0.0;
    const double eps = 0.1;
    for (double k : h.grid.values) {
        for (double w : linspace(analytic.front() - 1.0, analytic.back() + 1.0, 101)) {
            gf_dev = std::max(gf_dev, std::abs(oracle::lehmann_photon_gf(h, eig, k, w, eps) -
                                               photon_gf(k, w, p, -1.0, eps)));
            gf_dev = std::max(gf_dev, std::abs(oracle::lehmann_atom_gf(h, eig, k, w, eps) -
                                               atom_gf(k, w, p, -1.0, eps)));
        }
    }
    push("lehmann_gf_matches_closed_form", gf_dev, gf_dev < 1e-10);

    // clustered spectral weights against the branch amplitudes
    double res_dev = 0.0;
    for (double k : h.grid.values) {
        const auto residues = oracle::lehmann_residues(eig, oracle::photon_mode_vector(h, k));
        const PolePair poles = poles_undamped(k, p, -1.0);
        const BranchAmplitudes amp = branch_amplitudes(k, p, -1.0);
        for (const auto& pr : residues) {
            if (std::abs(pr.energy - poles.omega_plus.real()) < 1e-6)
                res_dev = std::max(res_dev, std::abs(pr.weight - amp.a.real()));
            else if (std::abs(pr.energy - poles.omega_minus.real()) < 1e-6)
                res_dev = std::max(res_dev, std::abs(pr.weight - amp.b.real()));
        }
    }
    push("spectral_weights_match_amplitudes", res_dev, res_dev < 1e-10);

    const int algebra_n = std::min(c.oracle_n, 12);
    const auto algebra = oracle::verify_spin_algebra(algebra_n, 20, 0x5eedull);
    for (const auto& check : algebra.checks)
        push("algebra_" + check.name, check.residual, check.pass);

    const auto boson = oracle::bosonic_limit_check(algebra_n, 1);
    double vac_dev = 0.0;
    for (const auto& s : boson.samples)
        if (s.excitations == 0) vac_dev = std::max(vac_dev, std::abs(s.deviation));
    push("bosonic_commutator_exact_on_vacuum", vac_dev, vac_dev < 1e-12);

    json results;
    results["n_sites"] = c.oracle_n;
    results["checks"] = checks;
    results["all_pass"] = all_pass;

    CsvTable table({"name", "max_residual", "pass"});
    for (const auto& check : checks)
        table.add_row({check["name"].get<std::string>(),
                       check["max_residual"].get<double>(), check["pass"].get<bool>()});
    emit_object(c, results, table);
    return 0;
}

int run_sweep(const RunConfig& c) {
    const std::vector<double> axis = linspace(c.sweep_min, c.sweep_max, c.sweep_points);
    const std::vector<double> ks = c.k_sel.resolve(c.params);
    const double base_sz = c.profile.materialize(c.params).mean_inversion();

    struct Row {
        double value = 0.0;
        double k = 0.0;
        BranchDispersion bd;
        TransportReport tr;
    };
    std::vector<Row> rows(axis.size() * ks.size());

    parallel_for(axis.size(), effective_workers(c.workers), [&](std::size_t i) {
        ModelParams p = c.params;
        double s_z = base_sz;
        const double v = axis[i];
        if (c.sweep_param == "omega_c") p.omega_c = v;
        else if (c.sweep_param == "omega_a") p.omega_a = v;
        else if (c.sweep_param == "delta") p.omega_a = p.omega_c - v;
        else if (c.sweep_param == "j_hop") p.j_hop = v;
        else if (c.sweep_param == "g") p.g = v;
        else if (c.sweep_param == "ell") p.ell = v;
        else if (c.sweep_param == "kappa") p.kappa = v;
        else if (c.sweep_param == "gamma") p.gamma = v;
        else if (c.sweep_param == "s_z") s_z = v;
        p.validate();
        for (std::size_t j = 0; j < ks.size(); ++j) {
            Row& row = rows[i * ks.size() + j];
            row.value = v;
            row.k = ks[j];
            row.bd = branch_point(ks[j], p, s_z);
            row.tr = transport_report(ks[j], p, s_z);
        }
    });

    CsvTable table({"sweep_param", "sweep_value", "k", "re_omega_plus", "im_omega_plus",
                    "re_omega_minus", "im_omega_minus", "amp_a_re", "amp_a_im", "amp_b_re",
                    "amp_b_im", "v_plus", "v_minus", "bandwidth_plus", "bandwidth_minus",
                    "gain", "gain_approx", "lasing", "threshold_sz"});
    for (const Row& r : rows) {
        table.add_row({c.sweep_param, r.value, r.k, r.bd.omega_plus.real(),
                       r.bd.omega_plus.imag(), r.bd.omega_minus.real(),
                       r.bd.omega_minus.imag(), r.bd.amp_a.real(), r.bd.amp_a.imag(),
                       r.bd.amp_b.real(), r.bd.amp_b.imag(), r.tr.v_plus, r.tr.v_minus,
                       r.tr.bandwidth_plus, r.tr.bandwidth_minus, r.tr.gain, r.tr.gain_approx,
                       r.tr.lasing, r.tr.threshold_sz});
    }
    emit_table(c, table);
    return 0;
}

}  // namespace

int effective_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("CROWQED_WORKERS")) {
        try {
            const int v = std::stoi(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
            // fall through to hardware default
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int run(const RunConfig& config) {
    config.validate();
    switch (config.command) {
        case io::Command::bands: return run_bands(config);
        case io::Command::gf: return run_gf(config);
        case io::Command::transport: return run_transport(config);
        case io::Command::chi: return run_chi(config);
        case io::Command::threshold: return run_threshold(config);
        case io::Command::oracle_check: return run_oracle_check(config);
        case io::Command::sweep: return run_sweep(config);
    }
    throw ValidationError("unreachable command");
}

}  // namespace crowqed::cli
