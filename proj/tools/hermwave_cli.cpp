// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: build wavelet tables, generate sample paths, run
// validation suites, export generalized-FARIMA windows.
//
// Exit codes: 0 ok, 1 suite failure, 2 configuration error, 3 budget error.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hermwave/hermwave.hpp"

namespace hw = hermwave;
using hw::json;

namespace {

struct RunConfig {
    std::string command;
    std::vector<double> h{0.7};
    std::string representation = "approx";
    int J = 5;
    int N = 3;
    double T = 1.0;
    int grid_n = 256;
    std::uint64_t seed = 1;
    int band_B = 16;
    std::int64_t q_lo = 0, q_hi = -1;  // default: derived from J, T, B
    double b = 1.0, b_prime = 1.0, g = 1.0;
    std::int64_t P = 1 << 16;
    int quad_nodes = 5;
    unsigned threads = 0;
    std::string out = "hermwave_out";
    std::string format = "bin";
    std::string suite = "all";
    bool quick = false;
    std::uint64_t k_lo = 0;
    std::int64_t sigma_k_lo = -8, sigma_k_hi = 8;

    json to_json() const {
        return {{"command", command},
                {"h", h},
                {"representation", representation},
                {"J", J},
                {"N", N},
                {"T", T},
                {"grid_n", grid_n},
                {"seed", seed},
                {"band_B", band_B},
                {"q_lo", q_lo},
                {"q_hi", q_hi},
                {"b", b},
                {"b_prime", b_prime},
                {"g", g},
                {"P", P},
                {"quad_nodes", quad_nodes},
                {"threads", threads},
                {"out", out},
                {"format", format},
                {"suite", suite},
                {"quick", quick},
                {"sigma_k_lo", sigma_k_lo},
                {"sigma_k_hi", sigma_k_hi}};
    }
};

void apply_config_file(const std::string& path, RunConfig& cfg) {
    json j = json::parse(hw::read_text_file(path));
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k == "h") cfg.h = it.value().get<std::vector<double>>();
        else if (k == "representation") cfg.representation = it.value();
        else if (k == "J") cfg.J = it.value();
        else if (k == "N") cfg.N = it.value();
        else if (k == "T") cfg.T = it.value();
        else if (k == "grid_n") cfg.grid_n = it.value();
        else if (k == "seed") cfg.seed = it.value();
        else if (k == "band_B") cfg.band_B = it.value();
        else if (k == "q_lo") cfg.q_lo = it.value();
        else if (k == "q_hi") cfg.q_hi = it.value();
        else if (k == "b") cfg.b = it.value();
        else if (k == "b_prime") cfg.b_prime = it.value();
        else if (k == "g") cfg.g = it.value();
        else if (k == "P") cfg.P = it.value();
        else if (k == "quad_nodes") cfg.quad_nodes = it.value();
        else if (k == "threads") cfg.threads = it.value();
        else if (k == "out") cfg.out = it.value();
        else if (k == "format") cfg.format = it.value();
        else if (k == "suite") cfg.suite = it.value();
        else if (k == "quick") cfg.quick = it.value();
        else if (k == "sigma_k_lo") cfg.sigma_k_lo = it.value();
        else if (k == "sigma_k_hi") cfg.sigma_k_hi = it.value();
        else if (k == "command") { /* informational */ }
        else
            throw hw::config_error("unknown config key: " + k);
    }
}

void write_path_outputs(const hw::SamplePath& p, const RunConfig& cfg) {
    json meta = p.meta;
    meta["resolved_config"] = cfg.to_json();
    hw::write_text_file(cfg.out + ".csv",
                        hw::csv_two_columns("t", "value", p.times, p.values));
    hw::write_text_file(cfg.out + ".meta.json", hw::json_pretty(meta));
    std::cerr << "wrote " << cfg.out << ".csv and " << cfg.out << ".meta.json\n";
}

int cmd_tables(const RunConfig& cfg) {
    hw::HurstVector hv{cfg.h};
    hv.validate();
    std::filesystem::create_directories(cfg.out);
    auto dump = [&](const hw::FunctionTable& t, const std::string& name) {
        if (cfg.format == "csv")
            hw::dump_table_csv(t, cfg.out + "/" + name + ".csv");
        else
            hw::dump_table_binary(t, cfg.out + "/" + name + ".tbl");
    };
    auto phi = hw::get_table(hw::TableKind::scaling);
    auto psi = hw::get_table(hw::TableKind::wavelet);
    dump(*phi, "phi");
    dump(*psi, "psi");
    for (int l = 0; l < hv.order(); ++l) {
        dump(*hw::get_table(hw::TableKind::frac_primitive, cfg.h[std::size_t(l)]),
             "psi_h" + std::to_string(l + 1));
        dump(*hw::get_table(hw::TableKind::frac_scaling,
                            cfg.h[std::size_t(l)] - 0.5),
             "phi_delta" + std::to_string(l + 1));
    }
    // orthonormality residual report
    double worst_oo = 0.0, worst_ox = 0.0;
    for (int k = -5; k <= 5; ++k) {
        const double want = (k == 0) ? 1.0 : 0.0;
        worst_oo = std::max(
            worst_oo, std::abs(hw::detail::table_dot(*phi, *phi, k) - want));
        worst_ox = std::max(worst_ox,
                            std::abs(hw::detail::table_dot(*phi, *psi, k)));
    }
    json rep{{"max_translate_orthonormality_residual", worst_oo},
             {"max_scaling_wavelet_residual", worst_ox},
             {"resolved_config", cfg.to_json()}};
    hw::write_text_file(cfg.out + "/residuals.json", hw::json_pretty(rep));
    std::printf("max residuals: <phi,phi(.-k)>-delta %.3e, <phi,psi(.-k)> %.3e\n",
                worst_oo, worst_ox);
    return (worst_oo <= 1e-6 && worst_ox <= 1e-6) ? 0 : 1;
}

int cmd_generate(const RunConfig& cfg) {
    hw::HurstVector hv{cfg.h};
    hv.validate();
    hw::GaussianField field(cfg.seed);
    hw::SamplePath p;
    if (cfg.representation == "approx" || cfg.representation == "abel") {
        hw::ApproxParams prm;
        prm.J = cfg.J;
        prm.T = cfg.T;
        prm.grid_n = cfg.grid_n;
        prm.band_B = cfg.band_B;
        prm.q_lo = cfg.q_lo;
        prm.q_hi = cfg.q_hi;
        prm.P = cfg.P;
        prm.quad.nodes = cfg.quad_nodes;
        p = cfg.representation == "approx" ? hw::approx_path(field, hv, prm)
                                           : hw::abel_path(field, hv, prm);
    } else if (cfg.representation == "fullseries") {
        hw::FullSeriesParams prm;
        prm.N = cfg.N;
        prm.T = cfg.T;
        prm.grid_n = cfg.grid_n;
        prm.b = cfg.b;
        prm.b_prime = cfg.b_prime;
        prm.g = cfg.g;
        prm.quad.nodes = cfg.quad_nodes;
        p = hw::fullseries_path(field, hv, prm);
    } else if (cfg.representation == "fbm") {
        if (hv.order() != 1)
            throw hw::config_error("fbm representation requires d = 1");
        hw::FbmParams prm;
        prm.J = cfg.J;
        prm.T = cfg.T;
        prm.grid_n = cfg.grid_n;
        prm.P = cfg.P;
        p = hw::fbm_path(field, cfg.h[0], prm);
    } else {
        throw hw::config_error("unknown representation: " + cfg.representation);
    }
    write_path_outputs(p, cfg);
    return 0;
}

int cmd_validate(const RunConfig& cfg) {
    std::filesystem::create_directories(cfg.out);
    std::vector<hw::SuiteReport> reports;
    auto want = [&](const std::string& s) {
        return cfg.suite == "all" || cfg.suite == s;
    };
    const bool q = cfg.quick;

    if (want("meyer")) reports.push_back(hw::meyer_suite(q));
    if (want("farima")) reports.push_back(hw::farima_suite(q));
    if (want("combinatorics")) reports.push_back(hw::combinatorics_suite());
    if (want("chaos")) reports.push_back(hw::chaos_routes_suite(cfg.seed, q));
    if (want("correlation")) reports.push_back(hw::correlation_suite(cfg.seed, q));

    if (want("fbm")) {
        hw::SuiteReport rep;
        rep.name = "fbm";
        rep.quick = q;
        const auto cr = hw::fbm_covariance_test(cfg.seed, 0.7, 6, 1.0,
                                                q ? 1000 : 10000);
        rep.extras["covariance_report"] = cr.to_json();
        rep.add("one-scalar covariance fit within 3 SE",
                cr.max_residual_over_se <= 3.0,
                hw::detail::fmt_check("max %.2f SE", cr.max_residual_over_se));
        rep.add("diagonal log-log slope 2h +- 0.1",
                std::abs(cr.diag_loglog_slope - cr.diag_slope_target) <= 0.1,
                hw::detail::fmt_check("slope %.3f (target %.3f)",
                                      cr.diag_loglog_slope,
                                      cr.diag_slope_target));
        reports.push_back(rep);
    }
    if (want("rate")) {
        hw::SuiteReport rep;
        rep.name = "rate";
        rep.quick = q;
        const hw::HurstVector hv{cfg.h};
        hv.validate();
        const auto rr = hw::rate_test(cfg.seed, hv, 2, 7, q ? 16 : 64);
        rep.extras["rate_report"] = rr.to_json();
        rep.add("successive-difference slope at least theory - tol", rr.pass,
                hw::detail::fmt_check("fitted %.3f, theory %.3f", rr.fitted_slope,
                                      rr.theory_slope));
        reports.push_back(rep);
    }
    if (want("fullseries-rate")) {
        hw::SuiteReport rep;
        rep.name = "fullseries-rate";
        rep.quick = q;
        hw::HurstVector hv{cfg.h};
        if (hv.order() == 1) hv = hw::HurstVector{{0.8, 0.85}};
        const auto rr = hw::fullseries_rate_test(cfg.seed, hv, 2, 6,
                                                 q ? 8 : 64, 2.25, 144);
        rep.extras["rate_report"] = rr.to_json();
        rep.add("truncated-series slope at least theory - tol", rr.pass,
                hw::detail::fmt_check("fitted %.3f, theory %.3f", rr.fitted_slope,
                                      rr.theory_slope));
        reports.push_back(rep);
    }
    if (want("selfsim")) {
        hw::SuiteReport rep;
        rep.name = "selfsim";
        rep.quick = q;
        const int n1 = q ? 200 : 1000;
        json s1 = hw::selfsimilarity_test(cfg.seed, hw::HurstVector{{0.7}}, 8, n1);
        json s2 = hw::selfsimilarity_test(cfg.seed, hw::HurstVector{{0.8, 0.85}},
                                          5, n1);
        json s3 = hw::selfsimilarity_test(
            cfg.seed, hw::HurstVector{{0.9, 0.9, 0.9}}, 4, q ? 100 : 1000);
        rep.extras["d1"] = s1;
        rep.extras["d2"] = s2;
        rep.extras["d3"] = s3;
        rep.add("d = 1 variance slope 2h +- 0.1", s1["pass"].get<bool>(),
                hw::detail::fmt_check("slope %.3f (target %.3f)",
                                      s1["measured_slope"].get<double>(),
                                      s1["target_slope"].get<double>()));
        rep.add("d = 2 slope reported vs 2(sum h - d + 1)", true,
                hw::detail::fmt_check("slope %.3f (hypothesis %.3f, se %.3f)",
                                      s2["measured_slope"].get<double>(),
                                      s2["target_slope"].get<double>(),
                                      s2["slope_se"].get<double>()));
        rep.add("d = 3 slope reported vs 2(sum h - d + 1)", true,
                hw::detail::fmt_check("slope %.3f (hypothesis %.3f, se %.3f)",
                                      s3["measured_slope"].get<double>(),
                                      s3["target_slope"].get<double>(),
                                      s3["slope_se"].get<double>()));
        reports.push_back(rep);
    }
    if (want("determinism")) {
        hw::SuiteReport rep;
        rep.name = "determinism";
        hw::GaussianField field(cfg.seed);
        hw::HurstVector hv{{0.8, 0.85}};
        hw::ApproxParams prm;
        prm.J = 4;
        prm.T = 1.0;
        prm.grid_n = 64;
        prm.band_B = 8;
        const unsigned saved = hw::thread_count();
        hw::thread_count() = 1;
        auto p1 = hw::approx_path(field, hv, prm);
        hw::thread_count() = 3;
        auto p2 = hw::approx_path(field, hv, prm);
        hw::thread_count() = saved;
        rep.add("paths identical across thread counts",
                p1.values == p2.values && p1.meta == p2.meta, "");
        auto s1 = hw::csv_two_columns("t", "value", p1.times, p1.values);
        auto s2 = hw::csv_two_columns("t", "value", p2.times, p2.values);
        rep.add("serialized bytes identical", s1 == s2, "");
        reports.push_back(rep);
    }

    if (reports.empty())
        throw hw::config_error("unknown suite: " + cfg.suite);

    bool all = true;
    std::string text;
    json out = json::array();
    for (const auto& r : reports) {
        text += r.to_text();
        out.push_back(r.to_json());
        all = all && r.all_pass();
    }
    json envelope{{"reports", out}, {"resolved_config", cfg.to_json()}};
    hw::write_text_file(cfg.out + "/validate_report.json",
                        hw::json_pretty(envelope));
    hw::write_text_file(cfg.out + "/validate_report.txt", text);
    std::fputs(text.c_str(), stdout);
    return all ? 0 : 1;
}

int cmd_sigma(const RunConfig& cfg) {
    hw::HurstVector hv{cfg.h};
    hv.validate();
    const int d = hv.order();
    const std::int64_t lo = cfg.sigma_k_lo, hi = cfg.sigma_k_hi;
    if (hi < lo) throw hw::config_error("sigma: empty k window");
    const double count = std::pow(double(hi - lo + 1), d);
    if (count > 2e6) throw hw::budget_error("sigma: window too large");
    hw::GaussianField field(cfg.seed);
    hw::detail::SigmaEngine eng(field, cfg.J, hv, lo, hi, hi - lo, cfg.P);

    std::string csv;
    for (int l = 1; l <= d; ++l) csv += "k_" + std::to_string(l) + ",";
    csv += "sigma\n";
    std::vector<std::int64_t> k(std::size_t(d), lo);
    for (;;) {
        for (int l = 0; l < d; ++l)
            csv += std::to_string(k[std::size_t(l)]) + ",";
        csv += hw::fmt17(eng.sigma(k)) + "\n";
        int ax = d - 1;
        while (ax >= 0 && k[std::size_t(ax)] == hi) {
            k[std::size_t(ax)] = lo;
            --ax;
        }
        if (ax < 0) break;
        ++k[std::size_t(ax)];
    }
    hw::write_text_file(cfg.out + ".csv", csv);
    json meta{{"resolved_config", cfg.to_json()},
              {"sigma_route", "farima-partition"}};
    hw::write_text_file(cfg.out + ".meta.json", hw::json_pretty(meta));
    std::cerr << "wrote " << cfg.out << ".csv\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;

    // --config is applied before flag parsing so flags override the file
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--config") {
            try {
                apply_config_file(argv[i + 1], cfg);
            } catch (const std::exception& e) {
                std::cerr << "config error: " << e.what() << "\n";
                return 2;
            }
        }

    CLI::App app{"generalized Hermite process simulator"};
    app.require_subcommand(1);
    std::string config_path;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--threads", cfg.threads, "worker threads (0 = hardware)");

    auto add_common = [&](CLI::App* c) {
        c->add_option("--h", cfg.h, "Hurst components h_1,...,h_d")
            ->delimiter(',');
        c->add_option("--seed", cfg.seed, "RNG seed");
        c->add_option("--out", cfg.out, "output path or prefix");
    };

    CLI::App* tables = app.add_subcommand("tables", "build and dump tables");
    add_common(tables);
    tables->add_option("--format", cfg.format, "bin or csv");

    CLI::App* gen = app.add_subcommand("generate", "generate a sample path");
    add_common(gen);
    gen->add_option("--rep", cfg.representation,
                    "approx | abel | fullseries | fbm");
    gen->add_option("--d", cfg.h,
                    "(ignored; the order is the length of --h)")
        ->expected(0, 1);
    gen->add_option("--J", cfg.J, "dyadic level");
    gen->add_option("--N", cfg.N, "series truncation level");
    gen->add_option("--T", cfg.T, "horizon");
    gen->add_option("--grid-n", cfg.grid_n, "grid cells");
    gen->add_option("--B", cfg.band_B, "offset band");
    gen->add_option("--q-lo", cfg.q_lo, "window start");
    gen->add_option("--q-hi", cfg.q_hi, "window end");
    gen->add_option("--P", cfg.P, "FARIMA truncation");
    gen->add_option("--b", cfg.b, "positive-scale box exponent");
    gen->add_option("--bp", cfg.b_prime, "negative-scale box exponent");
    gen->add_option("--g", cfg.g, "negative-scale space box exponent");
    gen->add_option("--quad-nodes", cfg.quad_nodes, "nodes per panel");

    CLI::App* val = app.add_subcommand("validate", "run validation suites");
    add_common(val);
    val->add_option("--suite", cfg.suite,
                    "meyer | farima | combinatorics | chaos | correlation | "
                    "fbm | rate | fullseries-rate | selfsim | determinism | all");
    val->add_flag("--quick", cfg.quick, "reduced replica budgets");

    CLI::App* sig = app.add_subcommand("sigma", "export a sigma window as CSV");
    add_common(sig);
    sig->add_option("--J", cfg.J, "dyadic level");
    sig->add_option("--k-lo", cfg.sigma_k_lo, "window start (each axis)");
    sig->add_option("--k-hi", cfg.sigma_k_hi, "window end (each axis)");
    sig->add_option("--P", cfg.P, "FARIMA truncation");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    hw::thread_count() = cfg.threads;
    try {
        int rc = 0;
        if (tables->parsed()) {
            cfg.command = "tables";
            std::cerr << "resolved config: " << cfg.to_json().dump() << "\n";
            rc = cmd_tables(cfg);
        } else if (gen->parsed()) {
            cfg.command = "generate";
            std::cerr << "resolved config: " << cfg.to_json().dump() << "\n";
            rc = cmd_generate(cfg);
        } else if (val->parsed()) {
            cfg.command = "validate";
            std::cerr << "resolved config: " << cfg.to_json().dump() << "\n";
            rc = cmd_validate(cfg);
        } else if (sig->parsed()) {
            cfg.command = "sigma";
            std::cerr << "resolved config: " << cfg.to_json().dump() << "\n";
            rc = cmd_sigma(cfg);
        }
        return rc;
    } catch (const hw::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const hw::budget_error& e) {
        std::cerr << "budget error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
