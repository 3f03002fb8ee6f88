#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ionphase/pipeline.hpp"

namespace {

int run(int argc, char** argv) {
    CLI::App app{
        "Single-ion phase shift toolkit: closed-form phase predictions, "
        "coupling budgets and Monte Carlo heterodyne sweeps"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::string corrections;
    long long seed = -1;
    unsigned threads = 1;
    app.add_option("--config", config_path, "Key-value config file")
        ->check(CLI::ExistingFile);
    app.add_option("--out", out_path, "Output file (default: stdout)");
    app.add_option("--seed", seed, "Master seed override");
    app.add_option("--corrections", corrections,
                   "Comma list of corrections: motion, saturation, "
                   "sideband_reference, all, none");
    app.add_option("--threads", threads, "Worker threads for sweeps");

    auto* theory = app.add_subcommand(
        "theory-curve", "Phase-vs-detuning theory band, CSV output");
    auto* sweep = app.add_subcommand(
        "simulate-sweep", "Monte Carlo heterodyne sweep, CSV output");
    auto* fig3 = app.add_subcommand(
        "reproduce-fig3",
        "Published parameter set end to end: theory band plus simulated "
        "points over -3..3 linewidths");

    auto* fit = app.add_subcommand(
        "fit", "Fit a cosine to a folded histogram CSV");
    std::string hist_path;
    double beat_mhz = 400.0;
    fit->add_option("--histogram", hist_path, "TDC histogram CSV")
        ->required()
        ->check(CLI::ExistingFile);
    fit->add_option("--beat-mhz", beat_mhz, "Beat frequency in MHz");

    // Allow the global flags to appear after the subcommand name.
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    ionphase::ExperimentConfig cfg =
        config_path.empty() ? ionphase::ExperimentConfig::defaults()
                            : ionphase::parse_config(config_path);
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (!corrections.empty()) {
        const std::string text = "corrections = " + corrections + "\n";
        cfg.corrections = ionphase::parse_config_text(text, "<args>").corrections;
    }
    cfg.validate();

    const auto write = [&](const std::string& text) {
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream out(out_path, std::ios::binary);
            if (!out)
                throw ionphase::config_error("cannot open for writing: " +
                                             out_path);
            out << text;
        }
    };

    if (theory->parsed()) {
        write(ionphase::format_csv(ionphase::theory_curve(cfg)));
    } else if (sweep->parsed() || fig3->parsed()) {
        write(ionphase::format_csv(ionphase::simulate_sweep(cfg, threads)));
    } else if (fit->parsed()) {
        const auto hist = ionphase::TdcHistogram::load_csv(hist_path);
        const auto result = ionphase::fit_cosine(
            hist, 2.0 * 3.14159265358979323846 * beat_mhz * 1e6);
        write(result.to_record());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ionphase::config_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
