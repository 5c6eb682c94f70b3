#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pointerlab/commands.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitRuntime = 2;

void emit(const std::string& text, const std::string& out_flag, const pointerlab::RunConfig& cfg) {
    std::string path = out_flag;
    if (path.empty() && cfg.output_path) path = *cfg.output_path;
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file " + path);
    f << text;
    if (!f) throw std::runtime_error("failed writing output file " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pointer-state decoherence toolkit"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    unsigned threads = 1;

    const char* names[] = {"simulate", "windows", "classify", "oracle-check", "sweep", "info"};
    const char* help[] = {"availability time series (CSV)",
                          "WPRC set, PRC points, revivals (JSON)",
                          "reliability, accessibility and quality verdicts (JSON)",
                          "closed forms against the brute-force oracle (JSON)",
                          "parameter sweep (CSV)",
                          "information-flow quantities (JSON)"};
    std::vector<CLI::App*> subs;
    std::vector<CLI::Option*> seed_opts;
    for (std::size_t i = 0; i < std::size(names); ++i) {
        auto* sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config", config_path, "run configuration (JSON)")->required()->check(CLI::ExistingFile);
        sub->add_option("--out", out_path, "output file (default: output.path or stdout)");
        seed_opts.push_back(sub->add_option("--seed", seed, "override the configured seed"));
        sub->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        subs.push_back(sub);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInput;
    }

    try {
        pointerlab::RunConfig cfg = pointerlab::load_config(config_path);
        pointerlab::commands::Options opts;
        opts.threads = threads;
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (subs[i]->parsed() && seed_opts[i]->count() > 0) opts.seed = seed;
        }
        pointerlab::commands::apply_overrides(cfg, opts);

        namespace cmd = pointerlab::commands;
        if (subs[0]->parsed()) {
            emit(cmd::simulate(cfg), out_path, cfg);
        } else if (subs[1]->parsed()) {
            emit(cmd::windows(cfg, opts), out_path, cfg);
        } else if (subs[2]->parsed()) {
            emit(cmd::classify(cfg, opts), out_path, cfg);
        } else if (subs[3]->parsed()) {
            const auto r = cmd::oracle_check(cfg);
            emit(r.json, out_path, cfg);
            if (!r.passed) {
                std::cerr << "error: oracle check failed\n";
                return kExitRuntime;
            }
        } else if (subs[4]->parsed()) {
            emit(cmd::sweep(cfg, opts), out_path, cfg);
        } else {
            emit(cmd::info(cfg), out_path, cfg);
        }
        return kExitOk;
    } catch (const pointerlab::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const nlohmann::ordered_json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}
