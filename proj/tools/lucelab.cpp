#include <chrono>
#include <iostream>

#include "lucelab/cli.hpp"
#include "lucelab/harness.hpp"

int main(int argc, char** argv) {
    using namespace lucelab;
    try {
        const CliOptions options = parse_invocation(argc, argv);

        const auto start = std::chrono::steady_clock::now();
        const ExperimentSummary summary =
            run_experiment(options.config, options.workers, options.keep_trajectories);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        emit_results(options, summary, wall);

        const ScenarioConfig& c = options.config;
        std::cout << "scenario=" << to_string(c.scenario) << " model=" << to_string(c.model)
                  << " policy=" << to_string(c.policy) << " K=" << c.K << " L=" << c.L
                  << " T=" << c.T << " runs=" << c.runs << " seed=" << c.master_seed << "\n";
        for (int k = 0; k < c.K; ++k) {
            // 1-based option numbering for human-readable output
            std::cout << "option " << (k + 1) << ": theta=" << c.theta_true[static_cast<std::size_t>(k)]
                      << " estimate=" << summary.mean_estimate[static_cast<std::size_t>(k)]
                      << " (std " << summary.std_estimate[static_cast<std::size_t>(k)] << ")\n";
        }
        std::cout << "late-window top-L rate: " << summary.late_window_top_l_rate << "\n";
        std::cout << "results written to " << options.out_dir << " (" << wall << " s)\n";
        return 0;
    } catch (const HelpRequested& help) {
        std::cout << help.text;
        return 0;
    } catch (const SamplerDivergence& e) {
        std::cerr << "sampler divergence: " << e.what() << "\n";
        return 4;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "unexpected error: " << e.what() << "\n";
        return 1;
    }
}
