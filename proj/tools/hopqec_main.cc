// Copyright 2026 The hopqec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Command-line front end. Uses only the C interface in hopqec/hopqec.h.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hopqec/hopqec.h"

namespace {

// Thrown after a failing library call; carries the status as exit code.
struct CallFailed {
    hopqec_status status;
};

void check(hopqec_status s) {
    if (s != HOPQEC_OK) {
        std::fprintf(stderr, "hopqec: %s: %s\n", hopqec_status_name(s), hopqec_last_error());
        throw CallFailed{s};
    }
}

// Frees a C handle at scope exit.
template <typename T, void (*Free)(T *)>
struct Handle {
    T *ptr = nullptr;
    Handle() = default;
    Handle(const Handle &) = delete;
    Handle &operator=(const Handle &) = delete;
    ~Handle() {
        Free(ptr);
    }
    T **out() {
        return &ptr;
    }
};

using Channel = Handle<hopqec_channel, hopqec_channel_free>;
using Compiled = Handle<hopqec_compiled, hopqec_compiled_free>;
using Circuit = Handle<hopqec_circuit, hopqec_circuit_free>;
using Couplings = Handle<hopqec_couplings, hopqec_couplings_free>;
using Config = Handle<hopqec_campaign_config, hopqec_campaign_config_free>;
using Table = Handle<hopqec_table, hopqec_table_free>;
using Fits = Handle<hopqec_fits, hopqec_fits_free>;

hopqec_schedule parse_schedule(const std::string &s) {
    return s == "hop" ? HOPQEC_SCHEDULE_HOP : HOPQEC_SCHEDULE_STD;
}

const char *schedule_name(hopqec_schedule s) {
    return s == HOPQEC_SCHEDULE_HOP ? "hop" : "std";
}

const char *out_path(const std::string &path) {
    return path.empty() || path == "-" ? "/dev/stdout" : path.c_str();
}

void print_row(const hopqec_row *r, void *) {
    std::fprintf(stderr, "  %s d=%d p1=%.3g shots=%llu failures=%llu p_L=%.4g [%.4g, %.4g]\n",
                 schedule_name(r->schedule), r->d, r->p1, static_cast<unsigned long long>(r->shots),
                 static_cast<unsigned long long>(r->failures), r->p_l, r->ci_low, r->ci_high);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Parity-check (HOP) surface code simulation toolkit"};
    app.set_version_flag("--version", std::string(hopqec_version()));
    app.require_subcommand(1);

    // couplings
    std::string params, couplings_out;
    int cap = 4;
    bool report_labels = false;
    auto *couplings = app.add_subcommand("couplings", "ZZ couplings of the five-qubit lattice by exact diagonalization");
    couplings->add_option("--params", params, "Lattice JSON file (default: built-in parameters)");
    couplings->add_option("--cap", cap, "Total excitation cap")->check(CLI::PositiveNumber);
    couplings->add_option("--out", couplings_out, "Output CSV (default stdout)");
    couplings->add_flag("--report-labels", report_labels, "Report ambiguous state labels instead of failing");

    // channel
    double channel_p = 0;
    int arity = 5;
    std::string channel_out;
    auto *channel = app.add_subcommand("channel", "Extract the twirled HOP gate channel");
    channel->add_option("--p", channel_p, "Noise strength p")->required();
    channel->add_option("--arity", arity, "Qubits acted on (5 or 3)")->check(CLI::IsMember({5, 3}));
    channel->add_option("--out", channel_out, "Channel file")->required();

    // compile
    std::string compile_in, compile_out;
    int order = 2;
    bool clamp = false;
    auto *compile = app.add_subcommand("compile", "Compile a channel file into single-outcome stages");
    compile->add_option("--in", compile_in, "Channel file")->required();
    compile->add_option("--order", order, "Compilation order (1 or 2)")->check(CLI::IsMember({1, 2}));
    compile->add_option("--out", compile_out, "Compiled file")->required();
    compile->add_flag("--clamp", clamp, "Zero negative second-order probabilities instead of failing");

    // circuit
    std::string schedule = "hop", channels_dir, circuit_out;
    int d = 3, rounds = 0;
    double circuit_p = 0, lambda = -1;
    auto *circ = app.add_subcommand("circuit", "Build a memory-experiment circuit");
    circ->add_option("--schedule", schedule, "std or hop")->check(CLI::IsMember({"std", "hop"}));
    circ->add_option("--d", d, "Code distance (odd)");
    circ->add_option("--rounds", rounds, "Noisy rounds (default d)");
    circ->add_option("--p", circuit_p, "Gate noise strength p (p1 = p / 10)")->required();
    circ->add_option("--channels", channels_dir,
                     "Directory with hop5.compiled, hop3.compiled and hop5.channel (default: extract at p)");
    circ->add_option("--lambda", lambda, "Two-qubit strength for std (default: matched to the HOP channel)");
    circ->add_option("--out", circuit_out, "Circuit file")->required();

    // sample
    std::string sample_circuit, sample_out;
    uint64_t shots = 1024, seed = 0;
    bool hex = false;
    auto *sample = app.add_subcommand("sample", "Sample detector and observable flips");
    sample->add_option("--circuit", sample_circuit, "Circuit file")->required();
    sample->add_option("--shots", shots, "Number of shots");
    sample->add_option("--seed", seed, "Random seed");
    sample->add_option("--out", sample_out, "Output file")->required();
    sample->add_flag("--hex", hex, "Write a text hex dump instead of the binary block");

    // decode
    std::string decode_circuit, decode_out;
    uint64_t decode_shots = 100000, decode_seed = 0, target_failures = 0;
    auto *decode = app.add_subcommand("decode", "Estimate the logical failure rate with matching");
    decode->add_option("--circuit", decode_circuit, "Circuit file")->required();
    decode->add_option("--shots", decode_shots, "Maximum shots");
    decode->add_option("--seed", decode_seed, "Random seed");
    decode->add_option("--target-failures", target_failures, "Stop after this many failures (0: never)");
    decode->add_option("--out", decode_out, "Output CSV (default stdout)");

    // threshold
    std::string config_path, threshold_out;
    unsigned threads = 0;
    auto *threshold = app.add_subcommand("threshold", "Run a Monte Carlo campaign and estimate thresholds");
    threshold->add_option("--config", config_path, "Campaign config (JSON)")->required();
    threshold->add_option("--threads", threads, "Worker threads (default: from config, else all cores)");
    threshold->add_option("--out", threshold_out, "Campaign CSV (default <output_dir>/campaign.csv)");

    // fit
    std::string fit_in, fit_out, fit_schedule = "hop";
    double p1_max = 1.0;
    auto *fit = app.add_subcommand("fit", "Power-law fits of campaign data and meta-lines across distances");
    fit->add_option("--in", fit_in, "Campaign CSV")->required();
    fit->add_option("--schedule", fit_schedule, "std or hop")->check(CLI::IsMember({"std", "hop"}));
    fit->add_option("--p1-max", p1_max, "Use only rows with p1 at or below this value");
    fit->add_option("--out", fit_out, "Fits CSV (default stdout)");

    // resources
    std::string fits_path, res_schedule = "hop", res_out;
    double res_p1 = 0, target = 1e-10;
    auto *res = app.add_subcommand("resources", "Distance, qubits and space-time volume for a target logical rate");
    res->add_option("--fits", fits_path, "Fits CSV")->required();
    res->add_option("--p1", res_p1, "Physical rate p1")->required();
    res->add_option("--target", target, "Target logical failure rate");
    res->add_option("--schedule", res_schedule, "std or hop")->check(CLI::IsMember({"std", "hop"}));
    res->add_option("--out", res_out, "Output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*couplings) {
            Couplings c;
            check(hopqec_couplings_compute(params.empty() ? nullptr : params.c_str(), cap, report_labels ? 0 : 1,
                                           c.out()));
            check(hopqec_couplings_write_csv(c.ptr, out_path(couplings_out)));
        } else if (*channel) {
            Channel ch;
            check(hopqec_channel_extract(channel_p, arity, ch.out()));
            check(hopqec_channel_save(ch.ptr, channel_out.c_str()));
            std::fprintf(stderr, "arity %d p %g fidelity %.8f lambda %.6g\n", arity, channel_p,
                         hopqec_channel_fidelity(ch.ptr), hopqec_channel_lambda(ch.ptr));
        } else if (*compile) {
            Channel ch;
            Compiled c;
            check(hopqec_channel_load(compile_in.c_str(), ch.out()));
            check(hopqec_compile(ch.ptr, order, clamp ? 1 : 0, c.out()));
            check(hopqec_compiled_save(c.ptr, compile_out.c_str()));
            double err = 0;
            check(hopqec_compiled_max_error(c.ptr, ch.ptr, &err));
            std::fprintf(stderr, "%zu stages, max composition error %.3g, clamped mass %.3g\n",
                         hopqec_compiled_stage_count(c.ptr), err, hopqec_compiled_clamped_mass(c.ptr));
        } else if (*circ) {
            hopqec_schedule s = parse_schedule(schedule);
            Compiled five, three;
            if (!channels_dir.empty()) {
                namespace fs = std::filesystem;
                fs::path dir(channels_dir);
                if (s == HOPQEC_SCHEDULE_HOP) {
                    check(hopqec_compiled_load((dir / "hop5.compiled").c_str(), five.out()));
                    check(hopqec_compiled_load((dir / "hop3.compiled").c_str(), three.out()));
                } else if (lambda < 0) {
                    Channel ch;
                    check(hopqec_channel_load((dir / "hop5.channel").c_str(), ch.out()));
                    lambda = hopqec_channel_lambda(ch.ptr);
                }
            } else if (circuit_p > 0) {
                Channel c5;
                check(hopqec_channel_extract(circuit_p, 5, c5.out()));
                if (lambda < 0) {
                    lambda = hopqec_channel_lambda(c5.ptr);
                }
                if (s == HOPQEC_SCHEDULE_HOP) {
                    Channel c3;
                    check(hopqec_channel_extract(circuit_p, 3, c3.out()));
                    check(hopqec_compile(c5.ptr, 2, 1, five.out()));
                    check(hopqec_compile(c3.ptr, 2, 1, three.out()));
                }
            } else if (s == HOPQEC_SCHEDULE_HOP) {
                // Noiseless: empty stage lists.
                Channel c5, c3;
                check(hopqec_channel_extract(0, 5, c5.out()));
                check(hopqec_channel_extract(0, 3, c3.out()));
                check(hopqec_compile(c5.ptr, 1, 0, five.out()));
                check(hopqec_compile(c3.ptr, 1, 0, three.out()));
            }
            if (lambda < 0) {
                lambda = 0;
            }
            Circuit c;
            check(hopqec_circuit_build(s, d, rounds > 0 ? rounds : d, circuit_p, lambda, five.ptr, three.ptr, c.out()));
            check(hopqec_circuit_save(c.ptr, circuit_out.c_str()));
            std::fprintf(stderr, "%zu qubits, %zu layers, %zu detectors, %zu observables\n",
                         hopqec_circuit_num_qubits(c.ptr), hopqec_circuit_num_layers(c.ptr),
                         hopqec_circuit_num_detectors(c.ptr), hopqec_circuit_num_observables(c.ptr));
        } else if (*sample) {
            Circuit c;
            check(hopqec_circuit_load(sample_circuit.c_str(), c.out()));
            check(hopqec_sample_to_file(c.ptr, shots, seed, hex ? out_path(sample_out) : sample_out.c_str(), hex ? 1 : 0));
        } else if (*decode) {
            Circuit c;
            check(hopqec_circuit_load(decode_circuit.c_str(), c.out()));
            hopqec_failure_stats st{};
            check(hopqec_logical_failure_rate(c.ptr, decode_shots, decode_seed, target_failures, &st));
            FILE *f = decode_out.empty() || decode_out == "-" ? stdout : std::fopen(decode_out.c_str(), "w");
            if (!f) {
                std::fprintf(stderr, "hopqec: cannot open %s\n", decode_out.c_str());
                return HOPQEC_ERR_IO;
            }
            std::fprintf(f, "# tool: hopqec %s\n# seed: %llu\nshots,failures,p_L,decomposition_warnings\n",
                         hopqec_version(), static_cast<unsigned long long>(decode_seed));
            std::fprintf(f, "%llu,%llu,%.10g,%llu\n", static_cast<unsigned long long>(st.shots),
                         static_cast<unsigned long long>(st.failures), st.p_l,
                         static_cast<unsigned long long>(st.decomposition_warnings));
            if (f != stdout) {
                std::fclose(f);
            }
        } else if (*threshold) {
            Config cfg;
            check(hopqec_campaign_config_load(config_path.c_str(), cfg.out()));
            if (threads > 0) {
                hopqec_campaign_config_set_threads(cfg.ptr, threads);
            }
            std::string path = threshold_out;
            if (path.empty()) {
                std::string dir = hopqec_campaign_config_output_dir(cfg.ptr);
                if (!dir.empty()) {
                    std::filesystem::create_directories(dir);
                    path = (std::filesystem::path(dir) / "campaign.csv").string();
                }
            }
            Table t;
            check(hopqec_campaign_run(cfg.ptr, print_row, nullptr, t.out()));
            check(hopqec_table_write_csv(t.ptr, cfg.ptr, out_path(path)));
            int status = 0;
            for (size_t k = 0; k < hopqec_campaign_config_schedule_count(cfg.ptr); k++) {
                hopqec_schedule s = hopqec_campaign_config_schedule(cfg.ptr, k);
                hopqec_threshold_result r{};
                hopqec_status st = hopqec_threshold(t.ptr, s, &r);
                if (st != HOPQEC_OK) {
                    std::fprintf(stderr, "threshold %s: %s\n", schedule_name(s), hopqec_last_error());
                    status = st;
                    continue;
                }
                std::fprintf(stderr, "threshold %s: p_th = %.4g (spread %.2g over %zu crossings)\n",
                             schedule_name(s), r.p_th, r.spread, r.crossings);
            }
            return status;
        } else if (*fit) {
            Table t;
            Fits f;
            check(hopqec_table_load_csv(fit_in.c_str(), t.out()));
            check(hopqec_fit(t.ptr, parse_schedule(fit_schedule), p1_max, f.out()));
            check(hopqec_fits_save(f.ptr, out_path(fit_out)));
        } else if (*res) {
            Fits f;
            check(hopqec_fits_load(fits_path.c_str(), f.out()));
            hopqec_resource_estimate e{};
            check(hopqec_resources(f.ptr, res_p1, target, parse_schedule(res_schedule), &e));
            FILE *out = res_out.empty() || res_out == "-" ? stdout : std::fopen(res_out.c_str(), "w");
            if (!out) {
                std::fprintf(stderr, "hopqec: cannot open %s\n", res_out.c_str());
                return HOPQEC_ERR_IO;
            }
            std::fprintf(out, "# tool: hopqec %s\n# target_p_L: %g\n", hopqec_version(), target);
            std::fprintf(out, "schedule,p1,required_d,physical_qubits,steps_per_round,spacetime_volume\n");
            std::fprintf(out, "%s,%g,%d,%lld,%d,%lld\n", res_schedule.c_str(), e.p1, e.required_d, e.physical_qubits,
                         e.steps_per_round, e.spacetime_volume);
            if (out != stdout) {
                std::fclose(out);
            }
        }
    } catch (const CallFailed &e) {
        return static_cast<int>(e.status);
    }
    return 0;
}
