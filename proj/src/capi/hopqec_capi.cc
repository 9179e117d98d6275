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


#include "hopqec/hopqec.h"

#include <fstream>
#include <map>
#include <new>
#include <string>

#include "hopqec/channel_compile/compile.h"
#include "hopqec/circuit/builders.h"
#include "hopqec/circuit/circuit_io.h"
#include "hopqec/decoder/decoder.h"
#include "hopqec/device/device_model.h"
#include "hopqec/device/device_params.h"
#include "hopqec/error.h"
#include "hopqec/experiments/campaign.h"
#include "hopqec/experiments/fits.h"
#include "hopqec/experiments/stats.h"
#include "hopqec/open_system/channel_io.h"
#include "hopqec/open_system/hop_channel.h"
#include "hopqec/sim/frame_sim.h"
#include "hopqec/version.h"

using namespace hopqec;

struct hopqec_couplings {
    device::CouplingReport report;
};
struct hopqec_channel {
    open_system::ChannelFile file;
};
struct hopqec_compiled {
    channel_compile::CompiledChannel compiled;
};
struct hopqec_circuit {
    circuit::Circuit circuit;
};
struct hopqec_campaign_config {
    experiments::CampaignConfig config;
};
struct hopqec_table {
    std::vector<experiments::CampaignRow> rows;
    mutable std::map<int, experiments::ThresholdEstimate> thresholds;
};
struct hopqec_fits {
    std::vector<experiments::FitLine> lines;
    experiments::MetaLines meta;
    experiments::Metadata metadata;
};

namespace {

thread_local std::string last_error;

hopqec_status record(hopqec_status status, const std::string &message) {
    last_error = message;
    return status;
}

// Runs `body`, translating exceptions into status codes.
template <typename Body>
hopqec_status guarded(Body body) {
    try {
        body();
        return HOPQEC_OK;
    } catch (const Error &e) {
        return record(static_cast<hopqec_status>(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return record(HOPQEC_ERR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return record(HOPQEC_ERR_INTERNAL, e.what());
    }
}

void require(const void *p, const char *what) {
    if (!p) {
        fail(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
    }
}

experiments::Schedule to_schedule(hopqec_schedule s) {
    switch (s) {
        case HOPQEC_SCHEDULE_STD:
            return experiments::Schedule::Standard;
        case HOPQEC_SCHEDULE_HOP:
            return experiments::Schedule::Hop;
    }
    fail(ErrorCode::InvalidArgument, "unknown schedule value");
}

hopqec_schedule from_schedule(experiments::Schedule s) {
    return s == experiments::Schedule::Hop ? HOPQEC_SCHEDULE_HOP : HOPQEC_SCHEDULE_STD;
}

hopqec_row to_row(const experiments::CampaignRow &r) {
    return hopqec_row{from_schedule(r.schedule), r.d,      r.p1,      r.shots, r.failures,
                      r.p_l,                     r.ci_low, r.ci_high, r.decomposition_warnings};
}

std::ofstream open_out(const char *path) {
    require(path, "path");
    std::ofstream out(path);
    if (!out) {
        fail(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
    }
    return out;
}

std::ifstream open_in(const char *path) {
    require(path, "path");
    std::ifstream in(path);
    if (!in) {
        fail(ErrorCode::Io, std::string("cannot open ") + path);
    }
    return in;
}

}  // namespace

extern "C" {

const char *hopqec_version(void) {
    return kVersion;
}

const char *hopqec_last_error(void) {
    return last_error.c_str();
}

const char *hopqec_status_name(hopqec_status status) {
    switch (status) {
        case HOPQEC_OK: return "ok";
        case HOPQEC_ERR_INVALID_ARGUMENT: return "invalid-argument";
        case HOPQEC_ERR_IO: return "io";
        case HOPQEC_ERR_NUMERICAL: return "numerical";
        case HOPQEC_ERR_DEGENERATE_TRANSMON: return "degenerate-transmon";
        case HOPQEC_ERR_CALIBRATION: return "calibration";
        case HOPQEC_ERR_LABELING: return "labeling";
        case HOPQEC_ERR_CHANNEL_EXTRACTION: return "channel-extraction";
        case HOPQEC_ERR_MATCHING: return "matching";
        case HOPQEC_ERR_COMPILE: return "compile";
        case HOPQEC_ERR_CIRCUIT: return "circuit";
        case HOPQEC_ERR_DECODE: return "decode";
        case HOPQEC_ERR_THRESHOLD_UNDETERMINED: return "threshold-undetermined";
        case HOPQEC_ERR_NO_FINITE_DISTANCE: return "no-finite-distance";
        case HOPQEC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

/* ---- couplings ---- */

hopqec_status hopqec_couplings_compute(const char *params_path, int excitation_cap, int strict,
                                       hopqec_couplings **out) {
    return guarded([&] {
        require(out, "out");
        auto lattice = params_path ? device::load_lattice(params_path) : device::builtin_lattice();
        auto h = device::build_hamiltonian(lattice, excitation_cap);
        auto report = device::zz_couplings(h, strict ? device::LabelPolicy::Strict : device::LabelPolicy::Report);
        *out = new hopqec_couplings{std::move(report)};
    });
}

void hopqec_couplings_free(hopqec_couplings *c) {
    delete c;
}

size_t hopqec_couplings_count(const hopqec_couplings *c) {
    return c ? c->report.pairs.size() : 0;
}

hopqec_status hopqec_couplings_pair(const hopqec_couplings *c, size_t index, int *j, int *k, double *zeta_mhz,
                                    double *min_overlap) {
    return guarded([&] {
        require(c, "couplings");
        if (index >= c->report.pairs.size()) {
            fail(ErrorCode::InvalidArgument, "pair index out of range");
        }
        const auto &p = c->report.pairs[index];
        if (j) *j = static_cast<int>(p.j);
        if (k) *k = static_cast<int>(p.k);
        if (zeta_mhz) *zeta_mhz = p.zeta_mhz;
        if (min_overlap) *min_overlap = p.min_overlap;
    });
}

hopqec_status hopqec_couplings_write_csv(const hopqec_couplings *c, const char *path) {
    return guarded([&] {
        require(c, "couplings");
        auto out = open_out(path);
        out << "pair,zeta_over_2pi_MHz,label_overlap_min\n";
        out.precision(10);
        for (const auto &p : c->report.pairs) {
            out << p.j << "-" << p.k << "," << p.zeta_mhz << "," << p.min_overlap << "\n";
        }
        if (!out) {
            fail(ErrorCode::Io, std::string("write failed: ") + path);
        }
    });
}

/* ---- channels ---- */

hopqec_status hopqec_channel_extract(double p, int arity, hopqec_channel **out) {
    return guarded([&] {
        require(out, "out");
        if (arity != 5 && arity != 3) {
            fail(ErrorCode::InvalidArgument, "arity must be 5 or 3");
        }
        auto g = open_system::hop_gate_channel(p, arity - 1);
        open_system::ChannelFile file;
        file.p = p;
        file.lambda = g.lambda;
        file.normalization = open_system::kDefaultNormalization;
        file.channel = std::move(g.channel);
        *out = new hopqec_channel{std::move(file)};
    });
}

hopqec_status hopqec_channel_load(const char *path, hopqec_channel **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new hopqec_channel{open_system::load_channel_file(path)};
    });
}

hopqec_status hopqec_channel_save(const hopqec_channel *ch, const char *path) {
    return guarded([&] {
        require(ch, "channel");
        require(path, "path");
        open_system::save_channel_file(path, ch->file);
    });
}

void hopqec_channel_free(hopqec_channel *ch) {
    delete ch;
}

int hopqec_channel_arity(const hopqec_channel *ch) {
    return ch ? static_cast<int>(ch->file.channel.num_qubits()) : 0;
}

double hopqec_channel_p(const hopqec_channel *ch) {
    return ch ? ch->file.p : 0.0;
}

double hopqec_channel_fidelity(const hopqec_channel *ch) {
    return ch ? ch->file.channel.fidelity() : 0.0;
}

double hopqec_channel_lambda(const hopqec_channel *ch) {
    return ch && ch->file.lambda ? *ch->file.lambda : -1.0;
}

double hopqec_channel_total(const hopqec_channel *ch) {
    return ch ? ch->file.channel.total() : 0.0;
}

hopqec_status hopqec_match_lambda(double p, double *lambda) {
    return guarded([&] {
        require(lambda, "lambda");
        *lambda = open_system::match_lambda(p, 4);
    });
}

/* ---- compilation ---- */

hopqec_status hopqec_compile(const hopqec_channel *ch, int order, int clamp_negative, hopqec_compiled **out) {
    return guarded([&] {
        require(ch, "channel");
        require(out, "out");
        channel_compile::CompiledChannel c;
        if (order == 1) {
            c = channel_compile::naive_compile(ch->file.channel, ch->file.p);
        } else if (order == 2) {
            c = channel_compile::corrected_compile(ch->file.channel, ch->file.p,
                                                   clamp_negative ? channel_compile::NegativeShiftPolicy::Clamp
                                                                  : channel_compile::NegativeShiftPolicy::Abort);
        } else {
            fail(ErrorCode::InvalidArgument, "compile order must be 1 or 2");
        }
        *out = new hopqec_compiled{std::move(c)};
    });
}

hopqec_status hopqec_compiled_load(const char *path, hopqec_compiled **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new hopqec_compiled{channel_compile::load_compiled(path)};
    });
}

hopqec_status hopqec_compiled_save(const hopqec_compiled *c, const char *path) {
    return guarded([&] {
        require(c, "compiled");
        require(path, "path");
        channel_compile::save_compiled(path, c->compiled);
    });
}

void hopqec_compiled_free(hopqec_compiled *c) {
    delete c;
}

size_t hopqec_compiled_stage_count(const hopqec_compiled *c) {
    return c ? c->compiled.stages.size() : 0;
}

double hopqec_compiled_clamped_mass(const hopqec_compiled *c) {
    return c ? c->compiled.clamped_mass : 0.0;
}

hopqec_status hopqec_compiled_max_error(const hopqec_compiled *c, const hopqec_channel *target, double *error) {
    return guarded([&] {
        require(c, "compiled");
        require(target, "target");
        require(error, "error");
        *error = channel_compile::max_composition_error(c->compiled, target->file.channel);
    });
}

/* ---- circuits ---- */

hopqec_status hopqec_circuit_build(hopqec_schedule schedule, int d, int rounds, double p, double lambda,
                                   const hopqec_compiled *five, const hopqec_compiled *three, hopqec_circuit **out) {
    return guarded([&] {
        require(out, "out");
        auto layout = circuit::Layout::build(d);
        auto budget = circuit::NoiseBudget::from_p(p, lambda);
        circuit::Circuit c;
        if (to_schedule(schedule) == experiments::Schedule::Hop) {
            require(five, "five-qubit channel");
            require(three, "three-qubit channel");
            c = circuit::hop_circuit(layout, rounds, budget, circuit::HopChannels{five->compiled, three->compiled});
        } else {
            c = circuit::standard_circuit(layout, rounds, budget);
        }
        *out = new hopqec_circuit{std::move(c)};
    });
}

hopqec_status hopqec_circuit_load(const char *path, hopqec_circuit **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new hopqec_circuit{circuit::load_circuit(path)};
    });
}

hopqec_status hopqec_circuit_save(const hopqec_circuit *c, const char *path) {
    return guarded([&] {
        require(c, "circuit");
        require(path, "path");
        circuit::save_circuit(path, c->circuit);
    });
}

void hopqec_circuit_free(hopqec_circuit *c) {
    delete c;
}

size_t hopqec_circuit_num_qubits(const hopqec_circuit *c) {
    return c ? c->circuit.num_qubits : 0;
}

size_t hopqec_circuit_num_layers(const hopqec_circuit *c) {
    return c ? c->circuit.layers.size() : 0;
}

size_t hopqec_circuit_num_detectors(const hopqec_circuit *c) {
    return c ? c->circuit.num_detectors() : 0;
}

size_t hopqec_circuit_num_observables(const hopqec_circuit *c) {
    return c ? c->circuit.num_observables() : 0;
}

/* ---- sampling and decoding ---- */

hopqec_status hopqec_sample_to_file(const hopqec_circuit *c, uint64_t shots, uint64_t seed, const char *path,
                                    int hex) {
    return guarded([&] {
        require(c, "circuit");
        auto result = sim::sample(c->circuit, shots, seed);
        if (hex) {
            auto out = open_out(path);
            sim::write_samples_hex(out, result);
        } else {
            require(path, "path");
            std::ofstream out(path, std::ios::binary);
            if (!out) {
                fail(ErrorCode::Io, std::string("cannot open ") + path + " for writing");
            }
            sim::write_samples(out, result);
        }
    });
}

hopqec_status hopqec_logical_failure_rate(const hopqec_circuit *c, uint64_t max_shots, uint64_t seed,
                                          uint64_t target_failures, hopqec_failure_stats *out) {
    return guarded([&] {
        require(c, "circuit");
        require(out, "out");
        auto s = decoder::logical_failure_rate(c->circuit, max_shots, seed, target_failures);
        *out = hopqec_failure_stats{s.shots, s.failures, s.p_l, s.decomposition_warnings};
    });
}

/* ---- campaigns ---- */

hopqec_status hopqec_campaign_config_load(const char *path, hopqec_campaign_config **out) {
    return guarded([&] {
        require(path, "path");
        require(out, "out");
        *out = new hopqec_campaign_config{experiments::load_campaign_config(path)};
    });
}

hopqec_status hopqec_campaign_config_parse(const char *json_text, hopqec_campaign_config **out) {
    return guarded([&] {
        require(json_text, "json_text");
        require(out, "out");
        *out = new hopqec_campaign_config{experiments::parse_campaign_config(json_text)};
    });
}

void hopqec_campaign_config_free(hopqec_campaign_config *cfg) {
    delete cfg;
}

const char *hopqec_campaign_config_output_dir(const hopqec_campaign_config *cfg) {
    return cfg ? cfg->config.output_dir.c_str() : "";
}

void hopqec_campaign_config_set_threads(hopqec_campaign_config *cfg, unsigned threads) {
    if (cfg) {
        cfg->config.threads = threads;
    }
}

size_t hopqec_campaign_config_schedule_count(const hopqec_campaign_config *cfg) {
    return cfg ? cfg->config.schedules.size() : 0;
}

hopqec_schedule hopqec_campaign_config_schedule(const hopqec_campaign_config *cfg, size_t index) {
    if (!cfg || index >= cfg->config.schedules.size()) {
        return HOPQEC_SCHEDULE_STD;
    }
    return from_schedule(cfg->config.schedules[index]);
}

hopqec_status hopqec_campaign_run(const hopqec_campaign_config *cfg, hopqec_row_callback on_row, void *user,
                                  hopqec_table **out) {
    return guarded([&] {
        require(cfg, "config");
        require(out, "out");
        std::function<void(const experiments::CampaignRow &)> cb;
        if (on_row) {
            cb = [&](const experiments::CampaignRow &r) {
                hopqec_row row = to_row(r);
                on_row(&row, user);
            };
        }
        auto rows = experiments::run_campaign(cfg->config, cb);
        *out = new hopqec_table{std::move(rows), {}};
    });
}

hopqec_status hopqec_table_write_csv(const hopqec_table *t, const hopqec_campaign_config *cfg, const char *path) {
    return guarded([&] {
        require(t, "table");
        auto out = open_out(path);
        experiments::Metadata meta;
        if (cfg) {
            meta = experiments::campaign_metadata(cfg->config);
        } else {
            meta = {{"tool", std::string("hopqec ") + kVersion}};
        }
        experiments::write_campaign_csv(out, t->rows, meta);
        if (!out) {
            fail(ErrorCode::Io, std::string("write failed: ") + path);
        }
    });
}

hopqec_status hopqec_table_load_csv(const char *path, hopqec_table **out) {
    return guarded([&] {
        require(out, "out");
        auto in = open_in(path);
        *out = new hopqec_table{experiments::read_campaign_csv(in), {}};
    });
}

void hopqec_table_free(hopqec_table *t) {
    delete t;
}

size_t hopqec_table_size(const hopqec_table *t) {
    return t ? t->rows.size() : 0;
}

hopqec_status hopqec_table_row(const hopqec_table *t, size_t index, hopqec_row *out) {
    return guarded([&] {
        require(t, "table");
        require(out, "out");
        if (index >= t->rows.size()) {
            fail(ErrorCode::InvalidArgument, "row index out of range");
        }
        *out = to_row(t->rows[index]);
    });
}

hopqec_status hopqec_confidence_interval(uint64_t failures, uint64_t shots, double level, double *low,
                                         double *high) {
    return guarded([&] {
        require(low, "low");
        require(high, "high");
        auto ci = experiments::confidence_interval(failures, shots, level);
        *low = ci.low;
        *high = ci.high;
    });
}

hopqec_status hopqec_threshold(const hopqec_table *t, hopqec_schedule schedule, hopqec_threshold_result *out) {
    return guarded([&] {
        require(t, "table");
        require(out, "out");
        auto est = experiments::estimate_threshold(t->rows, to_schedule(schedule));
        *out = hopqec_threshold_result{est.p_th, est.spread, est.crossings.size()};
        t->thresholds[static_cast<int>(schedule)] = std::move(est);
    });
}

hopqec_status hopqec_threshold_crossing(const hopqec_table *t, hopqec_schedule schedule, size_t index, int *d_low,
                                        int *d_high, double *p1) {
    return guarded([&] {
        require(t, "table");
        auto it = t->thresholds.find(static_cast<int>(schedule));
        if (it == t->thresholds.end() || index >= it->second.crossings.size()) {
            fail(ErrorCode::InvalidArgument, "no such crossing; call hopqec_threshold first");
        }
        const auto &c = it->second.crossings[index];
        if (d_low) *d_low = c.d_low;
        if (d_high) *d_high = c.d_high;
        if (p1) *p1 = c.p1;
    });
}

/* ---- fits and resources ---- */

hopqec_status hopqec_fit(const hopqec_table *t, hopqec_schedule schedule, double p1_max, hopqec_fits **out) {
    return guarded([&] {
        require(t, "table");
        require(out, "out");
        auto s = to_schedule(schedule);
        auto lines = experiments::fit_lines(t->rows, s, p1_max);
        auto meta = experiments::fit_meta_lines(lines);
        experiments::Metadata md = {
            {"tool", std::string("hopqec ") + kVersion},
            {"schedule", experiments::schedule_name(s)},
            {"p1_max", std::to_string(p1_max)},
            {"model", "log10 p_L = log_c(d) + m(d) log10 p1; meta-lines linear in d"},
        };
        *out = new hopqec_fits{std::move(lines), meta, std::move(md)};
    });
}

hopqec_status hopqec_fits_from_meta(double m_slope, double m_intercept, double c_slope, double c_intercept,
                                    hopqec_fits **out) {
    return guarded([&] {
        require(out, "out");
        experiments::MetaLines meta{{m_slope, m_intercept}, {c_slope, c_intercept}};
        *out = new hopqec_fits{{}, meta, {{"tool", std::string("hopqec ") + kVersion}}};
    });
}

hopqec_status hopqec_fits_load(const char *path, hopqec_fits **out) {
    return guarded([&] {
        require(out, "out");
        auto in = open_in(path);
        *out = new hopqec_fits{{}, experiments::read_fits_csv(in), {}};
    });
}

hopqec_status hopqec_fits_save(const hopqec_fits *f, const char *path) {
    return guarded([&] {
        require(f, "fits");
        auto out = open_out(path);
        experiments::write_fits_csv(out, f->lines, f->meta, f->metadata);
        if (!out) {
            fail(ErrorCode::Io, std::string("write failed: ") + path);
        }
    });
}

void hopqec_fits_free(hopqec_fits *f) {
    delete f;
}

size_t hopqec_fits_line_count(const hopqec_fits *f) {
    return f ? f->lines.size() : 0;
}

hopqec_status hopqec_fits_line(const hopqec_fits *f, size_t index, int *d, double *log_c, double *m) {
    return guarded([&] {
        require(f, "fits");
        if (index >= f->lines.size()) {
            fail(ErrorCode::InvalidArgument, "line index out of range");
        }
        const auto &l = f->lines[index];
        if (d) *d = l.d;
        if (log_c) *log_c = l.log_c;
        if (m) *m = l.m;
    });
}

void hopqec_fits_meta(const hopqec_fits *f, double *m_slope, double *m_intercept, double *c_slope,
                      double *c_intercept) {
    if (!f) {
        return;
    }
    if (m_slope) *m_slope = f->meta.m.slope;
    if (m_intercept) *m_intercept = f->meta.m.intercept;
    if (c_slope) *c_slope = f->meta.log_c.slope;
    if (c_intercept) *c_intercept = f->meta.log_c.intercept;
}

hopqec_status hopqec_resources(const hopqec_fits *f, double p1, double target_p_l, hopqec_schedule schedule,
                               hopqec_resource_estimate *out) {
    return guarded([&] {
        require(f, "fits");
        require(out, "out");
        auto e = experiments::resources(f->meta, p1, target_p_l, to_schedule(schedule));
        *out = hopqec_resource_estimate{e.p1, e.required_d, e.physical_qubits, e.steps_per_round,
                                        e.spacetime_volume};
    });
}

}  // extern "C"
