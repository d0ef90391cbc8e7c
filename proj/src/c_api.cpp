#include "lmindep/lmindep.h"

#include <chrono>
#include <cstring>
#include <new>
#include <optional>
#include <sstream>
#include <string>

#include "lmindep/error.hpp"
#include "lmindep/indep_test.hpp"
#include "lmindep/io.hpp"
#include "lmindep/mc.hpp"
#include "lmindep/simulate.hpp"
#include "lmindep/whittle.hpp"

struct lmi_series {
    lmindep::spectral::SeriesPair pair;
    std::optional<std::string> source_digest;
};

struct lmi_result {
    lmindep::test::TestResult result;
};

struct lmi_table_run {
    std::string text;
    std::string csv;
    std::string manifest;
};

namespace {

using namespace lmindep;

thread_local std::string g_last_error;

lmi_status to_status(ErrorKind k) { return static_cast<lmi_status>(static_cast<int>(k)); }

template <typename F>
lmi_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return LMI_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.kind());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return LMI_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return LMI_ERR_INTERNAL;
    }
}

lmi_status null_arg(const char* what) {
    g_last_error = std::string("null argument: ") + what;
    return LMI_ERR_NULL_ARGUMENT;
}

char* dup_string(const std::string& s) {
    auto* p = new char[s.size() + 1];
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::vector<std::string> split_list(const char* s) {
    std::vector<std::string> out;
    if (!s) return out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string or_default(const char* s, const char* fallback) { return (s && *s) ? s : fallback; }

}  // namespace

extern "C" {

const char* lmi_version(void) { return lmindep::io::kVersion.data(); }

const char* lmi_last_error(void) { return g_last_error.c_str(); }

const char* lmi_status_name(lmi_status status) {
    switch (status) {
        case LMI_OK: return "ok";
        case LMI_ERR_INVALID_INPUT: return "invalid-input";
        case LMI_ERR_CONFIGURATION: return "configuration";
        case LMI_ERR_DOMAIN: return "domain";
        case LMI_ERR_SINGULAR_MODEL: return "singular-model";
        case LMI_ERR_INVALID_DENSITY: return "invalid-density";
        case LMI_ERR_DEGENERATE_INPUT: return "degenerate-input";
        case LMI_ERR_INVALID_SPEC: return "invalid-spec";
        case LMI_ERR_PARSE: return "parse";
        case LMI_ERR_IO: return "io";
        case LMI_ERR_NULL_ARGUMENT: return "null-argument";
        case LMI_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

void lmi_string_free(char* s) { delete[] s; }

lmi_status lmi_series_from_arrays(const double* x1, const double* x2, size_t n, lmi_series** out) {
    if (!x1 || !x2) return null_arg("x1/x2");
    if (!out) return null_arg("out");
    return guarded([&] {
        *out = new lmi_series{spectral::SeriesPair({x1, x1 + n}, {x2, x2 + n}), std::nullopt};
    });
}

lmi_status lmi_series_read_csv(const char* path, lmi_header_mode header, lmi_series** out) {
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    return guarded([&] {
        const auto text = io::read_file(path);
        const auto mode = header == LMI_HEADER_PRESENT  ? io::HeaderMode::Present
                          : header == LMI_HEADER_ABSENT ? io::HeaderMode::Absent
                                                        : io::HeaderMode::Auto;
        auto cols = io::parse_two_column_csv(text, mode);
        *out = new lmi_series{spectral::SeriesPair(std::move(cols.x1), std::move(cols.x2)), io::sha256_hex(text)};
    });
}

size_t lmi_series_length(const lmi_series* s) { return s ? s->pair.n() : 0; }

size_t lmi_series_copy(const lmi_series* s, int column, double* dst, size_t cap) {
    if (!s || !dst || (column != 1 && column != 2)) return 0;
    const auto src = column == 1 ? s->pair.x1() : s->pair.x2();
    const size_t count = std::min(cap, src.size());
    std::copy_n(src.begin(), count, dst);
    return count;
}

lmi_status lmi_series_to_csv(const lmi_series* s, char** out) {
    if (!s) return null_arg("series");
    if (!out) return null_arg("out");
    return guarded([&] {
        const std::vector<double> a(s->pair.x1().begin(), s->pair.x1().end());
        const std::vector<double> b(s->pair.x2().begin(), s->pair.x2().end());
        *out = dup_string(io::write_two_column_csv(a, b));
    });
}

lmi_status lmi_series_digest(const lmi_series* s, char** out) {
    if (!s) return null_arg("series");
    if (!out) return null_arg("out");
    return guarded([&] {
        if (s->source_digest) {
            *out = dup_string(*s->source_digest);
            return;
        }
        const std::vector<double> a(s->pair.x1().begin(), s->pair.x1().end());
        const std::vector<double> b(s->pair.x2().begin(), s->pair.x2().end());
        *out = dup_string(io::sha256_hex(io::write_two_column_csv(a, b)));
    });
}

void lmi_series_free(lmi_series* s) { delete s; }

void lmi_test_options_default(lmi_test_options* opts) {
    if (!opts) return;
    opts->kernel = "bartlett";
    opts->bw_exponent = 0.3;
    opts->bandwidth = 0;
    opts->statistic = "far";
    opts->far_order = -1;
    opts->farima_variant = "ar1";
}

lmi_status lmi_test_run(const lmi_series* s, const lmi_test_options* opts, lmi_result** out) {
    if (!s) return null_arg("series");
    if (!out) return null_arg("out");
    lmi_test_options defaults;
    lmi_test_options_default(&defaults);
    const lmi_test_options& o = opts ? *opts : defaults;
    return guarded([&] {
        const std::size_t n = s->pair.n();
        if (n < 32) fail(ErrorKind::InvalidInput, "the test needs at least 32 observations");
        const auto kernel = spectral::parse_kernel(or_default(o.kernel, "bartlett"));
        const std::size_t b = o.bandwidth > 0 ? o.bandwidth : spectral::bandwidth(o.bw_exponent, n);
        if (b >= n) fail(ErrorKind::Configuration, "bandwidth must be smaller than n");
        const auto stat = test::parse_statistic(or_default(o.statistic, "far"));
        test::TestResult r;
        switch (stat) {
            case test::StatisticKind::FarWhittle: {
                const std::size_t p =
                    o.far_order >= 0 ? static_cast<std::size_t>(o.far_order) : whittle::choose_far_order(n);
                r = test::test_far(s->pair, p, p, kernel, b);
                break;
            }
            case test::StatisticKind::ParametricWhittle: {
                const auto v = or_default(o.farima_variant, "ar1");
                if (v != "ar1" && v != "ma1") fail(ErrorKind::Configuration, "farima variant must be ar1 or ma1");
                const auto variant = v == "ar1" ? farima::FarimaVariant::Ar1 : farima::FarimaVariant::Ma1;
                r = test::test_parametric(s->pair, variant, variant, kernel, b);
                break;
            }
            case test::StatisticKind::KnownDensity:
                fail(ErrorKind::Configuration, "the known-density statistic needs model densities; use far or theta");
        }
        *out = new lmi_result{std::move(r)};
    });
}

double lmi_result_raw_T(const lmi_result* r) { return r ? r->result.raw_T : 0.0; }
double lmi_result_standardized(const lmi_result* r) { return r ? r->result.standardized : 0.0; }
double lmi_result_p_value(const lmi_result* r) { return r ? r->result.p_value : 1.0; }
size_t lmi_result_bandwidth(const lmi_result* r) { return r ? r->result.bandwidth : 0; }
size_t lmi_result_n(const lmi_result* r) { return r ? r->result.n : 0; }

lmi_status lmi_result_to_json(const lmi_result* r, char** out) {
    if (!r) return null_arg("result");
    if (!out) return null_arg("out");
    return guarded([&] { *out = dup_string(io::to_json(r->result).dump(2)); });
}

void lmi_result_free(lmi_result* r) { delete r; }

void lmi_sim_options_default(lmi_sim_options* opts) {
    if (!opts) return;
    opts->model = "ar1";
    opts->n = 128;
    opts->alternative = 0;
    opts->seed = 1;
    opts->dist = "gauss";
}

lmi_status lmi_simulate(const lmi_sim_options* opts, lmi_series** out) {
    if (!opts) return null_arg("opts");
    if (!out) return null_arg("out");
    return guarded([&] {
        const auto model = sim::parse_model(or_default(opts->model, "ar1"));
        sim::InnovationSpec inn;
        inn.dist = sim::parse_dist(or_default(opts->dist, "gauss"));
        inn.cross_corr = sim::alternative_corr(opts->alternative);
        inn.seed = opts->seed;
        auto path = sim::simulate_pair(model, opts->n, inn);
        *out = new lmi_series{spectral::SeriesPair(std::move(path.x1), std::move(path.x2)), std::nullopt};
    });
}

void lmi_replicate_options_default(lmi_replicate_options* opts) {
    if (!opts) return;
    opts->table = 1;
    opts->reps = 5000;
    opts->critval_reps = 0;
    opts->seed = 1;
    opts->threads = 1;
    opts->models = nullptr;
    opts->sizes = nullptr;
    opts->kernels = nullptr;
    opts->statistics = nullptr;
    opts->dist = "gauss";
}

lmi_status lmi_replicate(const lmi_replicate_options* opts, lmi_table_run** out) {
    if (!opts) return null_arg("opts");
    if (!out) return null_arg("out");
    return guarded([&] {
        if (opts->table < 1 || opts->table > 4) fail(ErrorKind::Configuration, "table must be 1, 2, 3 or 4");
        const auto start = std::chrono::steady_clock::now();
        const auto layout = static_cast<mc::TableLayout>(opts->table);
        const int alternative = opts->table - 1;

        auto models = split_list(opts->models);
        if (models.empty()) models = {"ar1", "ma1"};
        std::vector<std::size_t> sizes;
        for (const auto& s : split_list(opts->sizes)) {
            try {
                sizes.push_back(std::stoul(s));
            } catch (const std::logic_error&) {
                fail(ErrorKind::Configuration, "bad sample size '" + s + "'");
            }
        }
        if (sizes.empty()) sizes = {64, 128};

        mc::McConfig base;
        base.seed = opts->seed;
        base.threads = opts->threads;
        base.innovation_dist = sim::parse_dist(or_default(opts->dist, "gauss"));
        if (auto ks = split_list(opts->kernels); !ks.empty()) {
            base.kernels.clear();
            for (const auto& k : ks) base.kernels.push_back(spectral::parse_kernel(k).kind);
        }
        if (auto ss = split_list(opts->statistics); !ss.empty()) {
            base.statistics.clear();
            for (const auto& s : ss) base.statistics.push_back(test::parse_statistic(s));
        }

        nlohmann::ordered_json runs = nlohmann::ordered_json::array();
        std::vector<mc::McReport> reports;
        for (const auto& m : models) {
            for (auto n : sizes) {
                mc::McConfig cfg = base;
                cfg.model = sim::parse_model(m);
                cfg.n = n;
                if (alternative == 0) {
                    cfg.reps = opts->reps;
                    reports.push_back(mc::run_size_experiment(cfg));
                    runs.push_back(io::to_json(cfg));
                    continue;
                }
                mc::McConfig null_cfg = cfg;
                null_cfg.alternative = 0;
                null_cfg.reps = opts->critval_reps > 0 ? opts->critval_reps : opts->reps;
                const auto critvals = mc::empirical_critical_values(null_cfg);
                cfg.alternative = alternative;
                cfg.reps = opts->reps;
                reports.push_back(mc::run_power_experiment(cfg, critvals));
                auto j = io::to_json(cfg);
                j["critval_reps"] = null_cfg.reps;
                runs.push_back(std::move(j));
            }
        }
        const auto table = mc::emit_table(reports, layout);

        io::RunManifest manifest;
        manifest.command = "replicate";
        manifest.seed = opts->seed;
        manifest.config["table"] = opts->table;
        manifest.config["reps"] = opts->reps;
        manifest.config["critval_reps"] = opts->critval_reps > 0 ? opts->critval_reps : opts->reps;
        manifest.config["threads"] = opts->threads;
        manifest.config["runs"] = runs;
        nlohmann::ordered_json failures = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            nlohmann::ordered_json f;
            f["model"] = sim::model_name(r.model);
            f["n"] = r.n;
            for (const auto& [k, v] : r.nonconverged) f["nonconverged"][std::string(test::statistic_name(k))] = v;
            for (const auto& [k, v] : r.failed) f["failed"][std::string(test::statistic_name(k))] = v;
            failures.push_back(std::move(f));
        }
        manifest.config["fit_diagnostics"] = failures;
        manifest.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        *out = new lmi_table_run{table.text, table.csv, manifest.to_json().dump(2)};
    });
}

const char* lmi_table_run_text(const lmi_table_run* t) { return t ? t->text.c_str() : ""; }
const char* lmi_table_run_csv(const lmi_table_run* t) { return t ? t->csv.c_str() : ""; }
const char* lmi_table_run_manifest(const lmi_table_run* t) { return t ? t->manifest.c_str() : ""; }
void lmi_table_run_free(lmi_table_run* t) { delete t; }

}  // extern "C"
