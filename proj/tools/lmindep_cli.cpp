// Command-line front end over the lmindep C interface.
//
//   lmindep test data.csv [--kernel tukey] [--bw-exp 0.4] [--stat far]
//   lmindep simulate --model ar1 --n 128 --alt 0 --seed 1
//   lmindep replicate --table 1 --reps 200 --seed 1 --out-dir results

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "lmindep/lmindep.h"

namespace {

constexpr int kExitError = 1;
constexpr int kExitRejected = 2;

struct SeriesDeleter {
    void operator()(lmi_series* s) const { lmi_series_free(s); }
};
struct ResultDeleter {
    void operator()(lmi_result* r) const { lmi_result_free(r); }
};
struct TableDeleter {
    void operator()(lmi_table_run* t) const { lmi_table_run_free(t); }
};
struct StringDeleter {
    void operator()(char* s) const { lmi_string_free(s); }
};
using SeriesPtr = std::unique_ptr<lmi_series, SeriesDeleter>;
using ResultPtr = std::unique_ptr<lmi_result, ResultDeleter>;
using TablePtr = std::unique_ptr<lmi_table_run, TableDeleter>;
using StringPtr = std::unique_ptr<char, StringDeleter>;

int report(lmi_status st) {
    std::cerr << "lmindep: " << lmi_status_name(st) << " error: " << lmi_last_error() << "\n";
    return kExitError;
}

bool write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        std::cerr << "lmindep: cannot write " << path << "\n";
        return false;
    }
    return true;
}

std::size_t default_threads() {
    if (const char* env = std::getenv("LMINDEP_THREADS")) {
        try {
            const auto v = std::stoul(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
    }
    return 1;
}

struct TestArgs {
    std::string input;
    std::string header = "auto";
    std::string kernel = "bartlett";
    double bw_exp = 0.3;
    std::size_t bandwidth = 0;
    std::string stat = "far";
    int far_order = -1;
    std::string variant = "ar1";
    double level = 0.05;
    bool exit_on_reject = false;
    std::uint64_t seed = 0;
    std::string manifest;
};

int run_test(const TestArgs& a) {
    const auto start = std::chrono::steady_clock::now();
    const lmi_header_mode mode = a.header == "yes" ? LMI_HEADER_PRESENT : a.header == "no" ? LMI_HEADER_ABSENT : LMI_HEADER_AUTO;
    lmi_series* raw = nullptr;
    if (auto st = lmi_series_read_csv(a.input.c_str(), mode, &raw); st != LMI_OK) return report(st);
    SeriesPtr series(raw);

    lmi_test_options opts;
    lmi_test_options_default(&opts);
    opts.kernel = a.kernel.c_str();
    opts.bw_exponent = a.bw_exp;
    opts.bandwidth = a.bandwidth;
    opts.statistic = a.stat.c_str();
    opts.far_order = a.far_order;
    opts.farima_variant = a.variant.c_str();

    lmi_result* rraw = nullptr;
    if (auto st = lmi_test_run(series.get(), &opts, &rraw); st != LMI_OK) return report(st);
    ResultPtr result(rraw);

    char* js = nullptr;
    if (auto st = lmi_result_to_json(result.get(), &js); st != LMI_OK) return report(st);
    StringPtr json_text(js);
    auto out = nlohmann::ordered_json::parse(json_text.get());
    out["level"] = a.level;
    out["reject"] = lmi_result_p_value(result.get()) < a.level;
    std::cout << out.dump(2) << "\n";

    if (!a.manifest.empty()) {
        char* dg = nullptr;
        if (auto st = lmi_series_digest(series.get(), &dg); st != LMI_OK) return report(st);
        StringPtr digest(dg);
        nlohmann::ordered_json m;
        m["command"] = "test";
        m["version"] = lmi_version();
        m["seed"] = a.seed;
        m["config"] = {{"input", a.input},         {"header", a.header},   {"kernel", a.kernel},
                       {"bw_exp", a.bw_exp},       {"bandwidth", a.bandwidth}, {"stat", a.stat},
                       {"far_order", a.far_order}, {"variant", a.variant}, {"level", a.level}};
        m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        m["input_digests"] = {{a.input, digest.get()}};
        if (!write_text(a.manifest, m.dump(2) + "\n")) return kExitError;
    }
    return a.exit_on_reject && out["reject"].get<bool>() ? kExitRejected : 0;
}

struct SimArgs {
    std::string model = "ar1";
    std::size_t n = 128;
    int alt = 0;
    std::uint64_t seed = 1;
    std::string dist = "gauss";
    std::string out;
};

int run_simulate(const SimArgs& a) {
    lmi_sim_options opts;
    lmi_sim_options_default(&opts);
    opts.model = a.model.c_str();
    opts.n = a.n;
    opts.alternative = a.alt;
    opts.seed = a.seed;
    opts.dist = a.dist.c_str();
    lmi_series* raw = nullptr;
    if (auto st = lmi_simulate(&opts, &raw); st != LMI_OK) return report(st);
    SeriesPtr series(raw);
    char* csv = nullptr;
    if (auto st = lmi_series_to_csv(series.get(), &csv); st != LMI_OK) return report(st);
    StringPtr text(csv);
    if (a.out.empty()) {
        std::cout << text.get();
        return 0;
    }
    return write_text(a.out, text.get()) ? 0 : kExitError;
}

struct ReplicateArgs {
    int table = 1;
    std::size_t reps = 5000;
    std::size_t critval_reps = 0;
    std::uint64_t seed = 1;
    std::size_t threads = default_threads();
    std::string models, sizes, kernels, stats;
    std::string dist = "gauss";
    std::string out_dir = ".";
};

int run_replicate(const ReplicateArgs& a) {
    lmi_replicate_options opts;
    lmi_replicate_options_default(&opts);
    opts.table = a.table;
    opts.reps = a.reps;
    opts.critval_reps = a.critval_reps;
    opts.seed = a.seed;
    opts.threads = a.threads;
    opts.models = a.models.c_str();
    opts.sizes = a.sizes.c_str();
    opts.kernels = a.kernels.c_str();
    opts.statistics = a.stats.c_str();
    opts.dist = a.dist.c_str();
    lmi_table_run* raw = nullptr;
    if (auto st = lmi_replicate(&opts, &raw); st != LMI_OK) return report(st);
    TablePtr run(raw);

    std::cout << lmi_table_run_text(run.get());
    const std::filesystem::path dir(a.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    const std::string stem = "table" + std::to_string(a.table);
    if (!write_text(dir / (stem + ".txt"), lmi_table_run_text(run.get())) ||
        !write_text(dir / (stem + ".csv"), lmi_table_run_csv(run.get())) ||
        !write_text(dir / (stem + ".manifest.json"), std::string(lmi_table_run_manifest(run.get())) + "\n"))
        return kExitError;
    std::cerr << "wrote " << (dir / (stem + ".{txt,csv,manifest.json}")).string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frequency-domain tests for non-correlation between long-memory series"};
    app.set_version_flag("--version", std::string(lmi_version()));
    app.require_subcommand(1);

    TestArgs ta;
    auto* test = app.add_subcommand("test", "Test two series (CSV columns) for non-correlation; prints JSON");
    test->add_option("input", ta.input, "Two-column CSV file")->required()->check(CLI::ExistingFile);
    test->add_option("--header", ta.header, "Header row handling")->check(CLI::IsMember({"auto", "yes", "no"}));
    test->add_option("--kernel", ta.kernel, "Lag window")->check(CLI::IsMember({"bartlett", "tukey", "parzen"}, CLI::ignore_case));
    test->add_option("--bw-exp", ta.bw_exp, "Bandwidth exponent a in B_n = floor(3 n^a)");
    test->add_option("--bandwidth", ta.bandwidth, "Explicit bandwidth (overrides --bw-exp)");
    test->add_option("--stat", ta.stat, "Prewhitening model")->check(CLI::IsMember({"far", "theta"}));
    test->add_option("--p", ta.far_order, "FAR order for --stat far (default depends on n)");
    test->add_option("--variant", ta.variant, "FARIMA variant for --stat theta")->check(CLI::IsMember({"ar1", "ma1"}));
    test->add_option("--level", ta.level, "Nominal level for the reject flag")->check(CLI::Range(0.0, 1.0));
    test->add_flag("--exit-on-reject", ta.exit_on_reject, "Exit with status 2 when rejecting at --level");
    test->add_option("--seed", ta.seed, "Recorded in the manifest; the test itself is deterministic");
    test->add_option("--manifest", ta.manifest, "Write a run manifest JSON to this path");

    SimArgs sa;
    auto* simulate = app.add_subcommand("simulate", "Simulate a series pair as two-column CSV");
    simulate->add_option("--model", sa.model, "Data model")->check(CLI::IsMember({"ar1", "ma1"}));
    simulate->add_option("--n", sa.n, "Sample size")->check(CLI::Range(8, 1024));
    simulate->add_option("--alt", sa.alt, "Alternative (0 = independent)")->check(CLI::Range(0, 3));
    simulate->add_option("--seed", sa.seed, "Random seed");
    simulate->add_option("--dist", sa.dist, "Innovation distribution")->check(CLI::IsMember({"gauss", "t5"}));
    simulate->add_option("--out", sa.out, "Output file (default stdout)");

    ReplicateArgs ra;
    auto* replicate = app.add_subcommand("replicate", "Monte Carlo size/power table");
    replicate->add_option("--table", ra.table, "Table number")->required()->check(CLI::Range(1, 4));
    replicate->add_option("--reps", ra.reps, "Replications")->check(CLI::Range(static_cast<std::size_t>(100), static_cast<std::size_t>(10000000)));
    replicate->add_option("--critval-reps", ra.critval_reps, "Null replications for critical values (default = reps)");
    replicate->add_option("--seed", ra.seed, "Base seed");
    replicate->add_option("--threads", ra.threads, "Worker threads (default $LMINDEP_THREADS or 1)");
    replicate->add_option("--models", ra.models, "Comma list of ar1,ma1");
    replicate->add_option("--sizes", ra.sizes, "Comma list of sample sizes");
    replicate->add_option("--kernels", ra.kernels, "Comma list of bartlett,tukey,parzen");
    replicate->add_option("--stats", ra.stats, "Comma list of theta,gamma,known");
    replicate->add_option("--dist", ra.dist, "Innovation distribution")->check(CLI::IsMember({"gauss", "t5"}));
    replicate->add_option("--out-dir", ra.out_dir, "Directory for table, CSV and manifest");

    CLI11_PARSE(app, argc, argv);

    if (test->parsed()) return run_test(ta);
    if (simulate->parsed()) return run_simulate(sa);
    return run_replicate(ra);
}
