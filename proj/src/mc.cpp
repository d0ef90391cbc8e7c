#include "lmindep/mc.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "lmindep/error.hpp"
#include "lmindep/whittle.hpp"

namespace lmindep::mc {

using spectral::KernelKind;
using spectral::KernelSpec;
using spectral::WindowWeights;
using test::StatisticKind;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct RepOutcome {
    std::vector<double> scores;  // one per score key, in key order
    std::map<StatisticKind, bool> nonconverged;
    std::map<StatisticKind, bool> failed;
};

std::vector<ScoreKey> score_keys(const McConfig& cfg) {
    std::vector<ScoreKey> keys;
    const auto bws = cfg.bandwidths();
    for (auto s : cfg.statistics)
        for (auto k : cfg.kernels)
            for (auto b : bws) keys.push_back({s, k, b});
    return keys;
}

RepOutcome run_replication(const McConfig& cfg, std::size_t rep, const std::vector<ScoreKey>& keys) {
    sim::InnovationSpec inn;
    inn.dist = cfg.innovation_dist;
    inn.cross_corr = sim::alternative_corr(cfg.alternative);
    inn.seed = sim::replication_seed(cfg.seed, rep);
    const auto path = sim::simulate_pair(cfg.model, cfg.n, inn, cfg.sim);
    const spectral::SeriesPair pair(path.x1, path.x2);
    const auto ps = spectral::periodograms(pair);

    RepOutcome out;
    out.scores.assign(keys.size(), kNaN);
    for (auto stat : cfg.statistics) {
        std::optional<test::PrewhitenedPair> pw;
        try {
            std::vector<double> f1, f2;
            switch (stat) {
                case StatisticKind::KnownDensity: {
                    const farima::DensityGrid grid(cfg.n, 1);
                    f1 = grid.density(cfg.model.branches[0].as_farima());
                    f2 = grid.density(cfg.model.branches[1].as_farima());
                    break;
                }
                case StatisticKind::ParametricWhittle: {
                    // The working model is FARIMA(1,d,0) whatever the generator.
                    const auto a = whittle::fit_whittle_farima_periodogram(ps.i11, farima::FarimaVariant::Ar1);
                    const auto b = whittle::fit_whittle_farima_periodogram(ps.i22, farima::FarimaVariant::Ar1);
                    out.nonconverged[stat] = !(a.converged && b.converged);
                    f1 = a.density_on_grid(cfg.n);
                    f2 = b.density_on_grid(cfg.n);
                    break;
                }
                case StatisticKind::FarWhittle: {
                    const std::size_t p = cfg.effective_far_order();
                    const auto a = whittle::fit_whittle_far_periodogram(ps.i11, p);
                    const auto b = whittle::fit_whittle_far_periodogram(ps.i22, p);
                    out.nonconverged[stat] = !(a.converged && b.converged);
                    f1 = a.density_on_grid(cfg.n);
                    f2 = b.density_on_grid(cfg.n);
                    break;
                }
            }
            pw.emplace(ps, f1, f2);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::Configuration) throw;
            out.failed[stat] = true;
            continue;
        }
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (keys[i].statistic != stat) continue;
            const KernelSpec kernel{keys[i].kernel};
            const double t = pw->statistic(WindowWeights(kernel, keys[i].bandwidth));
            out.scores[i] = test::standardize(t, cfg.n, keys[i].bandwidth, kernel);
        }
    }
    return out;
}

bool same_level(double a, double b) { return std::abs(a - b) < 1e-12; }

McReport report_shell(const McConfig& cfg, const ScoreSet& s) {
    McReport r;
    r.model = cfg.model.kind;
    r.n = cfg.n;
    r.alternative = cfg.alternative;
    r.reps = cfg.reps;
    r.seed = cfg.seed;
    r.nonconverged = s.nonconverged;
    r.failed = s.failed;
    r.wall_seconds = s.wall_seconds;
    return r;
}

// Upper (1 - level) quantile as an order statistic: exactly floor(level * m) of m scores exceed it when untied.
double upper_quantile(std::vector<double> v, double level) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    auto idx = static_cast<std::size_t>(std::ceil((1.0 - level) * static_cast<double>(m) - 1e-9));
    idx = std::clamp<std::size_t>(idx, 1, m);
    return v[idx - 1];
}

std::vector<double> valid_scores(const std::vector<double>& v) {
    std::vector<double> out;
    out.reserve(v.size());
    for (double x : v)
        if (std::isfinite(x)) out.push_back(x);
    return out;
}

template <typename Threshold>
McReport tabulate(const McConfig& cfg, const ScoreSet& s, Threshold threshold) {
    auto r = report_shell(cfg, s);
    for (const auto& [key, vals] : s.scores) {
        const auto valid = valid_scores(vals);
        for (double level : cfg.levels) {
            const CellKey ck{key.statistic, key.kernel, key.bandwidth, level};
            CellStats st;
            st.valid_reps = valid.size();
            if (!valid.empty()) {
                const double thr = threshold(ck);
                const auto rejections = std::count_if(valid.begin(), valid.end(), [&](double x) { return x > thr; });
                st.rejection_pct = 100.0 * static_cast<double>(rejections) / static_cast<double>(valid.size());
                st.se_pct = mc_standard_error_pct(st.rejection_pct, valid.size());
            }
            r.cells[ck] = st;
        }
    }
    return r;
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Shortest text that parses back to the same double; used for cell keys such as the level.
std::string fmt_key(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

}  // namespace

void McConfig::validate() const {
    if (reps < 100) fail(ErrorKind::Configuration, "reps must be at least 100");
    for (double l : levels)
        if (!(l > 0.0 && l < 1.0)) fail(ErrorKind::Configuration, "levels must lie in (0, 1)");
    if (alternative < 0 || alternative > 3) fail(ErrorKind::Configuration, "alternative must be 0..3");
    if (kernels.empty() || bandwidth_exponents.empty() || statistics.empty() || levels.empty())
        fail(ErrorKind::Configuration, "kernels, bandwidths, statistics and levels must be non-empty");
    if (n < 32) fail(ErrorKind::Configuration, "Monte Carlo sample size must be at least 32");
    (void)bandwidths();
}

std::vector<std::size_t> McConfig::bandwidths() const {
    std::vector<std::size_t> out;
    for (double e : bandwidth_exponents) out.push_back(spectral::bandwidth(e, n));
    return out;
}

std::size_t McConfig::effective_far_order() const { return far_order.value_or(whittle::choose_far_order(n)); }

double mc_standard_error_pct(double rejection_pct, std::size_t reps) {
    if (reps == 0) return 0.0;
    const double a = rejection_pct / 100.0;
    return 100.0 * std::sqrt(a * (1.0 - a) / static_cast<double>(reps));
}

ScoreSet collect_scores(const McConfig& cfg) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();
    const auto keys = score_keys(cfg);
    std::vector<RepOutcome> outcomes(cfg.reps);

    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t rep = next.fetch_add(1);
            if (rep >= cfg.reps) return;
            try {
                outcomes[rep] = run_replication(cfg, rep, keys);
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (!first_error) first_error = std::current_exception();
                next.store(cfg.reps);
                return;
            }
        }
    };
    const std::size_t threads = std::max<std::size_t>(1, std::min(cfg.threads, cfg.reps));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    }
    if (first_error) std::rethrow_exception(first_error);

    // Reduction in replication order keeps the result independent of scheduling.
    ScoreSet set;
    for (std::size_t i = 0; i < keys.size(); ++i) {
        auto& col = set.scores[keys[i]];
        col.resize(cfg.reps);
        for (std::size_t rep = 0; rep < cfg.reps; ++rep) col[rep] = outcomes[rep].scores[i];
    }
    for (auto stat : cfg.statistics) {
        set.nonconverged[stat] = 0;
        set.failed[stat] = 0;
        for (const auto& o : outcomes) {
            if (auto it = o.nonconverged.find(stat); it != o.nonconverged.end() && it->second) ++set.nonconverged[stat];
            if (auto it = o.failed.find(stat); it != o.failed.end() && it->second) ++set.failed[stat];
        }
    }
    set.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return set;
}

McReport size_report(const McConfig& cfg, const ScoreSet& scores) {
    std::map<double, double> z;
    for (double l : cfg.levels) z[l] = test::normal_upper_quantile(l);
    return tabulate(cfg, scores, [&](const CellKey& k) { return z.at(k.level); });
}

McReport run_size_experiment(const McConfig& cfg) {
    if (cfg.alternative != 0) fail(ErrorKind::Configuration, "size experiments require alternative = 0");
    return size_report(cfg, collect_scores(cfg));
}

CriticalValueTable critical_values_from(const McConfig& cfg, const ScoreSet& null_scores) {
    CriticalValueTable t;
    t.model = cfg.model.kind;
    t.n = cfg.n;
    t.reps = cfg.reps;
    t.seed = cfg.seed;
    for (const auto& [key, vals] : null_scores.scores) {
        const auto valid = valid_scores(vals);
        if (valid.empty()) continue;
        for (double level : cfg.levels)
            t.quantiles[{key.statistic, key.kernel, key.bandwidth, level}] = upper_quantile(valid, level);
    }
    return t;
}

CriticalValueTable empirical_critical_values(const McConfig& cfg) {
    if (cfg.alternative != 0) fail(ErrorKind::Configuration, "critical values require alternative = 0");
    return critical_values_from(cfg, collect_scores(cfg));
}

McReport power_report(const McConfig& cfg, const ScoreSet& scores, const CriticalValueTable& critvals) {
    if (critvals.model != cfg.model.kind || critvals.n != cfg.n)
        fail(ErrorKind::Configuration, "critical values were computed for a different model or sample size");
    for (const auto& [key, vals] : scores.scores) {
        for (double level : cfg.levels) {
            if (!critvals.quantiles.contains({key.statistic, key.kernel, key.bandwidth, level}))
                fail(ErrorKind::Configuration, "critical value table lacks a configured cell");
        }
    }
    auto r = tabulate(cfg, scores, [&](const CellKey& k) { return critvals.quantiles.at(k); });
    r.critval_reps = critvals.reps;
    return r;
}

McReport run_power_experiment(const McConfig& cfg, const CriticalValueTable& critvals) {
    return power_report(cfg, collect_scores(cfg), critvals);
}

std::string report_csv(const std::vector<McReport>& reports, TableLayout layout) {
    std::ostringstream os;
    os << "table,model,n,alternative,statistic,kernel,bandwidth,level,rejection_pct,se_pct,valid_reps\n";
    for (const auto& r : reports) {
        for (const auto& [k, st] : r.cells) {
            os << static_cast<int>(layout) << ',' << sim::model_name(r.model) << ',' << r.n << ',' << r.alternative << ','
               << test::statistic_name(k.statistic) << ',' << KernelSpec{k.kernel}.name() << ',' << k.bandwidth << ','
               << fmt_key(k.level) << ',' << fmt_double(st.rejection_pct) << ',' << fmt_double(st.se_pct) << ','
               << st.valid_reps << '\n';
        }
    }
    return os.str();
}

std::vector<CsvCell> parse_report_csv(const std::string& csv) {
    std::vector<CsvCell> out;
    std::istringstream is(csv);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (lineno == 1 || line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) f.push_back(field);
        if (f.size() != 11) fail(ErrorKind::Parse, "report CSV line " + std::to_string(lineno) + ": expected 11 fields");
        try {
            CsvCell c;
            c.table = std::stoi(f[0]);
            c.model = f[1] == "custom" ? sim::ModelKind::Custom : sim::parse_model(f[1]).kind;
            c.n = std::stoul(f[2]);
            c.key.statistic = test::parse_statistic(f[4]);
            c.key.kernel = spectral::parse_kernel(f[5]).kind;
            c.key.bandwidth = std::stoul(f[6]);
            c.key.level = std::stod(f[7]);
            c.stats.rejection_pct = std::stod(f[8]);
            c.stats.se_pct = std::stod(f[9]);
            c.stats.valid_reps = std::stoul(f[10]);
            out.push_back(c);
        } catch (const std::logic_error&) {
            fail(ErrorKind::Parse, "report CSV line " + std::to_string(lineno) + ": malformed number");
        }
    }
    return out;
}

EmittedTable emit_table(const std::vector<McReport>& reports, TableLayout layout) {
    static constexpr const char* kTitles[] = {"", "Rejection rates (%) under the null hypothesis",
                                              "Size-adjusted power (%) under Alternative 1",
                                              "Size-adjusted power (%) under Alternative 2",
                                              "Size-adjusted power (%) under Alternative 3"};
    const std::array<std::size_t, 2> ns{64, 128};
    const std::array<double, 3> exps{0.2, 0.3, 0.4};
    const std::array<double, 2> levels{0.05, 0.10};
    const std::array<StatisticKind, 2> stats{StatisticKind::ParametricWhittle, StatisticKind::FarWhittle};
    const std::array<KernelKind, 3> kernels{KernelKind::Bartlett, KernelKind::Tukey, KernelKind::Parzen};

    std::ostringstream os;
    os << "Table " << static_cast<int>(layout) << ": " << kTitles[static_cast<int>(layout)] << "\n";
    for (auto model : {sim::ModelKind::Model7, sim::ModelKind::Model8}) {
        os << "\n(" << (model == sim::ModelKind::Model7 ? 'a' : 'b') << ") data model " << sim::model_name(model)
           << "\n";
        char buf[256];
        std::snprintf(buf, sizeof buf, "%5s %4s %5s | %8s %8s %8s | %8s %8s %8s\n", "n", "B_n", "alpha", "th:BAR",
                      "th:TUK", "th:PAR", "ga:BAR", "ga:TUK", "ga:PAR");
        os << buf;
        for (auto n : ns) {
            const McReport* rep = nullptr;
            for (const auto& r : reports)
                if (r.model == model && r.n == n) rep = &r;
            for (double e : exps) {
                const std::size_t b = spectral::bandwidth(e, n);
                for (double level : levels) {
                    std::snprintf(buf, sizeof buf, "%5zu %4zu %4.0f%% |", n, b, level * 100.0);
                    os << buf;
                    for (std::size_t si = 0; si < stats.size(); ++si) {
                        for (auto k : kernels) {
                            const CellKey key{stats[si], k, b, level};
                            const CellStats* st = nullptr;
                            if (rep)
                                for (const auto& [ck, cs] : rep->cells)
                                    if (ck.statistic == key.statistic && ck.kernel == key.kernel &&
                                        ck.bandwidth == key.bandwidth && same_level(ck.level, key.level))
                                        st = &cs;
                            if (st) std::snprintf(buf, sizeof buf, " %8.2f", st->rejection_pct);
                            else std::snprintf(buf, sizeof buf, " %8s", "--");
                            os << buf;
                        }
                        os << (si + 1 < stats.size() ? " |" : "\n");
                    }
                }
            }
        }
    }
    return {os.str(), report_csv(reports, layout)};
}

}  // namespace lmindep::mc
