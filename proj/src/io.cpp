#include "lmindep/io.hpp"

#include <openssl/evp.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lmindep/error.hpp"

namespace lmindep::io {

using json = nlohmann::ordered_json;

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_number(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(',', start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

TwoColumns parse_two_column_csv(std::string_view text, HeaderMode header) {
    if (text.size() >= 3 && text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);
    TwoColumns out;
    std::size_t lineno = 0;
    bool first_content = true;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        const auto raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++lineno;
        const auto line = trim(raw);
        if (line.empty()) continue;
        const auto fields = split_fields(line);
        const std::string where = "line " + std::to_string(lineno);
        if (fields.size() != 2)
            fail(ErrorKind::Parse, where + ": expected 2 comma-separated columns, found " + std::to_string(fields.size()));
        double a = 0.0, b = 0.0;
        const bool numeric = parse_number(fields[0], a) && parse_number(fields[1], b);
        if (first_content) {
            first_content = false;
            if (header == HeaderMode::Present || (header == HeaderMode::Auto && !numeric)) continue;
        }
        if (!numeric) fail(ErrorKind::Parse, where + ": non-numeric value");
        out.x1.push_back(a);
        out.x2.push_back(b);
    }
    if (out.x1.empty()) fail(ErrorKind::Parse, "no data rows");
    return out;
}

TwoColumns read_two_column_csv(const std::filesystem::path& path, HeaderMode header) {
    return parse_two_column_csv(read_file(path), header);
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string write_two_column_csv(const std::vector<double>& x1, const std::vector<double>& x2) {
    if (x1.size() != x2.size()) fail(ErrorKind::InvalidInput, "columns differ in length");
    std::string out = "x1,x2\n";
    for (std::size_t i = 0; i < x1.size(); ++i) {
        out += format_double(x1[i]);
        out += ',';
        out += format_double(x2[i]);
        out += '\n';
    }
    return out;
}

json to_json(const whittle::WhittleFit& fit) {
    json j;
    std::visit(
        [&j](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, farima::FarimaParams>) {
                const bool ar = p.variant == farima::FarimaVariant::Ar1;
                j["model"] = ar ? "FARIMA(1,d,0)" : "FARIMA(0,d,1)";
                j["d"] = p.d;
                j[ar ? "phi" : "psi"] = p.coef;
            } else {
                j["model"] = "FAR(" + std::to_string(p.order()) + ",d)";
                j["d"] = p.d;
                j["p"] = p.order();
                j["ar"] = p.a;
            }
        },
        fit.params);
    j["sigma2"] = fit.sigma2;
    j["objective"] = fit.objective;
    j["converged"] = fit.converged;
    j["iterations"] = fit.iterations;
    return j;
}

json to_json(const test::TestResult& r) {
    json j;
    j["statistic"] = test::statistic_name(r.kind);
    j["raw_T"] = r.raw_T;
    j["standardized"] = r.standardized;
    j["p_value"] = r.p_value;
    j["n"] = r.n;
    j["kernel"] = r.kernel.name();
    j["bandwidth"] = r.bandwidth;
    if (r.fit1 && r.fit2) {
        j["fits"] = json::array({to_json(*r.fit1), to_json(*r.fit2)});
        j["fits_converged"] = r.fits_converged;
    }
    return j;
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        fail(ErrorKind::Io, "SHA-256 digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

std::string file_sha256(const std::filesystem::path& path) { return sha256_hex(read_file(path)); }

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write '" + path.string() + "'");
    out << content;
    if (!out) fail(ErrorKind::Io, "write to '" + path.string() + "' failed");
}

json RunManifest::to_json() const {
    json j;
    j["command"] = command;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["config"] = config;
    j["wall_seconds"] = wall_seconds;
    j["input_digests"] = json::object();
    for (const auto& [k, v] : input_digests) j["input_digests"][k] = v;
    return j;
}

json to_json(const mc::McConfig& cfg) {
    json j;
    j["model"] = sim::model_name(cfg.model.kind);
    j["n"] = cfg.n;
    j["reps"] = cfg.reps;
    j["kernels"] = json::array();
    for (auto k : cfg.kernels) j["kernels"].push_back(spectral::KernelSpec{k}.name());
    j["bandwidth_exponents"] = cfg.bandwidth_exponents;
    j["bandwidths"] = cfg.bandwidths();
    j["statistics"] = json::array();
    for (auto s : cfg.statistics) j["statistics"].push_back(test::statistic_name(s));
    j["levels"] = cfg.levels;
    j["alternative"] = cfg.alternative;
    j["seed"] = cfg.seed;
    j["innovation_dist"] = sim::dist_name(cfg.innovation_dist);
    j["far_order"] = cfg.effective_far_order();
    j["burn_in"] = cfg.sim.burn_in;
    j["discard"] = cfg.sim.discard;
    j["filter_lags"] = cfg.sim.filter_lags;
    return j;
}

}  // namespace lmindep::io
