#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "lmindep/indep_test.hpp"
#include "lmindep/mc.hpp"

namespace lmindep::io {

inline constexpr std::string_view kVersion = "1.0.0";

enum class HeaderMode { Auto, Present, Absent };

struct TwoColumns {
    std::vector<double> x1;
    std::vector<double> x2;
};

/// Comma-separated two-column numeric data with an optional single header row.
/// Errors carry the 1-based line number.
[[nodiscard]] TwoColumns parse_two_column_csv(std::string_view text, HeaderMode header = HeaderMode::Auto);
[[nodiscard]] TwoColumns read_two_column_csv(const std::filesystem::path& path, HeaderMode header = HeaderMode::Auto);

/// Header `x1,x2`, values with 17 significant digits.
[[nodiscard]] std::string write_two_column_csv(const std::vector<double>& x1, const std::vector<double>& x2);

[[nodiscard]] std::string format_double(double v);

[[nodiscard]] nlohmann::ordered_json to_json(const whittle::WhittleFit& fit);
[[nodiscard]] nlohmann::ordered_json to_json(const test::TestResult& r);

[[nodiscard]] std::string sha256_hex(std::string_view bytes);
[[nodiscard]] std::string file_sha256(const std::filesystem::path& path);

[[nodiscard]] std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

/// Command, configuration, seed and input digests sufficient to reproduce an output.
struct RunManifest {
    std::string command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    std::uint64_t seed = 0;
    double wall_seconds = 0.0;
    std::map<std::string, std::string> input_digests;

    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

[[nodiscard]] nlohmann::ordered_json to_json(const mc::McConfig& cfg);

}  // namespace lmindep::io
