#pragma once

// Dataset ingestion: single-column CSV (optional header) or
// whitespace-delimited numeric files. Errors carry line numbers.

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "likelihood.hpp"

namespace bweibull {

struct DatasetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class DataFormat { Auto, Csv, Whitespace };

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
    const char* b = tok.data();
    const char* e = b + tok.size();
    auto [p, ec] = std::from_chars(b, e, out);
    return ec == std::errc() && p == e;
}

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

} // namespace detail

/// Parse a dataset file into a validated positive sample.
inline Dataset load_dataset(const std::string& path, DataFormat format = DataFormat::Auto) {
    std::ifstream in(path);
    if (!in) throw DatasetError("cannot open dataset file: " + path);

    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++lineno;
        std::string body = detail::trim(line);
        if (!body.empty() && body.back() == '\r') body.pop_back();
        if (body.empty() || body[0] == '#') continue;

        std::vector<std::string> toks;
        if (format == DataFormat::Csv || (format == DataFormat::Auto && body.find(',') != std::string::npos)) {
            std::stringstream ss(body);
            std::string t;
            while (std::getline(ss, t, ',')) toks.push_back(detail::trim(t));
        } else {
            std::stringstream ss(body);
            std::string t;
            while (ss >> t) toks.push_back(t);
        }

        std::vector<double> parsed;
        for (const auto& tok : toks) {
            if (tok.empty()) continue;
            double v;
            if (!detail::parse_double(tok, v)) {
                if (header_allowed && values.empty() && parsed.empty()) {
                    parsed.clear();   // leading header line tolerated
                    break;
                }
                throw DatasetError("non-numeric token '" + tok + "' at line " + std::to_string(lineno)
                                   + " of " + path);
            }
            if (!(v > 0.0) || !std::isfinite(v))
                throw DatasetError("non-positive value " + tok + " at line " + std::to_string(lineno)
                                   + " of " + path);
            parsed.push_back(v);
        }
        values.insert(values.end(), parsed.begin(), parsed.end());
        if (!values.empty()) header_allowed = false;
    }
    if (values.empty()) throw DatasetError("empty dataset: " + path);
    try {
        return Dataset(std::move(values), std::filesystem::path(path).stem().string());
    } catch (const std::invalid_argument& e) {
        throw DatasetError(std::string(e.what()) + " (" + path + ")");
    }
}

} // namespace bweibull
