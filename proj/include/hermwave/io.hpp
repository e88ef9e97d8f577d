// SPDX-License-Identifier: Apache-2.0

#ifndef HERMWAVE_IO_HPP
#define HERMWAVE_IO_HPP

#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hermwave/errors.hpp"

namespace hermwave {

/// Round-trip-exact decimal form of a double (17 significant digits).
inline std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& body) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw config_error("cannot open for write: " + path);
    os << body;
    if (!os) throw config_error("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw config_error("cannot open for read: " + path);
    return std::string(std::istreambuf_iterator<char>(is),
                       std::istreambuf_iterator<char>());
}

/// Two-column CSV with a header row.
inline std::string csv_two_columns(const std::string& h1, const std::string& h2,
                                   const std::vector<double>& c1,
                                   const std::vector<double>& c2) {
    std::string out = h1 + "," + h2 + "\n";
    for (std::size_t i = 0; i < c1.size(); ++i)
        out += fmt17(c1[i]) + "," + fmt17(c2[i]) + "\n";
    return out;
}

inline std::string json_pretty(const nlohmann::json& j) {
    return j.dump(2) + "\n";
}

}  // namespace hermwave

#endif
