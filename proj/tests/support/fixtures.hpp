#ifndef GEOSCAN_TESTS_FIXTURES_HPP_
#define GEOSCAN_TESTS_FIXTURES_HPP_

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "geoscan/triangulation.hpp"

inline std::string fixture_path(const std::string& name) {
    const bool has_ext = name.find('.') != std::string::npos;
    return std::string(GEOSCAN_FIXTURE_DIR) + "/" + name + (has_ext ? "" : ".json");
}

inline std::string fixture_text(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("missing fixture " + name);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline geoscan::IdealTriangulation load_fixture(const std::string& name) {
    return geoscan::parse_triangulation(fixture_text(name));
}

#endif  // GEOSCAN_TESTS_FIXTURES_HPP_
