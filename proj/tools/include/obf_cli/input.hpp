#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "obf/core.hpp"

namespace obf::cli {

// Malformed or unreadable input; maps to exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Whitespace separated decimals; lines starting with '#' are skipped.
Sample parse_sample(std::istream& in, const std::string& name);
Sample read_sample(const std::string& path);

struct GroupedData {
    std::vector<std::string> labels;
    std::vector<std::size_t> sizes;
    // Ordered by group, groups in order of first appearance.
    Sample values;
};

// CSV rows `group_label,value`.
GroupedData parse_grouped(std::istream& in, const std::string& name);
GroupedData read_grouped(const std::string& path);

// One row per line, whitespace separated.
Eigen::MatrixXd parse_matrix(std::istream& in, const std::string& name);
Eigen::MatrixXd read_matrix(const std::string& path);

}  // namespace obf::cli
