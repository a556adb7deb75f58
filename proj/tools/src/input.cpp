#include "obf_cli/input.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace obf::cli {

namespace {

bool skip_line(const std::string& line) {
    auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

double parse_number(std::string_view tok, const std::string& name, std::size_t line_no) {
    while (!tok.empty() && (tok.front() == ' ' || tok.front() == '\t')) tok.remove_prefix(1);
    while (!tok.empty() && (tok.back() == ' ' || tok.back() == '\t' || tok.back() == '\r')) tok.remove_suffix(1);
    if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
        throw InputError(name + ": line " + std::to_string(line_no) + ": malformed number '" + std::string(tok) + "'");
    }
    return v;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    return in;
}

}  // namespace

Sample parse_sample(std::istream& in, const std::string& name) {
    Sample s;
    s.label = name;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) continue;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) s.values.push_back(parse_number(tok, name, line_no));
    }
    if (s.values.empty()) throw InputError(name + ": no observations");
    return s;
}

Sample read_sample(const std::string& path) {
    auto in = open(path);
    return parse_sample(in, path);
}

GroupedData parse_grouped(std::istream& in, const std::string& name) {
    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> groups;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) continue;
        auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw InputError(name + ": line " + std::to_string(line_no) + ": expected 'group_label,value'");
        }
        std::string label = line.substr(0, comma);
        double v = parse_number(std::string_view(line).substr(comma + 1), name, line_no);
        auto [it, inserted] = groups.try_emplace(label);
        if (inserted) order.push_back(label);
        it->second.push_back(v);
    }
    if (order.empty()) throw InputError(name + ": no observations");
    GroupedData out;
    out.values.label = name;
    for (const auto& label : order) {
        const auto& vals = groups[label];
        out.labels.push_back(label);
        out.sizes.push_back(vals.size());
        out.values.values.insert(out.values.values.end(), vals.begin(), vals.end());
    }
    return out;
}

GroupedData read_grouped(const std::string& path) {
    auto in = open(path);
    return parse_grouped(in, path);
}

Eigen::MatrixXd parse_matrix(std::istream& in, const std::string& name) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (skip_line(line)) continue;
        std::istringstream ls(line);
        std::string tok;
        std::vector<double> row;
        while (ls >> tok) row.push_back(parse_number(tok, name, line_no));
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw InputError(name + ": line " + std::to_string(line_no) + ": expected " +
                             std::to_string(rows.front().size()) + " columns");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InputError(name + ": empty matrix");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    return m;
}

Eigen::MatrixXd read_matrix(const std::string& path) {
    auto in = open(path);
    return parse_matrix(in, path);
}

}  // namespace obf::cli
