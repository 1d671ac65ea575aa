#include "cdtree/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace cdtree {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        // trim surrounding whitespace
        const auto begin = field.find_first_not_of(" \t\r");
        const auto end = field.find_last_not_of(" \t\r");
        fields.push_back(begin == std::string::npos ? "" : field.substr(begin, end - begin + 1));
    }
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    size_t pos = 0;
    try {
        out = std::stod(s, &pos);
    } catch (const std::exception&) {
        return false;
    }
    return pos == s.size();
}

std::vector<std::string> read_nonempty_lines(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    }
    return lines;
}

}  // namespace

ObservationDataset load_dataset(const std::string& path) {
    const auto lines = read_nonempty_lines(path);
    if (lines.empty()) throw std::runtime_error(path + ": empty dataset file");

    const auto first = split_csv_line(lines[0]);
    const int d = static_cast<int>(first.size());
    double tmp;
    bool has_header = false;
    for (const auto& f : first)
        if (!parse_double(f, tmp)) has_header = true;

    ObservationDataset out;
    if (has_header) {
        out.names = first;
    } else {
        for (int j = 0; j < d; ++j) out.names.push_back("x" + std::to_string(j));
    }
    const size_t start = has_header ? 1 : 0;
    const size_t n = lines.size() - start;
    if (n == 0) throw std::runtime_error(path + ": no data rows");
    out.data.resize(static_cast<Eigen::Index>(n), d);
    for (size_t r = 0; r < n; ++r) {
        const auto fields = split_csv_line(lines[start + r]);
        if (static_cast<int>(fields.size()) != d)
            throw std::runtime_error(path + ": ragged row " + std::to_string(start + r + 1) +
                                     " (expected " + std::to_string(d) + " fields, got " +
                                     std::to_string(fields.size()) + ")");
        for (int c = 0; c < d; ++c) {
            double v;
            if (!parse_double(fields[c], v) || !std::isfinite(v))
                throw std::runtime_error(path + ": bad value at row " +
                                         std::to_string(start + r + 1) + ", column " +
                                         std::to_string(c + 1));
            out.data(static_cast<Eigen::Index>(r), c) = v;
        }
    }
    return out;
}

void save_dataset(const ObservationDataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << std::setprecision(17);
    for (int j = 0; j < data.d(); ++j) out << (j ? "," : "") << data.names[j];
    out << "\n";
    for (int r = 0; r < data.n(); ++r) {
        for (int c = 0; c < data.d(); ++c) out << (c ? "," : "") << data.data(r, c);
        out << "\n";
    }
}

Dag load_truth(const std::string& path, int d) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            rows.push_back(split_csv_line(line));
    }
    Dag dag(d);
    if (rows.empty()) return dag;

    const bool adjacency =
        static_cast<int>(rows.size()) == d && static_cast<int>(rows[0].size()) == d;
    if (adjacency) {
        for (int i = 0; i < d; ++i) {
            if (static_cast<int>(rows[i].size()) != d)
                throw std::runtime_error(path + ": ragged adjacency row " + std::to_string(i + 1));
            for (int j = 0; j < d; ++j) {
                double v;
                if (!parse_double(rows[i][j], v) || (v != 0.0 && v != 1.0))
                    throw std::runtime_error(path + ": adjacency entries must be 0 or 1 (row " +
                                             std::to_string(i + 1) + ")");
                if (v == 1.0) {
                    if (i == j) throw std::runtime_error(path + ": self-loop in truth graph");
                    dag.add_edge(i, j);
                }
            }
        }
    } else {
        for (size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != 2)
                throw std::runtime_error(path + ": edge-list row " + std::to_string(r + 1) +
                                         " must have two fields");
            double a, b;
            if (!parse_double(rows[r][0], a) || !parse_double(rows[r][1], b) ||
                a != std::floor(a) || b != std::floor(b))
                throw std::runtime_error(path + ": non-integer edge at row " +
                                         std::to_string(r + 1));
            const int i = static_cast<int>(a), j = static_cast<int>(b);
            if (i < 0 || i >= d || j < 0 || j >= d)
                throw std::runtime_error(path + ": node id out of range at row " +
                                         std::to_string(r + 1));
            dag.add_edge(i, j);
        }
    }
    if (!dag.is_acyclic()) throw std::runtime_error(path + ": truth graph contains a cycle");
    return dag;
}

void save_truth_edge_list(const Dag& dag, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    for (const auto& [i, j] : dag.edge_list()) out << i << "," << j << "\n";
}

}  // namespace cdtree
