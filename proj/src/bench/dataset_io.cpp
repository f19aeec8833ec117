#include "gridpg/bench/dataset_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gridpg/common.hpp"

namespace gridpg {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_dataset_csv(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open dataset file for writing: " + path);
    const bool with_truth = data.truth.has_value();
    out << (with_truth ? "t,y,x_true,s_true\n" : "t,y\n");
    for (int t = 0; t < data.length(); ++t) {
        out << (t + 1) << ',' << format_double(data.y.values[t]);
        if (with_truth)
            out << ',' << format_double((*data.truth)[t].value) << ',' << (*data.truth)[t].regime;
        out << '\n';
    }
    if (!out) throw ConfigError("failed writing dataset file: " + path);
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open dataset file: " + path);

    std::string line;
    if (!std::getline(in, line)) throw ConfigError("empty dataset file: " + path);
    const bool with_truth = line.find("x_true") != std::string::npos;
    if (line.rfind("t,y", 0) != 0) throw ConfigError("unexpected dataset header: " + line);

    Dataset data;
    if (with_truth) data.truth.emplace();
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string field;
        std::getline(row, field, ',');  // t, ignored
        if (!std::getline(row, field, ',')) throw ConfigError("short dataset row: " + line);
        data.y.values.push_back(std::stod(field));
        if (with_truth) {
            StatePoint p;
            if (!std::getline(row, field, ',')) throw ConfigError("short dataset row: " + line);
            p.value = std::stod(field);
            if (!std::getline(row, field, ',')) throw ConfigError("short dataset row: " + line);
            p.regime = std::stoi(field);
            data.truth->push_back(p);
        }
    }
    if (data.y.values.empty()) throw ConfigError("dataset has no rows: " + path);
    return data;
}

}  // namespace gridpg
