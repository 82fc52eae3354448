#include "switchstab/report.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

namespace switchstab {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string serialize_matrix_set(const MatrixSet& set) {
    std::string out = "{\n  \"dim\": " + std::to_string(set.dim) + ",\n  \"matrices\": [\n";
    for (std::size_t m = 0; m < set.modes.size(); ++m) {
        out += "    [";
        const auto& e = set.modes[m].entries();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out += ", ";
            out += format_double(e[i]);
        }
        out += m + 1 < set.modes.size() ? "],\n" : "]\n";
    }
    out += "  ],\n  \"labels\": [";
    for (std::size_t m = 0; m < set.labels.size(); ++m) {
        if (m) out += ", ";
        out += '"' + set.labels[m] + '"';
    }
    out += "]\n}\n";
    return out;
}

MatrixSet parse_matrix_set(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error(std::string("matrix set file is not valid JSON: ") + e.what());
    }
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw input_error("matrix set file: field 'dim' missing or not an integer");
    const int dim = j["dim"].get<int>();
    if (dim < 1) throw input_error("matrix set file: field 'dim' must be >= 1");
    if (!j.contains("matrices") || !j["matrices"].is_array() || j["matrices"].empty())
        throw input_error("matrix set file: field 'matrices' missing or empty");

    std::vector<Matrix> mats;
    for (const auto& entry : j["matrices"]) {
        if (!entry.is_array() || entry.size() != static_cast<std::size_t>(dim) * dim)
            throw input_error("matrix set file: field 'matrices' has an entry list of wrong size");
        std::vector<double> flat;
        flat.reserve(entry.size());
        for (const auto& v : entry) {
            if (!v.is_number())
                throw input_error("matrix set file: field 'matrices' has a non-numeric entry");
            flat.push_back(v.get<double>());
        }
        mats.emplace_back(dim, std::move(flat));
    }

    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j["labels"].is_array())
            throw input_error("matrix set file: field 'labels' must be an array");
        for (const auto& l : j["labels"]) {
            if (!l.is_string())
                throw input_error("matrix set file: field 'labels' must hold strings");
            labels.push_back(l.get<std::string>());
        }
        if (labels.size() != mats.size())
            throw input_error("matrix set file: field 'labels' count does not match matrices");
    }
    try {
        return MatrixSet(std::move(mats), std::move(labels));
    } catch (const input_error& e) {
        throw input_error(std::string("matrix set file: ") + e.what());
    }
}

nlohmann::ordered_json tagged_value(double v, ValueStatus status) {
    const char* s = status == ValueStatus::certified    ? "certified"
                    : status == ValueStatus::empirical ? "empirical"
                                                       : "diagnostic";
    return nlohmann::ordered_json{{"value", v}, {"status", s}};
}

nlohmann::ordered_json make_report(const std::string& command,
                                   const nlohmann::ordered_json& args_echo,
                                   const std::string& input_source,
                                   const std::string& input_digest,
                                   const nlohmann::ordered_json& payload,
                                   double wall_ms) {
    nlohmann::ordered_json rep;
    rep["tool"] = {{"name", "switchstab"}, {"version", "0.1.0"}};
    rep["command"] = command;
    rep["args"] = args_echo;
    rep["input"] = {{"source", input_source}, {"digest", input_digest}};
    rep["payload"] = payload;
    rep["timing"] = {{"wall_ms", wall_ms}};
    return rep;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open CSV output file: " + path);
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
}

} // namespace switchstab
