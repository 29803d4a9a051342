#include "qfscan/ingest.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace qfscan::ingest {

using nlohmann::json;

IngestResult ingest_field_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("ingest: cannot open " + path);
    IngestResult res;
    std::set<std::string> labels;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw Error("ingest: malformed JSON at line " + std::to_string(lineno) + ": " +
                        e.what());
        }
        IngestedField f;
        try {
            f.label = j.at("label").get<std::string>();
            f.degree = j.at("degree").get<int>();
            f.disc = j.at("disc").get<i64>();
            auto sig = j.at("signature");
            f.r1 = sig.at(0).get<int>();
            f.r2 = sig.at(1).get<int>();
            f.h = j.at("h").get<i64>();
            f.R = j.value("R", 0.0);
            f.w = j.value("w", 2);
            f.source = j.value("source", "");
        } catch (const json::exception& e) {
            throw Error("ingest: bad record at line " + std::to_string(lineno) + ": " + e.what());
        }
        // invariant gate
        if (f.degree != f.r1 + 2 * f.r2) {
            res.rejects.push_back("line " + std::to_string(lineno) + " (" + f.label +
                                  "): degree != r1 + 2 r2");
            continue;
        }
        if (f.h < 1) {
            res.rejects.push_back("line " + std::to_string(lineno) + " (" + f.label +
                                  "): h < 1");
            continue;
        }
        bool needs_R = f.degree > 2 || (f.degree == 2 && f.disc > 0);
        if (needs_R && !(f.R > 0)) {
            res.rejects.push_back("line " + std::to_string(lineno) + " (" + f.label +
                                  "): R must be positive");
            continue;
        }
        if (!labels.insert(f.label).second) {
            res.rejects.push_back("line " + std::to_string(lineno) + " (" + f.label +
                                  "): duplicate label dropped");
            continue;
        }
        res.fields.push_back(std::move(f));
    }
    return res;
}

const IngestedField* find_by_disc(const std::vector<IngestedField>& fields, i64 disc) {
    for (const auto& f : fields)
        if (f.disc == disc) return &f;
    return nullptr;
}

}  // namespace qfscan::ingest
