#include "ldsal/fixation.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ldsal/errors.hpp"

namespace ldsal {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (const char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, const char* name, std::size_t line_no) {
    std::size_t consumed = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &consumed);
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != s.size() || s.empty() || !std::isfinite(v))
        throw FormatError("line " + std::to_string(line_no) + ": non-numeric " + name + " '" + s + "'");
    return v;
}

}  // namespace

std::vector<FixationSet> read_fixation_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open for reading: " + path);

    static const std::string kHeader = "image_id,subject_id,ordinal,x,y,duration_ms";
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty file, header required");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader)
        throw FormatError(path + ": line 1: expected header '" + kHeader + "'");

    std::vector<FixationSet> sets;
    std::map<std::string, std::size_t> index_of;          // image_id -> index in sets
    std::set<std::tuple<std::string, std::string, int>> seen;  // (image, subject, ordinal)

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = split_csv_line(line);
        if (f.size() != 6)
            throw FormatError(path + ": line " + std::to_string(line_no) + ": expected 6 columns, got " +
                              std::to_string(f.size()));
        FixationRecord rec;
        rec.image_id = f[0];
        rec.subject_id = f[1];
        const double ord = parse_number(f[2], "ordinal", line_no);
        if (ord < 1.0 || ord != std::floor(ord))
            throw FormatError(path + ": line " + std::to_string(line_no) + ": ordinal must be a positive integer");
        rec.ordinal = static_cast<int>(ord);
        rec.x = parse_number(f[3], "x", line_no);
        rec.y = parse_number(f[4], "y", line_no);
        rec.duration_ms = parse_number(f[5], "duration_ms", line_no);
        if (rec.duration_ms < 0.0)
            throw FormatError(path + ": line " + std::to_string(line_no) + ": negative duration");

        if (!seen.insert({rec.image_id, rec.subject_id, rec.ordinal}).second)
            throw FormatError(path + ": line " + std::to_string(line_no) + ": duplicate (subject, ordinal) for image '" +
                              rec.image_id + "'");

        auto [it, inserted] = index_of.emplace(rec.image_id, sets.size());
        if (inserted) sets.push_back(FixationSet{rec.image_id, {}});
        sets[it->second].records.push_back(std::move(rec));
    }

    for (FixationSet& set : sets) {
        std::stable_sort(set.records.begin(), set.records.end(),
                         [](const FixationRecord& a, const FixationRecord& b) {
                             if (a.subject_id != b.subject_id) return a.subject_id < b.subject_id;
                             return a.ordinal < b.ordinal;
                         });
    }
    return sets;
}

void validate_fixations(const FixationSet& set, int width, int height) {
    for (const FixationRecord& rec : set.records) {
        if (!(rec.x >= 0.0 && rec.x < width && rec.y >= 0.0 && rec.y < height))
            throw std::invalid_argument("coordinate out of range: image '" + set.image_id + "' subject '" +
                                        rec.subject_id + "' ordinal " + std::to_string(rec.ordinal));
    }
}

std::vector<FixationRecord> retained_fixations(const FixationSet& set, bool drop_first) {
    if (!drop_first) return set.records;
    std::map<std::string, int> first_ordinal;
    for (const FixationRecord& rec : set.records) {
        auto [it, inserted] = first_ordinal.emplace(rec.subject_id, rec.ordinal);
        if (!inserted) it->second = std::min(it->second, rec.ordinal);
    }
    std::vector<FixationRecord> kept;
    kept.reserve(set.records.size());
    for (const FixationRecord& rec : set.records)
        if (rec.ordinal != first_ordinal[rec.subject_id]) kept.push_back(rec);
    return kept;
}

}  // namespace ldsal
