#include "manifest.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "ldsal/errors.hpp"

namespace ldsal::cli {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string& line) {
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

bool parse_flag(const std::string& s, const std::string& path, std::size_t line_no) {
    if (s.empty() || s == "0" || s == "false" || s == "no") return false;
    if (s == "1" || s == "true" || s == "yes") return true;
    throw FormatError(path + ": line " + std::to_string(line_no) + ": bad fixations flag '" + s + "'");
}

std::string resolve(const std::string& p, const fs::path& base) {
    if (p.empty()) return p;
    const fs::path candidate(p);
    return candidate.is_absolute() ? candidate.string() : (base / candidate).string();
}

}  // namespace

Manifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest: " + path);
    const fs::path base = fs::path(path).parent_path();

    static const std::string kHeader = "image_id,image_path,contour_path,labels_path,fixations";
    std::string line;
    if (!std::getline(in, line)) throw FormatError(path + ": empty manifest");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kHeader) throw FormatError(path + ": line 1: expected header '" + kHeader + "'");

    Manifest manifest;
    std::set<std::string> ids;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const std::vector<std::string> f = split(line);
        if (f.size() != 5)
            throw FormatError(path + ": line " + std::to_string(line_no) + ": expected 5 columns");
        ManifestRow row;
        row.image_id = f[0];
        if (row.image_id.empty())
            throw FormatError(path + ": line " + std::to_string(line_no) + ": empty image_id");
        if (!ids.insert(row.image_id).second)
            throw FormatError(path + ": line " + std::to_string(line_no) + ": duplicate image_id '" +
                              row.image_id + "'");
        row.image_path = resolve(f[1], base);
        row.contour_path = resolve(f[2], base);
        row.labels_path = resolve(f[3], base);
        row.fixations = parse_flag(f[4], path, line_no);
        manifest.rows.push_back(std::move(row));
    }
    return manifest;
}

}  // namespace ldsal::cli
