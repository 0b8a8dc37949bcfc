#ifndef LDSAL_TOOLS_MANIFEST_HPP
#define LDSAL_TOOLS_MANIFEST_HPP

#include <string>
#include <vector>

namespace ldsal::cli {

struct ManifestRow {
    std::string image_id;
    std::string image_path;
    std::string contour_path;  // empty when absent
    std::string labels_path;   // empty when absent
    bool fixations = false;    // whether fixation analysis applies to this row
};

struct Manifest {
    std::vector<ManifestRow> rows;
};

/// Parse the manifest CSV with the exact header
/// image_id,image_path,contour_path,labels_path,fixations. Relative paths
/// are resolved against the manifest's directory; image ids must be
/// unique.
Manifest read_manifest(const std::string& path);

}  // namespace ldsal::cli

#endif
