#ifndef LDSAL_FIXATION_HPP
#define LDSAL_FIXATION_HPP

#include <string>
#include <vector>

namespace ldsal {

/// One recorded gaze point. Coordinates may be fractional; rasterization
/// bins them by floor().
struct FixationRecord {
    std::string image_id;
    std::string subject_id;
    int ordinal = 0;  // 1-based viewing order within a subject
    double x = 0.0;
    double y = 0.0;
    double duration_ms = 0.0;
};

/// All fixations recorded for one image, sorted by (subject_id, ordinal).
struct FixationSet {
    std::string image_id;
    std::vector<FixationRecord> records;
};

/// Parse a fixation CSV with the exact header
/// image_id,subject_id,ordinal,x,y,duration_ms. Records are grouped by
/// image_id (sets in first-appearance order) and sorted by
/// (subject_id, ordinal) within each set. Duplicate (subject, ordinal)
/// pairs or non-numeric fields raise FormatError with the line number.
std::vector<FixationSet> read_fixation_csv(const std::string& path);

/// Check every record against an image size; throws std::invalid_argument
/// "coordinate out of range" when a coordinate falls outside
/// [0,width) x [0,height).
void validate_fixations(const FixationSet& set, int width, int height);

/// The records that survive first-fixation removal: when drop_first is
/// set, the lowest-ordinal record of each subject is excluded.
std::vector<FixationRecord> retained_fixations(const FixationSet& set, bool drop_first);

}  // namespace ldsal

#endif
