#ifndef LDSAL_TOOLS_CONFIG_HPP
#define LDSAL_TOOLS_CONFIG_HPP

#include <string>
#include <vector>

#include "ldsal/analytics.hpp"
#include "ldsal/closure.hpp"
#include "ldsal/contour.hpp"
#include "ldsal/gmm.hpp"
#include "ldsal/saliency.hpp"

namespace ldsal::cli {

/// Every tunable of the pipeline, addressable as flat section.key text.
/// Flags override file entries; defaults come from the library records.
struct RunConfig {
    EdgeParams edge;
    ClosureParams closure;
    PriorParams prior;
    IttiParams itti;
    SigParams sig;
    DensityParams density;
    std::vector<double> cc_sigmas = {8, 16, 24, 32, 48, 64};
    std::vector<int> metric_ns = {3, 5, 7, 9, 11, 13, 15, 17, 19, 21};
    double closed_region_threshold = 0.9;
    double eval_blur_sigma = 0.0;  // 0 disables smoothing before scoring

    /// Apply one `section.key=value` assignment; throws std::invalid_argument
    /// on unknown keys or unparsable values.
    void set(const std::string& key, const std::string& value);

    /// Load `key=value` lines ('#' comments allowed) from a file.
    void load_file(const std::string& path);

    /// All keys with their current values, in dump order.
    std::string dump() const;

    /// Validate every record against its module preconditions.
    void validate() const;
};

}  // namespace ldsal::cli

#endif
