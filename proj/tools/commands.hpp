#ifndef LDSAL_TOOLS_COMMANDS_HPP
#define LDSAL_TOOLS_COMMANDS_HPP

#include <string>
#include <vector>

#include "config.hpp"
#include "manifest.hpp"

namespace ldsal::cli {

// Exit codes: 0 success, 1 internal error, 2 input/validation error.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitInput = 2;

struct CommonArgs {
    std::string manifest_path;
    std::string out_dir;
    RunConfig config;
    int jobs = 0;  // 0 = hardware concurrency
};

int cmd_contours(const CommonArgs& args);
int cmd_closure(const CommonArgs& args);
int cmd_prior(const CommonArgs& args);
int cmd_saliency(const CommonArgs& args, const std::string& model);
int cmd_combine(const RunConfig& config, const std::string& bottom_up_path,
                const std::string& prior_path, const std::string& out_path,
                const std::string& preview_path);
int cmd_density(const CommonArgs& args, const std::string& fixations_path);
int cmd_analyze(const CommonArgs& args, const std::string& fixations_path,
                const std::string& fixations_ref_path);
int cmd_eval(const CommonArgs& args, const std::string& fixations_path, const std::string& maps_dir,
             const std::vector<std::string>& models, const std::vector<std::string>& pairs);
int cmd_pipeline(const CommonArgs& args, const std::string& fixations_path, const std::string& model);

}  // namespace ldsal::cli

#endif
