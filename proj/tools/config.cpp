#include "config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "ldsal/errors.hpp"

namespace ldsal::cli {

namespace {

double to_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != value.size() || value.empty())
        throw std::invalid_argument("config: bad numeric value for " + key + ": '" + value + "'");
    return v;
}

int to_int(const std::string& key, const std::string& value) {
    const double v = to_double(key, value);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw std::invalid_argument("config: expected integer for " + key + ": '" + value + "'");
    return i;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "1" || value == "true" || value == "yes") return true;
    if (value == "0" || value == "false" || value == "no") return false;
    throw std::invalid_argument("config: expected boolean for " + key + ": '" + value + "'");
}

template <typename T, typename Parse>
std::vector<T> to_list(const std::string& key, const std::string& value, Parse parse) {
    std::vector<T> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse(key, item));
    if (out.empty()) throw std::invalid_argument("config: empty list for " + key);
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        char buf[48];
        std::snprintf(buf, sizeof buf, "%g", v[i]);
        s += (i ? "," : "") + std::string(buf);
    }
    return s;
}

std::string join(const std::vector<int>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    if (key == "edge.high_threshold") edge.high_threshold = to_double(key, value);
    else if (key == "edge.low_threshold") edge.low_threshold = to_double(key, value);
    else if (key == "edge.min_chain_length") edge.min_chain_length = to_int(key, value);
    else if (key == "closure.directions") closure.directions = to_int(key, value);
    else if (key == "closure.max_ray_length") closure.max_ray_length = to_double(key, value);
    else if (key == "closure.stride") closure.stride = to_int(key, value);
    else if (key == "prior.components") prior.components = to_int(key, value);
    else if (key == "prior.max_em_iters") prior.max_em_iters = to_int(key, value);
    else if (key == "prior.loglik_rel_tol") prior.loglik_rel_tol = to_double(key, value);
    else if (key == "prior.covariance_floor") prior.covariance_floor = to_double(key, value);
    else if (key == "prior.rng_seed") prior.rng_seed = static_cast<unsigned>(to_int(key, value));
    else if (key == "itti.pyramid_levels") itti.pyramid_levels = to_int(key, value);
    else if (key == "itti.center_levels") itti.center_levels = to_list<int>(key, value, to_int);
    else if (key == "itti.surround_deltas") itti.surround_deltas = to_list<int>(key, value, to_int);
    else if (key == "itti.orientation_count") itti.orientation_count = to_int(key, value);
    else if (key == "itti.output_level") itti.output_level = to_int(key, value);
    else if (key == "sig.working_width") sig.working_width = to_int(key, value);
    else if (key == "sig.working_height") sig.working_height = to_int(key, value);
    else if (key == "sig.blur_sigma") sig.blur_sigma = to_double(key, value);
    else if (key == "density.sigma") density.sigma = to_double(key, value);
    else if (key == "density.drop_first") density.drop_first_fixation = to_bool(key, value);
    else if (key == "analyze.cc_sigmas") cc_sigmas = to_list<double>(key, value, to_double);
    else if (key == "analyze.metric_ns") metric_ns = to_list<int>(key, value, to_int);
    else if (key == "analyze.closed_region_threshold") closed_region_threshold = to_double(key, value);
    else if (key == "eval.blur_sigma") eval_blur_sigma = to_double(key, value);
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config: " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ": line " + std::to_string(line_no) + ": expected key=value");
        set(line.substr(start, eq - start), line.substr(eq + 1));
    }
}

std::string RunConfig::dump() const {
    std::ostringstream out;
    char buf[64];
    const auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%g", v);
        return std::string(buf);
    };
    out << "edge.high_threshold=" << num(edge.high_threshold) << "\n";
    out << "edge.low_threshold=" << num(edge.low_threshold) << "\n";
    out << "edge.min_chain_length=" << edge.min_chain_length << "\n";
    out << "closure.directions=" << closure.directions << "\n";
    out << "closure.max_ray_length=" << num(closure.max_ray_length) << "\n";
    out << "closure.stride=" << closure.stride << "\n";
    out << "prior.components=" << prior.components << "\n";
    out << "prior.max_em_iters=" << prior.max_em_iters << "\n";
    out << "prior.loglik_rel_tol=" << num(prior.loglik_rel_tol) << "\n";
    out << "prior.covariance_floor=" << num(prior.covariance_floor) << "\n";
    out << "prior.rng_seed=" << prior.rng_seed << "\n";
    out << "itti.pyramid_levels=" << itti.pyramid_levels << "\n";
    out << "itti.center_levels=" << join(itti.center_levels) << "\n";
    out << "itti.surround_deltas=" << join(itti.surround_deltas) << "\n";
    out << "itti.orientation_count=" << itti.orientation_count << "\n";
    out << "itti.output_level=" << itti.output_level << "\n";
    out << "sig.working_width=" << sig.working_width << "\n";
    out << "sig.working_height=" << sig.working_height << "\n";
    out << "sig.blur_sigma=" << num(sig.blur_sigma) << "\n";
    out << "density.sigma=" << num(density.sigma) << "\n";
    out << "density.drop_first=" << (density.drop_first_fixation ? 1 : 0) << "\n";
    out << "analyze.cc_sigmas=" << join(cc_sigmas) << "\n";
    out << "analyze.metric_ns=" << join(metric_ns) << "\n";
    out << "analyze.closed_region_threshold=" << num(closed_region_threshold) << "\n";
    out << "eval.blur_sigma=" << num(eval_blur_sigma) << "\n";
    return out.str();
}

void RunConfig::validate() const {
    edge.validate();
    closure.validate();
    prior.validate();
    itti.validate();
    sig.validate();
    density.validate();
    for (const double s : cc_sigmas)
        if (!(s > 0.0)) throw std::invalid_argument("config: analyze.cc_sigmas must be positive");
    for (const int n : metric_ns)
        if (n < 1 || n % 2 == 0)
            throw std::invalid_argument("config: analyze.metric_ns must be odd and positive");
    if (closed_region_threshold < 0.0 || closed_region_threshold > 1.0)
        throw std::invalid_argument("config: analyze.closed_region_threshold must be in [0,1]");
    if (eval_blur_sigma < 0.0)
        throw std::invalid_argument("config: eval.blur_sigma must be >= 0");
}

}  // namespace ldsal::cli
