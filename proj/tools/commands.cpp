#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "ldsal/analytics.hpp"
#include "ldsal/closure.hpp"
#include "ldsal/contour.hpp"
#include "ldsal/errors.hpp"
#include "ldsal/eval.hpp"
#include "ldsal/gmm.hpp"
#include "ldsal/image_io.hpp"
#include "ldsal/saliency.hpp"

namespace ldsal::cli {

namespace fs = std::filesystem;

namespace {

// ---- formatting -----------------------------------------------------------

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string fmt_or_nan(double v, bool defined) { return defined ? fmt(v) : "nan"; }

// ---- atomic outputs -------------------------------------------------------

void atomic_write_text(const std::string& path, const std::string& text) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp);
        out << text;
        if (!out) throw IoError("write failed: " + tmp);
    }
    fs::rename(tmp, path);
}

void atomic_write_fmap(const FloatMap& map, const std::string& path) {
    const std::string tmp = path + ".tmp";
    write_fmap(map, tmp);
    fs::rename(tmp, path);
}

void atomic_write_pnm(const FloatMap& map, const std::string& path) {
    const std::string tmp = path + ".tmp";
    write_pnm(map, tmp);
    fs::rename(tmp, path);
}

void write_preview(const FloatMap& map, const std::string& path) {
    atomic_write_pnm(normalize01(map), path);
}

// ---- worker pool over manifest rows ----------------------------------------

struct RowOutcome {
    std::string image_id;
    bool ok = true;
    bool skipped = false;
    std::string error;
};

template <typename Fn>
std::vector<RowOutcome> run_rows(const std::vector<ManifestRow>& rows, int jobs, Fn&& body) {
    std::vector<RowOutcome> outcomes(rows.size());
    unsigned workers = jobs > 0 ? static_cast<unsigned>(jobs) : std::thread::hardware_concurrency();
    workers = std::max(1u, std::min<unsigned>(workers, rows.size() ? rows.size() : 1));

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            outcomes[i].image_id = rows[i].image_id;
            try {
                body(rows[i], outcomes[i]);
            } catch (const std::exception& e) {
                outcomes[i].ok = false;
                outcomes[i].error = e.what();
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    return outcomes;
}

// Report failures on the diagnostic stream; any failure turns the run into
// an input error but never aborts the other rows.
int finish_run(const std::vector<RowOutcome>& outcomes) {
    int failures = 0;
    for (const RowOutcome& o : outcomes) {
        if (!o.ok) {
            ++failures;
            std::cerr << o.image_id << ": " << o.error << "\n";
        }
    }
    if (failures > 0) {
        std::cerr << failures << " of " << outcomes.size() << " rows failed\n";
        return kExitInput;
    }
    return kExitOk;
}

void ensure_out_dir(const std::string& out_dir) {
    if (out_dir.empty()) throw std::invalid_argument("--out directory required");
    fs::create_directories(out_dir);
}

std::string out_file(const std::string& out_dir, const std::string& image_id, const std::string& suffix) {
    return (fs::path(out_dir) / (image_id + suffix)).string();
}

// ---- input loading ---------------------------------------------------------

void require_file(const std::string& path) {
    if (!fs::exists(path)) throw IoError("input missing: " + path);
}

ColorImage to_color(const PnmImage& img) {
    if (std::holds_alternative<ColorImage>(img)) return std::get<ColorImage>(img);
    const GrayImage& gray = std::get<GrayImage>(img);
    ColorImage color(gray.width(), gray.height());
    color.r = gray;
    color.g = gray;
    color.b = gray;
    return color;
}

GrayImage to_gray(const PnmImage& img) {
    if (std::holds_alternative<GrayImage>(img)) return std::get<GrayImage>(img);
    const ColorImage& color = std::get<ColorImage>(img);
    GrayImage gray(color.width(), color.height());
    for (std::size_t i = 0; i < gray.size(); ++i)
        gray.data()[i] = (color.r.data()[i] + color.g.data()[i] + color.b.data()[i]) / 3.0;
    return gray;
}

ColorImage load_color(const ManifestRow& row) {
    require_file(row.image_path);
    return to_color(read_pnm(row.image_path));
}

struct ContourResult {
    ContourMask mask;
    std::vector<EdgeChain> chains;
    bool passthrough = false;
};

// Provided masks are used verbatim (chains still traced, losslessly);
// otherwise the detect + link front end runs on the image.
ContourResult obtain_contours(const ManifestRow& row, const RunConfig& config) {
    ContourResult result;
    if (!row.contour_path.empty()) {
        require_file(row.contour_path);
        result.mask = read_contour_mask(row.contour_path);
        result.passthrough = true;
        result.chains = link_edges(result.mask, 2).chains;
        return result;
    }
    require_file(row.image_path);
    const GrayImage gray = to_gray(read_pnm(row.image_path));
    const FloatMap edges = detect_edges(gray, config.edge);
    LinkResult linked = link_edges(edges, config.edge.min_chain_length);
    result.mask = std::move(linked.mask);
    result.chains = std::move(linked.chains);
    return result;
}

FloatMap mask_to_map(const ContourMask& mask) {
    FloatMap map(mask.width(), mask.height());
    for (std::size_t i = 0; i < mask.size(); ++i) map.data()[i] = mask.data()[i] ? 1.0 : 0.0;
    return map;
}

std::string chains_csv(const std::vector<EdgeChain>& chains) {
    std::ostringstream out;
    out << "chain_id,point_index,x,y,closed\n";
    for (std::size_t c = 0; c < chains.size(); ++c)
        for (std::size_t p = 0; p < chains[c].points.size(); ++p)
            out << c << "," << p << "," << chains[c].points[p].first << ","
                << chains[c].points[p].second << "," << (chains[c].closed ? 1 : 0) << "\n";
    return out.str();
}

// fixation sets keyed by image id
std::map<std::string, FixationSet> load_fixation_index(const std::string& path) {
    std::map<std::string, FixationSet> index;
    for (FixationSet& set : read_fixation_csv(path)) index.emplace(set.image_id, std::move(set));
    return index;
}

const FixationSet& fixations_for(const std::map<std::string, FixationSet>& index,
                                 const std::string& image_id) {
    const auto it = index.find(image_id);
    if (it == index.end()) throw std::invalid_argument("no fixations recorded for image");
    return it->second;
}

struct PriorResult {
    std::vector<GmmComponent> components;
    std::vector<double> omegas;
    FloatMap map;
    bool degenerate = false;
};

PriorResult build_prior(const FloatMap& closure, const RunConfig& config) {
    PriorResult result;
    const GmmFit fit = fit_gmm(closure, config.prior);
    result.components = fit.components;
    result.omegas = component_weights(result.components, closure.width(), closure.height());
    result.map = prior_map(result.components, result.omegas, closure.width(), closure.height(),
                           &result.degenerate);
    return result;
}

std::string components_csv(const PriorResult& prior) {
    std::ostringstream out;
    out << "component_id,mean_x,mean_y,cov_xx,cov_xy,cov_yy,proportion,omega\n";
    for (std::size_t i = 0; i < prior.components.size(); ++i) {
        const GmmComponent& c = prior.components[i];
        out << i << "," << fmt(c.mean_x) << "," << fmt(c.mean_y) << "," << fmt(c.covariance.xx)
            << "," << fmt(c.covariance.xy) << "," << fmt(c.covariance.yy) << ","
            << fmt(c.proportion) << "," << fmt(prior.omegas[i]) << "\n";
    }
    return out.str();
}

FloatMap bottom_up_saliency(const ColorImage& image, const std::string& model, const RunConfig& config) {
    if (model == "it") return itti_saliency(image, config.itti);
    if (model == "sig") return signature_saliency(image, config.sig);
    throw std::invalid_argument("unknown model '" + model + "' (expected it or sig)");
}

FloatMap maybe_blur(const FloatMap& map, double sigma) {
    return sigma > 0.0 ? gaussian_blur(map, sigma) : map;
}

}  // namespace

// ---- commands ---------------------------------------------------------------

int cmd_contours(const CommonArgs& args) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto outcomes = run_rows(manifest.rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const ContourResult contours = obtain_contours(row, args.config);
        atomic_write_pnm(mask_to_map(contours.mask), out_file(args.out_dir, row.image_id, "_contour.pgm"));
        atomic_write_text(out_file(args.out_dir, row.image_id, "_chains.csv"), chains_csv(contours.chains));
    });
    return finish_run(outcomes);
}

int cmd_closure(const CommonArgs& args) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto outcomes = run_rows(manifest.rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const ContourResult contours = obtain_contours(row, args.config);
        const FloatMap closure = closure_map(contours.mask, args.config.closure);
        atomic_write_fmap(closure, out_file(args.out_dir, row.image_id, "_closure.fmap"));
        write_preview(closure, out_file(args.out_dir, row.image_id, "_closure.pgm"));
    });
    return finish_run(outcomes);
}

int cmd_prior(const CommonArgs& args) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto outcomes = run_rows(manifest.rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const ContourResult contours = obtain_contours(row, args.config);
        const FloatMap closure = closure_map(contours.mask, args.config.closure);
        const PriorResult prior = build_prior(closure, args.config);
        if (prior.degenerate)
            std::cerr << row.image_id << ": warning: degenerate prior (all component weights zero)\n";
        atomic_write_fmap(prior.map, out_file(args.out_dir, row.image_id, "_prior.fmap"));
        write_preview(prior.map, out_file(args.out_dir, row.image_id, "_prior.pgm"));
        atomic_write_text(out_file(args.out_dir, row.image_id, "_components.csv"), components_csv(prior));
    });
    return finish_run(outcomes);
}

int cmd_saliency(const CommonArgs& args, const std::string& model) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto outcomes = run_rows(manifest.rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const FloatMap sal = bottom_up_saliency(load_color(row), model, args.config);
        atomic_write_fmap(sal, out_file(args.out_dir, row.image_id, "_" + model + ".fmap"));
        write_preview(sal, out_file(args.out_dir, row.image_id, "_" + model + ".pgm"));
    });
    return finish_run(outcomes);
}

int cmd_combine(const RunConfig&, const std::string& bottom_up_path, const std::string& prior_path,
                const std::string& out_path, const std::string& preview_path) {
    const FloatMap bottom_up = read_fmap(bottom_up_path);
    const FloatMap prior = read_fmap(prior_path);
    const FloatMap combined = combine(bottom_up, prior);
    atomic_write_fmap(combined, out_path);
    if (!preview_path.empty()) write_preview(combined, preview_path);
    return kExitOk;
}

int cmd_density(const CommonArgs& args, const std::string& fixations_path) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto fixation_index = load_fixation_index(fixations_path);

    std::vector<ManifestRow> rows;
    for (const ManifestRow& row : manifest.rows)
        if (row.fixations) rows.push_back(row);
    if (rows.empty()) {
        std::cerr << "no manifest rows have the fixations flag set\n";
        return kExitInput;
    }
    const auto outcomes = run_rows(rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        require_file(row.image_path);
        const PnmImage img = read_pnm(row.image_path);
        const int w = std::holds_alternative<GrayImage>(img) ? std::get<GrayImage>(img).width()
                                                             : std::get<ColorImage>(img).width();
        const int h = std::holds_alternative<GrayImage>(img) ? std::get<GrayImage>(img).height()
                                                             : std::get<ColorImage>(img).height();
        bool empty = false;
        const FloatMap density =
            density_map(fixations_for(fixation_index, row.image_id), w, h, args.config.density, &empty);
        if (empty) std::cerr << row.image_id << ": warning: no fixations retained\n";
        atomic_write_fmap(density, out_file(args.out_dir, row.image_id, "_density.fmap"));
        write_preview(density, out_file(args.out_dir, row.image_id, "_density.pgm"));
    });
    return finish_run(outcomes);
}

namespace {

struct AnalyzeRowData {
    bool has_cc = false;
    std::vector<double> cc_by_sigma;
    bool has_guidance = false;
    std::vector<GuidanceMetrics> metrics_by_n;
    bool has_segments = false;
    std::vector<SegmentSaliency> segments;
    std::vector<ShapeFeatureVector> features;
};

struct SummaryStat {
    double mean = 0.0, ci_low = 0.0, ci_high = 0.0;
    std::size_t n = 0;
    bool defined = false;
};

SummaryStat summarize(const std::vector<double>& values) {
    SummaryStat s;
    s.n = values.size();
    if (values.empty()) return s;
    double sum = 0.0;
    for (const double v : values) sum += v;
    s.mean = sum / static_cast<double>(values.size());
    if (values.size() < 2) return s;
    double sq = 0.0;
    for (const double v : values) sq += (v - s.mean) * (v - s.mean);
    const double sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
    const double half = 1.96 * sd / std::sqrt(static_cast<double>(values.size()));
    s.ci_low = s.mean - half;
    s.ci_high = s.mean + half;
    s.defined = true;
    return s;
}

}  // namespace

int cmd_analyze(const CommonArgs& args, const std::string& fixations_path,
                const std::string& fixations_ref_path) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto fixation_index = load_fixation_index(fixations_path);
    std::map<std::string, FixationSet> ref_index;
    if (!fixations_ref_path.empty()) ref_index = load_fixation_index(fixations_ref_path);
    else std::cerr << "notice: no --fixations-ref given, CC-vs-sigma output skipped\n";

    std::vector<ManifestRow> rows;
    for (const ManifestRow& row : manifest.rows)
        if (row.fixations) rows.push_back(row);
    if (rows.empty()) {
        std::cerr << "no manifest rows have the fixations flag set\n";
        return kExitInput;
    }

    std::vector<AnalyzeRowData> data(rows.size());
    std::mutex notice_mutex;
    const auto outcomes = run_rows(rows, args.jobs, [&](const ManifestRow& row, RowOutcome& outcome) {
        const std::size_t index = static_cast<std::size_t>(&row - rows.data());
        AnalyzeRowData& d = data[index];

        const FixationSet& fix = fixations_for(fixation_index, row.image_id);
        require_file(row.image_path);
        const PnmImage img = read_pnm(row.image_path);
        const int w = std::holds_alternative<GrayImage>(img) ? std::get<GrayImage>(img).width()
                                                             : std::get<ColorImage>(img).width();
        const int h = std::holds_alternative<GrayImage>(img) ? std::get<GrayImage>(img).height()
                                                             : std::get<ColorImage>(img).height();
        const std::vector<FixationRecord> retained =
            retained_fixations(fix, args.config.density.drop_first_fixation);
        if (retained.empty()) throw std::invalid_argument("no fixations retained");

        // CC sweep against the reference set
        const auto ref_it = ref_index.find(row.image_id);
        if (ref_it != ref_index.end()) {
            d.has_cc = true;
            for (const double sigma : args.config.cc_sigmas) {
                DensityParams dp = args.config.density;
                dp.sigma = sigma;
                const FloatMap a = density_map(fix, w, h, dp);
                const FloatMap b = density_map(ref_it->second, w, h, dp);
                d.cc_by_sigma.push_back(cc(a, b));
            }
        }

        // guidance metrics and shape features need the segmentation
        if (row.labels_path.empty()) {
            std::lock_guard<std::mutex> lock(notice_mutex);
            std::cerr << row.image_id << ": notice: no labels, excluded from guidance and feature outputs\n";
            (void)outcome;
            return;
        }
        require_file(row.labels_path);
        const LabelMap labels = read_label_map(row.labels_path);
        if (labels.width() != w || labels.height() != h)
            throw std::invalid_argument("labels dimensions disagree with image");

        const ContourResult contours = obtain_contours(row, args.config);
        if (contours.mask.width() != w || contours.mask.height() != h)
            throw std::invalid_argument("contour dimensions disagree with image");
        const ClosedRegionSet closed = closed_regions(labels, args.config.closed_region_threshold);
        d.has_guidance = true;
        for (const int n : args.config.metric_ns)
            d.metrics_by_n.push_back(guidance_metrics(fix, contours.mask, closed, n, args.config.density));

        d.has_segments = true;
        d.segments = segment_saliency(labels, fix, args.config.density);
        for (const SegmentSaliency& s : d.segments)
            d.features.push_back(shape_features(labels, s.segment_id));
    });

    // sequential, ordered reduce
    std::ostringstream cc_csv, cc_summary, guid_csv, guid_summary, seg_csv, corr_csv;

    cc_csv << "image_id";
    for (const double sigma : args.config.cc_sigmas) cc_csv << ",cc_sigma" << sigma;
    cc_csv << "\n";
    std::vector<std::vector<double>> cc_cols(args.config.cc_sigmas.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!outcomes[i].ok || !data[i].has_cc) continue;
        cc_csv << rows[i].image_id;
        for (std::size_t k = 0; k < data[i].cc_by_sigma.size(); ++k) {
            cc_csv << "," << fmt(data[i].cc_by_sigma[k]);
            cc_cols[k].push_back(data[i].cc_by_sigma[k]);
        }
        cc_csv << "\n";
    }
    cc_summary << "sigma,mean_cc,ci_low,ci_high,n_images\n";
    for (std::size_t k = 0; k < args.config.cc_sigmas.size(); ++k) {
        const SummaryStat s = summarize(cc_cols[k]);
        cc_summary << fmt(args.config.cc_sigmas[k]) << "," << fmt_or_nan(s.mean, s.n > 0) << ","
                   << fmt_or_nan(s.ci_low, s.defined) << "," << fmt_or_nan(s.ci_high, s.defined) << ","
                   << s.n << "\n";
    }

    guid_csv << "image_id,n,pof,poc,pofc,pocc\n";
    std::map<int, std::array<std::vector<double>, 4>> guid_cols;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!outcomes[i].ok || !data[i].has_guidance) continue;
        for (std::size_t k = 0; k < args.config.metric_ns.size(); ++k) {
            const GuidanceMetrics& m = data[i].metrics_by_n[k];
            const int n = args.config.metric_ns[k];
            guid_csv << rows[i].image_id << "," << n << "," << fmt(m.pof) << "," << fmt(m.poc) << ","
                     << fmt(m.pofc) << "," << fmt(m.pocc) << "\n";
            guid_cols[n][0].push_back(m.pof);
            guid_cols[n][1].push_back(m.poc);
            guid_cols[n][2].push_back(m.pofc);
            guid_cols[n][3].push_back(m.pocc);
        }
    }
    guid_summary << "n,metric,mean,ci_low,ci_high,n_images\n";
    static const char* kMetricNames[4] = {"pof", "poc", "pofc", "pocc"};
    for (const int n : args.config.metric_ns)
        for (int m = 0; m < 4; ++m) {
            const SummaryStat s = summarize(guid_cols[n][m]);
            guid_summary << n << "," << kMetricNames[m] << "," << fmt_or_nan(s.mean, s.n > 0) << ","
                         << fmt_or_nan(s.ci_low, s.defined) << "," << fmt_or_nan(s.ci_high, s.defined)
                         << "," << s.n << "\n";
        }

    seg_csv << "image_id,segment_id";
    for (int k = 0; k < kShapeFeatureCount; ++k) seg_csv << "," << kShapeFeatureNames[k];
    seg_csv << ",fixation_count,area,density,score\n";
    std::vector<ShapeFeatureVector> pooled_features;
    std::vector<double> pooled_scores;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!outcomes[i].ok || !data[i].has_segments) continue;
        for (std::size_t s = 0; s < data[i].segments.size(); ++s) {
            const SegmentSaliency& seg = data[i].segments[s];
            const ShapeFeatureVector& v = data[i].features[s];
            seg_csv << rows[i].image_id << "," << seg.segment_id;
            for (int k = 0; k < kShapeFeatureCount; ++k) seg_csv << "," << fmt(shape_feature(v, k));
            seg_csv << "," << seg.fixation_count << "," << seg.area << "," << fmt(seg.density) << ","
                    << fmt(seg.saliency_score) << "\n";
            pooled_features.push_back(v);
            pooled_scores.push_back(seg.saliency_score);
        }
    }

    corr_csv << "feature,r,degenerate,n_segments\n";
    if (pooled_features.size() >= 3) {
        const auto correlations = feature_correlation(pooled_features, pooled_scores);
        for (int k = 0; k < kShapeFeatureCount; ++k)
            corr_csv << kShapeFeatureNames[k] << "," << fmt(correlations[k].r) << ","
                     << (correlations[k].degenerate ? 1 : 0) << "," << pooled_features.size() << "\n";
    } else {
        std::cerr << "notice: fewer than 3 segments pooled, feature correlations skipped\n";
    }

    if (!ref_index.empty()) {
        atomic_write_text((fs::path(args.out_dir) / "cc_vs_sigma.csv").string(), cc_csv.str());
        atomic_write_text((fs::path(args.out_dir) / "cc_summary.csv").string(), cc_summary.str());
    }
    atomic_write_text((fs::path(args.out_dir) / "guidance_metrics.csv").string(), guid_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "guidance_summary.csv").string(), guid_summary.str());
    atomic_write_text((fs::path(args.out_dir) / "segment_features.csv").string(), seg_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "feature_correlation.csv").string(), corr_csv.str());

    return finish_run(outcomes);
}

int cmd_eval(const CommonArgs& args, const std::string& fixations_path, const std::string& maps_dir,
             const std::vector<std::string>& models, const std::vector<std::string>& pairs) {
    if (models.size() < 1) {
        std::cerr << "--models requires at least one model name\n";
        return kExitInput;
    }
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    const auto fixation_index = load_fixation_index(fixations_path);

    std::vector<ManifestRow> rows;
    for (const ManifestRow& row : manifest.rows)
        if (row.fixations) rows.push_back(row);
    if (rows.empty()) {
        std::cerr << "no manifest rows have the fixations flag set\n";
        return kExitInput;
    }

    struct EvalRow {
        std::vector<RocCurve> curves;  // one per model
    };
    std::vector<EvalRow> data(rows.size());
    const auto outcomes = run_rows(rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const std::size_t index = static_cast<std::size_t>(&row - rows.data());
        const FixationSet& fix = fixations_for(fixation_index, row.image_id);
        for (const std::string& model : models) {
            const std::string path = (fs::path(maps_dir) / (row.image_id + "_" + model + ".fmap")).string();
            require_file(path);
            const FloatMap sal = maybe_blur(read_fmap(path), args.config.eval_blur_sigma);
            data[index].curves.push_back(roc_judd(sal, fix, args.config.density));
        }
    });

    std::ostringstream curves_csv, per_image_csv, mean_curves_csv;
    curves_csv << "model,image_id,threshold,tpr,salient_fraction\n";
    per_image_csv << "model,image_id,auc\n";
    std::vector<ModelRun> runs(models.size());
    std::vector<std::vector<std::vector<double>>> grids(models.size());
    for (std::size_t m = 0; m < models.size(); ++m) runs[m].model = models[m];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!outcomes[i].ok) continue;
        for (std::size_t m = 0; m < models.size(); ++m) {
            const RocCurve& curve = data[i].curves[m];
            for (const RocPoint& p : curve.points)
                curves_csv << models[m] << "," << rows[i].image_id << "," << fmt(p.threshold) << ","
                           << fmt(p.tpr) << "," << fmt(p.salient_fraction) << "\n";
            per_image_csv << models[m] << "," << rows[i].image_id << "," << fmt(curve.auc) << "\n";
            runs[m].image_aucs.emplace_back(rows[i].image_id, curve.auc);
            grids[m].push_back(curve_on_grid(curve));
        }
    }

    mean_curves_csv << "model,salient_fraction,mean_tpr\n";
    for (std::size_t m = 0; m < models.size(); ++m) {
        if (grids[m].empty()) continue;
        for (int k = 0; k <= 100; ++k) {
            double sum = 0.0;
            for (const std::vector<double>& g : grids[m]) sum += g[k];
            mean_curves_csv << models[m] << "," << fmt(k / 100.0) << ","
                            << fmt(sum / static_cast<double>(grids[m].size())) << "\n";
        }
    }

    std::ostringstream summary_csv, diffs_csv;
    summary_csv << "model,mean_auc,ci_low,ci_high\n";
    diffs_csv << "baseline,guided,mean_diff,ci_low,ci_high\n";
    if (!runs.empty() && !runs[0].image_aucs.empty()) {
        if (runs.size() >= 2) {
            const ModelComparison cmp = compare_models(runs);
            for (const ModelSummary& s : cmp.summaries)
                summary_csv << s.model << "," << fmt(s.mean_auc) << "," << fmt_or_nan(s.ci_low, s.ci_defined)
                            << "," << fmt_or_nan(s.ci_high, s.ci_defined) << "\n";
            // explicit pairs when given, otherwise every ordered pair
            const auto want = [&](const PairedDifference& d) {
                if (pairs.empty()) return true;
                for (const std::string& p : pairs)
                    if (p == d.baseline + ":" + d.guided) return true;
                return false;
            };
            for (const PairedDifference& d : cmp.differences)
                if (want(d))
                    diffs_csv << d.baseline << "," << d.guided << "," << fmt(d.mean_diff) << ","
                              << fmt_or_nan(d.ci_low, d.ci_defined) << "," << fmt_or_nan(d.ci_high, d.ci_defined)
                              << "\n";
        } else {
            std::vector<double> aucs;
            for (const auto& [id, auc] : runs[0].image_aucs) aucs.push_back(auc);
            const SummaryStat s = summarize(aucs);
            summary_csv << runs[0].model << "," << fmt(s.mean) << "," << fmt_or_nan(s.ci_low, s.defined)
                        << "," << fmt_or_nan(s.ci_high, s.defined) << "\n";
        }
    }

    atomic_write_text((fs::path(args.out_dir) / "roc_curves.csv").string(), curves_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "auc_per_image.csv").string(), per_image_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "auc_summary.csv").string(), summary_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "mean_curves.csv").string(), mean_curves_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "auc_diffs.csv").string(), diffs_csv.str());
    return finish_run(outcomes);
}

int cmd_pipeline(const CommonArgs& args, const std::string& fixations_path, const std::string& model) {
    const Manifest manifest = read_manifest(args.manifest_path);
    ensure_out_dir(args.out_dir);
    std::map<std::string, FixationSet> fixation_index;
    if (!fixations_path.empty()) fixation_index = load_fixation_index(fixations_path);

    struct PipelineRow {
        bool scored = false;
        double baseline_auc = 0.0, guided_auc = 0.0;
    };
    std::vector<PipelineRow> data(manifest.rows.size());
    const auto outcomes = run_rows(manifest.rows, args.jobs, [&](const ManifestRow& row, RowOutcome&) {
        const std::size_t index = static_cast<std::size_t>(&row - manifest.rows.data());
        const ColorImage image = load_color(row);
        const ContourResult contours = obtain_contours(row, args.config);
        if (contours.mask.width() != image.width() || contours.mask.height() != image.height())
            throw std::invalid_argument("contour dimensions disagree with image");

        const FloatMap closure = closure_map(contours.mask, args.config.closure);
        const PriorResult prior = build_prior(closure, args.config);
        const FloatMap bottom_up = bottom_up_saliency(image, model, args.config);
        const FloatMap guided = combine(bottom_up, prior.map);

        atomic_write_pnm(mask_to_map(contours.mask), out_file(args.out_dir, row.image_id, "_contour.pgm"));
        atomic_write_fmap(closure, out_file(args.out_dir, row.image_id, "_closure.fmap"));
        atomic_write_fmap(prior.map, out_file(args.out_dir, row.image_id, "_prior.fmap"));
        atomic_write_text(out_file(args.out_dir, row.image_id, "_components.csv"), components_csv(prior));
        atomic_write_fmap(bottom_up, out_file(args.out_dir, row.image_id, "_" + model + ".fmap"));
        atomic_write_fmap(guided, out_file(args.out_dir, row.image_id, "_guided_" + model + ".fmap"));
        write_preview(guided, out_file(args.out_dir, row.image_id, "_guided_" + model + ".pgm"));

        if (row.fixations) {
            const FixationSet& fix = fixations_for(fixation_index, row.image_id);
            data[index].baseline_auc =
                roc_judd(maybe_blur(bottom_up, args.config.eval_blur_sigma), fix, args.config.density).auc;
            data[index].guided_auc =
                roc_judd(maybe_blur(guided, args.config.eval_blur_sigma), fix, args.config.density).auc;
            data[index].scored = true;
        }
    });

    std::ostringstream auc_csv;
    auc_csv << "image_id,model,baseline_auc,guided_auc\n";
    ModelRun baseline_run{model, {}}, guided_run{"guided_" + model, {}};
    for (std::size_t i = 0; i < manifest.rows.size(); ++i) {
        if (!outcomes[i].ok) {
            auc_csv << manifest.rows[i].image_id << "," << model << ",absent,absent\n";
            continue;
        }
        if (!data[i].scored) continue;
        auc_csv << manifest.rows[i].image_id << "," << model << "," << fmt(data[i].baseline_auc) << ","
                << fmt(data[i].guided_auc) << "\n";
        baseline_run.image_aucs.emplace_back(manifest.rows[i].image_id, data[i].baseline_auc);
        guided_run.image_aucs.emplace_back(manifest.rows[i].image_id, data[i].guided_auc);
    }

    std::ostringstream summary_csv, diff_csv;
    summary_csv << "model,mean_auc,ci_low,ci_high\n";
    diff_csv << "baseline,guided,mean_diff,ci_low,ci_high\n";
    if (!baseline_run.image_aucs.empty()) {
        const ModelComparison cmp = compare_models({baseline_run, guided_run});
        for (const ModelSummary& s : cmp.summaries)
            summary_csv << s.model << "," << fmt(s.mean_auc) << "," << fmt_or_nan(s.ci_low, s.ci_defined)
                        << "," << fmt_or_nan(s.ci_high, s.ci_defined) << "\n";
        for (const PairedDifference& d : cmp.differences)
            if (d.baseline == model && d.guided == "guided_" + model)
                diff_csv << d.baseline << "," << d.guided << "," << fmt(d.mean_diff) << ","
                         << fmt_or_nan(d.ci_low, d.ci_defined) << "," << fmt_or_nan(d.ci_high, d.ci_defined)
                         << "\n";
    }
    atomic_write_text((fs::path(args.out_dir) / "pipeline_auc.csv").string(), auc_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "pipeline_summary.csv").string(), summary_csv.str());
    atomic_write_text((fs::path(args.out_dir) / "pipeline_diff.csv").string(), diff_csv.str());
    return finish_run(outcomes);
}

}  // namespace ldsal::cli
