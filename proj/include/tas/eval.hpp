#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tas/config.hpp"
#include "tas/rle.hpp"
#include "tas/scoring.hpp"

namespace tas {

struct ManifestEntry {
    std::string image_id;
    std::string image_path;
    std::string expression;
    Rle gt_rle;
};

// JSON Lines, one {"image_id","image_path","expression","gt_rle"} per line.
// image_ids repeat when an image has several expressions.
struct DatasetManifest {
    std::vector<ManifestEntry> entries;

    static DatasetManifest load(const std::string& path);
};

struct IouResult {
    long long intersection = 0;
    long long union_ = 0;
    double ratio = 0.0;  // 0 when union is 0
};

// Throws DimensionMismatch on unequal grids.
IouResult iou(const BinaryMask& a, const BinaryMask& b);

struct EvalRecord {
    std::string image_id;
    std::string expression;
    int chosen_id = 0;
    long long intersection = 0;
    long long union_ = 0;
    double iou = 0.0;
    ScoreBreakdown breakdown;  // of the chosen mask
    bool rectified = false;
};

nlohmann::json record_to_json(const EvalRecord& r);
EvalRecord record_from_json(const nlohmann::json& j);

// Sum of intersections over sum of unions. Throws EmptyDataset.
double oiou(const std::vector<EvalRecord>& records);
// Mean of per-record IoU. Throws EmptyDataset.
double miou(const std::vector<EvalRecord>& records);

struct EvalFailure {
    std::size_t entry_index = 0;
    std::string image_id;
    std::string expression;
    std::string reason;
};

struct EvalOptions {
    std::string proposal_dir;   // read proposals from here when present
    bool write_proposals = false;
    std::string overlay_dir;    // emit overlay PNGs when set
};

struct EvalOutcome {
    std::vector<EvalRecord> records;      // manifest order, failures excluded
    std::vector<EvalFailure> failures;    // manifest order
    nlohmann::json summary;
};

// Batch harness: per entry load -> propose (cache preferred) -> filter ->
// select -> IoU vs ground truth. Failures are recorded with a reason and
// excluded from metrics. Fan-out is bounded by config.workers; aggregation
// order is always manifest order.
EvalOutcome run_eval(const DatasetManifest& manifest, const RunConfig& config,
                     const Backends& backends, const EvalOptions& options = {});

// Results JSONL: a header object with version + resolved config, then one
// line per manifest entry (an EvalRecord or an {"error": ...} object).
void write_results(const std::string& path, const DatasetManifest& manifest,
                   const EvalOutcome& outcome, const RunConfig& config);

struct SweepGrid {
    std::vector<double> alphas;      // empty = config value
    std::vector<double> lambdas;
    std::vector<SelectorMode> modes;
    std::vector<bool> rectify;
};

// Cartesian product of the grid; one summary row per point. The shared
// backends keep embedding/caption caches warm across points.
std::vector<nlohmann::json> sweep(const DatasetManifest& manifest,
                                  const RunConfig& config,
                                  const Backends& backends,
                                  const SweepGrid& grid,
                                  const EvalOptions& options = {});

// Proposal cache: one JSON file per image_id.
void write_proposal_cache(const std::string& dir, const std::string& image_id,
                          const std::vector<MaskProposal>& proposals);
std::optional<std::vector<MaskProposal>> load_proposal_cache(
    const std::string& dir, const std::string& image_id);

}  // namespace tas
