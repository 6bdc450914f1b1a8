#include "tas/eval.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <thread>

#include "tas/errors.hpp"
#include "tas/image_io.hpp"
#include "tas/mining.hpp"

namespace tas {

namespace fs = std::filesystem;
using nlohmann::json;

DatasetManifest DatasetManifest::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("manifest: cannot read " + path);
    DatasetManifest m;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw IoError("manifest: line " + std::to_string(lineno) + ": " + e.what());
        }
        ManifestEntry e;
        e.image_id = j.at("image_id").get<std::string>();
        e.image_path = j.at("image_path").get<std::string>();
        e.expression = j.at("expression").get<std::string>();
        e.gt_rle = rle_from_json(j.at("gt_rle"));
        m.entries.push_back(std::move(e));
    }
    return m;
}

IouResult iou(const BinaryMask& a, const BinaryMask& b) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionMismatch("iou: mask dimensions differ");
    }
    IouResult r;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        const bool va = a.bits[i] != 0, vb = b.bits[i] != 0;
        if (va && vb) ++r.intersection;
        if (va || vb) ++r.union_;
    }
    r.ratio = r.union_ == 0 ? 0.0
                            : static_cast<double>(r.intersection) /
                                  static_cast<double>(r.union_);
    return r;
}

json record_to_json(const EvalRecord& r) {
    return {{"image_id", r.image_id},
            {"expression", r.expression},
            {"chosen_id", r.chosen_id},
            {"intersection", r.intersection},
            {"union", r.union_},
            {"iou", r.iou},
            {"breakdown",
             {{"v", r.breakdown.v},
              {"p", r.breakdown.p},
              {"n", r.breakdown.n},
              {"total", r.breakdown.total}}},
            {"rectified", r.rectified}};
}

EvalRecord record_from_json(const json& j) {
    EvalRecord r;
    r.image_id = j.at("image_id").get<std::string>();
    r.expression = j.at("expression").get<std::string>();
    r.chosen_id = j.at("chosen_id").get<int>();
    r.intersection = j.at("intersection").get<long long>();
    r.union_ = j.at("union").get<long long>();
    r.iou = j.at("iou").get<double>();
    const json& b = j.at("breakdown");
    r.breakdown.proposal_id = r.chosen_id;
    r.breakdown.v = b.at("v").get<double>();
    r.breakdown.p = b.at("p").get<double>();
    r.breakdown.n = b.at("n").get<double>();
    r.breakdown.total = b.at("total").get<double>();
    r.rectified = j.at("rectified").get<bool>();
    return r;
}

double oiou(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw EmptyDataset("oiou: no records");
    long long inter = 0, uni = 0;
    for (const EvalRecord& r : records) {
        inter += r.intersection;
        uni += r.union_;
    }
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double miou(const std::vector<EvalRecord>& records) {
    if (records.empty()) throw EmptyDataset("miou: no records");
    double sum = 0.0;
    for (const EvalRecord& r : records) sum += r.iou;
    return sum / static_cast<double>(records.size());
}

void write_proposal_cache(const std::string& dir, const std::string& image_id,
                          const std::vector<MaskProposal>& proposals) {
    fs::create_directories(dir);
    json arr = json::array();
    for (const MaskProposal& p : proposals) {
        arr.push_back({{"id", p.proposal_id},
                       {"rle", rle_to_json(rle_encode(p.mask))},
                       {"area", p.area},
                       {"bbox", {p.bbox.x_min, p.bbox.y_min, p.bbox.x_max, p.bbox.y_max}}});
    }
    const fs::path final_path = fs::path(dir) / (image_id + ".json");
    const fs::path tmp_path = fs::path(dir) / (image_id + ".json.tmp");
    {
        std::ofstream out(tmp_path);
        out << json{{"image_id", image_id}, {"proposals", arr}}.dump(2) << "\n";
    }
    fs::rename(tmp_path, final_path);
}

std::optional<std::vector<MaskProposal>> load_proposal_cache(
    const std::string& dir, const std::string& image_id) {
    const fs::path path = fs::path(dir) / (image_id + ".json");
    std::ifstream in(path);
    if (!in) return std::nullopt;
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw IoError("proposal cache " + path.string() + ": " + e.what());
    }
    std::vector<MaskProposal> out;
    for (const json& jp : doc.at("proposals")) {
        MaskProposal p = MaskProposal::from_mask(
            jp.at("id").get<int>(), rle_decode(rle_from_json(jp.at("rle"))));
        out.push_back(std::move(p));
    }
    return out;
}

namespace {

struct EntryResult {
    std::optional<EvalRecord> record;
    std::optional<std::string> error;
};

EntryResult eval_entry(const ManifestEntry& entry, std::size_t index,
                       const RunConfig& config, const Backends& backends,
                       const EvalOptions& options, std::mutex& cache_mutex) {
    EntryResult out;
    try {
        const Image image = load_image(entry.image_path);

        std::optional<std::vector<MaskProposal>> proposals;
        if (!options.proposal_dir.empty()) {
            proposals = load_proposal_cache(options.proposal_dir, entry.image_id);
        }
        if (!proposals) {
            proposals = backends.proposer->propose(image);
            if (!options.proposal_dir.empty() && options.write_proposals) {
                std::lock_guard<std::mutex> lock(cache_mutex);
                write_proposal_cache(options.proposal_dir, entry.image_id, *proposals);
            }
        }

        std::vector<MaskProposal> kept;
        for (MaskProposal& p : *proposals) {
            if (p.area >= config.min_mask_area) kept.push_back(std::move(p));
        }
        if (kept.empty()) {
            out.error = "no proposals with area >= " +
                        std::to_string(config.min_mask_area);
            return out;
        }
        for (const MaskProposal& p : kept) {
            if (p.mask.width != image.width || p.mask.height != image.height) {
                throw GeometryMismatch("proposal dimensions do not match image");
            }
        }

        const BinaryMask gt = rle_decode(entry.gt_rle);
        if (gt.width != image.width || gt.height != image.height) {
            out.error = "ground truth dimensions do not match image";
            return out;
        }

        const ReferringQuery query = parse_query(entry.expression, *backends.phrases);
        const SelectionResult sel =
            select(image, kept, query, backends, config.selector);

        const MaskProposal* chosen = nullptr;
        for (const MaskProposal& p : kept) {
            if (p.proposal_id == sel.chosen_id) chosen = &p;
        }
        if (!chosen) throw Error("chosen proposal id missing from candidate list");

        const IouResult overlap = iou(chosen->mask, gt);
        EvalRecord r;
        r.image_id = entry.image_id;
        r.expression = entry.expression;
        r.chosen_id = sel.chosen_id;
        r.intersection = overlap.intersection;
        r.union_ = overlap.union_;
        r.iou = overlap.ratio;
        for (const ScoreBreakdown& s : sel.per_mask) {
            if (s.proposal_id == sel.chosen_id) r.breakdown = s;
        }
        r.rectified = sel.rectified;

        if (!options.overlay_dir.empty()) {
            fs::create_directories(options.overlay_dir);
            const std::string name =
                std::to_string(index) + "_" + entry.image_id + ".png";
            save_image((fs::path(options.overlay_dir) / name).string(),
                       overlay_mask(image, chosen->mask));
        }
        out.record = std::move(r);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

json make_summary(const std::vector<EvalRecord>& records,
                  std::size_t failure_count, const RunConfig& config) {
    json s = {{"version", kVersion},
              {"count", records.size()},
              {"failures", failure_count},
              {"config", config.resolved},
              {"config_fingerprint", config.fingerprint()}};
    if (records.empty()) {
        s["oiou"] = nullptr;
        s["miou"] = nullptr;
    } else {
        s["oiou"] = oiou(records);
        s["miou"] = miou(records);
    }
    return s;
}

}  // namespace

EvalOutcome run_eval(const DatasetManifest& manifest, const RunConfig& config,
                     const Backends& backends, const EvalOptions& options) {
    const std::size_t n = manifest.entries.size();
    std::vector<EntryResult> results(n);
    std::mutex cache_mutex;

    const int workers = std::max(1, std::min<int>(config.workers,
                                                  static_cast<int>(std::max<std::size_t>(n, 1))));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            results[i] = eval_entry(manifest.entries[i], i, config, backends,
                                    options, cache_mutex);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    results[i] = eval_entry(manifest.entries[i], i, config,
                                            backends, options, cache_mutex);
                }
            });
        }
        for (std::thread& t : pool) t.join();
    }

    EvalOutcome out;
    for (std::size_t i = 0; i < n; ++i) {
        if (results[i].record) {
            out.records.push_back(std::move(*results[i].record));
        } else {
            out.failures.push_back({i, manifest.entries[i].image_id,
                                    manifest.entries[i].expression,
                                    results[i].error.value_or("unknown error")});
        }
    }
    out.summary = make_summary(out.records, out.failures.size(), config);
    return out;
}

void write_results(const std::string& path, const DatasetManifest& manifest,
                   const EvalOutcome& outcome, const RunConfig& config) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write results: " + path);
    out << json{{"version", kVersion}, {"config", config.resolved}}.dump() << "\n";
    std::size_t ri = 0, fi = 0;
    for (std::size_t i = 0; i < manifest.entries.size(); ++i) {
        if (fi < outcome.failures.size() && outcome.failures[fi].entry_index == i) {
            const EvalFailure& f = outcome.failures[fi++];
            out << json{{"image_id", f.image_id},
                        {"expression", f.expression},
                        {"error", f.reason}}
                       .dump()
                << "\n";
        } else if (ri < outcome.records.size()) {
            out << record_to_json(outcome.records[ri++]).dump() << "\n";
        }
    }
}

std::vector<json> sweep(const DatasetManifest& manifest, const RunConfig& config,
                        const Backends& backends, const SweepGrid& grid,
                        const EvalOptions& options) {
    const std::vector<double> alphas =
        grid.alphas.empty() ? std::vector<double>{config.selector.fusion.alpha}
                            : grid.alphas;
    const std::vector<double> lambdas =
        grid.lambdas.empty() ? std::vector<double>{config.selector.fusion.lambda}
                             : grid.lambdas;
    const std::vector<SelectorMode> modes =
        grid.modes.empty() ? std::vector<SelectorMode>{config.selector.mode}
                           : grid.modes;
    const std::vector<bool> rectify =
        grid.rectify.empty() ? std::vector<bool>{config.selector.rectify}
                             : grid.rectify;

    std::vector<json> rows;
    for (double a : alphas) {
        for (double l : lambdas) {
            for (SelectorMode m : modes) {
                for (bool r : rectify) {
                    RunConfig point = config;
                    point.selector.fusion.alpha = a;
                    point.selector.fusion.lambda = l;
                    point.selector.mode = m;
                    point.selector.rectify = r;
                    point.resolved["fusion"]["alpha"] = a;
                    point.resolved["fusion"]["lambda"] = l;
                    point.resolved["selector"]["mode"] = to_string(m);
                    point.resolved["selector"]["rectify"] = r;
                    EvalOutcome outcome = run_eval(manifest, point, backends, options);
                    json row = outcome.summary;
                    row["point"] = {{"alpha", a},
                                    {"lambda", l},
                                    {"mode", to_string(m)},
                                    {"rectify", r}};
                    rows.push_back(std::move(row));
                }
            }
        }
    }
    return rows;
}

}  // namespace tas
