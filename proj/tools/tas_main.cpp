#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tas/cache.hpp"
#include "tas/config.hpp"
#include "tas/eval.hpp"
#include "tas/image_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<double> alpha, lambda;
    std::optional<std::string> mode;
    std::optional<bool> rectify;
    std::optional<int> workers;
    std::optional<std::string> cache_dir;
};

// precedence: flags > config file > defaults
tas::RunConfig resolve_config(const CommonArgs& args) {
    tas::RunConfig cfg = args.config_path.empty()
                             ? tas::RunConfig::defaults()
                             : tas::RunConfig::from_file(args.config_path);
    if (args.alpha) {
        cfg.selector.fusion.alpha = *args.alpha;
        cfg.resolved["fusion"]["alpha"] = *args.alpha;
    }
    if (args.lambda) {
        cfg.selector.fusion.lambda = *args.lambda;
        cfg.resolved["fusion"]["lambda"] = *args.lambda;
    }
    if (args.mode) {
        cfg.selector.mode = tas::selector_mode_from_string(*args.mode);
        cfg.resolved["selector"]["mode"] = *args.mode;
    }
    if (args.rectify) {
        cfg.selector.rectify = *args.rectify;
        cfg.resolved["selector"]["rectify"] = *args.rectify;
    }
    if (args.workers) {
        cfg.workers = *args.workers;
        cfg.resolved["io"]["workers"] = *args.workers;
    }
    if (args.cache_dir) {
        cfg.cache_dir = *args.cache_dir;
        cfg.resolved["io"]["cache_dir"] = *args.cache_dir;
    }
    return cfg;
}

void add_common_flags(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--alpha", args.alpha, "P-score weight");
    cmd->add_option("--lambda", args.lambda, "N-score weight");
    cmd->add_option("--mode", args.mode, "selector mode: tas|clip_only|text_only");
    cmd->add_flag("--rectify,!--no-rectify", args.rectify, "spatial rectifier");
    cmd->add_option("--workers", args.workers, "parallel per-image workers");
    cmd->add_option("--cache-dir", args.cache_dir,
                    "cache root (default: $TAS_CACHE_DIR)");
}

int cmd_propose(const CommonArgs& args, const std::string& manifest_path,
                const std::string& out_dir) {
    const tas::RunConfig cfg = resolve_config(args);
    const tas::Backends backends = tas::with_caches(tas::make_backends(cfg), cfg.cache_dir);
    const tas::DatasetManifest manifest = tas::DatasetManifest::load(manifest_path);

    int failures = 0;
    std::set<std::string> done;
    for (const tas::ManifestEntry& entry : manifest.entries) {
        if (!done.insert(entry.image_id).second) continue;
        try {
            const tas::Image image = tas::load_image(entry.image_path);
            tas::write_proposal_cache(out_dir, entry.image_id,
                                      backends.proposer->propose(image));
            std::cout << entry.image_id << ": ok\n";
        } catch (const std::exception& e) {
            std::cerr << entry.image_id << ": error: " << e.what() << "\n";
            ++failures;
        }
    }
    // record provenance next to the per-image files
    fs::create_directories(out_dir);
    std::ofstream meta(fs::path(out_dir) / "propose_meta.json");
    meta << json{{"version", tas::kVersion},
                 {"config", cfg.resolved},
                 {"failures", failures}}
                .dump(2)
         << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_select(const CommonArgs& args, const std::string& manifest_path,
               const std::string& proposals_dir, const std::string& out_path,
               const std::string& overlay_dir) {
    const tas::RunConfig cfg = resolve_config(args);
    const tas::Backends backends = tas::with_caches(tas::make_backends(cfg), cfg.cache_dir);
    const tas::DatasetManifest manifest = tas::DatasetManifest::load(manifest_path);

    tas::EvalOptions options;
    options.proposal_dir = proposals_dir;
    options.overlay_dir = overlay_dir;
    const tas::EvalOutcome outcome = tas::run_eval(manifest, cfg, backends, options);
    tas::write_results(out_path, manifest, outcome, cfg);

    std::cout << "entries: " << manifest.entries.size()
              << "  scored: " << outcome.records.size()
              << "  failures: " << outcome.failures.size() << "\n";
    if (!outcome.records.empty()) {
        std::cout << "oIoU: " << outcome.summary["oiou"].get<double>()
                  << "  mIoU: " << outcome.summary["miou"].get<double>() << "\n";
    }
    for (const tas::EvalFailure& f : outcome.failures) {
        std::cerr << "entry " << f.entry_index << " (" << f.image_id
                  << "): " << f.reason << "\n";
    }
    return outcome.failures.empty() ? 0 : 1;
}

int cmd_eval(const std::string& results_path, const std::string& manifest_path,
             const std::string& out_path) {
    const tas::DatasetManifest manifest = tas::DatasetManifest::load(manifest_path);
    std::ifstream in(results_path);
    if (!in) {
        std::cerr << "cannot read results: " << results_path << "\n";
        return 1;
    }
    std::vector<tas::EvalRecord> records;
    json header;
    std::size_t errors = 0;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line);
        if (first) {
            first = false;
            if (j.contains("version") && j.contains("config")) {
                header = j;
                continue;
            }
        }
        if (j.contains("error")) {
            ++errors;
            continue;
        }
        records.push_back(tas::record_from_json(j));
    }
    if (records.size() + errors != manifest.entries.size()) {
        std::cerr << "warning: results cover " << records.size() + errors
                  << " entries, manifest has " << manifest.entries.size() << "\n";
    }
    if (records.empty()) {
        std::cerr << "no scored records\n";
        return 1;
    }
    const double o = tas::oiou(records);
    const double m = tas::miou(records);
    std::cout << "count " << records.size() << "  failures " << errors << "\n";
    std::cout << "oIoU " << o << "\n";
    std::cout << "mIoU " << m << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << json{{"version", tas::kVersion},
                    {"config", header.is_null() ? json() : header["config"]},
                    {"count", records.size()},
                    {"failures", errors},
                    {"oiou", o},
                    {"miou", m}}
                   .dump(2)
            << "\n";
    }
    return errors == 0 ? 0 : 1;
}

int cmd_ablate(const CommonArgs& args, const std::string& manifest_path,
               const std::string& grid_path, const std::string& proposals_dir,
               const std::string& out_path) {
    const tas::RunConfig cfg = resolve_config(args);
    const tas::Backends backends = tas::with_caches(tas::make_backends(cfg), cfg.cache_dir);
    const tas::DatasetManifest manifest = tas::DatasetManifest::load(manifest_path);

    tas::SweepGrid grid;
    std::ifstream gin(grid_path);
    if (!gin) {
        std::cerr << "cannot read grid: " << grid_path << "\n";
        return 1;
    }
    json g;
    gin >> g;
    if (g.contains("alpha")) grid.alphas = g["alpha"].get<std::vector<double>>();
    if (g.contains("lambda")) grid.lambdas = g["lambda"].get<std::vector<double>>();
    if (g.contains("mode")) {
        for (const json& m : g["mode"]) {
            grid.modes.push_back(tas::selector_mode_from_string(m.get<std::string>()));
        }
    }
    if (g.contains("rectify")) grid.rectify = g["rectify"].get<std::vector<bool>>();

    tas::EvalOptions options;
    options.proposal_dir = proposals_dir;
    const std::vector<json> rows = tas::sweep(manifest, cfg, backends, grid, options);

    std::cout << "alpha   lambda  mode       rectify  oIoU     mIoU     failures\n";
    std::size_t failures = 0;
    for (const json& row : rows) {
        const json& p = row["point"];
        failures += row["failures"].get<std::size_t>();
        auto metric = [&](const char* k) {
            return row[k].is_null() ? std::string("-")
                                    : std::to_string(row[k].get<double>()).substr(0, 6);
        };
        std::cout << p["alpha"].get<double>() << "\t" << p["lambda"].get<double>()
                  << "\t" << p["mode"].get<std::string>() << "\t"
                  << (p["rectify"].get<bool>() ? "on" : "off") << "\t"
                  << metric("oiou") << "\t" << metric("miou") << "\t"
                  << row["failures"].get<std::size_t>() << "\n";
    }
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << json{{"version", tas::kVersion},
                    {"config", cfg.resolved},
                    {"rows", rows}}
                   .dump(2)
            << "\n";
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"training-free referring image segmentation toolkit"};
    app.require_subcommand(1);

    CommonArgs args;
    std::string manifest_path, out_path, proposals_dir, overlay_dir;
    std::string results_path, grid_path;

    CLI::App* propose = app.add_subcommand("propose", "write mask proposal caches");
    add_common_flags(propose, args);
    propose->add_option("--manifest", manifest_path)->required();
    propose->add_option("--out", out_path, "proposal cache directory")->required();

    CLI::App* select = app.add_subcommand("select", "score and pick masks");
    add_common_flags(select, args);
    select->add_option("--manifest", manifest_path)->required();
    select->add_option("--proposals", proposals_dir, "proposal cache directory");
    select->add_option("--out", out_path, "results JSONL")->required();
    select->add_option("--overlay-dir", overlay_dir, "emit overlay PNGs here");

    CLI::App* eval = app.add_subcommand("eval", "metrics from a results file");
    eval->add_option("--results", results_path)->required();
    eval->add_option("--manifest", manifest_path)->required();
    eval->add_option("--out", out_path, "summary JSON");

    CLI::App* ablate = app.add_subcommand("ablate", "sweep a config grid");
    add_common_flags(ablate, args);
    ablate->add_option("--manifest", manifest_path)->required();
    ablate->add_option("--grid", grid_path, "grid JSON")->required();
    ablate->add_option("--proposals", proposals_dir, "proposal cache directory");
    ablate->add_option("--out", out_path, "summary JSON");

    CLI11_PARSE(app, argc, argv);

    try {
        if (propose->parsed()) return cmd_propose(args, manifest_path, out_path);
        if (select->parsed())
            return cmd_select(args, manifest_path, proposals_dir, out_path, overlay_dir);
        if (eval->parsed()) return cmd_eval(results_path, manifest_path, out_path);
        if (ablate->parsed())
            return cmd_ablate(args, manifest_path, grid_path, proposals_dir, out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
