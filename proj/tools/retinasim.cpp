// Copyright 2026 The retinasim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: convert | metrics | synth.
//
// Exit codes: 0 success, 2 configuration error, 3 input/format error,
// 4 assertion failure or no-signal (synth), 5 internal error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "retinasim/core/convert.hpp"
#include "retinasim/core/parallel.hpp"
#include "retinasim/dvs/dvs.hpp"
#include "retinasim/io/aer.hpp"
#include "retinasim/io/image_io.hpp"
#include "retinasim/metrics/metrics.hpp"
#include "retinasim/oms/oms.hpp"
#include "retinasim/simd/kernels.hpp"
#include "retinasim/synth/scene.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace retinasim;

namespace {

constexpr const char* kVersion = "0.1.0";

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitInput = 3;
constexpr int kExitAssertion = 4;
constexpr int kExitInternal = 5;

struct RunConfig {
    SensorConfig sensor;
    std::string input;
    std::string pattern = "*.png;*.pgm;*.ppm";
    std::string output;
    std::string format = "pgm"; // pgm | png | aer | csv
    std::string mode = "both";  // dvs | oms | both
    std::optional<double> f1_rgb, f1_dvs, f1_oms;
    unsigned threads = 0; // 0 = hardware concurrency
};

int exit_code_for(const Error& e) {
    switch (e.code()) {
        case Error::Code::config: return kExitConfig;
        case Error::Code::no_signal: return kExitAssertion;
        case Error::Code::internal: return kExitInternal;
        default: return kExitInput;
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Error::Code::config, "cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(Error::Code::config, path + ": " + e.what());
    }
    auto get = [&](const char* key, auto& dst) {
        if (j.contains(key)) {
            try {
                dst = j.at(key).get<std::decay_t<decltype(dst)>>();
            } catch (const json::exception& e) {
                throw Error(Error::Code::config,
                            std::string(path) + ": key '" + key + "': " + e.what());
            }
        }
    };
    get("contrast_threshold", cfg.sensor.contrast_threshold);
    get("oms_threshold", cfg.sensor.oms_threshold);
    get("center_radius", cfg.sensor.center_radius);
    get("surround_radius", cfg.sensor.surround_radius);
    get("surround_weight", cfg.sensor.surround_weight);
    get("log_epsilon", cfg.sensor.log_epsilon);
    get("use_log", cfg.sensor.use_log);
    if (j.contains("boundary_mode"))
        cfg.sensor.boundary_mode =
            boundary_mode_from_name(j.at("boundary_mode").get<std::string>());
    get("input", cfg.input);
    get("pattern", cfg.pattern);
    get("output", cfg.output);
    get("format", cfg.format);
    get("mode", cfg.mode);
    get("threads", cfg.threads);
    double f1 = 0.0;
    if (j.contains("f1_rgb")) { get("f1_rgb", f1); cfg.f1_rgb = f1; }
    if (j.contains("f1_dvs")) { get("f1_dvs", f1); cfg.f1_dvs = f1; }
    if (j.contains("f1_oms")) { get("f1_oms", f1); cfg.f1_oms = f1; }
}

json config_to_json(const RunConfig& cfg) {
    json j;
    j["contrast_threshold"] = cfg.sensor.contrast_threshold;
    j["oms_threshold"] = cfg.sensor.oms_threshold;
    j["center_radius"] = cfg.sensor.center_radius;
    j["surround_radius"] = cfg.sensor.surround_radius;
    j["surround_weight"] = cfg.sensor.surround_weight;
    j["boundary_mode"] = boundary_mode_name(cfg.sensor.boundary_mode);
    j["log_epsilon"] = cfg.sensor.log_epsilon;
    j["use_log"] = cfg.sensor.use_log;
    j["input"] = cfg.input;
    j["pattern"] = cfg.pattern;
    j["output"] = cfg.output;
    j["format"] = cfg.format;
    j["mode"] = cfg.mode;
    j["threads"] = cfg.threads;
    if (cfg.f1_rgb) j["f1_rgb"] = *cfg.f1_rgb;
    if (cfg.f1_dvs) j["f1_dvs"] = *cfg.f1_dvs;
    if (cfg.f1_oms) j["f1_oms"] = *cfg.f1_oms;
    return j;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Error::Code::io, "cannot open for writing: " + path);
    out << text;
    if (!out) throw Error(Error::Code::io, "write failed: " + path);
}

void write_manifest(const std::string& directory, const char* command,
                    const RunConfig& cfg, const json& extra) {
    json manifest = config_to_json(cfg);
    manifest["command"] = command;
    manifest["tool_version"] = kVersion;
    for (const auto& [key, value] : extra.items()) manifest[key] = value;
    write_text_file((fs::path(directory) / "manifest.json").string(),
                    manifest.dump(2) + "\n");
}

FrameSequence<LuminanceFrame> load_luminance(const RunConfig& cfg) {
    std::cerr << "reading frames from " << cfg.input << " (pattern " << cfg.pattern
              << ")\n";
    const auto rgb = read_image_sequence(cfg.input, cfg.pattern);
    FrameSequence<LuminanceFrame> lum;
    lum.frame_rate = rgb.frame_rate;
    lum.frames.resize(rgb.frames.size());
    parallel_for(
        rgb.frames.size(),
        [&](std::size_t i) { lum.frames[i] = rgb_to_luminance(rgb.frames[i]); },
        cfg.threads);
    return lum;
}

struct PipelineOutput {
    FrameSequence<EventFrame> dvs;
    FrameSequence<SpikeFrame> oms;
    bool has_oms = false;
    int height = 0, width = 0;
};

PipelineOutput run_pipeline(const RunConfig& cfg) {
    cfg.sensor.validate();
    if (cfg.mode != "dvs" && cfg.mode != "oms" && cfg.mode != "both")
        throw Error(Error::Code::config, "unknown mode '" + cfg.mode + "'");
    const auto lum = load_luminance(cfg);
    PipelineOutput out;
    out.height = lum.frames.front().height;
    out.width = lum.frames.front().width;
    std::cerr << "simulating events for " << lum.frames.size() << " frames\n";
    out.dvs = dvs_sequence(lum, cfg.sensor);
    if (cfg.mode == "oms" || cfg.mode == "both") {
        std::cerr << "extracting motion spikes\n";
        out.oms = oms_sequence(out.dvs, cfg.sensor, cfg.threads);
        out.has_oms = true;
    }
    return out;
}

std::vector<BitRateReport> pipeline_reports(const PipelineOutput& out,
                                            const RunConfig& cfg,
                                            bool include_rgb) {
    std::vector<BitRateReport> reports;
    const std::int64_t frames = static_cast<std::int64_t>(out.dvs.frames.size());
    if (include_rgb) {
        BitRateReport rgb;
        rgb.representation = Representation::rgb;
        rgb.frame_count = frames;
        rgb.height = out.height;
        rgb.width = out.width;
        rgb.bit_depth = 24;
        rgb.bits_per_frame_dense =
            static_cast<std::int64_t>(dense_bit_rate(out.height, out.width, 24));
        rgb.avg_bits_per_frame_sparse = static_cast<double>(rgb.bits_per_frame_dense);
        if (cfg.f1_rgb) {
            rgb.f1_input = cfg.f1_rgb;
            rgb.perf_per_bit = perf_per_bit(*cfg.f1_rgb, rgb.avg_bits_per_frame_sparse);
        }
        reports.push_back(rgb);
    }
    if (cfg.mode == "dvs" || cfg.mode == "both") {
        BitRateReport dvs;
        dvs.representation = Representation::dvs;
        dvs.frame_count = frames;
        dvs.height = out.height;
        dvs.width = out.width;
        dvs.bit_depth = 1;
        dvs.bits_per_frame_dense =
            static_cast<std::int64_t>(dense_bit_rate(out.height, out.width, 1));
        dvs.avg_bits_per_frame_sparse = avg_bit_rate(out.dvs, 1);
        if (cfg.f1_dvs && dvs.avg_bits_per_frame_sparse > 0.0) {
            dvs.f1_input = cfg.f1_dvs;
            dvs.perf_per_bit = perf_per_bit(*cfg.f1_dvs, dvs.avg_bits_per_frame_sparse);
        }
        reports.push_back(dvs);
    }
    if (out.has_oms) {
        BitRateReport oms;
        oms.representation = Representation::oms;
        oms.frame_count = frames;
        oms.height = out.height;
        oms.width = out.width;
        oms.bit_depth = 1;
        oms.bits_per_frame_dense =
            static_cast<std::int64_t>(dense_bit_rate(out.height, out.width, 1));
        oms.avg_bits_per_frame_sparse = avg_bit_rate(out.oms, 1);
        if (cfg.f1_oms && oms.avg_bits_per_frame_sparse > 0.0) {
            oms.f1_input = cfg.f1_oms;
            oms.perf_per_bit = perf_per_bit(*cfg.f1_oms, oms.avg_bits_per_frame_sparse);
        }
        reports.push_back(oms);
    }
    return reports;
}

int cmd_convert(const RunConfig& cfg) {
    if (cfg.input.empty()) throw Error(Error::Code::config, "convert: --input is required");
    if (cfg.output.empty()) throw Error(Error::Code::config, "convert: --output is required");
    if (cfg.format != "pgm" && cfg.format != "png" && cfg.format != "aer" &&
        cfg.format != "csv")
        throw Error(Error::Code::config, "unknown format '" + cfg.format + "'");

    const PipelineOutput out = run_pipeline(cfg);
    fs::create_directories(cfg.output);

    const bool want_dvs = cfg.mode == "dvs" || cfg.mode == "both";
    if (cfg.format == "pgm" || cfg.format == "png") {
        const ImageFormat imgfmt = image_format_from_name(cfg.format);
        if (want_dvs)
            write_event_frames(out.dvs, (fs::path(cfg.output) / "dvs").string(), imgfmt);
        if (out.has_oms)
            write_spike_frames(out.oms, (fs::path(cfg.output) / "oms").string(), imgfmt);
    } else if (cfg.format == "aer") {
        if (want_dvs)
            write_aer_file((fs::path(cfg.output) / "dvs.aer").string(),
                           encode_aer(out.dvs));
        if (out.has_oms)
            write_aer_file((fs::path(cfg.output) / "oms.aer").string(),
                           encode_aer(out.oms));
    } else { // csv
        const auto reports = pipeline_reports(out, cfg, /*include_rgb=*/true);
        write_text_file((fs::path(cfg.output) / "metrics.csv").string(),
                        report_to_csv(reports));
    }

    write_manifest(cfg.output, "convert", cfg,
                   json{{"frames", out.dvs.frames.size()},
                        {"height", out.height},
                        {"width", out.width}});

    // per-sequence summary on stdout
    if (want_dvs)
        std::cout << "dvs frames=" << out.dvs.frames.size()
                  << " avg_sparse_bits_per_frame=" << format_double(avg_bit_rate(out.dvs, 1))
                  << "\n";
    if (out.has_oms)
        std::cout << "oms frames=" << out.oms.frames.size()
                  << " avg_sparse_bits_per_frame=" << format_double(avg_bit_rate(out.oms, 1))
                  << "\n";
    return kExitOk;
}

std::string human_sig3(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

struct MetricsArgs {
    std::string dvs_aer, oms_aer;
    int height = 0, width = 0;
    int bit_depth_rgb = 24, bit_depth_event = 1;
    std::optional<double> avg_bits_rgb, avg_bits_dvs, avg_bits_oms;
    bool ratios = false;
    std::string output;
};

int cmd_metrics(const RunConfig& cfg, const MetricsArgs& args) {
    std::vector<BitRateReport> reports;

    if (!cfg.input.empty()) {
        RunConfig pipeline_cfg = cfg;
        pipeline_cfg.mode = "both";
        const PipelineOutput out = run_pipeline(pipeline_cfg);
        reports = pipeline_reports(out, cfg, /*include_rgb=*/true);
    } else {
        if (args.height > 0 && args.width > 0) {
            BitRateReport rgb;
            rgb.representation = Representation::rgb;
            rgb.height = args.height;
            rgb.width = args.width;
            rgb.bit_depth = args.bit_depth_rgb;
            rgb.bits_per_frame_dense = static_cast<std::int64_t>(
                dense_bit_rate(args.height, args.width, args.bit_depth_rgb));
            rgb.avg_bits_per_frame_sparse = static_cast<double>(rgb.bits_per_frame_dense);
            reports.push_back(rgb);
        }
        for (const auto& [path, rep] :
             {std::pair{args.dvs_aer, Representation::dvs},
              std::pair{args.oms_aer, Representation::oms}}) {
            if (path.empty()) continue;
            const auto seq = decode_aer(read_aer_file(path));
            if (seq.frames.empty())
                throw Error(Error::Code::invalid_input,
                            path + ": stream has no events; nothing to measure");
            BitRateReport r;
            r.representation = rep;
            r.frame_count = static_cast<std::int64_t>(seq.frames.size());
            r.height = seq.frames.front().height;
            r.width = seq.frames.front().width;
            r.bit_depth = args.bit_depth_event;
            r.bits_per_frame_dense = static_cast<std::int64_t>(
                dense_bit_rate(r.height, r.width, args.bit_depth_event));
            r.avg_bits_per_frame_sparse = avg_bit_rate(seq, args.bit_depth_event);
            reports.push_back(r);
        }
    }

    // published-value overrides and f1 attachment
    for (BitRateReport& r : reports) {
        std::optional<double> override_bits, f1;
        switch (r.representation) {
            case Representation::rgb: override_bits = args.avg_bits_rgb; f1 = cfg.f1_rgb; break;
            case Representation::dvs: override_bits = args.avg_bits_dvs; f1 = cfg.f1_dvs; break;
            case Representation::oms: override_bits = args.avg_bits_oms; f1 = cfg.f1_oms; break;
        }
        if (override_bits) r.avg_bits_per_frame_sparse = *override_bits;
        if (f1) {
            r.f1_input = f1;
            if (r.avg_bits_per_frame_sparse > 0.0)
                r.perf_per_bit = perf_per_bit(*f1, r.avg_bits_per_frame_sparse);
        }
    }

    // rows built purely from published numbers (no measurement source)
    auto ensure_row = [&](Representation rep, std::optional<double> bits,
                          std::optional<double> f1) {
        for (const BitRateReport& r : reports)
            if (r.representation == rep) return;
        if (!bits) return;
        BitRateReport r;
        r.representation = rep;
        r.bit_depth = rep == Representation::rgb ? args.bit_depth_rgb : args.bit_depth_event;
        r.avg_bits_per_frame_sparse = *bits;
        if (f1) {
            r.f1_input = f1;
            r.perf_per_bit = perf_per_bit(*f1, *bits);
        }
        reports.push_back(r);
    };
    ensure_row(Representation::rgb, args.avg_bits_rgb, cfg.f1_rgb);
    ensure_row(Representation::dvs, args.avg_bits_dvs, cfg.f1_dvs);
    ensure_row(Representation::oms, args.avg_bits_oms, cfg.f1_oms);

    if (args.ratios) {
        std::size_t with_perf = 0;
        for (const BitRateReport& r : reports)
            if (r.perf_per_bit) ++with_perf;
        if (with_perf < 2)
            throw Error(Error::Code::config,
                        "--ratios needs f1 inputs for at least two representations");
    }

    const std::string csv = report_to_csv(reports, args.ratios);
    if (args.output.empty())
        std::cout << csv;
    else
        write_text_file(args.output, csv);

    // human-readable summary, 3 significant figures
    for (const BitRateReport& r : reports) {
        std::cerr << representation_name(r.representation)
                  << ": avg_bits/frame=" << human_sig3(r.avg_bits_per_frame_sparse);
        if (r.perf_per_bit) std::cerr << " perf/bit=" << human_sig3(*r.perf_per_bit);
        std::cerr << "\n";
    }
    if (args.ratios) {
        for (const BitRateReport& a : reports)
            for (const BitRateReport& b : reports)
                if (a.perf_per_bit && b.perf_per_bit && &a != &b)
                    std::cerr << representation_name(a.representation) << "/"
                              << representation_name(b.representation) << " = "
                              << human_sig3(*a.perf_per_bit / *b.perf_per_bit) << "x\n";
    }
    return kExitOk;
}

struct SynthArgs {
    std::string spec_path;
    std::optional<double> max_suppression_ratio;
    bool require_fraction_ordering = false;
    bool require_bitrate_ordering = false;
    int dilation = -1; // -1: use surround radius
    bool write_frames = false;
};

int cmd_synth(const RunConfig& cfg, const SynthArgs& args) {
    if (args.spec_path.empty())
        throw Error(Error::Code::config, "synth: --spec is required");
    cfg.sensor.validate();

    const SceneSpec spec = load_scene_spec(args.spec_path);
    std::cerr << "rendering " << spec.frame_count << " frames at " << spec.height
              << "x" << spec.width << "\n";
    const RenderedScene scene = render_scene(spec);
    const auto dvs = dvs_sequence(scene.frames, cfg.sensor);
    const auto oms = oms_sequence(dvs, cfg.sensor, cfg.threads);

    const int dilation = args.dilation >= 0 ? args.dilation : cfg.sensor.surround_radius;
    const bool has_object = spec.object_rect[2] > 0 && spec.object_rect[3] > 0;

    std::vector<std::pair<std::string, std::string>> rows;
    double ratio = 0.0;
    try {
        ratio = suppression_ratio(dvs, oms);
    } catch (const Error& e) {
        if (e.code() != Error::Code::no_signal) throw;
        std::cout << "no DVS events: suppression ratio undefined\n";
        std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
        return kExitAssertion; // documented no-signal status
    }
    rows.emplace_back("suppression_ratio", format_double(ratio));
    rows.emplace_back("dvs_avg_bits_per_frame", format_double(avg_bit_rate(dvs, 1)));
    rows.emplace_back("oms_avg_bits_per_frame", format_double(avg_bit_rate(oms, 1)));

    double dvs_fraction = 0.0, oms_fraction = 0.0;
    if (has_object) {
        dvs_fraction = object_spike_fraction(dvs, scene.truth, dilation);
        rows.emplace_back("dvs_object_fraction", format_double(dvs_fraction));
        try {
            oms_fraction = object_spike_fraction(oms, scene.truth, dilation);
            rows.emplace_back("oms_object_fraction", format_double(oms_fraction));
        } catch (const Error& e) {
            if (e.code() != Error::Code::no_signal) throw;
            rows.emplace_back("oms_object_fraction", "");
        }
    }

    for (const auto& [key, value] : rows) std::cout << key << "=" << value << "\n";

    if (!cfg.output.empty()) {
        fs::create_directories(cfg.output);
        std::ostringstream csv;
        csv << "metric,value\n";
        for (const auto& [key, value] : rows) csv << key << "," << value << "\n";
        write_text_file((fs::path(cfg.output) / "baselines.csv").string(), csv.str());
        write_manifest(cfg.output, "synth", cfg,
                       json{{"scene_spec", json::parse(scene_spec_to_json(spec))},
                            {"dilation", dilation}});
        if (args.write_frames) {
            write_event_frames(dvs, (fs::path(cfg.output) / "dvs").string(),
                               ImageFormat::pgm);
            write_spike_frames(oms, (fs::path(cfg.output) / "oms").string(),
                               ImageFormat::pgm);
        }
    }

    int status = kExitOk;
    auto check = [&](bool ok, const std::string& what) {
        if (!ok) {
            std::cerr << "error[assertion]: " << what << "\n";
            status = kExitAssertion;
        }
    };
    if (args.max_suppression_ratio)
        check(ratio < *args.max_suppression_ratio,
              "suppression_ratio " + format_double(ratio) + " not below " +
                  format_double(*args.max_suppression_ratio));
    if (args.require_fraction_ordering) {
        if (!has_object)
            throw Error(Error::Code::config,
                        "--require-fraction-ordering needs a scene with an object");
        check(oms_fraction >= dvs_fraction,
              "oms_object_fraction " + format_double(oms_fraction) +
                  " below dvs_object_fraction " + format_double(dvs_fraction));
    }
    if (args.require_bitrate_ordering)
        check(avg_bit_rate(oms, 1) < avg_bit_rate(dvs, 1),
              "oms average bit rate not below dvs average bit rate");
    return status;
}

std::string find_config_arg(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--config" && i + 1 < argc) return argv[i + 1];
        if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
    }
    return {};
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"retina-inspired event simulation and bandwidth analysis"};
    app.set_version_flag("--version", std::string("retinasim ") + kVersion);
    app.fallthrough();
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    std::string simd_choice;

    // precedence: defaults < config file < explicit flags. The config file
    // is applied to the bound variables before parsing, so CLI11 only
    // overwrites what was actually passed.
    try {
        const std::string pre = find_config_arg(argc, argv);
        if (!pre.empty()) apply_config_file(cfg, pre);
    } catch (const Error& e) {
        std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    }

    // shared sensor/config options; defaults are the published operating point
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path,
                        "JSON config file; flags override file values");
        cmd->add_option("--contrast-threshold", cfg.sensor.contrast_threshold,
                        "temporal contrast threshold C")
            ->default_str("0.1");
        cmd->add_option("--oms-threshold", cfg.sensor.oms_threshold,
                        "spike threshold on center-surround difference")
            ->default_str("0.1");
        cmd->add_option("--center-radius", cfg.sensor.center_radius,
                        "center disk radius r1")
            ->default_str("1");
        cmd->add_option("--surround-radius", cfg.sensor.surround_radius,
                        "surround disk radius r2")
            ->default_str("5");
        cmd->add_option("--surround-weight", cfg.sensor.surround_weight,
                        "surround response weight")
            ->default_str("1");
        cmd->add_option("--boundary", cfg.sensor.boundary_mode,
                        "convolution boundary mode: replicate|zero")
            ->transform(CLI::CheckedTransformer(
                std::map<std::string, BoundaryMode>{
                    {"replicate", BoundaryMode::replicate},
                    {"zero", BoundaryMode::zero}},
                CLI::ignore_case))
            ->default_str("replicate");
        cmd->add_option("--log-epsilon", cfg.sensor.log_epsilon,
                        "epsilon added before the log transform")
            ->default_str("0.0039215686 (1/255)");
        cmd->add_option("--use-log", cfg.sensor.use_log,
                        "apply the contrast threshold in the log domain")
            ->default_str("true");
        cmd->add_option("--threads", cfg.threads,
                        "worker threads (0 = hardware concurrency)")
            ->default_str("0");
        cmd->add_option("--simd", simd_choice,
                        "kernel instruction set: scalar|avx2|neon (default: best)");
    };

    // convert
    CLI::App* convert = app.add_subcommand(
        "convert", "convert an image sequence to event and spike outputs");
    add_common(convert);
    convert->add_option("--input", cfg.input, "directory of input frames");
    convert->add_option("--pattern", cfg.pattern, "filename pattern (';'-separated globs)")
        ->default_str("*.png;*.pgm;*.ppm");
    convert->add_option("--output", cfg.output, "output directory");
    convert->add_option("--format", cfg.format, "output format: pgm|png|aer|csv")
        ->default_str("pgm");
    convert->add_option("--mode", cfg.mode, "pipeline stages: dvs|oms|both")
        ->default_str("both");

    // metrics
    MetricsArgs margs;
    CLI::App* metrics = app.add_subcommand(
        "metrics", "bandwidth and performance-per-bit report (CSV)");
    add_common(metrics);
    metrics->add_option("--input", cfg.input,
                        "directory of frames; runs the full pipeline in-memory");
    metrics->add_option("--pattern", cfg.pattern, "filename pattern")
        ->default_str("*.png;*.pgm;*.ppm");
    metrics->add_option("--dvs-aer", margs.dvs_aer, "event stream file to measure");
    metrics->add_option("--oms-aer", margs.oms_aer, "spike stream file to measure");
    metrics->add_option("--height", margs.height, "frame height for the rgb row");
    metrics->add_option("--width", margs.width, "frame width for the rgb row");
    metrics->add_option("--bit-depth-rgb", margs.bit_depth_rgb, "rgb bits per pixel")
        ->default_str("24");
    metrics->add_option("--bit-depth-event", margs.bit_depth_event,
                        "event/spike bits per element")
        ->default_str("1");
    metrics->add_option("--f1-rgb", cfg.f1_rgb, "published F1 for rgb");
    metrics->add_option("--f1-dvs", cfg.f1_dvs, "published F1 for dvs");
    metrics->add_option("--f1-oms", cfg.f1_oms, "published F1 for oms");
    metrics->add_option("--avg-bits-rgb", margs.avg_bits_rgb,
                        "override/declare rgb average bits per frame");
    metrics->add_option("--avg-bits-dvs", margs.avg_bits_dvs,
                        "override/declare dvs average bits per frame");
    metrics->add_option("--avg-bits-oms", margs.avg_bits_oms,
                        "override/declare oms average bits per frame");
    metrics->add_flag("--ratios", margs.ratios, "append pairwise perf-per-bit ratio columns");
    metrics->add_option("--output", margs.output, "write CSV here instead of stdout");

    // synth
    SynthArgs sargs;
    CLI::App* synth = app.add_subcommand(
        "synth", "render an oracle scene, run both pipelines, report suppression");
    add_common(synth);
    synth->add_option("--spec", sargs.spec_path, "scene spec JSON file");
    synth->add_option("--output", cfg.output, "directory for baselines.csv and manifest");
    synth->add_option("--dilation", sargs.dilation,
                      "object mask dilation in px (-1: surround radius)")
        ->default_str("-1");
    synth->add_option("--max-suppression-ratio", sargs.max_suppression_ratio,
                      "assert suppression_ratio is below this value (exit 4 otherwise)");
    synth->add_flag("--require-fraction-ordering", sargs.require_fraction_ordering,
                    "assert oms object fraction >= dvs object fraction");
    synth->add_flag("--require-bitrate-ordering", sargs.require_bitrate_ordering,
                    "assert oms average bit rate < dvs average bit rate");
    synth->add_flag("--write-frames", sargs.write_frames,
                    "also dump dvs/oms frames as netpbm images");

    CLI11_PARSE(app, argc, argv);

    try {
        if (!simd_choice.empty()) {
            bool ok = false;
            for (simd::Isa isa : {simd::Isa::scalar, simd::Isa::avx2, simd::Isa::neon})
                if (simd_choice == simd::isa_name(isa)) ok = simd::set_active_isa(isa);
            if (!ok)
                throw Error(Error::Code::config,
                            "--simd: '" + simd_choice + "' is not available on this CPU");
        }
        std::cerr << "kernels: " << simd::isa_name(simd::active_isa()) << "\n";

        if (app.got_subcommand(convert)) return cmd_convert(cfg);
        if (app.got_subcommand(metrics)) return cmd_metrics(cfg, margs);
        if (app.got_subcommand(synth)) return cmd_synth(cfg, sargs);
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "error[" << e.code_name() << "]: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error[internal]: " << e.what() << "\n";
        return kExitInternal;
    }
}
