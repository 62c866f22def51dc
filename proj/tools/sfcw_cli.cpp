#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "sfcw/config_file.hpp"
#include "sfcw/container.hpp"
#include "sfcw/conversion.hpp"
#include "sfcw/errors.hpp"
#include "sfcw/pipeline.hpp"
#include "sfcw/simulator.hpp"
#include "sfcw/tracking.hpp"

namespace fs = std::filesystem;
using namespace sfcw;

namespace {

enum ExitCode { kOk = 0, kOther = 1, kUsage = 2, kData = 3, kNumeric = 4 };

void write_text(const fs::path& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw DataError("write to '" + path.string() + "' failed");
}

PipelineConfig load_pipeline_config(const std::string& path) {
  if (path.empty()) return {};
  return pipeline_config_from(load_key_values(path), PipelineConfig{});
}

struct DetectionRow {
  int segment = 0;
  PolarLocation location;
  std::optional<double> breath_hz;
};

// Reads the CSV written by `detect`; columns are located by name.
std::vector<DetectionRow> read_detections(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open detections file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw DataError("detections file '" + path.string() + "' is empty");
  std::map<std::string, std::size_t> col;
  {
    const auto names = split_list(line);
    for (std::size_t i = 0; i < names.size(); ++i) col[names[i]] = i;
  }
  for (const char* need : {"segment", "d_m", "theta_rad"}) {
    if (!col.count(need)) throw DataError("detections file lacks column '" + std::string(need) + "'");
  }
  std::vector<DetectionRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    // split_list drops empty fields, so split by hand to keep column positions.
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (!line.empty() && line.back() == ',') f.emplace_back();
    auto field = [&](const std::string& name) -> const std::string& {
      const std::size_t i = col.at(name);
      if (i >= f.size()) throw DataError(path.string() + ":" + std::to_string(lineno) + ": short row");
      return f[i];
    };
    try {
      DetectionRow r;
      r.segment = std::stoi(field("segment"));
      r.location = {std::stod(field("d_m")), std::stod(field("theta_rad"))};
      if (col.count("breath_hz") && !field("breath_hz").empty()) r.breath_hz = std::stod(field("breath_hz"));
      rows.push_back(r);
    } catch (const std::logic_error&) {
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": malformed number");
    }
  }
  return rows;
}

int run_simulate(const std::string& scenario_path, const std::string& out, std::optional<std::uint64_t> seed) {
  Scenario sc = scenario_from(load_key_values(scenario_path));
  if (seed) sc.scene.clutter.seed = *seed;
  const MeasurementCube cube = simulate(sc.scene, sc.radar);
  write_container(cube, fs::path(out));
  std::cerr << "wrote " << out << ": L=" << cube.L << " K=" << cube.K << " M=" << cube.M << ", "
            << sc.scene.persons.size() << " person(s)\n";
  return kOk;
}

int run_convert(const std::string& raw_dir, const std::string& out) {
  const RawRecording raw = read_raw_recording(raw_dir);
  const MeasurementCube cube = convert_recording(raw);
  write_container(cube, fs::path(out));
  std::cerr << "wrote " << out << ": L=" << cube.L << " K=" << cube.K << " M=" << cube.M << '\n';
  return kOk;
}

struct DetectArgs {
  std::string in, out, config, tracks, order, spectrum;
  bool no_accumulate = false;
};

PipelineResult pipeline_for(const std::string& in, const std::string& config_path, bool no_accumulate,
                            PipelineConfig* used = nullptr) {
  PipelineConfig pc = load_pipeline_config(config_path);
  if (no_accumulate) pc.accumulate = false;
  const MeasurementCube cube = read_container(fs::path(in));
  PipelineResult res = run_pipeline(cube, pc);
  if (used) *used = pc;
  return res;
}

int run_detect(const DetectArgs& a) {
  const PipelineResult res = pipeline_for(a.in, a.config, a.no_accumulate);
  write_text(a.out, detections_csv(res));
  if (!a.tracks.empty()) write_text(a.tracks, tracks_csv(res));
  if (!a.spectrum.empty()) write_text(a.spectrum, spectrum_csv(res.spectrum));
  if (!a.order.empty()) {
    std::ostringstream os;
    for (const auto& s : res.segments) {
      os << "# segment " << s.index << " P_hat " << s.order.P_hat << '\n' << order_csv(s.moe_eigvals, s.order);
    }
    write_text(a.order, os.str());
  }
  for (const auto& s : res.segments) {
    std::cerr << "segment " << s.index << ": P_hat=" << s.order.P_hat << " detections="
              << s.detections.detections.size() << '\n';
  }
  return kOk;
}

int run_vitals(const std::string& in, const std::string& out, const std::string& config,
               const std::string& spectrum_out) {
  PipelineConfig pc;
  const PipelineResult res = pipeline_for(in, config, false, &pc);
  write_text(out, vitals_csv(res));
  if (!spectrum_out.empty()) write_text(spectrum_out, breathing_spectrum_csv(res, pc));
  for (const auto& t : res.tracks) {
    std::printf("track %d: d=%.3f m theta=%.1f deg breathing=", t.label, t.last_location().d,
                rad2deg(t.last_location().theta));
    if (t.breath_freq) {
      std::printf("%.4f Hz (%.1f /min)\n", *t.breath_freq, 60.0 * *t.breath_freq);
    } else {
      std::printf("n/a\n");
    }
  }
  return kOk;
}

int run_evaluate(const std::string& in, const std::string& truth_path, const std::string& out,
                 const std::string& id, const std::string& obstacle, double d_match) {
  const MeasurementCube cube = read_container(fs::path(truth_path));
  if (!cube.ground_truth) throw DataError("'" + truth_path + "' carries no ground truth");
  const auto rows = read_detections(in);
  int last = -1;
  for (const auto& r : rows) last = std::max(last, r.segment);
  std::vector<PolarLocation> est;
  std::vector<DetectionRow> final_rows;
  for (const auto& r : rows) {
    if (r.segment == last) {
      est.push_back(r.location);
      final_rows.push_back(r);
    }
  }
  std::vector<PolarLocation> ref;
  for (const auto& p : cube.ground_truth->persons) ref.push_back(p.location);
  ReportRow row{id.empty() ? fs::path(truth_path).stem().string() : id, obstacle,
                match_and_score(est, ref, d_match)};
  write_text(out, report_csv({row}));
  const auto& rep = row.report;
  std::cerr << "P=" << rep.P << " P_hat=" << rep.P_hat << " missed=" << rep.P_MD
            << " false=" << rep.P_FD << " median_error=" << rep.median_error << " m\n";
  for (const auto& m : rep.matches) {
    const auto& person = cube.ground_truth->persons[m.reference];
    const auto& det = final_rows[m.estimate];
    if (person.breath_freq > 0 && det.breath_hz) {
      std::cerr << "person " << m.reference << ": breathing " << *det.breath_hz << " Hz vs "
                << person.breath_freq << " Hz (error "
                << 100.0 * breathing_error(*det.breath_hz, person.breath_freq) << " %)\n";
    }
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SFCW radar localization and breathing-rate estimation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sfcw 0.1.0");

  std::string scenario, out, raw, in, config, truth, id, obstacle = "free", spectrum, tracks, order;
  std::optional<std::uint64_t> seed;
  bool no_accumulate = false;
  double d_match = 0.3;

  auto* sim = app.add_subcommand("simulate", "Simulate a measurement container from a scenario file");
  sim->add_option("--scenario", scenario, "Scenario key/value file")->required()->check(CLI::ExistingFile);
  sim->add_option("--out", out, "Output container (.rvc)")->required();
  sim->add_option("--seed", seed, "Override the noise seed");

  auto* conv = app.add_subcommand("convert", "Convert a raw range-profile recording directory");
  conv->add_option("--raw", raw, "Recording directory")->required()->check(CLI::ExistingDirectory);
  conv->add_option("--out", out, "Output container (.rvc)")->required();

  auto* det = app.add_subcommand("detect", "Localize persons segment by segment");
  det->add_option("--in", in, "Input container")->required()->check(CLI::ExistingFile);
  det->add_option("--out", out, "Detections CSV ('-' for stdout)")->required();
  det->add_option("--config", config, "Pipeline key/value file")->check(CLI::ExistingFile);
  det->add_option("--tracks", tracks, "Also write the track summary CSV");
  det->add_option("--order", order, "Also write eigenvalues, RD values and candidates per segment");
  det->add_option("--spectrum", spectrum, "Also write the pseudo-spectrum CSV");
  det->add_flag("--no-accumulate", no_accumulate, "Use each segment's spectrum on its own");

  auto* vit = app.add_subcommand("vitals", "Extract displacement series and breathing rates");
  vit->add_option("--in", in, "Input container")->required()->check(CLI::ExistingFile);
  vit->add_option("--out", out, "Displacement CSV ('-' for stdout)")->required();
  vit->add_option("--config", config, "Pipeline key/value file")->check(CLI::ExistingFile);
  vit->add_option("--spectrum", spectrum, "Also write the averaged breathing periodograms");

  auto* ev = app.add_subcommand("evaluate", "Score final detections against ground truth");
  ev->add_option("--in", in, "Detections CSV from detect")->required()->check(CLI::ExistingFile);
  ev->add_option("--truth", truth, "Container holding ground truth")->required()->check(CLI::ExistingFile);
  ev->add_option("--out", out, "Report CSV ('-' for stdout)")->default_val("-");
  ev->add_option("--id", id, "Scenario id for the report row");
  ev->add_option("--obstacle", obstacle, "Obstacle label for the report row");
  ev->add_option("--d-match", d_match, "Matching radius in metres")->check(CLI::NonNegativeNumber);

  auto* dump = app.add_subcommand("dump-spectrum", "Write the (accumulated) MUSIC pseudo-spectrum");
  dump->add_option("--in", in, "Input container")->required()->check(CLI::ExistingFile);
  dump->add_option("--out", out, "Spectrum CSV ('-' for stdout)")->required();
  dump->add_option("--config", config, "Pipeline key/value file")->check(CLI::ExistingFile);
  dump->add_flag("--no-accumulate", no_accumulate, "Dump the last segment's spectrum only");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    if (*sim) return run_simulate(scenario, out, seed);
    if (*conv) return run_convert(raw, out);
    if (*det) return run_detect({in, out, config, tracks, order, spectrum, no_accumulate});
    if (*vit) return run_vitals(in, out, config, spectrum);
    if (*ev) return run_evaluate(in, truth, out, id, obstacle, d_match);
    if (*dump) {
      const PipelineResult res = pipeline_for(in, config, no_accumulate);
      write_text(out, spectrum_csv(res.spectrum));
      return kOk;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kData;
  } catch (const NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return kNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kOther;
  }
  return kUsage;
}
